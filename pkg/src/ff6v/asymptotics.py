"""Bulk-limit machinery: cubic critical points, the liquid region, the
inhomogeneous discrete sine kernel on Z^2, its one-dimensional and periodic
degenerations, and the exact-to-limit convergence harness.

This is the only floating-point layer; the exact engine enters solely through
one-way rational-to-float conversion inside the harness.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.integrate import quad

from .params import ColumnParams, RowSpec, rat
from .process import AscendingFG, kernel_kap

__all__ = [
    "GlobalParams",
    "LocalSequences",
    "action_s",
    "action_s_prime",
    "cubic_coefficients",
    "critical_point",
    "inverse_map",
    "liquid_region_contains",
    "inhom_power",
    "kernel_k2d",
    "kernel_k1d",
    "density_closed_form",
    "periodic_2block",
    "harness_process",
    "convergence_harness",
]


@dataclass(frozen=True)
class GlobalParams:
    """Constant-tail parameter quintuple with the required strict ordering."""

    x: float
    w: float
    y: float
    theta: float
    s: float

    def __post_init__(self):
        tw = self.w / self.theta**2
        sy = self.y / self.s**2
        if not (self.x < self.w < self.y < tw < sy):
            raise ValueError(
                f"ordering violated: need x < w < y < theta^-2 w < s^-2 y, got "
                f"{self.x}, {self.w}, {self.y}, {tw}, {sy}"
            )

    @property
    def tw(self) -> float:
        return self.w / self.theta**2

    @property
    def sy(self) -> float:
        return self.y / self.s**2


@dataclass(frozen=True)
class LocalSequences:
    """Bi-infinite local parameters with constant tails outside [-L, L].

    Entries are floats; `w(i)`, `theta(i)` index the step direction and
    `y(j)`, `s(j)` the space direction.
    """

    gp: GlobalParams
    w_loc: dict
    theta_loc: dict
    y_loc: dict
    s_loc: dict

    def w(self, i: int) -> float:
        return self.w_loc.get(i, self.gp.w)

    def theta(self, i: int) -> float:
        return self.theta_loc.get(i, self.gp.theta)

    def y(self, j: int) -> float:
        return self.y_loc.get(j, self.gp.y)

    def s(self, j: int) -> float:
        return self.s_loc.get(j, self.gp.s)

    def tw(self, i: int) -> float:
        return self.w(i) / self.theta(i) ** 2

    def sy(self, j: int) -> float:
        return self.y(j) / self.s(j) ** 2

    def cutoff(self) -> int:
        idx = [abs(k) for d in (self.w_loc, self.theta_loc, self.y_loc, self.s_loc) for k in d]
        return max(idx, default=0)

    def check_ordering(self) -> bool:
        span = range(-self.cutoff() - 1, self.cutoff() + 2)
        sup_w = max(self.w(i) for i in span)
        inf_y = min(self.y(j) for j in span)
        sup_y = max(self.y(j) for j in span)
        inf_tw = min(self.tw(i) for i in span)
        sup_tw = max(self.tw(i) for i in span)
        inf_sy = min(self.sy(j) for j in span)
        return sup_w < inf_y <= sup_y < inf_tw <= sup_tw < inf_sy

    @staticmethod
    def homogeneous(gp: GlobalParams) -> "LocalSequences":
        return LocalSequences(gp, {}, {}, {}, {})


# -- saddle function -------------------------------------------------------------


def _log_upper(z: complex) -> complex:
    """log with the branch cut in the lower half plane (continuous on the
    closed upper half plane minus the singularity)."""
    if z.imag == 0 and z.real == 0:
        raise ZeroDivisionError("logarithmic singularity")
    phase = cmath.phase(z)  # (-pi, pi]
    if phase < -1e-15:
        phase += 2 * math.pi
    return math.log(abs(z)) + 1j * phase


def action_s(u: complex, gp: GlobalParams, alpha: float, tau: float) -> complex:
    """Five-logarithm saddle function with cuts in the lower half plane."""
    return (
        -_log_upper(u - gp.x)
        + (1 - alpha) * _log_upper(u - gp.y)
        + alpha * _log_upper(u - gp.sy)
        + tau * _log_upper(u - gp.w)
        - tau * _log_upper(u - gp.tw)
    )


def action_s_prime(u: complex, gp: GlobalParams, alpha: float, tau: float) -> complex:
    return (
        -1 / (u - gp.x)
        + (1 - alpha) / (u - gp.y)
        + alpha / (u - gp.sy)
        + tau / (u - gp.w)
        - tau / (u - gp.tw)
    )


def cubic_coefficients(gp: GlobalParams, alpha: float, tau: float):
    """Coefficients (c3, c2, c1, c0) of the critical-point cubic.

    Clearing denominators of the derivative of the saddle function leaves a
    cubic: the quartic terms cancel because the log coefficients sum to zero.
    """
    pts = [gp.x, gp.y, gp.sy, gp.w, gp.tw]
    coef = [-1.0, 1 - alpha, alpha, tau, -tau]
    # sum_i coef_i * prod_{j != i} (u - pts_j); expand exactly via numpy polys
    total = np.zeros(5)
    for i in range(5):
        poly = np.array([1.0])
        for j in range(5):
            if j != i:
                poly = np.convolve(poly, np.array([1.0, -pts[j]]))
        total += coef[i] * poly
    assert abs(total[0]) < 1e-9 * max(1.0, np.abs(total).max())
    return tuple(total[1:])


def critical_point(gp: GlobalParams, alpha: float, tau: float):
    """Upper half-plane critical point, or None outside the liquid region.

    Solves the cubic with a closed-form solver, polishes with one Newton step
    on the derivative of the saddle function, and checks the second
    derivative does not vanish.
    """
    c3, c2, c1, c0 = cubic_coefficients(gp, alpha, tau)
    roots = np.roots([c3, c2, c1, c0])
    complex_roots = [z for z in roots if z.imag > 1e-12]
    if not complex_roots:
        return None
    z = complex(max(complex_roots, key=lambda r: r.imag))
    for _ in range(2):
        d1 = action_s_prime(z, gp, alpha, tau)
        d2 = _action_s_second(z, gp, alpha, tau)
        if d2 == 0:
            raise ArithmeticError("vanishing second derivative at the critical point")
        z = z - d1 / d2
    if z.imag <= 0:
        return None
    return z


def _action_s_second(u: complex, gp: GlobalParams, alpha: float, tau: float) -> complex:
    return (
        1 / (u - gp.x) ** 2
        - (1 - alpha) / (u - gp.y) ** 2
        - alpha / (u - gp.sy) ** 2
        - tau / (u - gp.w) ** 2
        + tau / (u - gp.tw) ** 2
    )


def liquid_region_contains(gp: GlobalParams, alpha: float, tau: float) -> bool:
    return critical_point(gp, alpha, tau) is not None


def inverse_map(z: complex, gp: GlobalParams) -> tuple[float, float]:
    """(alpha, tau) whose critical point is z; the 2x2 linear system of the
    real and imaginary parts of the vanishing derivative."""
    if z.imag <= 0:
        raise ValueError("need a point in the open upper half plane")
    a_col = 1 / (z - gp.sy) - 1 / (z - gp.y)
    t_col = 1 / (z - gp.w) - 1 / (z - gp.tw)
    rhs = 1 / (z - gp.x) - 1 / (z - gp.y)
    mat = np.array([[a_col.real, t_col.real], [a_col.imag, t_col.imag]])
    vec = np.array([rhs.real, rhs.imag])
    alpha, tau = np.linalg.solve(mat, vec)
    return float(alpha), float(tau)


# -- the limit kernel -------------------------------------------------------------


def inhom_power(n: int, np_: int, u: complex, bseq, cseq) -> complex:
    """prod_{j=n+1}^{n'} (u - b_j)/(u - c_j), inverted for n > n'."""
    if n == np_:
        return 1.0 + 0j
    if n < np_:
        out = 1.0 + 0j
        for j in range(n + 1, np_ + 1):
            out *= (u - bseq(j)) / (u - cseq(j))
        return out
    out = 1.0 + 0j
    for j in range(np_ + 1, n + 1):
        out *= (u - cseq(j)) / (u - bseq(j))
    return out


def _k2d_integrand(seqs: LocalSequences, t, a, tp, ap):
    ya = seqs.y(a)
    sa2 = seqs.s(a) ** 2

    def f(u: complex) -> complex:
        out = ya * (1 - 1 / sa2) / ((u - ya) * (u - seqs.sy(ap)))
        out *= inhom_power(a, ap, u, seqs.sy, seqs.y)
        out *= inhom_power(t, tp, u, seqs.w, seqs.tw)
        return out

    return f


def _crossing_point(seqs: LocalSequences, dt: int) -> float:
    span = range(-seqs.cutoff() - 1, seqs.cutoff() + 2)
    if dt >= 0:
        return min(seqs.w(i) for i in span) - 1.0
    lo = max(seqs.tw(i) for i in span)
    hi = min(seqs.sy(j) for j in span)
    if not (lo < hi):
        raise ValueError("empty crossing window between the two pole families")
    return (lo + hi) / 2


def _segment_quad(f, z0: complex, z1: complex, tol: float):
    """Adaptive integral of f along the straight segment z0 -> z1."""
    dz = z1 - z0

    def real_part(s):
        return (f(z0 + s * dz) * dz).real

    def imag_part(s):
        return (f(z0 + s * dz) * dz).imag

    re, re_err = quad(real_part, 0.0, 1.0, epsabs=tol, epsrel=tol, limit=200)
    im, im_err = quad(imag_part, 0.0, 1.0, epsabs=tol, epsrel=tol, limit=200)
    return complex(re, im), re_err + im_err


def kernel_k2d(
    t: int, a: int, tp: int, ap: int, z: complex, seqs: LocalSequences, tol: float = 1e-10
):
    """Arc-integral kernel on Z^2: -(1/2*pi*i) * integral from conj(z) to z.

    The polyline runs conj(z) -> x_c -> z with the real crossing x_c left of
    the step poles for t' >= t and between the two excluded families
    otherwise.  For real parameters conjugation symmetry reduces the arc to
    -(1/pi) Im of the half integral, which is the implemented form.
    """
    if z.imag <= 0:
        raise ValueError("need a point in the open upper half plane")
    if not seqs.check_ordering():
        raise ValueError("local sequences violate the ordering chain")
    f = _k2d_integrand(seqs, t, a, tp, ap)
    xc = _crossing_point(seqs, tp - t)
    val, err = _segment_quad(f, complex(xc, 0.0), z, tol)
    return -val.imag / math.pi, err / math.pi


def kernel_k1d(a: int, ap: int, z: complex, seqs: LocalSequences, tol: float = 1e-10):
    """Equal-time slice; the crossing point lies left of every space pole."""
    return kernel_k2d(0, a, 0, ap, z, seqs, tol)


def density_closed_form(a: int, z: complex, seqs: LocalSequences) -> float:
    """Diagonal entry in closed form: the angle of (z - y_a)/(z - s_a^{-2} y_a)
    over pi, measured positively (the ratio maps the upper half plane to the
    lower one for the admissible parameter ordering)."""
    v = (z - seqs.y(a)) / (z - seqs.sy(a))
    return -cmath.phase(v) / math.pi


def periodic_2block(n: int, np_: int, c0: float, c1: float, z: complex, tol: float = 1e-10):
    """Two-periodic degeneration: the 2x2 block of kernel values at sites
    (2n, 2n'), (2n, 2n'+1), (2n+1, 2n'), (2n+1, 2n'+1)."""
    if z.imag <= 0:
        raise ValueError("need a point in the open upper half plane")
    dn = np_ - n

    def entry(int_fn):
        def f(u):
            return int_fn(u) * ((1 - c0 / u) * (1 - c1 / u)) ** dn / u**2

        xc = min(0.0, c0, c1) - 1.0
        val, err = _segment_quad(f, complex(xc, 0.0), z, tol)
        # the change of variables flips orientation: + Im / pi
        return val.imag / math.pi, err / math.pi

    k00 = entry(lambda u: c0 / (1 - c0 / u))
    k01 = entry(lambda u: c0 + 0 * u)
    k10 = entry(lambda u: c1 / ((1 - c0 / u) * (1 - c1 / u)))
    k11 = entry(lambda u: c1 / (1 - c1 / u))
    return ((k00[0], k01[0]), (k10[0], k11[0])), max(k00[1], k01[1], k10[1], k11[1])


# -- convergence harness -----------------------------------------------------------


def harness_process(gp_rat: dict, n: int, alpha: Fraction, tau: Fraction) -> AscendingFG:
    """Exact finite-size process with constant parameters sized for (alpha, tau)."""
    tmax = int(tau * n) + 2
    col = ColumnParams((), (), gp_rat["y"], gp_rat["s"])
    xr = RowSpec([gp_rat["x"]] * n, [Fraction(1, 2)] * n)
    wtheta = RowSpec([gp_rat["w"]] * tmax, [gp_rat["theta"]] * tmax)
    return AscendingFG(col, xr, wtheta)


def convergence_harness(
    gp_rat: dict,
    alpha: Fraction,
    tau: Fraction,
    entries,
    sizes=(16, 32, 64),
    tol: float = 1e-10,
):
    """Exact finite-size kernel at bulk coordinates versus the limit kernel.

    gp_rat: rational global parameters {"x","w","y","theta","s"}; entries:
    list of (t, a, t', a') offsets.  Returns a report dict with per-size gaps.
    """
    gp = GlobalParams(
        float(gp_rat["x"]),
        float(gp_rat["w"]),
        float(gp_rat["y"]),
        float(gp_rat["theta"]),
        float(gp_rat["s"]),
    )
    z = critical_point(gp, float(alpha), float(tau))
    if z is None:
        raise ValueError("(alpha, tau) lies outside the liquid region")
    seqs = LocalSequences.homogeneous(gp)
    limit_vals = {}
    for (t, a, tp, ap) in entries:
        val, _ = kernel_k2d(t, a, tp, ap, z, seqs, tol)
        limit_vals[(t, a, tp, ap)] = val
    rows = []
    for n in sizes:
        proc = harness_process(gp_rat, n, alpha, tau)
        t0 = int(tau * n)
        a0 = int(alpha * n)
        gaps = {}
        for (t, a, tp, ap) in entries:
            exact = kernel_kap(t0 + t, a0 + a, t0 + tp, a0 + ap, proc)
            gaps[(t, a, tp, ap)] = abs(float(exact) - limit_vals[(t, a, tp, ap)])
        rows.append({"n": n, "gaps": gaps, "max_gap": max(gaps.values())})
    return {"z": z, "limit": limit_vals, "rows": rows}
