"""Two-route symmetric functions of the free-fermion six-vertex model.

Every closed formula here (alternant determinants, double symmetric-group
sums, Jacobi-Trudi determinants, contour formulas) has an independent
partition-function twin computed by row-by-row transfer; the test suite pins
them against each other exactly.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .linalg import det_exact
from .params import (
    EMPTY,
    ColumnParams,
    RowSpec,
    Signature,
    all_signatures,
    rat,
    signature_points,
)
from .ratfun import FactoredRational, PoleSet, contour_integral
from .vertex import apply_row_operator, basis_vector, weight_w, weight_w_hat

__all__ = [
    "g_skew_partition",
    "f_skew_partition",
    "g_skew_one_row",
    "f_skew_one_row",
    "phi_k",
    "psi_k",
    "phi_factored",
    "psi_factored",
    "f_determinant",
    "f_star",
    "g_sergeev_pragacz",
    "single_biorthogonality",
    "pair_biorthogonality",
    "check_biorthogonality",
    "g_entry",
    "h_entry",
    "jacobi_trudy_g",
    "g_nonskew_jt",
    "skew_f_contour",
    "g_contour",
    "cauchy_rhs",
    "check_cauchy",
    "schur",
    "factorial_schur",
    "factorial_schur_tableaux",
    "factorial_schur_vertex",
    "dual_factorial_schur",
    "supersymmetric_schur",
    "homogeneous_schur_variables",
    "supersymmetric_variables",
]


# -- partition functions by transfer ------------------------------------------


def _window_hi(*sigs: Signature) -> int:
    pts = [max(signature_points(s), default=0) for s in sigs]
    return max(pts, default=0) + 1


def g_skew_partition(lam: Signature, mu: Signature, rows: RowSpec, col: ColumnParams) -> Fraction:
    """Path-sum value with bottom boundary mu, top boundary lam, plain weights."""
    if len(lam) != len(mu):
        return Fraction(0)
    if len(rows) == 0:
        return Fraction(1) if lam == mu else Fraction(0)
    hi = _window_hi(lam, mu)
    v = basis_vector(1, hi, signature_points(mu))
    for i in range(1, len(rows) + 1):
        x, r = rows.pair(i)
        v = apply_row_operator("D", x, r * r, v, col)
    return v.coefficient(signature_points(lam))


def f_skew_partition(lam: Signature, mu: Signature, rows: RowSpec, col: ColumnParams) -> Fraction:
    """Hatted-weight path sum: bottom lam, top mu, one right exit per row."""
    k = len(rows)
    if len(lam) != len(mu) + k:
        return Fraction(0)
    if k == 0:
        return Fraction(1) if lam == mu else Fraction(0)
    hi = _window_hi(lam, mu)
    v = basis_vector(1, hi, signature_points(mu))
    for i in range(k, 0, -1):
        x, r = rows.pair(i)
        v = apply_row_operator("Bh", x, r * r, v, col)
    return v.coefficient(signature_points(lam))


def g_skew_one_row(nu: Signature, lam: Signature, w, theta, col: ColumnParams) -> Fraction:
    """Single plain row: unique configuration, explicit weight product."""
    if len(nu) != len(lam):
        return Fraction(0)
    w, t2 = rat(w), rat(theta) ** 2
    bottom = signature_points(lam)
    top = signature_points(nu)
    hi = max(max(bottom, default=0), max(top, default=0))
    h = 0
    out = Fraction(1)
    for j in range(1, hi + 1):
        i1 = 1 if j in bottom else 0
        i2 = 1 if j in top else 0
        j2 = i1 + h - i2
        if j2 not in (0, 1):
            return Fraction(0)
        out *= weight_w((i1, h, i2, j2), w, col.y(j), t2, col.s2(j))
        h = j2
    return out if h == 0 else Fraction(0)


def f_skew_one_row(kappa: Signature, nu: Signature, x, r, col: ColumnParams) -> Fraction:
    """Single hatted row removing one part: bottom kappa, top nu, right exit."""
    if len(kappa) != len(nu) + 1:
        return Fraction(0)
    x, r2 = rat(x), rat(r) ** 2
    bottom = signature_points(kappa)
    top = signature_points(nu)
    hi = max(bottom)
    h = 0
    out = Fraction(1)
    for j in range(1, hi + 1):
        i1 = 1 if j in bottom else 0
        i2 = 1 if j in top else 0
        j2 = i1 + h - i2
        if j2 not in (0, 1):
            return Fraction(0)
        out *= weight_w_hat((i1, h, i2, j2), x, col.y(j), r2, col.s2(j))
        h = j2
    return out if h == 1 else Fraction(0)


# -- the phi/psi system --------------------------------------------------------


def phi_factored(k: int, col: ColumnParams) -> FactoredRational:
    """phi_k as a factored rational in the integration variable."""
    if k < 0:
        raise ValueError("index must be >= 0")
    factors = [(col.y(k + 1), -1)]
    for j in range(1, k + 1):
        factors.append((col.y(j) / col.s2(j), 1))
        factors.append((col.y(j), -1))
    return FactoredRational(-1, factors)


def psi_factored(k: int, col: ColumnParams) -> FactoredRational:
    """psi_k as a factored rational in the integration variable."""
    if k < 0:
        raise ValueError("index must be >= 0")
    y, s2 = col.y(k + 1), col.s2(k + 1)
    const = y * (1 / s2 - 1)
    factors = [(y / s2, -1)]
    for j in range(1, k + 1):
        factors.append((col.y(j), 1))
        factors.append((col.y(j) / col.s2(j), -1))
    return FactoredRational(const, factors)


def phi_k(k: int, x, col: ColumnParams) -> Fraction:
    return phi_factored(k, col).evaluate(x)


def psi_k(k: int, x, col: ColumnParams) -> Fraction:
    return psi_factored(k, col).evaluate(x)


def _y_pole_set(col: ColumnParams, max_index: int, extra=()) -> PoleSet:
    pts = {col.y(j) for j in range(1, max_index + 1)}
    pts.update(rat(e) for e in extra)
    return PoleSet(pts)


# -- closed formulas -----------------------------------------------------------


def _row_prefactor(rows: RowSpec) -> Fraction:
    n = len(rows)
    out = Fraction(1)
    for i in range(1, n + 1):
        x, r = rows.pair(i)
        out *= x * (1 / r**2 - 1)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            xi, ri = rows.pair(i)
            xj, _ = rows.pair(j)
            out *= (xi / ri**2 - xj) / (xi - xj)
    return out


def f_determinant(lam: Signature, rows: RowSpec, col: ColumnParams) -> Fraction:
    """Alternant formula for the one-boundary function; falls back to the
    partition function when two row variables coincide."""
    n = len(lam)
    if len(rows) != n:
        raise ValueError("need as many row variables as parts")
    if len(set(rows.values)) != n:
        return f_skew_partition(lam, EMPTY, rows, col)
    mat = [
        [phi_k(lam[j] + n - j - 1, rows.values[i], col) for j in range(n)]
        for i in range(n)
    ]
    return _row_prefactor(rows) * det_exact(mat)


def f_star(lam: Signature, rows: RowSpec, col: ColumnParams) -> Fraction:
    """Dual alternant built from psi, biorthogonal to f_determinant."""
    n = len(lam)
    mat = [
        [psi_k(lam[j] + n - j - 1, rows.values[i], col) for j in range(n)]
        for i in range(n)
    ]
    pref = Fraction(1)
    for i in range(1, n + 1):
        for j in range(1, i):
            xi, ri = rows.pair(i)
            xj, _ = rows.pair(j)
            pref *= (xj - xi / ri**2) / (xj - xi)
    return det_exact(mat) * pref


def g_sergeev_pragacz(lam: Signature, rows: RowSpec, col: ColumnParams) -> Fraction:
    """Double symmetric-group sum for the plain-boundary function."""
    n = len(lam)
    m = len(rows)
    d = lam.durfee()
    if d > m:
        return Fraction(0)
    xs = rows.values
    q = [x / r**2 for x, r in zip(rows.values, rows.spins)]  # r_i^{-2} x_i
    ell = [lam[h] + n - h for h in range(d)]  # top d points of the signature
    spts = signature_points(lam)
    mu = sorted(set(range(1, n + 1)) - set(spts))
    assert len(mu) == d

    pref = Fraction(1)
    for j in range(m):
        for k in range(1, n + 1):
            y, s2 = col.y(k), col.s2(k)
            pref *= (y - s2 * q[j]) / (y - s2 * xs[j])

    total = Fraction(0)
    idx = range(m)
    for iset in itertools.combinations(idx, d):
        for jset in itertools.combinations(idx, d):
            jset_c = [i for i in idx if i not in jset]
            iset_c = [i for i in idx if i not in iset]
            coeff = Fraction(1)
            for i in jset_c:
                for j in jset:
                    coeff /= xs[i] - xs[j]
            for a in range(d):
                for b in range(a + 1, d):
                    coeff /= xs[jset[b]] - xs[jset[a]]
            for i in iset:
                for j in idx:
                    coeff *= q[i] - xs[j]
            for i in iset_c:
                for j in jset:
                    coeff *= q[i] - xs[j]
            for i in iset:
                for j in iset_c:
                    coeff /= q[i] - q[j]
            for a in range(d):
                for b in range(a + 1, d):
                    coeff /= q[iset[a]] - q[iset[b]]
            inner = Fraction(0)
            for sigma in itertools.permutations(range(d)):
                for rho in itertools.permutations(range(d)):
                    sgn = _perm_sign(sigma) * _perm_sign(rho)
                    term = Fraction(sgn)
                    for h in range(d):
                        xj = xs[jset[rho[h]]]
                        yl, s2l = col.y(ell[h]), col.s2(ell[h])
                        term *= yl * (1 - s2l) / (yl - s2l * xj)
                        for i in range(n + 1, ell[h]):
                            yi, s2i = col.y(i), col.s2(i)
                            term *= s2i * (yi - xj) / (yi - s2i * xj)
                    for mth in range(d):
                        qi = q[iset[sigma[mth]]]
                        ym, s2m = col.y(mu[mth]), col.s2(mu[mth])
                        term *= s2m / (ym - s2m * qi)
                        for k in range(mu[mth] + 1, n + 1):
                            yk, s2k = col.y(k), col.s2(k)
                            term *= s2k * (qi - yk) / (yk - s2k * qi)
                    inner += term
            total += coeff * inner
    return pref * total


def _perm_sign(p) -> int:
    sgn = 1
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                sgn = -sgn
    return sgn


# -- biorthogonality -----------------------------------------------------------


def single_biorthogonality(k: int, l: int, col: ColumnParams) -> Fraction:
    """Residue sum of phi_k psi_l over all column points; equals [k == l]."""
    f = phi_factored(k, col) * psi_factored(l, col)
    return contour_integral(f, _y_pole_set(col, max(k, l) + 1))


def pair_biorthogonality(lam: Signature, mu: Signature, col: ColumnParams) -> Fraction:
    """N-fold iterated-residue pairing of the two alternant families."""
    n = len(lam)
    if len(mu) != n:
        raise ValueError("signatures must have the same number of parts")
    kmax = max([lam[0] if n else 0, mu[0] if n else 0]) + n
    poles = _y_pole_set(col, kmax + 1)
    singles = {}

    def single(a, b):
        if (a, b) not in singles:
            singles[(a, b)] = contour_integral(
                phi_factored(a, col) * psi_factored(b, col), poles
            )
        return singles[(a, b)]

    total = Fraction(0)
    for sigma in itertools.permutations(range(n)):
        for tau in itertools.permutations(range(n)):
            term = Fraction(_perm_sign(sigma) * _perm_sign(tau))
            for i in range(n):
                term *= single(
                    lam[sigma[i]] + n - 1 - sigma[i], mu[tau[i]] + n - 1 - tau[i]
                )
            total += term
    import math

    return total / math.factorial(n)


def check_biorthogonality(n: int, max_part: int, col: ColumnParams) -> bool:
    """Pairing equals the indicator of lam == mu on the full grid of pairs."""
    sigs = list(all_signatures(n, max_part))
    for lam in sigs:
        for mu in sigs:
            want = Fraction(1 if lam == mu else 0)
            if pair_biorthogonality(lam, mu, col) != want:
                return False
    return True


# -- Jacobi-Trudi layer --------------------------------------------------------


def _w_ratio_factor(wtheta: RowSpec) -> FactoredRational:
    """prod_j (z - theta_j^{-2} w_j)/(z - w_j) as a factored rational."""
    out = FactoredRational(1, ())
    for i in range(1, len(wtheta) + 1):
        w, th = wtheta.pair(i)
        out = out * FactoredRational(1, ((w / th**2, 1), (w, -1)))
    return out


def g_entry(l: int, k: int, wtheta: RowSpec, col: ColumnParams) -> Fraction:
    """Entry g_{l/k}: residue sum of phi_k psi_l times the w-ratio product."""
    if l < 0 or k < 0:
        return Fraction(1) if l == k else Fraction(0)
    f = phi_factored(k, col) * psi_factored(l, col) * _w_ratio_factor(wtheta)
    poles = _y_pole_set(col, max(k, l) + 1, extra=wtheta.values)
    return contour_integral(f, poles)


def h_entry(k: int, p: int, wtheta: RowSpec, col: ColumnParams) -> Fraction:
    """Entry h_{k,p}: residue sum of psi_k(z)/(y_p - z) times the w-ratio."""
    f = (
        psi_factored(k, col)
        * FactoredRational(-1, ((col.y(p), -1),))
        * _w_ratio_factor(wtheta)
    )
    poles = _y_pole_set(col, max(k, p) + 1, extra=wtheta.values)
    return contour_integral(f, poles)


def jacobi_trudy_g(nu: Signature, lam: Signature, wtheta: RowSpec, col: ColumnParams) -> Fraction:
    """Skew determinant det[g_{(nu_i+N-i)/(lam_j+N-j)}]."""
    n = len(nu)
    if len(lam) != n:
        return Fraction(0)
    mat = [
        [g_entry(nu[i] + n - 1 - i, lam[j] + n - 1 - j, wtheta, col) for j in range(n)]
        for i in range(n)
    ]
    return det_exact(mat)


def g_nonskew_jt(nu: Signature, wtheta: RowSpec, col: ColumnParams) -> Fraction:
    """Non-skew determinant with the Cauchy-style prefactor."""
    n = len(nu)
    pref = Fraction(1)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            pref *= (col.y(i) / col.s2(i) - col.y(j)) / (col.y(j) - col.y(i))
    mat = [
        [h_entry(nu[i] + n - 1 - i, j + 1, wtheta, col) for j in range(n)]
        for i in range(n)
    ]
    return pref * det_exact(mat)


# -- contour-integral formulas -------------------------------------------------


def skew_f_contour(lam: Signature, mu: Signature, rows: RowSpec, col: ColumnParams) -> Fraction:
    """Skew one-boundary function by iterated residues in M auxiliary variables."""
    n = len(rows)
    m = len(mu)
    if len(lam) != n + m:
        return Fraction(0)
    union_vars = list(rows.values) + [None] * m  # None marks an integration slot
    kmax = lam[0] + n + m if len(lam) else n + m
    poles = _y_pole_set(col, kmax + 1)
    xr_factor = FactoredRational(1, ())
    for i in range(1, n + 1):
        x, r = rows.pair(i)
        xr_factor = xr_factor * FactoredRational(1, ((x / r**2, 1), (x, -1)))
    total = Fraction(0)
    for sigma in itertools.permutations(range(n + m)):
        sgn_s = _perm_sign(sigma)
        xpart = Fraction(1)
        ok = True
        for i in range(n):  # rows evaluated at the fixed variables
            val = phi_k(lam[sigma[i]] + n + m - 1 - sigma[i], union_vars[i], col)
            xpart *= val
        if not ok:
            continue
        for tau in itertools.permutations(range(m)):
            sgn_t = _perm_sign(tau)
            term = Fraction(sgn_s * sgn_t) * xpart
            for j in range(m):
                f = (
                    phi_factored(lam[sigma[n + j]] + n + m - 1 - sigma[n + j], col)
                    * psi_factored(mu[tau[j]] + m - 1 - tau[j], col)
                    * xr_factor
                )
                term *= contour_integral(f, poles)
            total += term
    import math

    return _row_prefactor(rows) * total / math.factorial(m)


def g_contour(nu: Signature, lam: Signature, wtheta: RowSpec, col: ColumnParams) -> Fraction:
    """Skew plain-boundary function by iterated residues in N variables."""
    n = len(nu)
    if len(lam) != n:
        return Fraction(0)
    kmax = (nu[0] if n else 0) + n
    poles = _y_pole_set(col, kmax + 1, extra=wtheta.values)
    wfac = _w_ratio_factor(wtheta)
    total = Fraction(0)
    for sigma in itertools.permutations(range(n)):
        for tau in itertools.permutations(range(n)):
            term = Fraction(_perm_sign(sigma) * _perm_sign(tau))
            for j in range(n):
                f = (
                    phi_factored(lam[sigma[j]] + n - 1 - sigma[j], col)
                    * psi_factored(nu[tau[j]] + n - 1 - tau[j], col)
                    * wfac
                )
                term *= contour_integral(f, poles)
            total += term
    import math

    return total / math.factorial(n)


# -- Cauchy identities ---------------------------------------------------------


def cauchy_rhs(rows_x: RowSpec, rows_w: RowSpec, col: ColumnParams) -> Fraction:
    """Closed product: normalization constant times the cross ratio product."""
    m = len(rows_x)
    out = Fraction(1)
    for i in range(1, m + 1):
        x, r = rows_x.pair(i)
        out *= x * (1 / r**2 - 1)
    for i in range(1, m + 1):
        xi, ri = rows_x.pair(i)
        for j in range(i + 1, m + 1):
            xj, _ = rows_x.pair(j)
            out *= (xi / ri**2 - xj) * (col.y(i) / col.s2(i) - col.y(j))
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            out /= col.y(i) - rows_x.values[j - 1]
    for i in range(1, m + 1):
        xi = rows_x.values[i - 1]
        for j in range(1, len(rows_w) + 1):
            w, th = rows_w.pair(j)
            out *= (xi - w / th**2) / (xi - w)
    return out


def check_cauchy(rows_x: RowSpec, rows_w: RowSpec, col: ColumnParams, cutoff: int):
    """Truncated two-family sum vs the closed product.

    Returns (partial sums by cutoff, rhs); the caller inspects the exact gaps.
    """
    m = len(rows_x)
    rhs = cauchy_rhs(rows_x, rows_w, col)
    partial = []
    running = Fraction(0)
    by_top = {c: Fraction(0) for c in range(cutoff + 1)}
    for nu in all_signatures(m, cutoff):
        fv = f_determinant(nu, rows_x, col)
        gv = jacobi_trudy_g(nu, Signature((0,) * m), rows_w, col)
        by_top[nu[0] if m else 0] += fv * gv
    for c in range(cutoff + 1):
        running += by_top[c]
        partial.append(running)
    return partial, rhs


# -- classical specializations --------------------------------------------------


def schur(lam: Signature, xs) -> Fraction:
    """Ratio of alternants; xs must be distinct."""
    xs = [rat(x) for x in xs]
    n = len(xs)
    lamp = lam.pad(n)
    num = det_exact([[xs[i] ** (lamp[j] + n - 1 - j) for j in range(n)] for i in range(n)])
    den = Fraction(1)
    for i in range(n):
        for j in range(i + 1, n):
            den *= xs[i] - xs[j]
    return num / den


def factorial_schur(lam: Signature, xs, ys) -> Fraction:
    """Double alternant with shifted powers (x|y)^k = (x+y_1)...(x+y_k)."""
    xs = [rat(x) for x in xs]
    ys = [rat(y) for y in ys]
    n = len(xs)
    lamp = lam.pad(n)

    def shifted_power(x, k):
        out = Fraction(1)
        for mth in range(k):
            out *= x + ys[mth]
        return out

    num = det_exact(
        [[shifted_power(xs[i], lamp[j] + n - 1 - j) for j in range(n)] for i in range(n)]
    )
    den = Fraction(1)
    for i in range(n):
        for j in range(i + 1, n):
            den *= xs[i] - xs[j]
    return num / den


def _ssyt(shape, nmax):
    """Yield semistandard tableaux of the given shape with entries 1..nmax."""
    rows = [r for r in shape if r > 0]
    if not rows:
        yield ()
        return

    def fill(tab, r, c):
        if r == len(rows):
            yield tuple(tuple(row) for row in tab)
            return
        lo = 1
        if c > 0:
            lo = max(lo, tab[r][c - 1])  # weakly increasing along rows
        if r > 0 and c < rows[r - 1]:
            lo = max(lo, tab[r - 1][c] + 1)  # strictly increasing down columns
        for v in range(lo, nmax + 1):
            tab[r].append(v)
            nr, nc = (r, c + 1) if c + 1 < rows[r] else (r + 1, 0)
            yield from fill(tab, nr, nc)
            tab[r].pop()

    yield from fill([[] for _ in rows], 0, 0)


def factorial_schur_tableaux(lam: Signature, xs, ys) -> Fraction:
    """Tableau sum: product of (x_T(b) + y_{T(b)+col(b)-row(b)}) over boxes."""
    xs = [rat(x) for x in xs]
    ys = [rat(y) for y in ys]
    total = Fraction(0)
    for tab in _ssyt(lam.parts, len(xs)):
        term = Fraction(1)
        for r, row in enumerate(tab, start=1):
            for c, entry in enumerate(row, start=1):
                term *= xs[entry - 1] + ys[entry + c - r - 1]
        total += term
    return total


def _custom_transfer(bottom, top, num_rows, weight_at, read_top_down, right_exit):
    """Generic five/six-vertex row transfer with a per-site weight table.

    weight_at(row, column, state) -> Fraction, rows numbered 1..num_rows bottom
    to top.  `right_exit` rows carry boundary (0, 1), others (0, 0).
    """
    hi = max(max(bottom, default=0), max(top, default=0)) + 1
    states = {frozenset(bottom if not read_top_down else top): Fraction(1)}
    row_iter = range(num_rows, 0, -1) if read_top_down else range(1, num_rows + 1)
    for row in row_iter:
        nxt: dict = {}
        for subset, amp in states.items():
            partials = {((), 0): amp}
            for k in range(1, hi + 1):
                occ_in = 1 if k in subset else 0
                step: dict = {}
                for (partial, h), a in partials.items():
                    for occ_out in (0, 1):
                        if read_top_down:
                            i1, i2 = occ_out, occ_in
                        else:
                            i1, i2 = occ_in, occ_out
                        j2 = i1 + h - i2
                        if j2 not in (0, 1):
                            continue
                        wt = weight_at(row, k, (i1, h, i2, j2))
                        if wt == 0:
                            continue
                        key = (partial + (k,) if occ_out else partial, j2)
                        step[key] = step.get(key, Fraction(0)) + a * wt
                partials = step
            want_h = 1 if right_exit else 0
            for (partial, h), a in partials.items():
                if h != want_h:
                    continue
                key = frozenset(partial)
                nxt[key] = nxt.get(key, Fraction(0)) + a
        states = nxt
    target = frozenset(top if not read_top_down else bottom)
    return states.get(target, Fraction(0))


def factorial_schur_vertex(lam: Signature, xs, ys) -> Fraction:
    """Five-vertex partition function with additive empty-site weights.

    Paths enter at the signature points, exit through the right edge; the
    (1,1;1,1) vertex is forbidden, all non-empty vertices weigh 1.
    """
    xs = [rat(x) for x in xs]
    ys = [rat(y) for y in ys]
    n = len(xs)

    def weight_at(row, k, state):
        if state == (0, 0, 0, 0):
            return xs[n - row] + ys[k - 1]
        if state == (1, 1, 1, 1):
            return Fraction(0)
        return Fraction(1)

    return _custom_transfer(
        signature_points(lam), frozenset(), n, weight_at, True, True
    )


def dual_factorial_schur(lam: Signature, xs, ys) -> Fraction:
    """Companion five-vertex partition function with reciprocal edge weights.

    Plain-boundary geometry (dense packing at the bottom, signature on top),
    empty vertex weighing 1, movement vertices weighing 1/(x_row + y_col).
    """
    xs = [rat(x) for x in xs]
    ys = [rat(y) for y in ys]
    n = len(lam)

    def weight_at(row, k, state):
        if state == (0, 0, 0, 0):
            return Fraction(1)
        if state == (1, 1, 1, 1):
            return Fraction(0)
        return 1 / (xs[row - 1] + ys[k - 1])

    bottom = frozenset(range(1, n + 1))
    return _custom_transfer(
        bottom, signature_points(lam), len(xs), weight_at, False, False
    )


def supersymmetric_schur(lam: Signature, xs, ys) -> Fraction:
    """Two-alphabet Schur polynomial via the diagonal-splitting subset sum."""
    xs = [rat(x) for x in xs]
    ys = [rat(y) for y in ys]
    m = len(xs)
    if len(ys) != m:
        raise ValueError("need equally long alphabets")
    d = lam.durfee()
    if d > m:
        return Fraction(0)
    n = len(lam)
    tau = Signature([lam[i] - d for i in range(d)])
    eta = Signature([lam[i] for i in range(d, n)])
    eta_t = eta.transpose().pad(d)
    total = Fraction(0)
    idx = range(m)
    for iset in itertools.combinations(idx, d):
        ys_i = [ys[i] for i in iset]
        iset_c = [i for i in idx if i not in iset]
        for jset in itertools.combinations(idx, d):
            xs_j = [xs[j] for j in jset]
            jset_c = [i for i in idx if i not in jset]
            term = schur(tau, xs_j) * schur(eta_t, ys_i) if d else Fraction(1)
            for i in jset_c:
                for j in jset:
                    term /= xs[j] - xs[i]
            for i in iset:
                for j in iset_c:
                    term /= ys[i] - ys[j]
            for i in iset:
                for j in idx:
                    term *= xs[j] + ys[i]
            for i in iset_c:
                for j in jset:
                    term *= xs[j] + ys[i]
            total += term
    return total


def homogeneous_schur_variables(rows: RowSpec, s) -> list[Fraction]:
    """Variable map t_i = (1 - s^2 x_i) / (s^2 (1 - x_i)) of the flat-column reduction."""
    s2 = rat(s) ** 2
    return [(1 - s2 * x) / (s2 * (1 - x)) for x in rows.values]


def supersymmetric_variables(rows: RowSpec, s) -> tuple[list[Fraction], list[Fraction]]:
    """Alphabets (x_i, y_i) of the flat-column reduction of the plain family."""
    s2 = rat(s) ** 2
    a = [s2 * (1 - x) / (1 - s2 * x) for x in rows.values]
    b = [
        s2 * (x / r**2 - 1) / (1 - s2 * x / r**2)
        for x, r in zip(rows.values, rows.spins)
    ]
    return a, b
