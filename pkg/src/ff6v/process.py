"""Determinantal measures on signature sequences: exact weights, the Gram
matrix and its closed inverse, double-contour correlation kernels, a
brute-force enumeration oracle, and an exact inverse-CDF sampler.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .linalg import det_exact, identity, mat_mul
from .params import (
    ColumnParams,
    DegenerateParameterError,
    RowSpec,
    Signature,
    all_signatures,
    is_compatible,
    is_nonnegative_spec,
    rat,
    signature_points,
)
from .ratfun import FactoredRational, PoleSet, separable_double_integral
from .symfun import (
    f_determinant,
    f_skew_one_row,
    f_skew_partition,
    g_entry,
    g_skew_one_row,
    h_entry,
    phi_k,
)

__all__ = [
    "AscendingFG",
    "zee_constant",
    "cross_product",
    "ascending_weight",
    "gram_matrix",
    "gram_inverse",
    "gram_series",
    "kernel_kap",
    "kernel_km",
    "schur_measure_kernel",
    "correlation_det",
    "Enumeration",
    "brute_force_correlation",
    "one_step_supports",
    "TrajectorySampler",
    "sample_ascending",
    "sample_f_branch",
    "transition_table",
]


@dataclass(frozen=True)
class AscendingFG:
    """Ascending measure data: N row variables (x; r), T step variables (w; theta)."""

    col: ColumnParams
    xr: RowSpec
    wtheta: RowSpec

    def __post_init__(self):
        if len(self.xr) == 0:
            raise ValueError("need at least one row variable")

    @property
    def n(self) -> int:
        return len(self.xr)

    @property
    def t(self) -> int:
        return len(self.wtheta)

    def validate(self, allow_nonpositive_x: bool = False) -> Fraction:
        """Check nonnegativity and compatibility; returns the certified gap delta."""
        if not is_nonnegative_spec(self.xr, self.col, allow_nonpositive_x=allow_nonpositive_x):
            raise ValueError("row specialization is not nonnegative")
        for j in range(1, self.t + 1):
            w, th = self.wtheta.pair(j)
            if not is_nonnegative_spec(
                RowSpec([w], [th]), self.col, allow_nonpositive_x=allow_nonpositive_x
            ):
                raise ValueError(f"step specialization {j} is not nonnegative")
        ok, delta = is_compatible(self.xr, self.wtheta, self.col)
        if not ok:
            raise ValueError("specializations are not compatible")
        return delta


def zee_constant(rows_x: RowSpec, col: ColumnParams) -> Fraction:
    """Normalization built from the row variables and the column data."""
    n = len(rows_x)
    out = Fraction(1)
    for i in range(1, n + 1):
        x, r = rows_x.pair(i)
        out *= x * (1 / r**2 - 1)
    for i in range(1, n + 1):
        xi, ri = rows_x.pair(i)
        for j in range(i + 1, n + 1):
            xj, _ = rows_x.pair(j)
            out *= (xi / ri**2 - xj) * (col.y(i) / col.s2(i) - col.y(j))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            d = col.y(i) - rows_x.values[j - 1]
            if d == 0:
                raise DegenerateParameterError("y_i = x_j")
            out /= d
    return out


def cross_product(rows_x: RowSpec, rows_w: RowSpec) -> Fraction:
    """prod (x_i - theta_j^{-2} w_j) / (x_i - w_j)."""
    out = Fraction(1)
    for x in rows_x.values:
        for j in range(1, len(rows_w) + 1):
            w, th = rows_w.pair(j)
            out *= (x - w / th**2) / (x - w)
    return out


def partition_z(proc: AscendingFG) -> Fraction:
    return zee_constant(proc.xr, proc.col) * cross_product(proc.xr, proc.wtheta)


def ascending_weight(proc: AscendingFG, seq) -> Fraction:
    """Exact probability of the signature sequence (length T, N parts each)."""
    seq = list(seq)
    if len(seq) != proc.t:
        raise ValueError(f"need {proc.t} signatures")
    prev = Signature((0,) * proc.n)
    out = Fraction(1)
    for t, lam in enumerate(seq, start=1):
        w, th = proc.wtheta.pair(t)
        out *= g_skew_one_row(lam, prev, w, th, proc.col)
        prev = lam
        if out == 0:
            return out
    out *= f_skew_partition(seq[-1], Signature(()), proc.xr, proc.col)
    z = partition_z(proc)
    if z == 0:
        raise ZeroDivisionError("vanishing normalization")
    return out / z


# -- Gram matrix ---------------------------------------------------------------


def gram_matrix(n: int, rows_x: RowSpec, col: ColumnParams, wtheta: RowSpec):
    """Closed-form cross Gram matrix of the two biorthogonal families."""
    mat = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            xj = rows_x.values[j - 1]
            d = col.y(i) - xj
            if d == 0:
                raise DegenerateParameterError("y_i = x_j")
            row.append(cross_product(RowSpec([xj], [1]), wtheta) / d)
        mat.append(row)
    return mat


def gram_inverse(n: int, rows_x: RowSpec, col: ColumnParams, wtheta: RowSpec):
    """Closed-form inverse; gram_matrix @ gram_inverse == identity exactly."""
    xs = rows_x.values
    ys = [col.y(i) for i in range(1, n + 1)]
    mat = []
    for i in range(1, n + 1):
        row = []
        xi = xs[i - 1]
        for j in range(1, n + 1):
            yj = ys[j - 1]
            v = Fraction(1) / (xi - yj)
            for k in range(n):
                v *= (xi - ys[k]) * (yj - xs[k])
            for k in range(n):
                if k != i - 1:
                    v /= xi - xs[k]
                if k != j - 1:
                    v /= yj - ys[k]
            for tindex in range(1, len(wtheta) + 1):
                w, th = wtheta.pair(tindex)
                v *= (xi - w) / (xi - w / th**2)
            row.append(v)
        mat.append(row)
    return mat


def gram_series(i: int, j: int, rows_x: RowSpec, col: ColumnParams, wtheta: RowSpec, cutoff: int) -> Fraction:
    """Entry (i, j) by direct truncated summation over intermediate indices."""
    t = len(wtheta)
    xj = rows_x.values[j - 1]
    # layer t partial sums: value[a] after consuming steps t..T
    values = {a: phi_k(a, xj, col) for a in range(cutoff + 1)}
    for step in range(t, 1, -1):
        w, th = wtheta.pair(step)
        wt = RowSpec([w], [th])
        nxt = {}
        for a_prev in range(cutoff + 1):
            acc = Fraction(0)
            for a in range(cutoff + 1):
                gv = g_entry(a, a_prev, wt, col)
                if gv != 0:
                    acc += gv * values[a]
            nxt[a_prev] = acc
        values = nxt
    w, th = wtheta.pair(1)
    wt = RowSpec([w], [th])
    return sum(h_entry(a, i, wt, col) * values[a] for a in range(cutoff + 1))


# -- correlation kernels --------------------------------------------------------


def kernel_kap(t: int, a: int, tp: int, ap: int, proc: AscendingFG) -> Fraction:
    """Exact double-residue evaluation of the two-time correlation kernel."""
    col, n = proc.col, proc.n
    xs = set(proc.xr.values)
    f = FactoredRational(1, ())
    for k in range(1, n + 1):
        f = f * FactoredRational(1, ((col.y(k), 1), (proc.xr.values[k - 1], -1)))
    f = f * FactoredRational(1, ((col.y(ap), -1),))
    for j in range(1, ap):
        f = f * FactoredRational(1, ((col.y(j) / col.s2(j), 1), (col.y(j), -1)))
    for c in range(1, tp + 1):
        w, th = proc.wtheta.pair(c)
        f = f * FactoredRational(1, ((w, 1), (w / th**2, -1)))

    ya, s2a = col.y(a), col.s2(a)
    g = FactoredRational(ya * (1 - 1 / s2a), ((ya / s2a, -1),))
    for k in range(1, n + 1):
        g = g * FactoredRational(1, ((proc.xr.values[k - 1], 1), (col.y(k), -1)))
    for j in range(1, a):
        g = g * FactoredRational(1, ((col.y(j), 1), (col.y(j) / col.s2(j), -1)))
    for d in range(1, t + 1):
        w, th = proc.wtheta.pair(d)
        g = g * FactoredRational(1, ((w / th**2, 1), (w, -1)))

    sys = {col.y(j) / col.s2(j) for j in range(1, max(a, ap) + 1)}
    u_poles = PoleSet(p for p in f.poles() if p not in xs)
    v_poles = PoleSet(p for p in g.poles() if p not in sys)
    for p in u_poles.enclosed & PoleSet(xs).enclosed:
        raise DegenerateParameterError(f"u-pole collides with excluded point {p}")
    nesting = "f_outside" if t <= tp else "g_outside"
    return separable_double_integral(f, g, u_poles, v_poles, nesting)


def kernel_km(a: int, ap: int, rows_x: RowSpec, wtheta: RowSpec, col: ColumnParams) -> Fraction:
    """Single-time kernel: the two-time kernel at equal times with all steps."""
    proc = AscendingFG(col, rows_x, wtheta)
    m = len(wtheta)
    return kernel_kap(m, a, m, ap, proc)


def schur_measure_kernel(a: int, ap: int, rows_x: RowSpec, wtheta: RowSpec, s) -> Fraction:
    """Independent flat-column kernel evaluated in the classical variables.

    Residue evaluation of the standard two-alphabet kernel; used as the
    cross-check target for the flat-column single-time kernel.
    """
    s2 = rat(s) ** 2
    n = len(rows_x)
    ts = [(1 - s2 * x) / (s2 * (1 - x)) for x in rows_x.values]
    betas = []
    gammas = []
    for j in range(1, len(wtheta) + 1):
        w, th = wtheta.pair(j)
        tw = w / th**2
        betas.append(s2 * (1 - w) / (1 - s2 * w))
        gammas.append(s2 * (tw - 1) / (1 - s2 * tw))
    fu = FactoredRational(1, ((Fraction(0), n - a),))
    for tv in ts:
        fu = fu * FactoredRational(-1 / tv, ((1 / tv, -1),))
    for b, c in zip(betas, gammas):
        fu = fu * FactoredRational(1, ((b, 1), (-c, -1)))
    gv = FactoredRational(1, ((Fraction(0), ap - n - 1),))
    for tv in ts:
        gv = gv * FactoredRational(-tv, ((1 / tv, 1),))
    for b, c in zip(betas, gammas):
        gv = gv * FactoredRational(1, ((-c, 1), (b, -1)))
    u_poles = PoleSet({p for p in fu.poles() if p not in {1 / tv for tv in ts}})
    v_poles = PoleSet(gv.poles())
    return separable_double_integral(fu, gv, u_poles, v_poles, "f_outside")


def correlation_det(points, proc: AscendingFG) -> Fraction:
    """det of the kernel over a finite point set {(t_i, a_i)}."""
    pts = list(points)
    mat = [[kernel_kap(t, a, tp, ap, proc) for (tp, ap) in pts] for (t, a) in pts]
    return det_exact(mat)


# -- brute-force oracle ----------------------------------------------------------


def one_step_supports(lam: Signature, max_part: int):
    """All nu reachable from lam by a single plain row, nu_1 <= max_part.

    The crossing vertex is available, so the support is the relaxed strip
    lam_j <= nu_j <= lam_{j-1} + 1 (nu_1 unbounded), not a horizontal strip.
    """
    n = len(lam)
    if n == 0:
        yield Signature(())
        return

    def rec(prefix, i):
        if i == n:
            yield Signature(tuple(prefix))
            return
        hi = max_part if i == 0 else min(prefix[-1], lam[i - 1] + 1, max_part)
        lo = lam[i]
        for p in range(hi, lo - 1, -1):
            yield from rec(prefix + [p], i + 1)

    yield from rec([], 0)


def _admissible_sequences(proc: AscendingFG, cutoff: int):
    start = Signature((0,) * proc.n)

    def rec(prefix, prev):
        if len(prefix) == proc.t:
            yield tuple(prefix)
            return
        for nu in one_step_supports(prev, cutoff):
            yield from rec(prefix + [nu], nu)

    yield from rec([], start)


class Enumeration:
    """Cached exhaustive enumeration of trajectories up to a max-part cutoff.

    Holds (configuration, weight) pairs so that many correlation queries can
    reuse one sweep; the certified tail is one minus the enumerated mass.
    """

    def __init__(self, proc: AscendingFG, cutoff: int):
        self.proc = proc
        self.cutoff = cutoff
        g_cache: dict = {}
        f_cache: dict = {}
        z = partition_z(proc)
        self.items: list[tuple[frozenset, Fraction]] = []
        total = Fraction(0)
        for seq in _admissible_sequences(proc, cutoff):
            wgt = Fraction(1)
            prev = Signature((0,) * proc.n)
            for t, lam in enumerate(seq, start=1):
                key = (t, prev, lam)
                if key not in g_cache:
                    w, th = proc.wtheta.pair(t)
                    g_cache[key] = g_skew_one_row(lam, prev, w, th, proc.col)
                wgt *= g_cache[key]
                prev = lam
                if wgt == 0:
                    break
            if wgt == 0:
                continue
            top = seq[-1]
            if top not in f_cache:
                f_cache[top] = f_skew_partition(top, Signature(()), proc.xr, proc.col)
            wgt *= f_cache[top] / z
            if wgt == 0:
                continue
            total += wgt
            cfg = frozenset(
                (tindex, p)
                for tindex, lam in enumerate(seq, start=1)
                for p in signature_points(lam)
            )
            self.items.append((cfg, wgt))
        self.total_mass = total
        self.tail = 1 - total

    def probability(self, points) -> Fraction:
        pts = frozenset(points)
        return sum((w for cfg, w in self.items if pts <= cfg), Fraction(0))


def brute_force_correlation(points, proc: AscendingFG, cutoff: int):
    """(probability, tail_bound) by exhaustive enumeration up to the cutoff.

    The tail bound is exact: weights are nonnegative and sum to one, so the
    un-enumerated mass equals one minus the enumerated mass.
    """
    enum = Enumeration(proc, cutoff)
    return enum.probability(points), enum.tail


# -- exact sampler ----------------------------------------------------------------


def transition_table(lam: Signature, step: int, proc: AscendingFG, cutoff: int):
    """Normalized one-step transition weights nu -> P(nu | lam), exact."""
    w, th = proc.wtheta.pair(step)
    f_lam = f_determinant(lam, proc.xr, proc.col)
    if f_lam == 0:
        raise ZeroDivisionError("conditioning signature has zero weight")
    pi = cross_product(proc.xr, RowSpec([w], [th]))
    table = []
    for nu in one_step_supports(lam, cutoff):
        gv = g_skew_one_row(nu, lam, w, th, proc.col)
        if gv == 0:
            continue
        p = gv * f_determinant(nu, proc.xr, proc.col) / (f_lam * pi)
        table.append((nu, p))
    return table


def _draw(rng: random.Random, table) -> Signature:
    u = Fraction(rng.getrandbits(64), 2**64)
    acc = Fraction(0)
    for nu, p in table:
        acc += p
        if u < acc:
            return nu
    return table[-1][0]


class TrajectorySampler:
    """Inverse-CDF sampler over exact transition tables, cached across draws."""

    def __init__(self, proc: AscendingFG, cutoff: int, eps=Fraction(1, 10**9)):
        self.proc = proc
        self.cutoff = cutoff
        self.eps = eps
        self._tables: dict = {}

    def _table(self, lam: Signature, step: int):
        key = (lam, step)
        if key not in self._tables:
            table = transition_table(lam, step, self.proc, self.cutoff)
            mass = sum(p for _, p in table)
            if 1 - mass > self.eps:
                raise ValueError(
                    f"truncated transition mass deficit {1 - mass} exceeds eps at "
                    f"step {step}; raise the cutoff"
                )
            self._tables[key] = table
        return self._tables[key]

    def sample(self, seed: int):
        rng = random.Random(seed)
        lam = Signature((0,) * self.proc.n)
        out = []
        for t in range(1, self.proc.t + 1):
            lam = _draw(rng, self._table(lam, t))
            out.append(lam)
        return out


def sample_ascending(proc: AscendingFG, seed: int, cutoff: int, eps=Fraction(1, 10**9)):
    """One trajectory of T signatures; deterministic in the seed.

    Raises when the truncated transition mass leaves more than eps on the
    table's tail (the caller should then enlarge the cutoff).
    """
    return TrajectorySampler(proc, cutoff, eps).sample(seed)


def sample_f_branch(lam_top: Signature, rows_x: RowSpec, col: ColumnParams, seed: int):
    """Downward chain lam_top = mu^(N) -> ... -> mu^(0) with exact weights.

    P(mu^(k-1) | mu^(k)) is proportional to the one-row removal weight times
    the ratio of the closed one-boundary values; support is finite.  The
    one-variable branching peels the first of the remaining variables, so
    mu^(k) is paired with the suffix (x_{N-k+1}, ..., x_N).
    """
    n = len(lam_top)
    if len(rows_x) != n:
        raise ValueError("need as many row variables as parts")

    def suffix(k: int) -> RowSpec:
        return RowSpec(rows_x.values[n - k :], rows_x.spins[n - k :])

    rng = random.Random(seed)
    chain = [lam_top]
    current = lam_top
    for k in range(n, 0, -1):
        x, r = rows_x.pair(n - k + 1)
        upper = f_determinant(current, suffix(k), col)
        table = []
        for mu in _one_fewer_interlacings(current):
            fv = f_skew_one_row(current, mu, x, r, col)
            if fv == 0:
                continue
            p = fv * f_determinant(mu, suffix(k - 1), col) / upper
            table.append((mu, p))
        total = sum(p for _, p in table)
        if total != 1:
            raise ArithmeticError(f"branch weights sum to {total}, not 1")
        current = _draw(rng, table)
        chain.append(current)
    return chain


def _one_fewer_interlacings(kappa: Signature):
    """All nu with one part fewer reachable by a single hatted row.

    Relaxed interlacing kappa_{i+1} <= nu_i <= kappa_i + 1 (the crossing
    vertex allows the +1); invalid combinations weigh zero downstream.
    """
    n = len(kappa)
    if n == 0:
        return
    if n == 1:
        yield Signature(())
        return

    def rec(prefix, i):
        if i == n - 1:
            yield Signature(tuple(prefix))
            return
        hi = kappa[i] + 1 if i == 0 else min(prefix[-1], kappa[i] + 1)
        lo = kappa[i + 1]
        for p in range(hi, lo - 1, -1):
            yield from rec(prefix + [p], i + 1)

    yield from rec([], 0)
