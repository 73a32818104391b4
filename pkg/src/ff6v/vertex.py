"""Six-vertex weights, Yang-Baxter checkers, and finite-window row operators.

Weight conventions.  A vertex state is ``(i1, j1, i2, j2)`` = (bottom, left,
top, right) occupancies; weights vanish unless i1 + j1 = i2 + j2.  Spins enter
only through their squares, so the primitives take ``r2 = r**2`` and
``s2 = s**2``; this lets special operators carry pairs whose ratio replaces a
square root without ever extracting one.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Literal

from .params import ColumnParams, DegenerateParameterError, rat

__all__ = [
    "STATES",
    "weight_w",
    "weight_w_hat",
    "weight_r",
    "check_free_fermion",
    "check_ybe",
    "WindowVector",
    "basis_vector",
    "RowOperator",
    "apply_row_operator",
    "COMMUTATION_RELATIONS",
    "check_commutation",
]

# The six conserving states in the traditional (a1, a2, b1, b2, c1, c2) order.
STATES = (
    (0, 0, 0, 0),
    (1, 1, 1, 1),
    (1, 0, 1, 0),
    (0, 1, 0, 1),
    (1, 0, 0, 1),
    (0, 1, 1, 0),
)


def _check_denominator(d: Fraction, what: str) -> Fraction:
    if d == 0:
        raise DegenerateParameterError(f"vanishing factor {what}")
    return d


def weight_w(e, x, y, r2, s2) -> Fraction:
    """Weight normalized so the empty vertex has weight 1.

    Takes squared spins r2, s2.  Zero on non-conserving states; raises on the
    pole s^{-2} y = x.
    """
    i1, j1, i2, j2 = e
    if i1 + j1 != i2 + j2:
        return Fraction(0)
    den = _check_denominator(y / s2 - x, "s^-2 y - x")
    if e == (0, 0, 0, 0):
        return Fraction(1)
    if e == (1, 1, 1, 1):
        return (x / r2 - y) / den
    if e == (1, 0, 1, 0):
        return (y / s2 - x / r2) / den
    if e == (0, 1, 0, 1):
        return (y - x) / den
    if e == (1, 0, 0, 1):
        return x * (1 / rat(r2) - 1) / den
    if e == (0, 1, 1, 0):
        return y * (1 / rat(s2) - 1) / den
    raise ValueError(f"not a vertex state: {e}")


def weight_w_hat(e, x, y, r2, s2) -> Fraction:
    """Weight normalized so the horizontal pass-through (0,1;0,1) has weight 1."""
    i1, j1, i2, j2 = e
    if i1 + j1 != i2 + j2:
        return Fraction(0)
    _check_denominator(y - x, "y - x")
    return weight_w(e, x, y, r2, s2) * (y / s2 - x) / (y - x)


def weight_r(e, x1, r1_2, x2, r2_2) -> Fraction:
    """Cross weights intertwining two row parameter pairs (squared spins)."""
    i1, j1, i2, j2 = e
    if i1 + j1 != i2 + j2:
        return Fraction(0)
    den = _check_denominator(x1 - x2 / rat(r2_2), "x1 - r2^-2 x2")
    if e == (0, 0, 0, 0):
        return Fraction(1)
    if e == (1, 1, 1, 1):
        return (x2 - x1 / r1_2) / den
    if e == (1, 0, 1, 0):
        return (x1 / r1_2 - x2 / r2_2) / den
    if e == (0, 1, 0, 1):
        return (x1 - x2) / den
    if e == (1, 0, 0, 1):
        return x1 * (1 - 1 / rat(r1_2)) / den
    if e == (0, 1, 1, 0):
        return x2 * (1 - 1 / rat(r2_2)) / den
    raise ValueError(f"not a vertex state: {e}")


def _abc(weight: Callable[[tuple], Fraction]):
    a1 = weight((0, 0, 0, 0))
    a2 = weight((1, 1, 1, 1))
    b1 = weight((1, 0, 1, 0))
    b2 = weight((0, 1, 0, 1))
    c1 = weight((1, 0, 0, 1))
    c2 = weight((0, 1, 1, 0))
    return a1, a2, b1, b2, c1, c2


def check_free_fermion(x, y, r2, s2) -> bool:
    """a1 a2 + b1 b2 = c1 c2 for both weight normalizations at (x, y, r2, s2)."""
    ok = True
    for fam in (weight_w, weight_w_hat):
        a1, a2, b1, b2, c1, c2 = _abc(lambda e: fam(e, x, y, r2, s2))
        ok = ok and (a1 * a2 + b1 * b2 == c1 * c2)
    return ok


def check_ybe(x1, r1_2, x2, r2_2, y, s2, families=("ww", "wh", "hw", "hh")):
    """Exhaustive Yang-Baxter check over all 64 boundary tuples.

    For each placement of plain/hatted weights on the two rows, compares the
    cross-vertex sums on both sides.  Returns (True, None) or
    (False, (family, boundary)) at the first failure.
    """
    fam_map = {"w": weight_w, "h": weight_w_hat}
    two = (0, 1)
    for fam in families:
        wA = fam_map[fam[0]]  # weights carrying (x1, r1)
        wB = fam_map[fam[1]]  # weights carrying (x2, r2)
        for i1, i2, i3, j1, j2, j3 in itertools.product(*([two] * 6)):
            lhs = Fraction(0)
            for k1, k2, k3 in itertools.product(two, two, two):
                lhs += (
                    weight_r((i2, i1, k2, k1), x1, r1_2, x2, r2_2)
                    * wA((i3, k1, k3, j1), x1, y, r1_2, s2)
                    * wB((k3, k2, j3, j2), x2, y, r2_2, s2)
                )
            rhs = Fraction(0)
            for k1, k2, k3 in itertools.product(two, two, two):
                rhs += (
                    weight_r((k2, k1, j2, j1), x1, r1_2, x2, r2_2)
                    * wB((i3, i2, k3, k2), x2, y, r2_2, s2)
                    * wA((k3, i1, j3, k1), x1, y, r1_2, s2)
                )
            if lhs != rhs:
                return False, (fam, (i1, i2, i3, j1, j2, j3))
    return True, None


# -- Row operators on finite windows ------------------------------------------


@dataclass(frozen=True)
class WindowVector:
    """Sparse vector over occupancy subsets of an integer window [lo, hi]."""

    lo: int
    hi: int
    amplitudes: dict

    def __post_init__(self):
        object.__setattr__(
            self,
            "amplitudes",
            {frozenset(k): rat(v) for k, v in self.amplitudes.items() if v != 0},
        )

    def coefficient(self, subset) -> Fraction:
        return self.amplitudes.get(frozenset(subset), Fraction(0))

    def __add__(self, other: "WindowVector") -> "WindowVector":
        if (self.lo, self.hi) != (other.lo, other.hi):
            raise ValueError("window mismatch")
        amps = dict(self.amplitudes)
        for k, v in other.amplitudes.items():
            amps[k] = amps.get(k, Fraction(0)) + v
        return WindowVector(self.lo, self.hi, amps)

    def __sub__(self, other: "WindowVector") -> "WindowVector":
        return self + other.scale(-1)

    def scale(self, c) -> "WindowVector":
        c = rat(c)
        return WindowVector(self.lo, self.hi, {k: c * v for k, v in self.amplitudes.items()})

    def is_zero(self) -> bool:
        return not self.amplitudes

    def inner(self, subset) -> Fraction:
        """Pairing with the basis vector of `subset` (orthonormal basis)."""
        return self.coefficient(subset)


def basis_vector(lo: int, hi: int, subset=()) -> WindowVector:
    sub = frozenset(subset)
    if any(not (lo <= k <= hi) for k in sub):
        raise ValueError(f"subset {sorted(sub)} exits window [{lo},{hi}]")
    return WindowVector(lo, hi, {sub: Fraction(1)})


# Boundary (left, right) horizontal occupancies for the four plain operators;
# the hatted operators share the same letter-to-boundary table.
_BOUNDARY = {"A": (1, 1), "B": (0, 1), "C": (1, 0), "D": (0, 0)}


@dataclass(frozen=True)
class RowOperator:
    """One-row transfer operator acting on :class:`WindowVector`.

    kind: 'A'..'D' act bottom-to-top with plain weights; 'Ah'..'Dh' act
    top-to-bottom with hatted weights.  `normalized` rescales by the window
    part of the empty-row weight so the operator stabilizes as the window
    grows (requires lo <= 0 < hi).
    """

    kind: Literal["A", "B", "C", "D", "Ah", "Bh", "Ch", "Dh"]
    x: Fraction
    r2: Fraction
    col: ColumnParams
    col_neg: ColumnParams | None = None
    normalized: bool = False

    def _col_pair(self, k: int):
        if k >= 1:
            return self.col.y(k), self.col.s2(k)
        if self.col_neg is None:
            raise ValueError("operator window reaches k <= 0 but no negative-index columns given")
        return self.col_neg.y(1 - k), self.col_neg.s2(1 - k)

    def _normalizer(self, lo: int, hi: int) -> Fraction:
        # Reciprocal of the product of per-site weights along the reference
        # configuration (occupied straight-through at k <= 0, empty pass at
        # k >= 1 for plain-D-type rows, etc.).
        kind = self.kind.rstrip("h")
        x, r2 = self.x, self.r2
        out = Fraction(1)
        for k in range(lo, min(hi, 0) + 1):
            y, s2 = self._col_pair(k)
            if kind in ("A", "C"):  # empty site weight is the (1,1;1,1) vertex
                out *= r2 * (y - s2 * x) / (s2 * (x - r2 * y))
            else:  # (1,0;1,0) pass-through
                out *= (y - s2 * x) / (y - s2 * x / r2)
        if kind in ("A", "B"):
            for k in range(max(lo, 1), hi + 1):
                y, s2 = self._col_pair(k)
                out *= (y - s2 * x) / (s2 * (y - x))
        return out

    def apply(self, v: WindowVector) -> WindowVector:
        lo, hi = v.lo, v.hi
        hatted = self.kind.endswith("h")
        letter = self.kind.rstrip("h")
        j_left, j_right = _BOUNDARY[letter]
        weight = weight_w_hat if hatted else weight_w
        out: dict = {}
        for subset, amp in v.amplitudes.items():
            # states: (partial new subset, horizontal occupancy) -> amplitude
            states = {((), j_left): amp}
            for k in range(lo, hi + 1):
                y, s2 = self._col_pair(k)
                occ_in = 1 if k in subset else 0
                nxt: dict = {}
                for (partial, h), a in states.items():
                    for occ_out in (0, 1):
                        if hatted:
                            # hatted rows read top-to-bottom: input occupancy is
                            # the top edge, output the bottom edge
                            i1, i2 = occ_out, occ_in
                        else:
                            i1, i2 = occ_in, occ_out
                        j2 = i1 + h - i2
                        if j2 not in (0, 1):
                            continue
                        wt = weight((i1, h, i2, j2), self.x, y, self.r2, s2)
                        if wt == 0:
                            continue
                        key = (partial + (k,) if occ_out else partial, j2)
                        nxt[key] = nxt.get(key, Fraction(0)) + a * wt
                states = nxt
            for (partial, h), a in states.items():
                if h != j_right:
                    continue
                key = frozenset(partial)
                out[key] = out.get(key, Fraction(0)) + a
        result = WindowVector(lo, hi, out)
        if self.normalized:
            if hatted:
                raise ValueError("normalization is defined for the plain operators only")
            if not (lo <= 0 < hi):
                raise ValueError("normalized operators need a window containing [.,0] and [1,.]")
            result = result.scale(self._normalizer(lo, hi))
        return result


def apply_row_operator(
    kind: str,
    x,
    r2,
    v: WindowVector,
    col: ColumnParams,
    col_neg: ColumnParams | None = None,
    normalized: bool = False,
) -> WindowVector:
    """Apply a one-row operator (by squared spin r2) to a window vector."""
    return RowOperator(kind, rat(x), rat(r2), col, col_neg, normalized).apply(v)


# -- Commutation relations -----------------------------------------------------
#
# Each relation is a pair of sides; a side is a list of terms
# (coefficient(x1, q1, x2, q2), [(kind, which, ...) applied right-to-left]),
# with q = r^{-2} and `which` in {1, 2} picking (x1, q1) or (x2, q2).


def _rel(lhs, rhs):
    return {"lhs": lhs, "rhs": rhs}


def _c(f):
    return f


COMMUTATION_RELATIONS = {
    # plain operators
    "AA": _rel(
        [(_c(lambda x1, q1, x2, q2: 1), [("A", 2), ("A", 1)])],
        [(_c(lambda x1, q1, x2, q2: 1), [("A", 1), ("A", 2)])],
    ),
    "BB": _rel(
        [(_c(lambda x1, q1, x2, q2: 1), [("B", 2), ("B", 1)])],
        [(_c(lambda x1, q1, x2, q2: (q1 * x1 - x2) / (q2 * x2 - x1)), [("B", 1), ("B", 2)])],
    ),
    "CC": _rel(
        [(_c(lambda x1, q1, x2, q2: 1), [("C", 2), ("C", 1)])],
        [(_c(lambda x1, q1, x2, q2: (q2 * x2 - x1) / (q1 * x1 - x2)), [("C", 1), ("C", 2)])],
    ),
    "DD": _rel(
        [(_c(lambda x1, q1, x2, q2: 1), [("D", 2), ("D", 1)])],
        [(_c(lambda x1, q1, x2, q2: 1), [("D", 1), ("D", 2)])],
    ),
    "BD": _rel(
        [(_c(lambda x1, q1, x2, q2: 1), [("B", 2), ("D", 1)])],
        [
            (_c(lambda x1, q1, x2, q2: (q1 * x1 - x2) / (x1 - x2)), [("D", 1), ("B", 2)]),
            (_c(lambda x1, q1, x2, q2: (1 - q2) * x2 / (x1 - x2)), [("D", 2), ("B", 1)]),
        ],
    ),
    "DB": _rel(
        [(_c(lambda x1, q1, x2, q2: 1), [("D", 2), ("B", 1)])],
        [
            (
                _c(lambda x1, q1, x2, q2: (q1 * x1 - x2) / (q1 * x1 - q2 * x2)),
                [("B", 1), ("D", 2)],
            ),
            (
                _c(lambda x1, q1, x2, q2: (1 - q1) * x1 / (q1 * x1 - q2 * x2)),
                [("B", 2), ("D", 1)],
            ),
        ],
    ),
    "DC": _rel(
        [(_c(lambda x1, q1, x2, q2: 1), [("D", 2), ("C", 1)])],
        [
            (_c(lambda x1, q1, x2, q2: (q2 * x2 - x1) / (x2 - x1)), [("C", 1), ("D", 2)]),
            (_c(lambda x1, q1, x2, q2: (1 - q2) * x2 / (x2 - x1)), [("C", 2), ("D", 1)]),
        ],
    ),
    "CD": _rel(
        [(_c(lambda x1, q1, x2, q2: 1), [("C", 2), ("D", 1)])],
        [
            (
                _c(lambda x1, q1, x2, q2: (q2 * x2 - x1) / (q2 * x2 - q1 * x1)),
                [("D", 1), ("C", 2)],
            ),
            (
                _c(lambda x1, q1, x2, q2: x1 * (1 - q1) / (q2 * x2 - q1 * x1)),
                [("D", 2), ("C", 1)],
            ),
        ],
    ),
    "AC": _rel(
        [(_c(lambda x1, q1, x2, q2: 1), [("A", 2), ("C", 1)])],
        [
            (_c(lambda x1, q1, x2, q2: (q2 * x2 - x1) / (x1 - x2)), [("C", 1), ("A", 2)]),
            (_c(lambda x1, q1, x2, q2: x2 * (1 - q2) / (x1 - x2)), [("C", 2), ("A", 1)]),
        ],
    ),
    "ADBC1": _rel(
        [
            (
                _c(lambda x1, q1, x2, q2: x1 * (q1 - 1) / (q2 * x2 - x1)),
                [("D", 2), ("A", 1)],
            ),
            (
                _c(lambda x1, q1, x2, q2: (q2 * x2 - q1 * x1) / (q2 * x2 - x1)),
                [("C", 2), ("B", 1)],
            ),
        ],
        [
            (
                _c(lambda x1, q1, x2, q2: x1 * (q1 - 1) / (q2 * x2 - x1)),
                [("D", 1), ("A", 2)],
            ),
            (
                _c(lambda x1, q1, x2, q2: (x2 - x1) / (q2 * x2 - x1)),
                [("B", 1), ("C", 2)],
            ),
        ],
    ),
    "ADBC2": _rel(
        [
            (
                _c(lambda x1, q1, x2, q2: x2 * (q2 - 1) / (q2 * x2 - x1)),
                [("A", 2), ("D", 1)],
            ),
            (
                _c(lambda x1, q1, x2, q2: (x2 - x1) / (q2 * x2 - x1)),
                [("B", 2), ("C", 1)],
            ),
        ],
        [
            (
                _c(lambda x1, q1, x2, q2: x2 * (q2 - 1) / (q2 * x2 - x1)),
                [("A", 1), ("D", 2)],
            ),
            (
                _c(lambda x1, q1, x2, q2: (q2 * x2 - q1 * x1) / (q2 * x2 - x1)),
                [("C", 1), ("B", 2)],
            ),
        ],
    ),
    # hatted operators
    "AhAh": _rel(
        [(_c(lambda x1, q1, x2, q2: 1), [("Ah", 2), ("Ah", 1)])],
        [(_c(lambda x1, q1, x2, q2: 1), [("Ah", 1), ("Ah", 2)])],
    ),
    "BhBh": _rel(
        [(_c(lambda x1, q1, x2, q2: 1), [("Bh", 2), ("Bh", 1)])],
        [(_c(lambda x1, q1, x2, q2: (x2 - q1 * x1) / (x1 - q2 * x2)), [("Bh", 1), ("Bh", 2)])],
    ),
    "BhDh": _rel(
        [(_c(lambda x1, q1, x2, q2: 1), [("Bh", 2), ("Dh", 1)])],
        [
            (_c(lambda x1, q1, x2, q2: (q1 * x1 - x2) / (x1 - x2)), [("Dh", 1), ("Bh", 2)]),
            (_c(lambda x1, q1, x2, q2: (1 - q2) * x2 / (x1 - x2)), [("Dh", 2), ("Bh", 1)]),
        ],
    ),
    "BhAh": _rel(
        [(_c(lambda x1, q1, x2, q2: 1), [("Bh", 2), ("Ah", 1)])],
        [
            (_c(lambda x1, q1, x2, q2: (q1 * x1 - x2) / (x2 - x1)), [("Ah", 1), ("Bh", 2)]),
            (_c(lambda x1, q1, x2, q2: (1 - q2) * x2 / (x2 - x1)), [("Ah", 2), ("Bh", 1)]),
        ],
    ),
    "DhDh": _rel(
        [(_c(lambda x1, q1, x2, q2: 1), [("Dh", 2), ("Dh", 1)])],
        [(_c(lambda x1, q1, x2, q2: 1), [("Dh", 1), ("Dh", 2)])],
    ),
}


def _apply_side(side, x1, r1_2, x2, r2_2, v, col):
    q1, q2 = 1 / rat(r1_2), 1 / rat(r2_2)
    total = None
    for coeff_fn, ops in side:
        w = v
        for kind, which in reversed(ops):
            x, r2 = (x1, r1_2) if which == 1 else (x2, r2_2)
            w = apply_row_operator(kind, x, r2, w, col)
        w = w.scale(coeff_fn(x1, q1, x2, q2))
        total = w if total is None else total + w
    return total


def check_commutation(
    relation_id: str,
    x1,
    r1_2,
    x2,
    r2_2,
    col: ColumnParams,
    window: tuple[int, int] = (1, 4),
    trials: int = 6,
    seed: int = 0,
):
    """Apply both sides of a listed relation to random basis vectors; exact compare.

    Returns (True, None) or (False, failing_subset).
    """
    rel = COMMUTATION_RELATIONS[relation_id]
    lo, hi = window
    rng = random.Random(seed)
    sites = list(range(lo, hi + 1))
    for _ in range(trials):
        subset = frozenset(k for k in sites if rng.random() < 0.5)
        v = basis_vector(lo, hi, subset)
        lhs = _apply_side(rel["lhs"], x1, r1_2, x2, r2_2, v, col)
        rhs = _apply_side(rel["rhs"], x1, r1_2, x2, r2_2, v, col)
        if not (lhs - rhs).is_zero():
            return False, subset
    return True, None
