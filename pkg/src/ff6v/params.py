"""Exact-rational parameter banks, signatures, and admissibility predicates.

All scalar parameters live in ``fractions.Fraction``; floats never enter this
layer.  Column data (``y_j``, ``s_j``) are infinite sequences encoded by a
finite prefix plus a constant tail, which is all the downstream formulas ever
need.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "Rational",
    "rat",
    "Signature",
    "ColumnParams",
    "RowSpec",
    "signature_points",
    "points_to_signature",
    "all_signatures",
    "is_nonnegative_spec",
    "is_compatible",
    "compatibility_ratio",
    "DegenerateParameterError",
    "load_bank",
    "dump_bank",
]

Rational = Fraction


class DegenerateParameterError(ArithmeticError):
    """A parameter coincidence made a denominator vanish."""


def rat(value, den=None) -> Fraction:
    """Coerce ints, "p/q" strings, or pairs to an exact Fraction."""
    if den is not None:
        return Fraction(value, den)
    if isinstance(value, str):
        return Fraction(value)
    return Fraction(value)


@dataclass(frozen=True)
class Signature:
    """Nonincreasing tuple of nonnegative integers, possibly empty."""

    parts: tuple[int, ...]

    def __init__(self, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts must be nonincreasing: {parts}")
        if parts and parts[-1] < 0:
            raise ValueError(f"parts must be nonnegative: {parts}")
        object.__setattr__(self, "parts", parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __repr__(self) -> str:
        return f"Signature{self.parts}"

    @property
    def size(self) -> int:
        return sum(self.parts)

    def durfee(self) -> int:
        """Largest d with parts[d-1] >= d (side of the main diagonal square)."""
        d = 0
        for i, p in enumerate(self.parts, start=1):
            if p >= i:
                d = i
        return d

    def transpose(self) -> "Signature":
        if not self.parts or self.parts[0] == 0:
            return Signature(())
        cols = [0] * self.parts[0]
        for p in self.parts:
            for c in range(p):
                cols[c] += 1
        return Signature(cols)

    def pad(self, n: int) -> "Signature":
        """Extend with zero parts up to length n."""
        if n < len(self.parts):
            raise ValueError("cannot pad to a shorter length")
        return Signature(self.parts + (0,) * (n - len(self.parts)))


EMPTY = Signature(())


def signature_points(lam: Signature) -> frozenset[int]:
    """Strictly decreasing point set {lam_i + N + 1 - i} on the positive axis."""
    n = len(lam)
    return frozenset(lam[i] + n - i for i in range(n))


def points_to_signature(points: Iterable[int]) -> Signature:
    """Inverse of :func:`signature_points`; validates the point set."""
    pts_list = [int(p) for p in points]
    pts = sorted(set(pts_list), reverse=True)
    if len(pts) != len(pts_list):
        raise ValueError(f"points must be distinct: {pts_list}")
    if pts and pts[-1] < 1:
        raise ValueError(f"points must be >= 1: {pts}")
    n = len(pts)
    parts = [pts[i] - (n - i) for i in range(n)]
    if any(p < 0 for p in parts):
        raise ValueError(f"point set {pts} is not of signature form")
    return Signature(parts)


def all_signatures(num_parts: int, max_part: int):
    """Yield every signature with `num_parts` parts, largest part <= max_part."""
    if num_parts == 0:
        yield EMPTY
        return

    def rec(prefix, bound):
        if len(prefix) == num_parts:
            yield Signature(prefix)
            return
        for p in range(bound, -1, -1):
            yield from rec(prefix + [p], p)

    yield from rec([], max_part)


@dataclass(frozen=True)
class ColumnParams:
    """Column sequences y_j, s_j (j >= 1) with constant tails.

    ``y(j)``/``s(j)`` return the materialized value for j <= len(prefix) and
    the tail value beyond; the tail makes every downstream truncation exact.
    """

    y_prefix: tuple[Fraction, ...]
    s_prefix: tuple[Fraction, ...]
    y_tail: Fraction
    s_tail: Fraction

    def __init__(self, y_prefix=(), s_prefix=(), y_tail=1, s_tail=Fraction(1, 2)):
        object.__setattr__(self, "y_prefix", tuple(rat(v) for v in y_prefix))
        object.__setattr__(self, "s_prefix", tuple(rat(v) for v in s_prefix))
        object.__setattr__(self, "y_tail", rat(y_tail))
        object.__setattr__(self, "s_tail", rat(s_tail))

    @property
    def tail_start(self) -> int:
        return max(len(self.y_prefix), len(self.s_prefix)) + 1

    def y(self, j: int) -> Fraction:
        if j < 1:
            raise IndexError(f"column index must be >= 1, got {j}")
        return self.y_prefix[j - 1] if j <= len(self.y_prefix) else self.y_tail

    def s(self, j: int) -> Fraction:
        if j < 1:
            raise IndexError(f"column index must be >= 1, got {j}")
        return self.s_prefix[j - 1] if j <= len(self.s_prefix) else self.s_tail

    def s2(self, j: int) -> Fraction:
        return self.s(j) ** 2

    def validate(self, eps: Fraction | None = None) -> None:
        """Check 0 < s_j < 1 and y_j > 0 (strengthened to eps-margins if given)."""
        lo = eps if eps is not None else Fraction(0)
        hi = (1 - eps) if eps is not None else Fraction(1)
        ylo = eps if eps is not None else Fraction(0)
        for j in range(1, self.tail_start + 1):
            if not (lo < self.s(j) < hi):
                raise ValueError(f"s_{j}={self.s(j)} outside ({lo},{hi})")
            if self.y(j) <= ylo:
                raise ValueError(f"y_{j}={self.y(j)} not > {ylo}")

    @staticmethod
    def constant(y, s) -> "ColumnParams":
        return ColumnParams((), (), y, s)


@dataclass(frozen=True)
class RowSpec:
    """Row variables (x_i or w_i) paired with spins (r_i or theta_i)."""

    values: tuple[Fraction, ...]
    spins: tuple[Fraction, ...]

    def __init__(self, values: Sequence = (), spins: Sequence = ()):
        values = tuple(rat(v) for v in values)
        spins = tuple(rat(v) for v in spins)
        if len(values) != len(spins):
            raise ValueError("values and spins must have equal length")
        if any(sp == 0 for sp in spins):
            raise ValueError("spins must be nonzero")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "spins", spins)

    def __len__(self) -> int:
        return len(self.values)

    def pair(self, i: int) -> tuple[Fraction, Fraction]:
        """1-based (value, spin) pair."""
        return self.values[i - 1], self.spins[i - 1]

    def prefix(self, k: int) -> "RowSpec":
        return RowSpec(self.values[:k], self.spins[:k])


def is_nonnegative_spec(
    row: RowSpec, col: ColumnParams, *, allow_nonpositive_x: bool = False
) -> bool:
    """True iff x_i < y_j < r_i^{-2} x_i < s_j^{-2} y_j for all rows i, columns j.

    Positivity of the x_i (and implicitly of the window 0 < x_i) is enforced
    unless `allow_nonpositive_x`: the vertex weights depend only on parameter
    differences, so the probabilistic ordering survives a global shift.
    """
    cols = list(range(1, col.tail_start + 1))
    for i in range(1, len(row) + 1):
        x, r = row.pair(i)
        if not allow_nonpositive_x and x <= 0:
            return False
        rx = x / r**2
        for j in cols:
            y, s2 = col.y(j), col.s2(j)
            if not (x < y < rx < y / s2):
                return False
    return True


def compatibility_ratio(rho: RowSpec, rho_prime: RowSpec, col: ColumnParams) -> Fraction:
    """Largest tail ratio |(s^{-2}y - x_i)(y - w_j) / ((y - x_i)(s^{-2}y - w_j))|.

    Evaluated at the constant column tail; this is the per-column factor whose
    infinite product must decay for the Cauchy series to converge.
    """
    y, s2 = col.y_tail, col.s_tail**2
    sy = y / s2
    best = Fraction(0)
    for x in rho.values:
        if y == x:
            raise DegenerateParameterError(f"x={x} collides with tail y={y}")
        for w in rho_prime.values:
            if sy == w:
                raise DegenerateParameterError(f"w={w} collides with tail s^-2 y={sy}")
            ratio = abs((sy - x) * (y - w) / ((y - x) * (sy - w)))
            best = max(best, ratio)
    return best


def is_compatible(
    rho: RowSpec, rho_prime: RowSpec, col: ColumnParams
) -> tuple[bool, Fraction]:
    """Compatibility of two specs at the column tail; returns (ok, delta).

    delta = 1 - max ratio is the certified geometric gap used by every
    truncated-series bound downstream.
    """
    if len(rho) == 0 or len(rho_prime) == 0:
        return True, Fraction(1)
    ratio = compatibility_ratio(rho, rho_prime, col)
    return ratio < 1, 1 - ratio


# -- JSON parameter banks ----------------------------------------------------
#
# Schema: {"y": [...], "s": [...], "y_tail": "p/q", "s_tail": "p/q",
#          "x": [...], "r": [...], "w": [...], "theta": [...]}
# with every rational encoded as the string "p/q".


def _enc(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def load_bank(path_or_dict) -> dict:
    """Load a parameter bank; returns {"col": ColumnParams, "xr": RowSpec, "wtheta": RowSpec}."""
    if isinstance(path_or_dict, dict):
        raw = path_or_dict
    else:
        with open(path_or_dict, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    col = ColumnParams(
        [rat(v) for v in raw.get("y", [])],
        [rat(v) for v in raw.get("s", [])],
        rat(raw.get("y_tail", "1/1")),
        rat(raw.get("s_tail", "1/2")),
    )
    xr = RowSpec([rat(v) for v in raw.get("x", [])], [rat(v) for v in raw.get("r", [])])
    wt = RowSpec([rat(v) for v in raw.get("w", [])], [rat(v) for v in raw.get("theta", [])])
    return {"col": col, "xr": xr, "wtheta": wt}


def dump_bank(col: ColumnParams, xr: RowSpec, wtheta: RowSpec, path=None) -> dict:
    """Serialize a parameter bank to the JSON schema (and optionally a file)."""
    raw = {
        "y": [_enc(v) for v in col.y_prefix],
        "s": [_enc(v) for v in col.s_prefix],
        "y_tail": _enc(col.y_tail),
        "s_tail": _enc(col.s_tail),
        "x": [_enc(v) for v in xr.values],
        "r": [_enc(v) for v in xr.spins],
        "w": [_enc(v) for v in wtheta.values],
        "theta": [_enc(v) for v in wtheta.spins],
    }
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(raw, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return raw
