"""Exact residue calculus over factored univariate rational functions.

Every integrand downstream is a nonzero constant times a product of linear
factors (u - root)^exponent, so that is the only shape supported: it keeps
cancellation, evaluation, and residues exact.  Contour integrals are finite
residue sums over a declared pole set, which is also their definition when no
literal curve separates the pole families.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .params import DegenerateParameterError, rat

__all__ = [
    "FactoredRational",
    "PoleSet",
    "one",
    "monomial",
    "residue_at",
    "contour_integral",
    "separable_double_integral",
    "sum_all_residues",
]


@dataclass(frozen=True)
class FactoredRational:
    """constant * prod (u - root)^exponent with exact rational data.

    Roots are canonicalized: equal roots merge exponents, zero exponents drop,
    and the zero function is represented by constant == 0 with no factors.
    """

    constant: Fraction
    factors: tuple[tuple[Fraction, int], ...]

    def __init__(self, constant=1, factors: Iterable = ()):
        constant = rat(constant)
        merged: dict[Fraction, int] = {}
        for root, expo in factors:
            root = rat(root)
            expo = int(expo)
            merged[root] = merged.get(root, 0) + expo
        canon = tuple(
            sorted(((r, e) for r, e in merged.items() if e != 0), key=lambda t: (t[0], t[1]))
        )
        if constant == 0:
            canon = ()
        object.__setattr__(self, "constant", constant)
        object.__setattr__(self, "factors", canon)

    # -- algebra ---------------------------------------------------------
    def __mul__(self, other) -> "FactoredRational":
        if isinstance(other, FactoredRational):
            return FactoredRational(
                self.constant * other.constant, self.factors + other.factors
            )
        return FactoredRational(self.constant * rat(other), self.factors)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "FactoredRational":
        if isinstance(other, FactoredRational):
            return self * other.inverse()
        return FactoredRational(self.constant / rat(other), self.factors)

    def inverse(self) -> "FactoredRational":
        if self.constant == 0:
            raise ZeroDivisionError("inverse of the zero function")
        return FactoredRational(
            1 / self.constant, tuple((r, -e) for r, e in self.factors)
        )

    def shift_pole(self, root, expo: int) -> "FactoredRational":
        """Multiply by (u - root)^expo."""
        return FactoredRational(self.constant, self.factors + ((rat(root), int(expo)),))

    def cancel(self) -> "FactoredRational":
        """Already canonical; kept as an explicit no-op for call sites."""
        return self

    # -- queries ---------------------------------------------------------
    def exponent_at(self, root) -> int:
        root = rat(root)
        for r, e in self.factors:
            if r == root:
                return e
        return 0

    def poles(self) -> dict[Fraction, int]:
        """root -> multiplicity for every genuine pole (negative exponent)."""
        return {r: -e for r, e in self.factors if e < 0}

    def degree(self) -> int:
        """Degree at infinity: sum of exponents (value ~ const * u^degree)."""
        return sum(e for _, e in self.factors)

    def is_zero(self) -> bool:
        return self.constant == 0

    def evaluate(self, u) -> Fraction:
        u = rat(u)
        out = self.constant
        for r, e in self.factors:
            base = u - r
            if base == 0:
                if e < 0:
                    raise DegenerateParameterError(f"evaluation at pole u={u}")
                if e > 0:
                    return Fraction(0)
                continue
            out *= base**e
        return out

    # -- derivatives via logarithmic differentiation ---------------------
    def derivatives_at(self, u, order: int) -> list[Fraction]:
        """[f(u), f'(u), ..., f^(order)(u)] at a regular point u.

        Uses h' = h * L with L = sum e_i/(u - r_i), whose derivatives are
        closed-form, so everything stays in the factored representation.
        """
        u = rat(u)
        for r, e in self.factors:
            if u == r and e < 0:
                raise DegenerateParameterError(f"derivative at pole u={u}")
        h0 = self.evaluate(u)
        if order == 0:
            return [h0]
        # L^{(j)}(u) = sum_i e_i * (-1)^j j! / (u - r_i)^{j+1}; vanished factors
        # (e_i > 0 with u == r_i) force h == 0 with all derivatives entering
        # through the product rule, handled by the special case below.
        if h0 == 0:
            # u is a zero of some positive-exponent factor: differentiate the
            # factorization f = (u-r0)^m * g directly.
            root0 = next(r for r, e in self.factors if r == u and e > 0)
            m = self.exponent_at(root0)
            g = FactoredRational(
                self.constant, tuple((r, e) for r, e in self.factors if r != root0)
            )
            gders = g.derivatives_at(u, order)
            out = []
            for n in range(order + 1):
                # d^n/du^n [(u-root0)^m g] at u = root0
                if n < m:
                    out.append(Fraction(0))
                else:
                    out.append(
                        Fraction(math.comb(n, m) * math.factorial(m)) * gders[n - m]
                    )
            return out
        lders = []
        for j in range(order):
            acc = Fraction(0)
            sign = Fraction((-1) ** j * math.factorial(j))
            for r, e in self.factors:
                acc += e * sign / (u - r) ** (j + 1)
            lders.append(acc)
        hs = [h0]
        for n in range(order):
            nxt = Fraction(0)
            for k in range(n + 1):
                nxt += Fraction(math.comb(n, k)) * hs[k] * lders[n - k]
            hs.append(nxt)
        return hs


def one() -> FactoredRational:
    return FactoredRational(1, ())


def monomial(root, expo: int, constant=1) -> FactoredRational:
    return FactoredRational(constant, ((rat(root), int(expo)),))


@dataclass(frozen=True)
class PoleSet:
    """Positively oriented contour encoded by the set of enclosed poles."""

    enclosed: frozenset[Fraction]

    def __init__(self, enclosed: Iterable = ()):
        object.__setattr__(self, "enclosed", frozenset(rat(p) for p in enclosed))


def residue_at(f: FactoredRational, pole) -> Fraction:
    """Residue of f at the given point (0 with a silent pass if not a pole).

    Multiplicity-m poles go through the (m-1)-th derivative of the remaining
    factored product, evaluated by logarithmic-derivative recursion.
    """
    pole = rat(pole)
    m = -f.exponent_at(pole)
    if m <= 0:
        return Fraction(0)
    rest = FactoredRational(f.constant, tuple((r, e) for r, e in f.factors if r != pole))
    if m == 1:
        return rest.evaluate(pole)
    d = rest.derivatives_at(pole, m - 1)[m - 1]
    return d / math.factorial(m - 1)


def contour_integral(f: FactoredRational, poles: PoleSet) -> Fraction:
    """(1/2*pi*i) * closed integral = sum of residues over the enclosed poles.

    Members of the pole set that are not genuine poles of f contribute 0.
    """
    return sum((residue_at(f, p) for p in poles.enclosed), Fraction(0))


def _inner_partial_fractions(g: FactoredRational, poles: PoleSet, sign: int):
    """Partial fractions of (1/2*pi*i) * contour integral of g(v)/(u - v) dv.

    Returns {c: [beta_1, ..., beta_m]} with the integral equal to
    sum_c sum_k beta_k / (u - c)^k, valid for u outside the contour.
    `sign` = +1 integrates g(v)/(u-v), -1 integrates g(v)/(v-u).
    """
    out: dict[Fraction, list[Fraction]] = {}
    for c in poles.enclosed:
        m = -g.exponent_at(c)
        if m <= 0:
            continue
        rest = FactoredRational(g.constant, tuple((r, e) for r, e in g.factors if r != c))
        ders = rest.derivatives_at(c, m - 1)
        betas = [Fraction(0)] * (m + 1)
        # Res_{v=c} g(v)/(u-v) = sum_i  h^{(i)}(c)/i! * 1/(u-c)^{m-i}
        for i in range(m):
            betas[m - i] += sign * ders[i] / math.factorial(i)
        out[c] = betas
    return out


def separable_double_integral(
    f: FactoredRational,
    g: FactoredRational,
    f_poles: PoleSet,
    g_poles: PoleSet,
    nesting: str,
) -> Fraction:
    """(1/2*pi*i)^2 * double integral of f(u) g(v) / (u - v) du dv.

    Both contours are positively oriented circles, one inside the other per
    `nesting` ("f_outside" or "g_outside").  Evaluated by iterated residues:
    the inner integral becomes an exact partial-fraction function of the outer
    variable, then the outer residue sum runs over the outer pole set plus the
    inner pole locations.  Arbitrary pole multiplicities are supported,
    including collisions between an f-pole and a g-pole location.
    """
    if nesting == "f_outside":
        inner = _inner_partial_fractions(g, g_poles, +1)  # integral of g(v)/(u-v)
        outer_f, outer_poles = f, f_poles
    elif nesting == "g_outside":
        inner = _inner_partial_fractions(f, f_poles, -1)  # integral of f(u)/(u-v), as function of v
        outer_f, outer_poles = g, g_poles
    else:
        raise ValueError("nesting must be 'f_outside' or 'g_outside'")
    total = Fraction(0)
    all_pts = set(outer_poles.enclosed) | set(inner.keys())
    for c, betas in inner.items():
        for k in range(1, len(betas)):
            if betas[k] == 0:
                continue
            term = outer_f.shift_pole(c, -k)
            for p in all_pts:
                total += betas[k] * residue_at(term, p)
    # residues of outer_f alone never enter: the inner integral multiplies
    # every term, and with no inner poles the double integral vanishes.
    return total


def sum_all_residues(f: FactoredRational) -> Fraction:
    """Sum of residues over every pole of f (for residue-theorem checks)."""
    return sum((residue_at(f, p) for p in f.poles()), Fraction(0))
