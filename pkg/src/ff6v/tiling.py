"""Domino tilings of the zigzag half-strip equivalent to the signature process.

Geometry.  The strip is drawn on an axis-aligned grid whose unit cells carry
doubled "diagonal frame" center coordinates (u, v) = (P - Q, P + Q): cells of
the lower lattice level i sit at even-even (u, v) = (2j, 2i), cells of the
upper level i' at odd-odd (2j+1, 2i+1).  There are 2(T+N) levels; cells
(1..N, level 1) are removed.  A perfect cover decomposes per double level
into a path graph whose perfect matching is unique, so a tiling is exactly a
sequence of point sets on the inter-level gaps, i.e. a signature sequence.

Dominoes fall into four kinds (the fill classes of the renderer):
  particle      vertical, lower cell odd-odd   (gap-crossing; encodes parts)
  straight      horizontal, left cell even-even (internal vertical pairing)
  slide         vertical, lower cell even-even (internal diagonal pairing)
  crossing gap diagonals never occur in admissible strip covers.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction

from .params import Signature, points_to_signature, signature_points
from .process import AscendingFG
from .symfun import f_skew_one_row, g_skew_one_row
from .vertex import weight_w, weight_w_hat

__all__ = [
    "Domino",
    "DominoTiling",
    "six_to_five",
    "five_to_six",
    "check_six_to_five_split",
    "signatures_to_tiling",
    "tiling_to_signatures",
    "tiling_weight",
    "trajectory_weight",
    "domino_weights",
    "render_ascii",
    "render_svg",
    "tiling_to_json",
    "tiling_from_json",
]


# -- six-vertex to layered five-vertex splitting --------------------------------


def six_to_five(weights: dict) -> tuple[dict, dict]:
    """Split a free-fermionic weight table into a stacked five-vertex pair.

    `weights` maps the six conserving states to values with nonzero c1-entry.
    Returns (lower, upper) tables; the lower one kills the full crossing
    (1,1;1,1), the upper one kills the horizontal pass (0,1;0,1).
    """
    a1 = weights[(0, 0, 0, 0)]
    a2 = weights[(1, 1, 1, 1)]
    b1 = weights[(1, 0, 1, 0)]
    b2 = weights[(0, 1, 0, 1)]
    c1 = weights[(1, 0, 0, 1)]
    c2 = weights[(0, 1, 1, 0)]
    if c1 == 0:
        raise ZeroDivisionError("splitting requires a nonzero turn weight c1")
    if a1 * a2 + b1 * b2 != c1 * c2:
        raise ValueError("weight table is not free-fermionic")
    lower = {
        (0, 0, 0, 0): a1,
        (1, 1, 1, 1): Fraction(0),
        (1, 0, 1, 0): Fraction(1),
        (0, 1, 0, 1): b2,
        (1, 0, 0, 1): c1,
        (0, 1, 1, 0): b2 / c1,
    }
    upper = {
        (0, 0, 0, 0): Fraction(1),
        (1, 1, 1, 1): a2,
        (1, 0, 1, 0): b1,
        (0, 1, 0, 1): Fraction(0),
        (1, 0, 0, 1): c1,
        (0, 1, 1, 0): a2 / c1,
    }
    return lower, upper


def five_to_six(lower: dict, upper: dict) -> dict:
    """Reassemble the six-vertex table from a stacked five-vertex pair."""
    a1 = lower[(0, 0, 0, 0)] * upper[(0, 0, 0, 0)]
    a2 = lower[(1, 0, 0, 1)] * upper[(0, 1, 1, 0)]
    if a2 != lower[(1, 0, 1, 0)] * upper[(1, 1, 1, 1)]:
        raise ValueError("inconsistent pair: two crossing reconstructions differ")
    b1 = lower[(1, 0, 1, 0)] * upper[(1, 0, 1, 0)]
    b2 = lower[(0, 1, 0, 1)] * upper[(0, 0, 0, 0)]
    if b2 != lower[(0, 1, 1, 0)] * upper[(1, 0, 0, 1)]:
        raise ValueError("inconsistent pair: two pass reconstructions differ")
    c1 = lower[(1, 0, 0, 1)] * upper[(0, 0, 0, 0)]
    if c1 != lower[(1, 0, 1, 0)] * upper[(1, 0, 0, 1)]:
        raise ValueError("inconsistent pair: two turn reconstructions differ")
    c2 = lower[(0, 1, 1, 0)] * upper[(1, 0, 1, 0)] + lower[(0, 0, 0, 0)] * upper[(0, 1, 1, 0)]
    return {
        (0, 0, 0, 0): a1,
        (1, 1, 1, 1): a2,
        (1, 0, 1, 0): b1,
        (0, 1, 0, 1): b2,
        (1, 0, 0, 1): c1,
        (0, 1, 1, 0): c2,
    }


def check_six_to_five_split(weights: dict) -> bool:
    """Summation over internal edges reproduces the six-vertex weight for all
    2^5 boundary tuples (I1, J1, I2, j2, j2')."""
    lower, upper = six_to_five(weights)

    def w6(i1, j1, i2, j2):
        if j2 > 1 or i1 + j1 != i2 + j2:
            return Fraction(0)
        return weights[(i1, j1, i2, j2)]

    def tab(t, i1, j1, i2, j2):
        if i1 + j1 != i2 + j2:
            return Fraction(0)
        return t[(i1, j1, i2, j2)]

    for i1 in (0, 1):
        for jj1 in (0, 1):
            for i2 in (0, 1):
                for j2 in (0, 1):
                    for j2p in (0, 1):
                        lhs = Fraction(0)
                        for j1 in (0, 1):
                            j1p = jj1 - j1
                            if j1p not in (0, 1):
                                continue
                            for k in (0, 1):
                                lhs += tab(lower, i1, j1, k, j2) * tab(
                                    upper, k, j1p, i2, j2p
                                )
                        if lhs != w6(i1, jj1, i2, j2 + j2p):
                            return False
    return True


# -- tilings ---------------------------------------------------------------------


@dataclass(frozen=True)
class Domino:
    """One placed domino: lower-left cell (p, q) in the axis-aligned frame."""

    p: int
    q: int
    orient: str  # "h" or "v"
    kind: str  # "particle", "straight", "slide"

    def cells(self):
        if self.orient == "h":
            return ((self.p, self.q), (self.p + 1, self.q))
        return ((self.p, self.q), (self.p, self.q + 1))


def _cell_unprimed(j: int, i: int) -> tuple[int, int]:
    return (j + i, i - j)


def _cell_primed(j: int, i: int) -> tuple[int, int]:
    return (j + i + 1, i - j)


@dataclass(frozen=True)
class DominoTiling:
    """Tiling of the half-strip: gap point sets plus crossing-type vectors.

    gap_sets[g-1] is the particle set between levels g' and g+1 for
    g = 1..T+N-1.  Each particle column carries a crossing of one of two
    shapes; gap_shifts[g-1] lists the columns whose crossing leans right
    (covering the next column above).  The internal cover of every double
    level is then unique, so the tiling is this data.
    """

    t_steps: int
    n_parts: int
    gap_sets: tuple[frozenset, ...]
    gap_shifts: tuple[frozenset, ...]

    def __post_init__(self):
        if len(self.gap_sets) != self.t_steps + self.n_parts - 1:
            raise ValueError("need T+N-1 gap point sets")
        if len(self.gap_shifts) != len(self.gap_sets):
            raise ValueError("need one shift set per gap")
        for pts, sh in zip(self.gap_sets, self.gap_shifts):
            if not sh <= pts:
                raise ValueError("shift columns must be particle columns")

    @property
    def levels(self) -> int:
        return self.t_steps + self.n_parts

    def bound(self) -> int:
        pts = [max(g, default=0) for g in self.gap_sets]
        return max([self.n_parts, *pts]) + 2

    def below_targets(self, i: int) -> frozenset:
        """Columns of level i matched from below (removed cells for i = 1)."""
        if i == 1:
            return frozenset(range(1, self.n_parts + 1))
        pts = self.gap_sets[i - 2]
        sh = self.gap_shifts[i - 2]
        return frozenset(j + 1 if j in sh else j for j in pts)

    def above(self, i: int) -> frozenset:
        if i == self.levels:
            return frozenset()
        return self.gap_sets[i - 1]

    def row_pairs(self, i: int, hi: int | None = None):
        """Unique internal cover of double level i as (kind, column) pairs.

        Yields ("straight", j) for the vertical pairing at column j and
        ("slide", j) for the diagonal pairing of primed j with unprimed j+1.
        Raises if no perfect cover exists (inadmissible data).
        """
        hi = hi if hi is not None else self.bound()
        items = _run_pairing(self.below_targets(i), self.above(i), hi)
        if items is None:
            raise ValueError(f"no cover at level {i}")
        return items

    def dominoes(self, hi: int | None = None) -> list[Domino]:
        """Materialized dominoes with all cells' columns <= hi."""
        hi = hi if hi is not None else self.bound()
        out = []
        for g, pts in enumerate(self.gap_sets, start=1):
            for j in sorted(pts):
                p, q = _cell_primed(j, g)
                if j in self.gap_shifts[g - 1]:
                    out.append(Domino(p, q, "h", "particle_step"))
                else:
                    out.append(Domino(p, q, "v", "particle"))
        for i in range(1, self.levels + 1):
            for item in self.row_pairs(i, hi):
                if item[0] == "straight":
                    p, q = _cell_unprimed(item[1], i)
                    out.append(Domino(p, q, "h", "straight"))
                elif item[0] == "slide":
                    p, q = _cell_unprimed(item[1] + 1, i)
                    out.append(Domino(p, q, "v", "slide"))
        return out


def _adjacent(x, y) -> bool:
    return (x[0] == "a" and y == ("b", x[1])) or (x[0] == "b" and y == ("a", x[1] + 1))


def _run_pairing(below_targets: frozenset, above: frozenset, hi: int):
    """Consecutive pairing of the interleaved free vertices, or None.

    Free lower vertices a_j (j not matched from below) and free upper
    vertices b_j (j not matched upward) form disjoint path runs; a perfect
    cover pairs each run consecutively and exists iff every finite run is
    even.  The final run continues past the bound and may end odd here.
    """
    seq = []
    for j in range(1, hi + 1):
        if j not in below_targets:
            seq.append(("a", j))
        if j not in above:
            seq.append(("b", j))
    runs: list[list] = []
    for item in seq:
        if runs and _adjacent(runs[-1][-1], item):
            runs[-1].append(item)
        else:
            runs.append([item])
    out = []
    for idx, run in enumerate(runs):
        last_run = idx == len(runs) - 1
        if len(run) % 2 and not last_run:
            return None
        limit = len(run) - (len(run) % 2)
        for k in range(0, limit, 2):
            first = run[k]
            if first[0] == "a":
                out.append(("straight", first[1]))
            else:
                out.append(("slide", first[1]))
        if last_run and len(run) % 2:
            out.append(("tail", run[limit][0], run[limit][1]))
    return out


def _resolve_shifts(pts: frozenset, next_above: frozenset, n_parts: int, first_level: bool, hi: int):
    """Smallest right-leaning crossing set making the level above coverable.

    Candidates are ordered by (count, columns); distinct landing columns are
    required so the crossings do not collide.
    """
    cols = sorted(pts)
    for size in range(len(cols) + 1):
        for combo in itertools.combinations(cols, size):
            sh = frozenset(combo)
            targets = frozenset(j + 1 if j in sh else j for j in cols)
            if len(targets) != len(cols):
                continue
            if _run_pairing(targets, next_above, hi) is not None:
                return sh
    return None


def signatures_to_tiling(lambdas, mus) -> DominoTiling:
    """Build the canonical tiling of a trajectory (lambda^(1..T), mu^(1..N)).

    mu^(k) must have k parts and mu^(N) must equal lambda^(T); the gap data
    are the point sets of lambda^(1..T), mu^(N-1), ..., mu^(1).  Crossing
    shapes are resolved gap by gap with as few right-leaning crossings as
    possible (leftmost on ties), which pins one cover per trajectory.
    """
    lambdas = [Signature(l) if not isinstance(l, Signature) else l for l in lambdas]
    mus = [Signature(m) if not isinstance(m, Signature) else m for m in mus]
    t_steps = len(lambdas)
    n_parts = len(lambdas[0]) if lambdas else 0
    if any(len(l) != n_parts for l in lambdas):
        raise ValueError("all lambda entries need N parts")
    if len(mus) != n_parts:
        raise ValueError("need N mu entries")
    for k, m in enumerate(mus, start=1):
        if len(m) != k:
            raise ValueError(f"mu^({k}) must have {k} parts")
    if n_parts and mus[-1] != lambdas[-1]:
        raise ValueError("mu^(N) must equal lambda^(T)")
    gaps = [signature_points(l) for l in lambdas]
    gaps.extend(signature_points(mus[k]) for k in range(n_parts - 2, -1, -1))
    levels = t_steps + n_parts
    hi = max([n_parts, *[max(g, default=0) for g in gaps]]) + 2
    # level 1 must be coverable with the boundary cells removed
    if _run_pairing(frozenset(range(1, n_parts + 1)), gaps[0] if gaps else frozenset(), hi) is None:
        raise ValueError("no cover at level 1: inadmissible first signature")
    shifts = []
    for g in range(1, levels):
        above = gaps[g] if g < len(gaps) else frozenset()
        sh = _resolve_shifts(gaps[g - 1], above, n_parts, False, hi)
        if sh is None:
            raise ValueError(f"no cover at level {g + 1}: inadmissible transition")
        shifts.append(sh)
    return DominoTiling(t_steps, n_parts, tuple(gaps), tuple(shifts))


def tiling_to_signatures(tiling: DominoTiling):
    """Inverse of :func:`signatures_to_tiling`."""
    t_steps, n_parts = tiling.t_steps, tiling.n_parts
    lambdas = [points_to_signature(tiling.gap_sets[g]) for g in range(t_steps)]
    mus = []
    for k in range(1, n_parts):
        mus.append(points_to_signature(tiling.gap_sets[t_steps + n_parts - 1 - k]))
    mus.append(lambdas[-1])
    for g in range(t_steps):
        if len(lambdas[g]) != n_parts:
            raise ValueError(f"gap {g + 1} does not carry {n_parts} points")
    return lambdas, mus


def domino_weights(tiling: DominoTiling, proc: AscendingFG):
    """Per-domino weights, multiplying to the trajectory weight.

    The vertex weight of column j at level i attaches to the domino covering
    the lower cell (j, i); at the N removed cells of level 1 it attaches to
    the domino covering the upper cell (j, 1') instead.
    """
    hi = tiling.bound()
    weights: dict[Domino, Fraction] = {}
    for i in range(1, tiling.levels + 1):
        below = (
            frozenset(range(1, tiling.n_parts + 1)) if i == 1 else tiling.gap_sets[i - 2]
        )
        above = tiling.above(i)
        removed = frozenset(range(1, tiling.n_parts + 1)) if i == 1 else frozenset()
        if i <= tiling.t_steps:
            w, th = proc.wtheta.pair(i)
            fam, x, sp2 = weight_w, w, th**2
        else:
            xv, r = proc.xr.pair(i - tiling.t_steps)
            fam, x, sp2 = weight_w_hat, xv, r**2
        cover_lower: dict[int, Domino] = {}
        cover_upper: dict[int, Domino] = {}
        if i >= 2:
            for j in tiling.gap_sets[i - 2]:
                if j in tiling.gap_shifts[i - 2]:
                    cover_lower[j + 1] = Domino(*_cell_primed(j, i - 1), "h", "particle_step")
                else:
                    cover_lower[j] = Domino(*_cell_primed(j, i - 1), "v", "particle")
        for j in above:
            if j in tiling.gap_shifts[i - 1]:
                cover_upper[j] = Domino(*_cell_primed(j, i), "h", "particle_step")
            else:
                cover_upper[j] = Domino(*_cell_primed(j, i), "v", "particle")
        for item in tiling.row_pairs(i, hi):
            if item[0] == "straight":
                d = Domino(*_cell_unprimed(item[1], i), "h", "straight")
                cover_lower[item[1]] = d
                cover_upper[item[1]] = d
            elif item[0] == "slide":
                d = Domino(*_cell_unprimed(item[1] + 1, i), "v", "slide")
                cover_lower[item[1] + 1] = d
                cover_upper[item[1]] = d
        h = 0
        for j in range(1, hi + 1):
            i1 = 1 if j in below else 0
            i2 = 1 if j in above else 0
            j2 = i1 + h - i2
            if j2 not in (0, 1):
                raise ValueError(f"inadmissible data at level {i}, column {j}")
            wt = fam((i1, h, i2, j2), x, proc.col.y(j), sp2, proc.col.s2(j))
            h = j2
            if wt == 1:
                continue
            target = cover_upper.get(j) if j in removed else cover_lower.get(j)
            if target is None:
                raise AssertionError(f"nontrivial weight on an uncovered column {j}, level {i}")
            weights[target] = weights.get(target, Fraction(1)) * wt
    return weights


def tiling_weight(tiling: DominoTiling, proc: AscendingFG) -> Fraction:
    """Product of all domino weights differing from one.

    Equals the product of the one-row transition values of the encoded
    trajectory, which the tests pin exactly.
    """
    out = Fraction(1)
    for wt in domino_weights(tiling, proc).values():
        out *= wt
    return out


def trajectory_weight(tiling: DominoTiling, proc: AscendingFG) -> Fraction:
    """Independent route: product of one-row skew function values."""
    lambdas, mus = tiling_to_signatures(tiling)
    prev = Signature((0,) * tiling.n_parts)
    out = Fraction(1)
    for t, lam in enumerate(lambdas, start=1):
        w, th = proc.wtheta.pair(t)
        out *= g_skew_one_row(lam, prev, w, th, proc.col)
        prev = lam
    chain = [Signature(())] + mus
    for k in range(1, tiling.n_parts + 1):
        x, r = proc.xr.pair(tiling.n_parts - k + 1)
        out *= f_skew_one_row(chain[k], chain[k - 1], x, r, proc.col)
    return out


# -- rendering -------------------------------------------------------------------


_FILL = {
    "particle": "#2c7fb8",
    "particle_step": "#7fcdbb",
    "straight": "#fec44f",
    "slide": "#a1d99b",
}


def render_ascii(tiling: DominoTiling, hi: int | None = None) -> str:
    """Two characters per cell; letters by kind, '##' marks particle dominoes."""
    hi = hi if hi is not None else tiling.bound()
    dominoes = tiling.dominoes(hi)
    cells: dict[tuple[int, int], str] = {}
    for d in dominoes:
        ch = {"particle": "##", "particle_step": "#>", "straight": "--", "slide": "||"}[d.kind]
        for c in d.cells():
            cells[c] = ch
    ps = [c[0] for c in cells]
    qs = [c[1] for c in cells]
    lines = []
    for q in range(max(qs), min(qs) - 1, -1):
        line = []
        for p in range(min(ps), max(ps) + 1):
            line.append(cells.get((p, q), "  "))
        lines.append("".join(line).rstrip())
    return "\n".join(lines)


def render_svg(tiling: DominoTiling, hi: int | None = None, scale: int = 16) -> str:
    """Deterministic SVG 1.1 document with four fill classes (kind x parity)."""
    hi = hi if hi is not None else tiling.bound()
    dominoes = sorted(tiling.dominoes(hi), key=lambda d: (d.q, d.p, d.orient, d.kind))
    ps = [c[0] for d in dominoes for c in d.cells()]
    qs = [c[1] for d in dominoes for c in d.cells()]
    pmin, pmax = min(ps), max(ps)
    qmin, qmax = min(qs), max(qs)
    width = (pmax - pmin + 1) * scale
    height = (qmax - qmin + 1) * scale
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">'
    ]
    for d in dominoes:
        x = (d.p - pmin) * scale
        y = (qmax - d.q) * scale
        if d.orient == "h":
            w, h = 2 * scale, scale
        else:
            w, h = scale, 2 * scale
            y -= scale
        fill = _FILL[d.kind]
        parts.append(
            f'<rect x="{x}" y="{y}" width="{w}" height="{h}" '
            f'fill="{fill}" stroke="#333" stroke-width="1"/>'
        )
        if d.kind in ("particle", "particle_step"):
            cx = x + scale / 2
            cy = y + (3 * scale / 2 if d.orient == "v" else scale / 2)
            parts.append(f'<circle cx="{cx:g}" cy="{cy:g}" r="{scale / 4:g}" fill="#08306b"/>')
    parts.append("</svg>")
    return "\n".join(parts)


def tiling_to_json(tiling: DominoTiling, hi: int | None = None) -> str:
    dominoes = [
        {"x": d.p, "y": d.q, "orient": d.orient, "type": d.kind}
        for d in sorted(tiling.dominoes(hi), key=lambda d: (d.q, d.p, d.orient))
    ]
    return json.dumps(
        {"T": tiling.t_steps, "N": tiling.n_parts, "dominoes": dominoes},
        sort_keys=True,
    )


def tiling_from_json(text: str) -> DominoTiling:
    raw = json.loads(text)
    t_steps, n_parts = int(raw["T"]), int(raw["N"])
    gaps = [set() for _ in range(t_steps + n_parts - 1)]
    shifts = [set() for _ in range(t_steps + n_parts - 1)]
    for d in raw["dominoes"]:
        if d["type"] not in ("particle", "particle_step"):
            continue
        p, q = int(d["x"]), int(d["y"])
        g = (p + q - 1) // 2
        l = (p - q - 1) // 2
        gaps[g - 1].add(l)
        if d["type"] == "particle_step":
            shifts[g - 1].add(l)
    return DominoTiling(
        t_steps,
        n_parts,
        tuple(frozenset(g) for g in gaps),
        tuple(frozenset(s) for s in shifts),
    )
