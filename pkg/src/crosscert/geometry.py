"""Exact triadic geometry: Cantor intervals, gap intervals, the stages
E_m and F_m, the complement rectangles and the cross covering.

Everything here is a :class:`fractions.Fraction`; no floating point.
All rectangles are closed (closures of the open gaps), which changes
neither area nor content.
"""
from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

GEOMETRY_SCHEMA_VERSION = 1


class InvalidSequenceError(ValueError):
    """A gap width violates delta_n < 3^(-n-1)."""


# ---------------------------------------------------------------------------
# intervals


@dataclass(frozen=True)
class TriadicInterval:
    level: int
    index: int  # 1-based
    left: Fraction
    right: Fraction

    @property
    def length(self) -> Fraction:
        return self.right - self.left

    @property
    def center(self) -> Fraction:
        return (self.left + self.right) / 2


@dataclass(frozen=True)
class GapInterval:
    """Closure of the removed open interval (z - w/2, z + w/2)."""

    level: int
    index: int
    center: Fraction
    width: Fraction

    @property
    def left(self) -> Fraction:
        return self.center - self.width / 2

    @property
    def right(self) -> Fraction:
        return self.center + self.width / 2


@lru_cache(maxsize=None)
def _cantor_lefts(n: int) -> tuple[Fraction, ...]:
    if n == 0:
        return (Fraction(0),)
    third = Fraction(1, 3 ** n)
    out = []
    for a in _cantor_lefts(n - 1):
        out.append(a)
        out.append(a + 2 * third)
    return tuple(out)


def cantor_intervals(n: int) -> list[TriadicInterval]:
    """The 2**n intervals of length 3**-n at level n, left to right."""
    if n < 0:
        raise ValueError("level must be non-negative")
    length = Fraction(1, 3 ** n)
    return [TriadicInterval(n, j, a, a + length)
            for j, a in enumerate(_cantor_lefts(n), start=1)]


def interval_center(n: int, j: int) -> Fraction:
    if n < 0 or not 1 <= j <= 2 ** n:
        raise IndexError(f"index {j} out of range for level {n}")
    return _cantor_lefts(n)[j - 1] + Fraction(1, 2 * 3 ** n)


# ---------------------------------------------------------------------------
# gap-width sequences


@dataclass(frozen=True)
class DeltaSequence:
    """Gap widths delta_n.

    ``kind == "geometric"``: delta_n = amplitude * ratio**n, levels up to
    ``max_level`` (None for all n).  ``kind == "explicit"``: the listed
    values for levels 0..len-1.
    """

    kind: str
    amplitude: Fraction | None = None
    ratio: Fraction | None = None
    values: tuple[Fraction, ...] = ()
    max_level: int | None = None

    @classmethod
    def geometric(cls, amplitude, ratio, max_level: int | None = None) -> "DeltaSequence":
        seq = cls("geometric", Fraction(amplitude), Fraction(ratio), (), max_level)
        if not (seq.amplitude > 0 and 0 < seq.ratio < 1):
            raise InvalidSequenceError("geometric sequence needs A > 0 and 0 < ratio < 1")
        return seq

    @classmethod
    def explicit(cls, values: Iterable) -> "DeltaSequence":
        vals = tuple(Fraction(v) for v in values)
        if not vals:
            raise InvalidSequenceError("explicit sequence is empty")
        if any(v <= 0 for v in vals):
            raise InvalidSequenceError("gap widths must be positive")
        return cls("explicit", None, None, vals, len(vals) - 1)

    @classmethod
    def default(cls) -> "DeltaSequence":
        """delta_n = 3^(-n-2): valid at every level and legible when drawn."""
        return cls.geometric(Fraction(1, 9), Fraction(1, 3))

    @property
    def last_level(self) -> int | None:
        return self.max_level

    def delta(self, n: int) -> Fraction:
        if n < 0 or (self.max_level is not None and n > self.max_level):
            raise IndexError(f"sequence not defined at level {n}")
        if self.kind == "geometric":
            return self.amplitude * self.ratio ** n
        return self.values[n]

    def admissible_at(self, n: int) -> bool:
        return self.delta(n) < Fraction(1, 3 ** (n + 1))

    def admissible_all_levels(self) -> bool:
        """Exact check of delta_n < 3^(-n-1) for every represented n.

        For the geometric kind, 3^(n+1) delta_n = 3A (3 rho)^n, so the
        condition holds for all n iff rho <= 1/3 and A < 1/3.
        """
        if self.kind == "explicit" or self.max_level is not None:
            return all(self.admissible_at(n) for n in range(self.max_level + 1))
        return self.ratio <= Fraction(1, 3) and 3 * self.amplitude < 1

    def check_through(self, m: int) -> None:
        for n in range(m + 1):
            if not self.admissible_at(n):
                raise InvalidSequenceError(
                    f"delta_{n} = {self.delta(n)} is not < 3^-{n + 1}")

    def is_decreasing(self, upto: int) -> bool:
        return all(self.delta(n + 1) < self.delta(n) for n in range(upto))

    def to_json(self) -> dict:
        if self.kind == "geometric":
            d = {"kind": "geometric", "amplitude": frac_to_json(self.amplitude),
                 "ratio": frac_to_json(self.ratio), "max_level": self.max_level}
            for name, q in (("log2_inv_amplitude", self.amplitude),
                            ("log2_inv_ratio", self.ratio)):
                k = _log2_inverse(q)
                if k is not None:
                    d[name] = k
            return d
        return {"kind": "explicit", "values": [frac_to_json(v) for v in self.values]}

    @classmethod
    def from_json(cls, d: dict) -> "DeltaSequence":
        if d["kind"] == "geometric":
            return cls.geometric(frac_from_json(d["amplitude"]), frac_from_json(d["ratio"]),
                                 d.get("max_level"))
        if d["kind"] == "explicit":
            return cls.explicit(frac_from_json(v) for v in d["values"])
        raise ValueError(f"unknown sequence kind {d['kind']!r}")


def _log2_inverse(q: Fraction) -> int | None:
    """k if q == 2**-k, else None."""
    if q.numerator != 1:
        return None
    d = q.denominator
    return d.bit_length() - 1 if d & (d - 1) == 0 else None


def gap_intervals(seq: DeltaSequence, n: int) -> list[GapInterval]:
    w = seq.delta(n)
    return [GapInterval(n, iv.index, iv.center, w) for iv in cantor_intervals(n)]


def all_gaps(seq: DeltaSequence, m: int) -> list[GapInterval]:
    seq.check_through(m)
    gaps = [g for n in range(m + 1) for g in gap_intervals(seq, n)]
    gaps.sort(key=lambda g: g.center)
    return gaps


def build_Em(seq: DeltaSequence, m: int) -> list[tuple[Fraction, Fraction]]:
    """E_m = [0,1] minus the open gaps of levels 0..m, as closed intervals."""
    out = []
    left = Fraction(0)
    for g in all_gaps(seq, m):
        out.append((left, g.left))
        left = g.right
    out.append((left, Fraction(1)))
    return out


def length_Em(seq: DeltaSequence, m: int) -> Fraction:
    return 1 - sum((2 ** n * seq.delta(n) for n in range(m + 1)), Fraction(0))


# ---------------------------------------------------------------------------
# rectangles


@dataclass(frozen=True, order=True)
class Rect:
    """Closed axis-parallel rectangle [x0, x1] x [y0, y1]."""

    x0: Fraction
    x1: Fraction
    y0: Fraction
    y1: Fraction

    def __post_init__(self):
        for name in ("x0", "x1", "y0", "y1"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.x0 > self.x1 or self.y0 > self.y1:
            raise ValueError("rectangle with reversed bounds")

    @property
    def width(self) -> Fraction:
        return self.x1 - self.x0

    @property
    def height(self) -> Fraction:
        return self.y1 - self.y0

    @property
    def degenerate(self) -> bool:
        return self.width == 0 or self.height == 0

    @property
    def area(self) -> Fraction:
        return self.width * self.height

    def swapped(self) -> "Rect":
        return Rect(self.y0, self.y1, self.x0, self.x1)

    def scaled(self, lam) -> "Rect":
        lam = Fraction(lam)
        return Rect(lam * self.x0, lam * self.x1, lam * self.y0, lam * self.y1)

    def translated(self, dx, dy) -> "Rect":
        return Rect(self.x0 + dx, self.x1 + dx, self.y0 + dy, self.y1 + dy)

    def contains_rect(self, other: "Rect") -> bool:
        return (self.x0 <= other.x0 and other.x1 <= self.x1
                and self.y0 <= other.y0 and other.y1 <= self.y1)

    def to_json(self) -> dict:
        return {"x": [self.x0.numerator, self.x0.denominator,
                      self.x1.numerator, self.x1.denominator],
                "y": [self.y0.numerator, self.y0.denominator,
                      self.y1.numerator, self.y1.denominator]}

    @classmethod
    def from_json(cls, d: dict) -> "Rect":
        x, y = d["x"], d["y"]
        return cls(Fraction(x[0], x[1]), Fraction(x[2], x[3]),
                   Fraction(y[0], y[1]), Fraction(y[2], y[3]))


@dataclass(frozen=True)
class RectRegion:
    """Finite union of closed rectangles.

    Point-set comparisons refine both operands to the common grid spanned
    by all their coordinates and compare the sets of covered cells.
    Degenerate rectangles carry no cells and are ignored by comparisons.
    """

    rects: tuple[Rect, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "rects", tuple(self.rects))

    def __len__(self):
        return len(self.rects)

    def __iter__(self):
        return iter(self.rects)

    def union(self, other: "RectRegion") -> "RectRegion":
        return RectRegion(self.rects + other.rects)

    def swapped(self) -> "RectRegion":
        return RectRegion(r.swapped() for r in self.rects)

    def scaled(self, lam) -> "RectRegion":
        return RectRegion(r.scaled(lam) for r in self.rects)

    def translated(self, dx, dy) -> "RectRegion":
        return RectRegion(r.translated(dx, dy) for r in self.rects)

    def grid(self) -> tuple[list[Fraction], list[Fraction]]:
        xs = sorted({c for r in self.rects for c in (r.x0, r.x1)})
        ys = sorted({c for r in self.rects for c in (r.y0, r.y1)})
        return xs, ys

    def cells_on(self, xs: Sequence[Fraction], ys: Sequence[Fraction]) -> frozenset:
        """Cells (i, j) of the grid xs x ys covered by the region.

        The grid must contain every coordinate of the region.
        """
        cells = set()
        for r in self.rects:
            if r.degenerate:
                continue
            i0, i1 = bisect_left(xs, r.x0), bisect_left(xs, r.x1)
            j0, j1 = bisect_left(ys, r.y0), bisect_left(ys, r.y1)
            for i in range(i0, i1):
                for j in range(j0, j1):
                    cells.add((i, j))
        return frozenset(cells)

    def canonical(self) -> tuple[tuple, tuple, frozenset]:
        xs, ys = self.grid()
        cells = self.cells_on(xs, ys)
        # drop grid lines that separate no distinct columns/rows
        return _coarsen(xs, ys, cells)

    def _common(self, other: "RectRegion"):
        xs = sorted(set(self.grid()[0]) | set(other.grid()[0]))
        ys = sorted(set(self.grid()[1]) | set(other.grid()[1]))
        return self.cells_on(xs, ys), other.cells_on(xs, ys)

    def issubset(self, other: "RectRegion") -> bool:
        a, b = self._common(other)
        return a <= b

    def same_set(self, other: "RectRegion") -> bool:
        a, b = self._common(other)
        return a == b

    def area(self) -> Fraction:
        """Exact Lebesgue measure of the union."""
        xs, ys = self.grid()
        return sum(((xs[i + 1] - xs[i]) * (ys[j + 1] - ys[j])
                    for i, j in self.cells_on(xs, ys)), Fraction(0))

    def x_projection(self) -> list[tuple[Fraction, Fraction]]:
        return _merge([(r.x0, r.x1) for r in self.rects])

    def y_projection(self) -> list[tuple[Fraction, Fraction]]:
        return _merge([(r.y0, r.y1) for r in self.rects])

    def to_json(self, kind: str = "region") -> dict:
        return {"schema_version": GEOMETRY_SCHEMA_VERSION, "kind": kind,
                "rectangles": [r.to_json() for r in self.rects]}

    @classmethod
    def from_json(cls, d: dict) -> "RectRegion":
        if d.get("schema_version") != GEOMETRY_SCHEMA_VERSION:
            raise ValueError(f"unsupported geometry schema {d.get('schema_version')!r}")
        return cls(Rect.from_json(r) for r in d["rectangles"])


def _coarsen(xs, ys, cells):
    nx, ny = len(xs) - 1, len(ys) - 1
    cols = [tuple((i, j) in cells for j in range(ny)) for i in range(nx)]
    rows = [tuple((i, j) in cells for i in range(nx)) for j in range(ny)]
    keep_x = [0] + [i for i in range(1, nx) if cols[i] != cols[i - 1]] + [nx]
    keep_y = [0] + [j for j in range(1, ny) if rows[j] != rows[j - 1]] + [ny]
    new_xs = tuple(xs[i] for i in keep_x) if nx > 0 else tuple(xs)
    new_ys = tuple(ys[j] for j in keep_y) if ny > 0 else tuple(ys)
    new_cells = frozenset(
        (a, b)
        for a in range(len(keep_x) - 1) for b in range(len(keep_y) - 1)
        if (keep_x[a], keep_y[b]) in cells)
    return new_xs, new_ys, new_cells


def _merge(intervals):
    out: list[tuple[Fraction, Fraction]] = []
    for a, b in sorted(intervals):
        if out and a <= out[-1][1]:
            out[-1] = (out[-1][0], max(out[-1][1], b))
        else:
            out.append((a, b))
    return out


def measure(intervals) -> Fraction:
    return sum((b - a for a, b in _merge(intervals)), Fraction(0))


# ---------------------------------------------------------------------------
# stages, complement, crosses

UNIT = (Fraction(0), Fraction(1))


def build_Fm(seq: DeltaSequence, m: int) -> RectRegion:
    """F_m = (E_m x [0,1]) u ([0,1] x E_m)."""
    em = build_Em(seq, m)
    vertical = [Rect(a, b, 0, 1) for a, b in em]
    horizontal = [Rect(0, 1, a, b) for a, b in em]
    return RectRegion(vertical + horizontal)


def area_Fm(seq: DeltaSequence, m: int) -> Fraction:
    e = length_Em(seq, m)
    return 2 * e - e * e


def complement_region(seq: DeltaSequence, m: int) -> RectRegion:
    """Closure of [0,1]^2 minus F_m: all products of two gaps of level <= m."""
    gaps = all_gaps(seq, m)
    return RectRegion(Rect(gx.left, gx.right, gy.left, gy.right)
                      for gy in gaps for gx in gaps)


@dataclass(frozen=True)
class Cross:
    """Union of the horizontal and vertical gap strips of one surviving
    3^-n x 3^-n cell."""

    level: int
    index: int  # 1..4^n, row-major: y cell outer, x cell inner
    horizontal_strip: Rect
    vertical_strip: Rect

    def region(self) -> RectRegion:
        return RectRegion((self.horizontal_strip, self.vertical_strip))

    @property
    def cell(self) -> Rect:
        return Rect(self.horizontal_strip.x0, self.horizontal_strip.x1,
                    self.vertical_strip.y0, self.vertical_strip.y1)


def crosses_at_level(seq: DeltaSequence, n: int) -> list[Cross]:
    ivs = cantor_intervals(n)
    gaps = gap_intervals(seq, n)
    out = []
    for jy, (iy, gy) in enumerate(zip(ivs, gaps)):
        for jx, (ix, gx) in enumerate(zip(ivs, gaps)):
            out.append(Cross(
                level=n,
                index=jy * len(ivs) + jx + 1,
                horizontal_strip=Rect(ix.left, ix.right, gy.left, gy.right),
                vertical_strip=Rect(gx.left, gx.right, iy.left, iy.right),
            ))
    return out


def crosses(seq: DeltaSequence, m: int) -> list[Cross]:
    seq.check_through(m)
    return [c for n in range(m + 1) for c in crosses_at_level(seq, n)]


def crosses_region(cs: Iterable[Cross]) -> RectRegion:
    return RectRegion(r for c in cs for r in (c.horizontal_strip, c.vertical_strip))


def owning_cross(rect: Rect, cs: Sequence[Cross]) -> list[Cross]:
    """Crosses whose strips contain ``rect``."""
    return [c for c in cs
            if c.horizontal_strip.contains_rect(rect) or c.vertical_strip.contains_rect(rect)]


def _interval_index(n: int, x: Fraction) -> int:
    """1-based index of the level-n Cantor interval containing x."""
    return bisect_right(_cantor_lefts(n), x)


def holes_by_cross(seq: DeltaSequence, m: int) -> dict[tuple[int, int], list[Rect]]:
    """Group the complement rectangles by the unique cross containing each.

    A hole gx x gy with gap levels a, b lies in the level-min(a, b) cross
    of the surviving cell that contains it.
    """
    gaps = all_gaps(seq, m)
    out: dict[tuple[int, int], list[Rect]] = {
        (n, k): [] for n in range(m + 1) for k in range(1, 4 ** n + 1)}
    for gy in gaps:
        for gx in gaps:
            n = min(gx.level, gy.level)
            jx = _interval_index(n, gx.center)
            jy = _interval_index(n, gy.center)
            out[(n, (jy - 1) * 2 ** n + jx)].append(Rect(gx.left, gx.right, gy.left, gy.right))
    return out


def lemma1_configuration(delta, n0: int) -> RectRegion:
    """Squares (z - delta/2, z + delta/2) x [0, delta] over all centres z of
    levels 0..n0 (closures)."""
    delta = Fraction(delta)
    rects = []
    for n in range(n0 + 1):
        for iv in cantor_intervals(n):
            z = iv.center
            rects.append(Rect(z - delta / 2, z + delta / 2, 0, delta))
    return RectRegion(rects)


# ---------------------------------------------------------------------------
# JSON helpers for exact rationals


def frac_to_json(q) -> list[int]:
    q = Fraction(q)
    return [q.numerator, q.denominator]


def frac_from_json(v) -> Fraction:
    if isinstance(v, (list, tuple)):
        return Fraction(int(v[0]), int(v[1]))
    return Fraction(v)
