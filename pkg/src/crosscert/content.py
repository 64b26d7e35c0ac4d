"""Upper bounds on 1-dimensional Hausdorff content.

Content convention: covers by axis-parallel squares, each square charged
its side length.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .enclosure import (DEFAULT_PREC, GUARD_BITS, Enclosure, certify_lt,
                        enclosure_to_json, log, log2_const, power)
from .geometry import DeltaSequence, RectRegion, frac_to_json, lemma1_configuration, measure

CONTENT_CONVENTION = "axis-parallel squares, side length"
DEFAULT_BUDGET = 10 ** 6
DEFAULT_TAIL_RATIO = Fraction(1, 8)


class DomainError(ValueError):
    pass


class BudgetError(RuntimeError):
    def __init__(self, count: int, budget: int):
        super().__init__(f"covering exceeded budget {budget} after {count} squares")
        self.count = count
        self.budget = budget


@dataclass(frozen=True)
class ContentBound:
    value: Enclosure
    witness_kind: str  # "covering" | "lemma1" | "lemma2-series" | "lemma2-partial"
    side: Optional[Fraction] = None
    squares: tuple = ()  # (i, j): square [i*side, (i+1)*side] x [j*side, (j+1)*side]
    exact_sum: Optional[Fraction] = None
    detail: dict = field(default_factory=dict)

    @property
    def hi(self) -> Fraction:
        return self.value.hi

    def witness_region(self) -> RectRegion:
        from .geometry import Rect
        s = self.side
        return RectRegion(Rect(i * s, (i + 1) * s, j * s, (j + 1) * s) for i, j in self.squares)

    def to_json(self, include_squares: bool = True) -> dict:
        d = {"witness": self.witness_kind, "value": enclosure_to_json(self.value),
             "convention": CONTENT_CONVENTION}
        if self.exact_sum is not None:
            d["exact_sum"] = frac_to_json(self.exact_sum)
        if self.side is not None:
            d["side"] = frac_to_json(self.side)
            d["square_count"] = len(self.squares)
            if include_squares:
                d["squares"] = [list(sq) for sq in self.squares]
        d.update(self.detail)
        return d


# ---------------------------------------------------------------------------
# exponents


def _eta_w(w: int) -> Enclosure:
    return 1 - log2_const(w) / log(3, w)


def eta(prec: int = DEFAULT_PREC) -> Enclosure:
    """1 - 1/log2(3) = 1 - log 2 / log 3."""
    return _eta_w(prec + GUARD_BITS).rounded(prec)


def weight_factor(n: int, prec: int = DEFAULT_PREC) -> Enclosure:
    """4^n 3^(n(eta-1)), evaluated literally (equals 2^n)."""
    w = prec + GUARD_BITS + 8
    return (4 ** n * power(3, n * (_eta_w(w) - 1), w)).rounded(prec)


# ---------------------------------------------------------------------------
# single-scale configuration


def cover_sum_lemma1(delta, n0: int) -> Fraction:
    """Side-length sum of the 2^(n0+1) - 1 squares of side delta."""
    delta = Fraction(delta)
    if delta <= 0:
        raise DomainError("delta must be positive")
    return delta * (2 ** (n0 + 1) - 1)


def largest_n0(delta) -> int:
    """Largest n0 with delta < 3^(2 - n0)."""
    delta = Fraction(delta)
    if not 0 < delta < 9:
        raise DomainError("need 0 < delta < 9")
    n0 = 0
    while delta < Fraction(9, 3 ** (n0 + 1)):
        n0 += 1
    return n0


def _delta_pow_eta(delta: Fraction, w: int) -> Enclosure:
    return power(delta, _eta_w(w), w)


def lemma1_bound(delta, n0: int, prec: int = DEFAULT_PREC) -> ContentBound:
    """Enclosure of 8 delta^eta, with delta 2^(n0+1) < 8 delta^eta certified."""
    delta = Fraction(delta)
    if not (0 < delta < Fraction(9, 3 ** n0)):
        raise DomainError(f"need 0 < delta < 3^(2-n0), got delta={delta}, n0={n0}")
    plain = delta * 2 ** (n0 + 1)

    def make(p):
        return plain, (8 * _delta_pow_eta(delta, p + GUARD_BITS)).rounded(p)

    ok, p, _, bound = certify_lt(make, prec, what="delta 2^(n0+1) < 8 delta^eta")
    if not ok:
        raise ArithmeticError("strict inequality of the single-scale bound failed")
    if p != prec:
        bound = make(prec)[1]
    return ContentBound(bound, "lemma1", exact_sum=cover_sum_lemma1(delta, n0),
                        detail={"delta": frac_to_json(delta), "n0": n0,
                                "dominating_sum": frac_to_json(plain)})


# ---------------------------------------------------------------------------
# multi-scale series


@dataclass(frozen=True)
class SeriesBound:
    """Bound on 8 sum_n 4^n 3^(n(eta-1)) delta_n^eta = 8 sum_n 2^n delta_n^eta."""

    converges: bool
    value: Optional[Enclosure]  # None when divergent
    ratio: Enclosure  # term ratio governing the (tail of the) series
    prec: int
    partial_terms: int = 0

    @property
    def hi(self):
        return self.value.hi if self.converges else float("inf")

    @property
    def lo(self):
        return self.value.lo if self.converges else float("inf")

    def to_json(self) -> dict:
        d = {"converges": self.converges, "ratio": enclosure_to_json(self.ratio),
             "prec_bits": self.prec}
        d["value"] = enclosure_to_json(self.value) if self.converges else None
        if self.partial_terms:
            d["explicit_terms"] = self.partial_terms
        return d


def _geometric_ratio(rho: Fraction, w: int) -> Enclosure:
    return 2 * power(rho, _eta_w(w), w)


def _series_at(seq: DeltaSequence, w: int, tail_ratio: Fraction):
    """(converges?, value, ratio) at working precision w; converges is
    None while the ratio straddles 1."""
    if seq.kind == "geometric":
        r = _geometric_ratio(seq.ratio, w)
        if r.hi < 1:
            val = 8 * power(seq.amplitude, _eta_w(w), w) / (1 - r)
            return True, val, r, 0
        return (False if r.lo >= 1 else None), None, r, 0
    # explicit: finite sum, then the sequence continues as delta_{N-1} tail_ratio^k
    r = _geometric_ratio(tail_ratio, w)
    if not r.hi < 1:
        return (False if r.lo >= 1 else None), None, r, len(seq.values)
    e = _eta_w(w)
    total = Enclosure.exact(0, w)
    last = None
    for n, d in enumerate(seq.values):
        last = 2 ** n * power(d, e, w)
        total = total + last
    tail = 8 * last * r / (1 - r)
    return True, 8 * total + tail, r, len(seq.values)


def lemma2_series(seq: DeltaSequence, prec: int = DEFAULT_PREC,
                  tail_ratio: Fraction = DEFAULT_TAIL_RATIO,
                  cap: int = 1024) -> SeriesBound:
    """Rigorous upper bound of the full multi-scale content series.

    Geometric sequences use the closed form 8 A^eta / (1 - 2 rho^eta).
    Explicit sequences are summed exactly and then continued by
    delta_{n+1} = tail_ratio * delta_n, whose geometric tail is added.
    """
    if tail_ratio >= Fraction(1, 3) or tail_ratio <= 0:
        raise DomainError("tail ratio must lie in (0, 1/3)")
    p = prec
    while True:
        conv, val, r, terms = _series_at(seq, p + GUARD_BITS, Fraction(tail_ratio))
        if conv is not None or p >= cap:
            break
        p = min(2 * p, cap)
    if conv is None:
        conv = False  # undecided ratio never yields a finite claim
    return SeriesBound(bool(conv), val.rounded(prec) if conv else None,
                       r.rounded(prec), prec, terms)


def lemma2_partial(seq: DeltaSequence, m: int, prec: int = DEFAULT_PREC) -> Enclosure:
    """8 sum_{n<=m} 2^n delta_n^eta."""
    w = prec + GUARD_BITS
    e = _eta_w(w)
    total = Enclosure.exact(0, w)
    for n in range(m + 1):
        total = total + 2 ** n * power(seq.delta(n), e, w)
    return (8 * total).rounded(prec)


# ---------------------------------------------------------------------------
# brute-force covering and projections


def _floor_div(a: Fraction, s: Fraction) -> int:
    return (a.numerator * s.denominator) // (a.denominator * s.numerator)


def _ceil_div(a: Fraction, s: Fraction) -> int:
    return -((-a.numerator * s.denominator) // (a.denominator * s.numerator))


def region_content_upper(region: RectRegion, side, budget: int = DEFAULT_BUDGET) -> ContentBound:
    """Cover ``region`` by closed grid squares [i s, (i+1) s] x [j s, (j+1) s]
    and charge ``s`` per square used."""
    s = Fraction(side)
    if s <= 0:
        raise DomainError("side must be positive")
    cells: set = set()
    for r in region:
        i0 = _floor_div(r.x0, s)
        i1 = max(_ceil_div(r.x1, s), i0 + 1)
        j0 = _floor_div(r.y0, s)
        j1 = max(_ceil_div(r.y1, s), j0 + 1)
        if len(cells) + (i1 - i0) * (j1 - j0) > budget:
            cells.update((i, j) for i in range(i0, i1) for j in range(j0, j1)
                         if len(cells) <= budget)
            raise BudgetError(len(cells), budget)
        cells.update((i, j) for i in range(i0, i1) for j in range(j0, j1))
    total = s * len(cells)
    return ContentBound(Enclosure.exact(total), "covering", side=s,
                        squares=tuple(sorted(cells)), exact_sum=total)


def best_covering(region: RectRegion, sides, budget: int = DEFAULT_BUDGET) -> ContentBound:
    bounds = [region_content_upper(region, s, budget) for s in sides]
    return min(bounds, key=lambda b: (b.exact_sum, b.side))


def projection_lower(region: RectRegion) -> Fraction:
    """max of the Lebesgue measures of the two coordinate projections."""
    if len(region) == 0:
        return Fraction(0)
    xs = [(r.x0, r.x1) for r in region]
    ys = [(r.y0, r.y1) for r in region]
    return max(measure(xs), measure(ys))


def lemma1_region(delta, n0: int) -> RectRegion:
    return lemma1_configuration(delta, n0)
