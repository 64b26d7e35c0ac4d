"""Outward-rounded rational interval arithmetic.

Endpoints are :class:`fractions.Fraction` values rounded outward to a
binary significand of ``prec`` bits, so every endpoint is a dyadic
rational and every operation returns an interval that contains the exact
real result.  Transcendental functions (``log``, ``exp``) are evaluated by
truncated series with explicit remainder bounds.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

DEFAULT_PREC = 128
MAX_PREC = 1024
GUARD_BITS = 48

Number = Union[int, Fraction]


class InconclusiveError(ArithmeticError):
    """A strict comparison could not be resolved below the precision cap."""


def _floor_log2(x: Fraction) -> int:
    """floor(log2(x)) for x > 0, computed exactly."""
    n, d = x.numerator, x.denominator
    e = n.bit_length() - d.bit_length()
    # now 2^(e-1) < n/d < 2^(e+1)
    if e >= 0:
        if n < d << e:
            e -= 1
    else:
        if n << -e < d:
            e -= 1
    return e


def round_down(x: Number, prec: int) -> Fraction:
    x = Fraction(x)
    if x == 0:
        return x
    if x < 0:
        return -round_up(-x, prec)
    shift = prec - 1 - _floor_log2(x)
    if shift >= 0:
        scaled = (x.numerator << shift) // x.denominator
        return Fraction(scaled, 1 << shift)
    scaled = x.numerator // (x.denominator << -shift)
    return Fraction(scaled << -shift)


def round_up(x: Number, prec: int) -> Fraction:
    x = Fraction(x)
    if x == 0:
        return x
    if x < 0:
        return -round_down(-x, prec)
    shift = prec - 1 - _floor_log2(x)
    if shift >= 0:
        scaled = -((-(x.numerator << shift)) // x.denominator)
        return Fraction(scaled, 1 << shift)
    den = x.denominator << -shift
    scaled = -((-x.numerator) // den)
    return Fraction(scaled << -shift)


@dataclass(frozen=True)
class Enclosure:
    """Closed interval ``[lo, hi]`` known to contain some real quantity."""

    lo: Fraction
    hi: Fraction
    prec: int = DEFAULT_PREC

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty enclosure [{self.lo}, {self.hi}]")

    @classmethod
    def exact(cls, q: Number, prec: int = DEFAULT_PREC) -> "Enclosure":
        return cls(Fraction(q), Fraction(q), prec)

    @classmethod
    def outward(cls, lo: Number, hi: Number, prec: int) -> "Enclosure":
        return cls(round_down(lo, prec), round_up(hi, prec), prec)

    # -- queries ---------------------------------------------------------
    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x: Union[Number, "Enclosure"]) -> bool:
        if isinstance(x, Enclosure):
            return self.lo <= x.lo and x.hi <= self.hi
        x = Fraction(x)
        return self.lo <= x <= self.hi

    def certainly_lt(self, other: Union[Number, "Enclosure"]) -> bool:
        return self.hi < _lo(other)

    def certainly_le(self, other: Union[Number, "Enclosure"]) -> bool:
        return self.hi <= _lo(other)

    def certainly_gt(self, other: Union[Number, "Enclosure"]) -> bool:
        return self.lo > _hi(other)

    def rounded(self, prec: int) -> "Enclosure":
        return Enclosure.outward(self.lo, self.hi, prec)

    def intersect(self, other: "Enclosure") -> "Enclosure":
        return Enclosure(max(self.lo, other.lo), min(self.hi, other.hi),
                         max(self.prec, other.prec))

    # -- arithmetic ------------------------------------------------------
    def _coerce(self, other) -> "Enclosure":
        if isinstance(other, Enclosure):
            return other
        return Enclosure.exact(other, self.prec)

    def _prec_with(self, other: "Enclosure") -> int:
        return max(self.prec, other.prec)

    def __neg__(self):
        return Enclosure(-self.hi, -self.lo, self.prec)

    def __add__(self, other):
        o = self._coerce(other)
        return Enclosure.outward(self.lo + o.lo, self.hi + o.hi, self._prec_with(o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return Enclosure.outward(self.lo - o.hi, self.hi - o.lo, self._prec_with(o))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        products = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Enclosure.outward(min(products), max(products), self._prec_with(o))

    __rmul__ = __mul__

    def reciprocal(self) -> "Enclosure":
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("enclosure straddles zero")
        return Enclosure.outward(1 / self.hi, 1 / self.lo, self.prec)

    def __truediv__(self, other):
        return self * self._coerce(other).reciprocal()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.reciprocal()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("use power() for non-integer exponents")
        if k < 0:
            return (self ** -k).reciprocal()
        if k == 0:
            return Enclosure.exact(1, self.prec)
        if self.lo >= 0:
            return Enclosure.outward(self.lo ** k, self.hi ** k, self.prec)
        if self.hi <= 0:
            a, b = self.hi ** k, self.lo ** k
            return Enclosure.outward(min(a, b), max(a, b), self.prec)
        top = max(self.lo ** k, self.hi ** k)
        bottom = 0 if k % 2 == 0 else self.lo ** k
        return Enclosure.outward(bottom, top, self.prec)

    def __repr__(self):
        return f"Enclosure({float(self.lo)!r}, {float(self.hi)!r}, prec={self.prec})"


def _lo(x) -> Fraction:
    return x.lo if isinstance(x, Enclosure) else Fraction(x)


def _hi(x) -> Fraction:
    return x.hi if isinstance(x, Enclosure) else Fraction(x)


# ---------------------------------------------------------------------------
# series kernels, all at working precision w (bits)


def _atanh_bounds(s: Fraction, w: int) -> tuple[Fraction, Fraction]:
    """Bounds on atanh(s) for 0 <= s <= 1/2."""
    if s == 0:
        return Fraction(0), Fraction(0)
    s2_lo, s2_hi = round_down(s * s, w), round_up(s * s, w)
    p_lo, p_hi = round_down(s, w), round_up(s, w)
    lo = hi = Fraction(0)
    eps = Fraction(1, 1 << (w + 4))
    k = 1
    while True:
        lo = round_down(lo + round_down(p_lo / k, w), w)
        hi = round_up(hi + round_up(p_hi / k, w), w)
        p_lo = round_down(p_lo * s2_lo, w)
        p_hi = round_up(p_hi * s2_hi, w)
        k += 2
        # remaining terms: sum_{i>=0} p s^(2i) / (k + 2i) <= p / (k (1 - s^2))
        tail = round_up(p_hi / (k * (1 - s2_hi)), w)
        if tail < eps * max(hi, Fraction(1)):
            return lo, round_up(hi + tail, w)


def _exp_small_bounds(y: Fraction, w: int) -> tuple[Fraction, Fraction]:
    """Bounds on exp(y) for 0 <= y <= 1/2."""
    lo = hi = Fraction(1)
    t_lo = t_hi = Fraction(1)
    eps = Fraction(1, 1 << (w + 4))
    i = 1
    while True:
        t_lo = round_down(t_lo * y / i, w)
        t_hi = round_up(t_hi * y / i, w)
        lo = round_down(lo + t_lo, w)
        hi = round_up(hi + t_hi, w)
        i += 1
        # next term t*y/i, geometric majorant with ratio <= 1/2
        tail = round_up(2 * t_hi * y / i, w)
        if tail < eps:
            return lo, round_up(hi + tail, w)


@lru_cache(maxsize=None)
def _log2_bounds(w: int) -> tuple[Fraction, Fraction]:
    lo, hi = _atanh_bounds(Fraction(1, 3), w)
    return 2 * lo, 2 * hi


@lru_cache(maxsize=None)
def _log_bounds(x: Fraction, w: int) -> tuple[Fraction, Fraction]:
    """Bounds on log(x) for rational x > 0."""
    if x <= 0:
        raise ValueError("log of non-positive number")
    if x == 1:
        return Fraction(0), Fraction(0)
    k = _floor_log2(x)
    m = x / Fraction(2) ** k  # 1 <= m < 2
    if m > Fraction(4, 3):
        k += 1
        m /= 2  # 2/3 < m < 1
    t = (m - 1) / (m + 1)  # |t| <= 1/5
    a_lo, a_hi = _atanh_bounds(abs(t), w)
    if t < 0:
        a_lo, a_hi = -a_hi, -a_lo
    l2_lo, l2_hi = _log2_bounds(w)
    if k >= 0:
        lo, hi = k * l2_lo + 2 * a_lo, k * l2_hi + 2 * a_hi
    else:
        lo, hi = k * l2_hi + 2 * a_lo, k * l2_lo + 2 * a_hi
    return round_down(lo, w), round_up(hi, w)


def _exp_bounds(y: Fraction, w: int) -> tuple[Fraction, Fraction]:
    """Bounds on exp(y) for rational y, by halving and repeated squaring."""
    if y == 0:
        return Fraction(1), Fraction(1)
    neg = y < 0
    a = -y if neg else y
    s = 0
    while a > Fraction(1, 256):
        a /= 2
        s += 1
    ww = w + s + 8
    lo, hi = _exp_small_bounds(a, ww)
    for _ in range(s):
        lo, hi = round_down(lo * lo, ww), round_up(hi * hi, ww)
    if neg:
        lo, hi = round_down(1 / hi, ww), round_up(1 / lo, ww)
    return round_down(lo, w), round_up(hi, w)


# ---------------------------------------------------------------------------
# public transcendental functions


def _working(prec: int) -> int:
    return prec + GUARD_BITS


def log(x: Union[Number, Enclosure], prec: int | None = None) -> Enclosure:
    """Enclosure of the natural logarithm; log is increasing."""
    if not isinstance(x, Enclosure):
        x = Enclosure.exact(x, prec or DEFAULT_PREC)
    prec = prec or x.prec
    if x.lo <= 0:
        raise ValueError("log requires a positive enclosure")
    w = _working(prec)
    lo, _ = _log_bounds(x.lo, w)
    _, hi = _log_bounds(x.hi, w)
    return Enclosure.outward(lo, hi, prec)


def exp(x: Union[Number, Enclosure], prec: int | None = None) -> Enclosure:
    """Enclosure of exp; exp is increasing."""
    if not isinstance(x, Enclosure):
        x = Enclosure.exact(x, prec or DEFAULT_PREC)
    prec = prec or x.prec
    w = _working(prec)
    lo, _ = _exp_bounds(x.lo, w)
    _, hi = _exp_bounds(x.hi, w)
    return Enclosure.outward(lo, hi, prec)


def power(base: Union[Number, Enclosure], exponent: Union[Number, Enclosure],
          prec: int | None = None) -> Enclosure:
    """Enclosure of ``base ** exponent`` for a positive base."""
    if isinstance(exponent, int):
        if isinstance(base, Enclosure):
            return (base ** exponent).rounded(prec or base.prec)
        return Enclosure.exact(Fraction(base) ** exponent, prec or DEFAULT_PREC)
    p = prec or _prec_of(base, exponent)
    w = _working(p)
    if not isinstance(exponent, Enclosure):
        exponent = Enclosure.exact(exponent, w)
    return exp(log(base, w) * exponent.rounded(w), w).rounded(p)


def _prec_of(*xs) -> int:
    ps = [x.prec for x in xs if isinstance(x, Enclosure)]
    return max(ps) if ps else DEFAULT_PREC


def log2_const(prec: int = DEFAULT_PREC) -> Enclosure:
    lo, hi = _log2_bounds(_working(prec))
    return Enclosure.outward(lo, hi, prec)


def log3_const(prec: int = DEFAULT_PREC) -> Enclosure:
    return log(3, prec)


def certify_lt(make, prec: int = DEFAULT_PREC, cap: int = MAX_PREC, what: str = ""):
    """Resolve ``left < right`` by doubling precision.

    ``make(p)`` returns a pair ``(left, right)`` of enclosures (or exact
    numbers) evaluated at precision ``p``.  Returns ``(holds, p, left,
    right)``; ``holds`` is False only when ``left >= right`` is certified.
    Raises :class:`InconclusiveError` when the cap is reached first.
    """
    p = prec
    while True:
        left, right = make(p)
        if _hi(left) < _lo(right):
            return True, p, left, right
        if _lo(left) >= _hi(right):
            return False, p, left, right
        if p >= cap:
            raise InconclusiveError(
                f"cannot resolve {what or 'strict inequality'} at {cap} bits")
        p = min(2 * p, cap)


def to_decimal_string(q: Fraction) -> str:
    """Exact decimal expansion of a dyadic rational (as produced by rounding)."""
    q = Fraction(q)
    d = q.denominator
    twos = (d & -d).bit_length() - 1
    if d != 1 << twos:
        raise ValueError("not a dyadic rational")
    digits = q.numerator * 5 ** twos
    sign = "-" if digits < 0 else ""
    s = str(abs(digits)).rjust(twos + 1, "0")
    if twos == 0:
        return sign + s
    return f"{sign}{s[:-twos]}.{s[-twos:]}".rstrip("0").rstrip(".")


def from_decimal_string(s: str) -> Fraction:
    return Fraction(s)


def enclosure_to_json(e: Enclosure) -> dict:
    lo, hi = e.lo, e.hi
    if not (_is_dyadic(lo) and _is_dyadic(hi)):
        e = e.rounded(e.prec)
        lo, hi = e.lo, e.hi
    return {"lo": to_decimal_string(lo), "hi": to_decimal_string(hi), "prec_bits": e.prec}


def enclosure_from_json(d: dict) -> Enclosure:
    return Enclosure(Fraction(d["lo"]), Fraction(d["hi"]), int(d["prec_bits"]))


def _is_dyadic(q: Fraction) -> bool:
    d = q.denominator
    return d & (d - 1) == 0

