"""Choose and audit gap sequences whose content series falls below a target."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .content import DomainError, SeriesBound, lemma2_series
from .enclosure import DEFAULT_PREC
from .geometry import DeltaSequence, frac_to_json

SELECT_RATIO = Fraction(1, 8)
MAX_AMPLITUDE = Fraction(1, 6)
DEFAULT_CHECK_LEVELS = 64


def select_geometric(eps, prec: int = DEFAULT_PREC) -> DeltaSequence:
    """delta_n = 2^-k (1/8)^n with the smallest k (largest amplitude) such that
    the certified series bound is < eps and 2^-k < 1/6."""
    eps = Fraction(eps)
    if eps <= 0:
        raise DomainError("eps must be positive")

    def passes(k: int) -> bool:
        bound = lemma2_series(DeltaSequence.geometric(Fraction(1, 2 ** k), SELECT_RATIO), prec)
        return bound.converges and bound.hi < eps

    # 2^-3 is the largest power-of-two reciprocal below 1/6; jump close to
    # the answer with a float estimate, then settle it with certified checks
    k = max(3, _estimate_k(eps) - 1)
    while k > 3 and passes(k - 1):
        k -= 1
    while not passes(k):
        k += 1
    return DeltaSequence.geometric(Fraction(1, 2 ** k), SELECT_RATIO)


def _estimate_k(eps: Fraction) -> int:
    eta = 1 - math.log(2) / math.log(3)
    ratio = 2 ** (1 - 3 * eta)
    log2_eps = math.log2(eps.numerator) - math.log2(eps.denominator)
    # 8 * 2^(-k eta) / (1 - ratio) < eps
    return max(3, math.ceil((math.log2(8 / (1 - ratio)) - log2_eps) / eta))


@dataclass(frozen=True)
class VerifyReport:
    sequence: DeltaSequence
    eps: Fraction
    level_checks: tuple  # (n, delta_n, 3^-(n+1), ok)
    all_levels: bool  # exact all-n admissibility
    series: SeriesBound

    @property
    def admissible(self) -> bool:
        return self.all_levels and all(ok for *_, ok in self.level_checks)

    @property
    def first_violation(self):
        return next((n for n, _, _, ok in self.level_checks if not ok), None)

    @property
    def verdict(self) -> str:
        if not self.admissible:
            return "FAIL"
        if not self.series.converges:
            return "DIVERGENT"
        return "PASS" if self.series.hi < self.eps else "FAIL"

    @property
    def passed(self) -> bool:
        return self.verdict == "PASS"

    def to_json(self) -> dict:
        return {
            "sequence": self.sequence.to_json(),
            "eps": frac_to_json(self.eps),
            "level_checks": [{"level": n, "delta": frac_to_json(d), "limit": frac_to_json(lim),
                              "ok": ok} for n, d, lim, ok in self.level_checks],
            "admissible_all_levels": self.all_levels,
            "series": self.series.to_json(),
            "verdict": self.verdict,
        }


def verify(seq: DeltaSequence, eps, prec: int = DEFAULT_PREC,
           check_levels: int = DEFAULT_CHECK_LEVELS) -> VerifyReport:
    eps = Fraction(eps)
    top = check_levels if seq.max_level is None else min(check_levels, seq.max_level)
    checks = tuple((n, seq.delta(n), Fraction(1, 3 ** (n + 1)), seq.admissible_at(n))
                   for n in range(top + 1))
    return VerifyReport(seq, eps, checks, seq.admissible_all_levels(),
                        lemma2_series(seq, prec))
