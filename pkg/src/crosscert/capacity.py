"""Positive lower bound for the continuous analytic capacity of the Cantor
square C(1/3) x C(1/3).

The natural self-similar probability measure mu on the Cantor square obeys
mu(B(x, r)) <= C_F r^d with d = log 4 / log 3.  Its Cauchy potential
int dmu(w) / |z - w| is then bounded by a constant B on the whole plane, so
the Cauchy transform divided by B is admissible and has |f'(inf)| = 1/B.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .enclosure import DEFAULT_PREC, GUARD_BITS, Enclosure, enclosure_to_json, log, log2_const, power
from .geometry import frac_to_json

# (fixed point, contraction ratio) of the four similitudes
CORNERS = ((Fraction(0), Fraction(0)), (Fraction(1), Fraction(0)),
           (Fraction(0), Fraction(1)), (Fraction(1), Fraction(1)))
RATIO = Fraction(1, 3)

# a disk of radius r < 3^-k meets at most 3 x 3 grid cells of side 3^-k
GRID_CELLS_PER_DISK = 9
# cell mass 4^-k = 3^(-kd) <= (3r)^d = 4 r^d when r >= 3^(-k-1)
MASS_FACTOR = 4
# of any 3 consecutive level-k triadic intervals at most 2 are Cantor intervals
CANTOR_CELLS_PER_BLOCK = 4

CAPACITY_ASSUMPTIONS = (
    "The Cauchy transform of a measure with growth mu(B(x,r)) <= C r^d, d > 1, "
    "is continuous on the plane (int_0^1 C t^(d-2) dt < inf) and analytic off the support.",
    "Admissible functions for alpha: continuous on C, analytic off the set, |f| <= 1; "
    "alpha(F) = sup |f'(inf)| with f'(inf) = lim z (f(z) - f(inf)).",
)


@dataclass(frozen=True)
class SelfSimilarMeasure:
    """Uniform self-similar measure: four maps w -> c + (w - c)/3 fixing the
    corners c of the unit square, weights 1/4 each."""

    maps: tuple = CORNERS
    ratio: Fraction = RATIO
    weight: Fraction = Fraction(1, 4)

    def cell_mass(self, k: int) -> Fraction:
        return self.weight ** k

    def cell_side(self, k: int) -> Fraction:
        return self.ratio ** k

    def dimension(self, prec: int = DEFAULT_PREC) -> Enclosure:
        w = prec + GUARD_BITS
        return (2 * log2_const(w) / log(3, w)).rounded(prec)

    def cells(self, k: int) -> list[tuple[Fraction, Fraction]]:
        """Lower-left corners of the 4^k level-k cells."""
        out = [(Fraction(0), Fraction(0))]
        for level in range(1, k + 1):
            step = 2 * self.ratio ** level
            out = [(x + a * step, y + b * step) for x, y in out for b in (0, 1) for a in (0, 1)]
        return out


def dimension(prec: int = DEFAULT_PREC) -> Enclosure:
    return SelfSimilarMeasure().dimension(prec)


def frostman_constant(refined: bool = False) -> Enclosure:
    """C_F with mu(B(x, r)) <= C_F r^d for every centre x and r <= 1.

    Crude: 9 cells times 4 r^d.  ``refined`` uses that only 2 x 2 of any
    3 x 3 block of level-k cells carry mass.
    """
    cells = CANTOR_CELLS_PER_BLOCK if refined else GRID_CELLS_PER_DISK
    return Enclosure.exact(cells * MASS_FACTOR)


def _geometric_factor() -> Fraction:
    # sum_n (3^(1-d))^n with 3^(1-d) = 3/4 exactly since 3^d = 4
    return 1 / (1 - Fraction(3, 4))


def _refine_once(b: Fraction) -> Fraction:
    """One self-similar recursion step.

    The four level-1 cells are 1/3 apart, so z lies within 1/6 of at most
    one of them.  That cell contributes (1/4) * 3 * P(3(z - c)) <= (3/4) B;
    each other cell is at distance >= 1/6 and contributes <= (1/4) * 6.
    If z is 1/6 away from every cell, P(z) <= 6.
    """
    return max(Fraction(6), Fraction(3, 4) * b + 3 * Fraction(1, 4) * 6)


def potential_sup_bound(refine_levels: int = 0, refined_frostman: bool = False) -> Enclosure:
    """Upper bound on sup_z int dmu(w)/|z - w|.

    Annuli 3^(-n-1) <= |z - w| < 3^(-n) contribute at most
    mu(B(z, 3^-n)) 3^(n+1) <= 3 C_F (3/4)^n; distances >= 1 contribute at
    most mu(C) = 1.
    """
    cf = frostman_constant(refined_frostman).hi
    b = 3 * cf * _geometric_factor() + 1
    for _ in range(refine_levels):
        b = min(b, _refine_once(b))
    return Enclosure.exact(b)


@dataclass(frozen=True)
class CapacityLB:
    value: Enclosure
    potential_bound: Enclosure
    derivation: dict
    assumptions: tuple = CAPACITY_ASSUMPTIONS
    prec: int = DEFAULT_PREC

    @property
    def lo(self) -> Fraction:
        return self.value.lo

    def to_json(self) -> dict:
        return {"value": enclosure_to_json(self.value),
                "value_lo_exact": frac_to_json(self.value.lo),
                "potential_bound": enclosure_to_json(self.potential_bound),
                "potential_bound_hi_exact": frac_to_json(self.potential_bound.hi),
                "derivation": self.derivation,
                "assumptions": list(self.assumptions)}


def derivation_trace(refine_levels: int = 0, refined_frostman: bool = False,
                     prec: int = DEFAULT_PREC) -> dict:
    cf = frostman_constant(refined_frostman)
    d = dimension(prec)
    return {
        "scheme": "self-similar Frostman measure, Cauchy potential sup bound",
        "frostman_constant": frac_to_json(cf.hi),
        "frostman_cells": CANTOR_CELLS_PER_BLOCK if refined_frostman else GRID_CELLS_PER_DISK,
        "mass_factor": MASS_FACTOR,
        "dimension": enclosure_to_json(d),
        "annulus_ratio": frac_to_json(Fraction(3, 4)),
        "annulus_sum": frac_to_json(3 * cf.hi * _geometric_factor()),
        "far_field": frac_to_json(Fraction(1)),
        "refine_levels": refine_levels,
        "refined_frostman": refined_frostman,
        "total_mass": frac_to_json(Fraction(1)),
    }


def alpha_lower_bound(refine_levels: int = 0, refined_frostman: bool = False,
                      prec: int = DEFAULT_PREC) -> CapacityLB:
    """alpha(C) >= 1/B, witnessed by (Cauchy transform of mu) / B."""
    b = potential_sup_bound(refine_levels, refined_frostman)
    lo = 1 / b.hi
    d = dimension(prec)
    if not d.lo > 1:
        raise ArithmeticError("dimension enclosure does not exceed 1")
    return CapacityLB(Enclosure(lo, lo, prec), b,
                      derivation_trace(refine_levels, refined_frostman, prec),
                      CAPACITY_ASSUMPTIONS, prec)


def replay_capacity(derivation: dict) -> Fraction:
    """Recompute 1/B from a stored derivation trace."""
    b = potential_sup_bound(int(derivation["refine_levels"]),
                            bool(derivation["refined_frostman"]))
    return 1 / b.hi


def three_pow_d(prec: int = DEFAULT_PREC) -> Enclosure:
    return power(3, dimension(prec + GUARD_BITS), prec + GUARD_BITS).rounded(prec)
