from fractions import Fraction as F

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from crosscert.capacity import (SelfSimilarMeasure, alpha_lower_bound, dimension,
                                frostman_constant, potential_sup_bound, replay_capacity,
                                three_pow_d)
from crosscert.sampling import (cantor_points, disk_mass_upper, discrete_potential,
                                sample_frostman_ratio, sample_potential_max)


def test_measure_cells():
    mu = SelfSimilarMeasure()
    assert mu.cell_mass(0) == 1
    assert mu.cell_mass(3) == F(1, 64)
    cells = mu.cells(3)
    assert len(cells) == 64 == len(set(cells))
    assert sum(mu.cell_mass(3) for _ in cells) == 1


def test_dimension():
    mpmath.mp.prec = 300
    d = dimension(128)
    assert d.lo > 1
    v = mpmath.log(4) / mpmath.log(3)
    assert mpmath.mpf(d.lo.numerator) / d.lo.denominator <= v <= mpmath.mpf(d.hi.numerator) / d.hi.denominator
    assert three_pow_d(128).contains(4)
    assert dimension(64).contains(dimension(128))


def test_frostman_constant():
    assert frostman_constant().hi == 36
    assert frostman_constant(refined=True).hi == 16


def test_potential_bound_crude():
    assert potential_sup_bound().hi == 433
    # sum of (3^(1-d))^n with 3^(1-d) = 3/4
    assert 3 * 36 * 4 + 1 == 433


def test_potential_refinement_monotone():
    bs = [potential_sup_bound(k).hi for k in range(8)]
    assert bs[1] == F(3, 4) * 433 + F(9, 2)
    assert all(b2 <= b1 for b1, b2 in zip(bs, bs[1:]))
    assert potential_sup_bound(200).hi > 18


def test_alpha_lower_bound():
    lb = alpha_lower_bound()
    assert lb.lo == F(1, 433) and lb.lo > F(2, 1000)
    assert lb.lo == 1 / lb.potential_bound.hi
    assert lb.assumptions and any("continuous" in a for a in lb.assumptions)
    assert alpha_lower_bound(refine_levels=3).lo > lb.lo
    assert replay_capacity(lb.derivation) == lb.lo


def test_alpha_independent_of_sequence():
    # no sequence enters the derivation
    assert "sequence" not in alpha_lower_bound().derivation


def exact_disk_mass_bruteforce(cx, cy, r, depth):
    """Sum of masses of depth-level cells meeting the disk, by enumeration."""
    pts = np.zeros((1, 2))
    for k in range(1, depth + 1):
        step = 2 * 3.0 ** -k
        offs = np.array([[0, 0], [step, 0], [0, step], [step, step]])
        pts = (pts[:, None, :] + offs[None]).reshape(-1, 2)
    side = 3.0 ** -depth
    dx = np.maximum.reduce([pts[:, 0] - cx, np.zeros(len(pts)), cx - pts[:, 0] - side])
    dy = np.maximum.reduce([pts[:, 1] - cy, np.zeros(len(pts)), cy - pts[:, 1] - side])
    return float(np.count_nonzero(dx * dx + dy * dy <= r * r)) * 0.25 ** depth


@settings(max_examples=40, deadline=None)
@given(st.floats(-0.2, 1.2), st.floats(-0.2, 1.2), st.floats(0.01, 1.0))
def test_disk_mass_recursion_matches_enumeration(cx, cy, r):
    assert disk_mass_upper(cx, cy, r, 5) == pytest.approx(exact_disk_mass_bruteforce(cx, cy, r, 5))


def test_frostman_crude_bound_cell_counting():
    # disks centred on a grid of points, radii 3^-k, depths <= 6
    d = np.log(4) / np.log(3)
    worst = 0.0
    for k in range(0, 5):
        r = 3.0 ** -k
        for cx in np.linspace(0, 1, 9):
            for cy in np.linspace(0, 1, 9):
                worst = max(worst, disk_mass_upper(cx, cy, r, k + 2) / r ** d)
    assert worst <= 36
    assert worst <= 16


@pytest.mark.slow
def test_frostman_sampled():
    assert sample_frostman_ratio(2000, 6, seed=1) <= frostman_constant().hi


def test_potential_sampled_small():
    rng = np.random.default_rng(3)
    pts = cantor_points(50, 12, rng)
    vals = discrete_potential(pts, depth=6)
    assert np.all(vals > 0) and vals.max() <= potential_sup_bound().hi
    far = discrete_potential(np.array([[100.0, 0.0]]), depth=6)[0]
    assert far == pytest.approx(1 / np.hypot(99.5, 0.5), rel=1e-3)


@pytest.mark.slow
def test_potential_sampled():
    assert sample_potential_max(200, depth=7, seed=2) <= potential_sup_bound().hi
