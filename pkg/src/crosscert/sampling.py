"""Floating-point sampling checks for the Cantor-square measure.

These estimate the quantities that :mod:`crosscert.capacity` bounds
analytically and are used only to cross-check those bounds.
"""
from __future__ import annotations

import math

import numpy as np

LOG3_4 = math.log(4) / math.log(3)


def cantor_points(n: int, depth: int, rng: np.random.Generator) -> np.ndarray:
    """Random points of the Cantor square, exact to 3^-depth."""
    digits = rng.integers(0, 2, size=(n, 2, depth)) * 2
    scale = 3.0 ** -np.arange(1, depth + 1)
    return digits @ scale


def disk_mass_upper(cx: float, cy: float, r: float, depth: int) -> float:
    """Upper estimate of mu(B((cx, cy), r)): total mass of the level-`depth`
    cells meeting the closed disk (cells inside the disk count exactly)."""
    r2 = r * r

    def visit(x0: float, y0: float, side: float, k: int) -> float:
        # nearest and farthest squared distance from the centre to the cell
        dx = max(x0 - cx, 0.0, cx - (x0 + side))
        dy = max(y0 - cy, 0.0, cy - (y0 + side))
        if dx * dx + dy * dy > r2:
            return 0.0
        fx = max(abs(cx - x0), abs(cx - x0 - side))
        fy = max(abs(cy - y0), abs(cy - y0 - side))
        mass = 0.25 ** k
        if fx * fx + fy * fy <= r2 or k == depth:
            return mass
        s = side / 3.0
        return (visit(x0, y0, s, k + 1) + visit(x0 + 2 * s, y0, s, k + 1)
                + visit(x0, y0 + 2 * s, s, k + 1) + visit(x0 + 2 * s, y0 + 2 * s, s, k + 1))

    return visit(0.0, 0.0, 1.0, 0)


def sample_frostman_ratio(n_samples: int = 10_000, max_level: int = 6, seed: int = 0,
                          extra_depth: int = 3) -> float:
    """max over sampled (x, r), r >= 3^-max_level, of mu(B(x, r)) / r^d."""
    rng = np.random.default_rng(seed)
    half = n_samples // 2
    centres = np.concatenate([cantor_points(half, 20, rng),
                              rng.uniform(-0.25, 1.25, size=(n_samples - half, 2))])
    levels = rng.uniform(0, max_level, size=n_samples)
    best = 0.0
    for (cx, cy), u in zip(centres, levels):
        r = 3.0 ** -u
        depth = min(int(u) + extra_depth, max_level + extra_depth)
        best = max(best, disk_mass_upper(float(cx), float(cy), r, depth) / r ** LOG3_4)
    return best


def cell_centres(depth: int) -> np.ndarray:
    pts = np.zeros((1, 2))
    for k in range(1, depth + 1):
        step = 2 * 3.0 ** -k
        offs = np.array([[0, 0], [step, 0], [0, step], [step, step]])
        pts = (pts[:, None, :] + offs[None, :, :]).reshape(-1, 2)
    return pts + 0.5 * 3.0 ** -depth


def discrete_potential(points: np.ndarray, depth: int = 8, chunk: int = 64) -> np.ndarray:
    """sum over level-`depth` cells of mass / distance to the cell centre,
    distances floored at a sixth of the cell side."""
    centres = cell_centres(depth)
    mass = 0.25 ** depth
    floor = 3.0 ** -depth / 6
    out = np.empty(len(points))
    for s in range(0, len(points), chunk):
        p = points[s:s + chunk]
        dist = np.hypot(p[:, None, 0] - centres[None, :, 0], p[:, None, 1] - centres[None, :, 1])
        out[s:s + chunk] = (mass / np.maximum(dist, floor)).sum(axis=1)
    return out


def sample_potential_max(n_points: int = 1000, depth: int = 8, seed: int = 0) -> float:
    rng = np.random.default_rng(seed)
    half = n_points // 2
    pts = np.concatenate([cantor_points(half, 16, rng),
                          rng.uniform(-0.5, 1.5, size=(n_points - half, 2))])
    return float(discrete_potential(pts, depth).max())
