"""Acceptance suite: one test per criterion, each recording a PASS/FAIL line.

The lines are printed in the terminal summary (see conftest.py) and also when
this file is run directly with ``python tests/test_acceptance.py``.
"""
import json
import time
from fractions import Fraction as F

import mpmath
import pytest

from crosscert import capacity, content, enclosure as enc, geometry as geo
from crosscert.certificate import Certificate, build_certificate, validate
from crosscert.content import (best_covering, cover_sum_lemma1, largest_n0, lemma1_bound,
                               lemma1_region, lemma2_partial, lemma2_series,
                               region_content_upper)
from crosscert.geometry import DeltaSequence, build_Fm, complement_region
from crosscert.render import render_Fm
from crosscert.sampling import sample_frostman_ratio, sample_potential_max
from crosscert.selector import select_geometric

RESULTS: list[str] = []


def record(n: int, name: str, ok: bool, detail: str, seconds: float) -> None:
    line = f"criterion {n} [{name}]: {'PASS' if ok else 'FAIL'} ({seconds:.2f}s) {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def test_criterion_1_single_scale_arithmetic():
    start = time.perf_counter()
    bad = []
    rows = []
    for t in range(3, 11):
        delta = F(1, 3 ** t)
        n0 = largest_n0(delta)
        plain = cover_sum_lemma1(delta, n0)
        grid = region_content_upper(lemma1_region(delta, n0), delta).exact_sum
        lo = lemma1_bound(delta, n0).value.lo
        rows.append(f"t={t} n0={n0} cover={plain / delta}d grid={grid / delta}d")
        if not (plain == grid and plain < lo and grid < lo):
            bad.append(t)
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 1
    detail = "exact match and strict bound for t=3..10"
    if bad:
        detail = f"mismatch at t={bad}; " + "; ".join(rows[:3])
    record(1, "single-scale arithmetic", ok, detail, elapsed)


def test_criterion_2_exponent_identities():
    start = time.perf_counter()
    prec = 128
    eta = content.eta(prec)
    two = enc.power(3, 1 - eta, prec)
    four = capacity.three_pow_d(prec)
    tol = F(1, 10 ** 30)
    ok = two.contains(2) and four.contains(4) and two.width < tol and four.width < tol
    weights = all(content.weight_factor(n, prec).contains(2 ** n) for n in range(33))
    elapsed = time.perf_counter() - start
    ok = ok and weights and elapsed < 1
    record(2, "exponent identities", ok,
           f"widths {float(two.width):.2e}, {float(four.width):.2e}; 2^n for n<=32: {weights}",
           elapsed)


def test_criterion_3_series_certification():
    start = time.perf_counter()
    eps = F(1, 1000)
    seq = select_geometric(eps)
    bound = lemma2_series(seq)
    elapsed = time.perf_counter() - start
    # independent partial sums with mpmath at 256 bits
    with mpmath.workprec(256):
        e = 1 - mpmath.log(2) / mpmath.log(3)
        total = mpmath.mpf(0)
        worst = mpmath.mpf(0)
        for n in range(65):
            d = seq.delta(n)
            total += 2 ** n * mpmath.power(mpmath.mpf(d.numerator) / d.denominator, e)
            worst = max(worst, 8 * total)
        below = worst < mpmath.mpf(bound.hi.numerator) / bound.hi.denominator
    ok = bound.converges and bound.hi < eps and below and elapsed < 5
    record(3, "series certification", ok,
           f"A=2^-{seq.to_json()['log2_inv_amplitude']}, hi={float(bound.hi):.6g} < 1e-3, "
           f"partial(64)={float(worst):.6g}", elapsed)


def test_criterion_4_covering_dominance():
    start = time.perf_counter()
    seq = DeltaSequence.default()
    rows = []
    ok = True
    for m in range(4):
        region = complement_region(seq, m)
        best = best_covering(region, [seq.delta(n) for n in range(m, -1, -1)])
        partial = lemma2_partial(seq, m)
        good = best.exact_sum <= partial.lo
        ok = ok and good
        rows.append(f"m={m}: {best.exact_sum} <= {float(partial.lo):.4f}")
    elapsed = time.perf_counter() - start
    record(4, "covering-oracle dominance", ok and elapsed < 60, "; ".join(rows), elapsed)


def test_criterion_5_capacity_soundness():
    start = time.perf_counter()
    ratio = sample_frostman_ratio(10_000, 6)
    potential = sample_potential_max(1000, 8)
    cf = capacity.frostman_constant()
    bound = capacity.potential_sup_bound()
    lb = capacity.alpha_lower_bound()
    elapsed = time.perf_counter() - start
    ok = (ratio <= cf.hi and potential <= bound.hi and lb.lo > F(2, 1000)
          and lb.lo >= F(1, 433) and elapsed < 120)
    record(5, "capacity lower bound", ok,
           f"frostman {ratio:.3f} <= {cf.hi}, potential {potential:.3f} <= {bound.hi}, "
           f"L = {lb.lo}", elapsed)


def test_criterion_6_certificate(tmp_path):
    start = time.perf_counter()
    cert = build_certificate(128)
    path = tmp_path / "certificate.json"
    cert.write(path)
    replay = validate(Certificate.read(path))
    built = time.perf_counter() - start

    d = json.loads(path.read_text())
    d["sequence"]["amplitude"][1] //= 2
    amp = validate(d)
    d = json.loads(path.read_text())
    d["capacity_lb"]["value_lo_exact"] = [1, 400]
    cap = validate(d)
    elapsed = time.perf_counter() - start
    ok = (cert.verdict == "PASS" and replay.passed and built < 300
          and amp.failed_link == "content-series" and cap.failed_link == "capacity")
    record(6, "end-to-end certificate", ok,
           f"build+validate {built:.2f}s, tampers fail at {amp.failed_link} / {cap.failed_link}",
           elapsed)


def test_criterion_7_figure():
    start = time.perf_counter()
    svg = render_Fm(DeltaSequence.default(), 2)
    elapsed = time.perf_counter() - start
    crosses = svg.count('class="cross"')
    bottom = svg.count('data-side="bottom"')
    left = svg.count('data-side="left"')
    levels = [svg.count(f'data-side="bottom" data-level="{n}"') for n in range(3)]
    ok = crosses == 21 and bottom == left == 7 and levels == [1, 2, 4] and elapsed < 1
    record(7, "figure reproduction", ok,
           f"{crosses} crosses, marks bottom={bottom} left={left} by level {levels}", elapsed)


def _enclosure_ops(p):
    seq = DeltaSequence.geometric(F(1, 2 ** 20), F(1, 8))
    x = enc.Enclosure.outward(F(1, 3), F(1, 3), p)
    return {
        "add": x + F(1, 7), "sub": x - F(1, 7), "mul": x * F(2, 7), "div": x / F(5, 7),
        "pow": x ** 3, "log": enc.log(F(5, 3), p), "exp": enc.exp(F(-7, 5), p),
        "power": enc.power(F(2, 9), F(3, 7), p), "log2": enc.log2_const(p),
        "log3": enc.log3_const(p), "eta": content.eta(p),
        "weight": content.weight_factor(7, p), "lemma1": lemma1_bound(F(1, 81), 3, p).value,
        "series": lemma2_series(seq, p).value, "partial": lemma2_partial(seq, 5, p),
        "dimension": capacity.dimension(p), "3^d": capacity.three_pow_d(p),
    }


def test_criterion_8_properties():
    start = time.perf_counter()
    seq = DeltaSequence.default()
    failures = []
    for m in range(4):
        comp = complement_region(seq, m)
        if not comp.swapped().same_set(comp):
            failures.append(f"symmetry m={m}")
        if not build_Fm(seq, m + 1).issubset(build_Fm(seq, m)):
            failures.append(f"nesting m={m}")
    region = complement_region(seq, 2)
    for s in (F(1, 27), F(1, 81), F(1, 243)):
        small = region.scaled(F(1, 3))
        if region_content_upper(small, s / 3).exact_sum != region_content_upper(region, s).exact_sum / 3:
            failures.append(f"scaling side={s}")
    for p in (64, 128):
        coarse, fine = _enclosure_ops(p), _enclosure_ops(2 * p)
        failures += [f"monotone {k}@{p}" for k in coarse if not coarse[k].contains(fine[k])]
    elapsed = time.perf_counter() - start
    record(8, "property suites", not failures,
           "symmetry, nesting, scaling, precision monotonicity"
           + (f"; failed: {failures}" if failures else ""), elapsed)


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q", "-s"]))
