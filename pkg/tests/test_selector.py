import json
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from crosscert.content import DomainError, lemma2_series
from crosscert.geometry import DeltaSequence
from crosscert.selector import select_geometric, verify


def test_select_1e3():
    seq = select_geometric(F(1, 1000))
    assert seq.ratio == F(1, 8)
    # closed form 8 A^eta / (1 - 2^(1 - 3 eta)) < 1e-3 first holds at A = 2^-46
    assert seq.amplitude == F(1, 2 ** 46)
    assert lemma2_series(seq).hi < F(1, 1000)
    assert not lemma2_series(DeltaSequence.geometric(F(1, 2 ** 45), F(1, 8))).hi < F(1, 1000)
    assert seq.admissible_all_levels() and seq.is_decreasing(30)


def test_select_large_eps_capped_by_amplitude():
    seq = select_geometric(10 ** 6)
    assert seq.amplitude == F(1, 8) < F(1, 6)


def test_select_rejects_nonpositive():
    with pytest.raises(DomainError):
        select_geometric(0)


@settings(max_examples=15, deadline=None)
@given(st.integers(1, 60), st.integers(1, 60))
def test_select_monotone(a, b):
    e1, e2 = F(1, 2 ** a), F(1, 2 ** b)
    if e1 > e2:
        e1, e2 = e2, e1
    assert select_geometric(e1).amplitude <= select_geometric(e2).amplitude


@settings(max_examples=15, deadline=None)
@given(st.fractions(min_value=F(1, 10 ** 9), max_value=F(10), max_denominator=10 ** 9))
def test_selected_sequences_pass(eps):
    assert verify(select_geometric(eps), eps).verdict == "PASS"


def test_verify_admissibility_failure():
    r = verify(DeltaSequence.explicit([F(1, 3)]), 1)
    assert r.verdict == "FAIL" and r.first_violation == 0


def test_verify_divergence():
    r = verify(DeltaSequence.geometric(F(1, 9), F(1, 4)), 1)
    assert r.verdict == "DIVERGENT"
    assert r.series.ratio.lo > 1
    assert F(1199, 1000) < r.series.ratio.lo


def test_verify_report_replayable():
    seq = select_geometric(F(1, 1000))
    r1 = verify(seq, F(1, 1000))
    seq2 = DeltaSequence.from_json(json.loads(json.dumps(seq.to_json())))
    r2 = verify(seq2, F(1, 1000))
    assert json.dumps(r1.to_json(), sort_keys=True) == json.dumps(r2.to_json(), sort_keys=True)
    assert len(r1.level_checks) == 65 and all(ok for *_, ok in r1.level_checks)
