from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from gentlebound import load_fixture, parse_word
from gentlebound.homology import check_bound_hypotheses, inj_dim, proj_dim
from gentlebound.quasi_tilted import _scan_words, classify_string_qt, is_quasi_tilted, qt_cross_check
from gentlebound.walks import Word, enumerate_strings

from helpers import quiver, random_gl2_pairs


def test_fan_strings_all_classified():
    fan = load_fixture("fan")
    for w in enumerate_strings(fan, 6):
        assert classify_string_qt(fan, w).ok


def test_a5_two_rel_middle_simple_fails_every_condition():
    a5 = load_fixture("a5-two-rel")
    qc = classify_string_qt(a5, Word.trivial("3"))
    assert qc.satisfied == frozenset()
    assert qc.shape == ("mid", "free")


def test_relation_free_ends_satisfy_qt1():
    for name, word in (("fan", "b a1' c^-1"), ("a5-two-rel", "b c")):
        qc = classify_string_qt(load_fixture(name), parse_word(word))
        assert qc.shape == ("free", "free")
        assert "Qt1" in qc.satisfied


def test_verdicts():
    assert is_quasi_tilted(load_fixture("fan")).status == "QuasiTilted"
    a5 = is_quasi_tilted(load_fixture("a5-two-rel"))
    assert a5.status == "NotQuasiTilted" and a5.witness == Word.trivial("3")
    assert a5.as_dict() == {"status": "NotQuasiTilted", "witness": "S(3)"}
    assert is_quasi_tilted(load_fixture("a5-one-rel")).status == "QuasiTilted"
    assert is_quasi_tilted(load_fixture("kron-bridge")).status == "QuasiTilted"


def test_other_global_dimensions():
    assert is_quasi_tilted(quiver("vertices 1\n")).status == "Hereditary"
    assert is_quasi_tilted(quiver("vertices 1 2\narrow a 1 2\n")).status == "Hereditary"
    pin = load_fixture("pinwheel-9")
    assert is_quasi_tilted(pin).status == "NotApplicable"
    with pytest.raises(ValueError):
        classify_string_qt(pin, Word.trivial("4"))


@pytest.mark.parametrize("name", ["fan", "a5-two-rel", "a5-one-rel", "kron-bridge"])
def test_cross_check_on_fixtures(name):
    cross = qt_cross_check(load_fixture(name))
    assert cross.consistent
    assert cross.scanned > 0


def test_a5_two_rel_cross_check_witness():
    cross = qt_cross_check(load_fixture("a5-two-rel"))
    assert cross.scan_status == "NotQuasiTilted"
    assert proj_dim(load_fixture("a5-two-rel"), cross.witness) + inj_dim(load_fixture("a5-two-rel"), cross.witness) == 4


PAIRS = random_gl2_pairs(120, first_seed=50_000)


@given(st.sampled_from(PAIRS))
@settings(max_examples=120, deadline=None)
def test_verdict_properties(bq):
    verdict = is_quasi_tilted(bq)
    assert qt_cross_check(bq).consistent
    if check_bound_hypotheses(bq).either:
        assert verdict.status == "QuasiTilted"
    if verdict.status == "QuasiTilted":
        for w in _scan_words(bq):
            assert classify_string_qt(bq, w).ok
    else:
        assert proj_dim(bq, verdict.witness) == 2 == inj_dim(bq, verdict.witness)
