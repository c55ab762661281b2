from __future__ import annotations

from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from gentlebound import FIXTURES, load_fixture
from gentlebound.quiver import random_gentle
from gentlebound.walks import (
    CapExceeded,
    Letter,
    UnknownArrow,
    Word,
    all_letters,
    canonical_band,
    canonical_string,
    check_string,
    enumerate_bands,
    enumerate_strings,
    enumerate_walks,
    format_word,
    inverse,
    is_band,
    is_valid_string,
    parse_word,
    transition_graph,
)

from helpers import GENTLE_FIXTURES


def naive_strings(bq, max_len):
    """Brute force over all letter sequences, one class per string up to
    inversion."""
    letters = all_letters(bq)
    classes = {frozenset([Word.trivial(v)]) for v in bq.vertices}
    for n in range(1, max_len + 1):
        for seq in product(letters, repeat=n):
            w = Word(seq)
            if is_valid_string(bq, w):
                classes.add(frozenset([w, inverse(w)]))
    return classes


def test_parse_and_format():
    w = parse_word("b2 b1^-1 b2")
    assert w.letters == (Letter("b2"), Letter("b1", True), Letter("b2"))
    assert parse_word("b2 b1- b2") == w
    assert format_word(w) == "b2 b1^-1 b2"
    assert parse_word("e(3)") == Word.trivial("3")
    assert format_word(Word.trivial("3")) == "e(3)"
    with pytest.raises(ValueError):
        parse_word("")


def test_kron_bridge_word_is_a_string():
    bq = load_fixture("kron-bridge")
    assert check_string(bq, parse_word("b2 b1^-1 b2")) is None


def test_backtrack_is_rejected():
    bq = load_fixture("a5-two-rel")
    assert check_string(bq, parse_word("a a^-1")) == ("S3", 1)


def test_relation_is_rejected():
    bq = load_fixture("a5-two-rel")
    assert check_string(bq, parse_word("a b")).code == "S2"
    assert check_string(bq, parse_word("b^-1 a^-1")).code == "S2"


def test_non_composable_and_unknown():
    bq = load_fixture("a5-two-rel")
    assert check_string(bq, parse_word("a c")).code == "S1"
    with pytest.raises(UnknownArrow):
        check_string(bq, parse_word("a zz"))


def test_inverse():
    w = parse_word("b2 b1^-1 b2")
    assert inverse(w) == parse_word("b2^-1 b1 b2^-1")
    assert inverse(Word.trivial("4")) == Word.trivial("4")
    assert inverse(inverse(w)) == w


def test_canonical_string_of_palindrome():
    bq = load_fixture("kron-bridge")
    w = parse_word("b2 b1^-1 b2")
    assert inverse(w) != w
    assert canonical_string(bq, w) == canonical_string(bq, inverse(w)) == w


def test_canonical_classes_on_a5_one_rel():
    bq = load_fixture("a5-one-rel")
    strings = enumerate_strings(bq, 4)
    assert len(strings) == len(set(strings))
    assert len(strings) == len(naive_strings(bq, 4))


@pytest.mark.parametrize("max_len", [2, 3, 4])
def test_counts_match_a_naive_generator(max_len):
    bq = load_fixture("a5-one-rel")
    assert len(enumerate_strings(bq, max_len)) == len(naive_strings(bq, max_len))


@pytest.mark.parametrize("name", ["kron-bridge", "fan", "pinwheel-9"])
def test_counts_match_a_naive_generator_on_fixtures(name):
    bq = load_fixture(name)
    assert len(enumerate_strings(bq, 4)) == len(naive_strings(bq, 4))


def test_small_enumerations():
    bq = load_fixture("a5-two-rel")
    assert enumerate_strings(bq, 0) == [Word.trivial(v) for v in bq.vertices]
    assert len(enumerate_strings(bq, 1)) == 5 + 4


def test_enumeration_cap():
    bq = load_fixture("kron-bridge")
    with pytest.raises(CapExceeded):
        enumerate_strings(bq, 12, cap=50)


def test_band_recognition():
    kron = load_fixture("kron-bridge")
    assert is_band(kron, parse_word("b1 b2^-1"))[0]
    ok, why = is_band(kron, parse_word("b1 b2^-1 b1 b2^-1"))
    assert not ok and why == "proper power"
    pin = load_fixture("pinwheel-9")
    assert not is_band(pin, parse_word("a12 a23"))[0]


def test_canonical_band_forms():
    kron = load_fixture("kron-bridge")
    forms = {canonical_band(kron, w) for w in (parse_word("b1 b2^-1"), parse_word("b2^-1 b1"),
                                               parse_word("b2 b1^-1"), parse_word("b1^-1 b2"))}
    assert len(forms) == 1
    b = forms.pop()
    assert canonical_band(kron, b) == b
    double = load_fixture("double-a5")
    assert canonical_band(double, parse_word("a1 a2^-1")) == canonical_band(double, parse_word("a2 a1^-1"))


def test_band_enumeration():
    assert enumerate_bands(load_fixture("a5-two-rel"), 8) == []
    kron = load_fixture("kron-bridge")
    assert enumerate_bands(kron, 1) == []
    for n in range(2, 7):
        assert enumerate_bands(kron, n) == [parse_word("b1 b2^-1")]
    assert enumerate_bands(load_fixture("pinwheel-9"), 6) == []


def test_transition_graph_examples():
    g = transition_graph(load_fixture("a5-two-rel"))
    assert not g.has_edge(Letter("a"), Letter("c", True))
    assert g.has_edge(Letter("b"), Letter("c"))


@pytest.mark.parametrize("name", GENTLE_FIXTURES)
def test_transition_graph_out_degree(name):
    g = transition_graph(load_fixture(name))
    assert all(len(g.successors(x)) <= 2 for x in g.nodes)


@pytest.mark.parametrize("name", FIXTURES)
def test_reach_agrees_with_enumeration(name):
    bq = load_fixture(name)
    g = transition_graph(bq)
    pairs = set()
    for w in enumerate_walks(bq, 8):
        if len(w) >= 2:
            pairs.add((w[0], w[-1]))
    for x in g.nodes:
        for y in g.nodes:
            if (x, y) in pairs:
                assert g.reach(x, y)
            elif not g.has_cycle():
                assert not g.reach(x, y)


@given(st.integers(min_value=0, max_value=10**6))
@settings(max_examples=60, deadline=None)
def test_enumeration_invariants(seed):
    bq = random_gentle(seed, 6, 8)
    strings = enumerate_strings(bq, 4)
    assert len(set(strings)) == len(strings)
    for w in strings:
        assert canonical_string(bq, w) == w
        assert canonical_string(bq, inverse(w)) == w
        for i in range(1, len(w)):
            assert is_valid_string(bq, w.letters[i - 1:i + 1])
    for b in enumerate_bands(bq, 5):
        assert is_valid_string(bq, b.letters + b.letters)
        assert canonical_band(bq, b) == b
