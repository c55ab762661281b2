"""Acceptance suite: one test per acceptance criterion.

Each test collects its sub-claims and reports all of them before failing, so
a red criterion shows exactly which sub-claims are responsible.
"""
from __future__ import annotations

import json
import pytest

from gentlebound import (
    FIXTURES,
    golden_text,
    load_fixture,
    parse_word,
)
from gentlebound.dsl import ParseError, parse_bound_quiver
from gentlebound.forbidden import finitistic_dimension, global_dimension
from gentlebound.homology import (
    SimpleAt,
    StringModule,
    hb_dim,
    inj_dim,
    module_label,
    proj_dim,
    verify_bound,
)
from gentlebound.oracle import (
    DEFAULT_PRIME,
    SECOND_PRIME,
    dual,
    id_oracle,
    lambda_independence,
    pd_oracle,
    resolve_projective,
    socle_of,
    string_rep,
    top_of,
)
from gentlebound.quasi_tilted import is_quasi_tilted, qt_cross_check
from gentlebound.quiver import opposite, random_gentle, validate_gentle
from gentlebound.walks import enumerate_bands, enumerate_strings, format_word, inverse, transport

from helpers import Claims, random_gl2_pairs

PRIMES = (DEFAULT_PRIME, SECOND_PRIME)
LAMBDAS = (1, 2, 5)


def _fixture_text(name: str) -> str:
    from gentlebound import fixture_text

    return fixture_text(name)


def _exhaustive_len(bq) -> int:
    return 2 * (2 * len(bq.arrows)) + 2


# -- 1 -----------------------------------------------------------------------

MUTATIONS = {
    # vertex 1 gains two more outgoing arrows
    "G1": _fixture_text("a5-two-rel") + "vertices 6 7\narrow e 1 6\narrow f 1 7\n",
    # a b1 and a b2 are both relations
    "G3": _fixture_text("kron-bridge") + "rel a b2\n",
    # b and e both continue a without a relation
    "G2": _fixture_text("a5-one-rel") + "vertices 6\narrow e 2 6\n",
    # a generator of length three
    "G4": _fixture_text("a5-one-rel").replace("rel b c", "rel a b c"),
    # d e is an oriented cycle without relations
    "FD": _fixture_text("a5-two-rel") + "arrow e 5 4\n",
}


@pytest.mark.criterion(1)
def test_criterion_01_gentle_validation():
    claims = Claims(1)
    for name in FIXTURES:
        report = validate_gentle(load_fixture(name))
        claims.check(f"{name} validates gentle", report.is_gentle, f"violations {report.codes}")
    for code, text in MUTATIONS.items():
        report = validate_gentle(parse_bound_quiver(text))
        claims.equal(f"mutation breaking {code}", report.codes, [code])
    bad_rel = _fixture_text("a5-two-rel") + "rel b a\n"
    try:
        parse_bound_quiver(bad_rel)
        claims.check("non-composable relation is a parse error", False, "parsed without error")
    except ParseError as e:
        claims.check("non-composable relation is a parse error", "relation not composable" in e.message, e.message)
    claims.verify()


# -- 2 -----------------------------------------------------------------------


@pytest.mark.criterion(2)
def test_criterion_02_global_dimension():
    claims = Claims(2)
    expected = {
        "a5-two-rel": "2",
        "kron-bridge": "2",
        "fan": "2",
        "a5-one-rel": "2",
        "pinwheel-9": "inf",
        "pinwheel-ext": "inf",
    }
    for name, value in expected.items():
        claims.equal(f"gl.dim {name}", str(global_dimension(load_fixture(name))), value)
    claims.verify()


# -- 3 -----------------------------------------------------------------------


@pytest.mark.criterion(3)
def test_criterion_03_finitistic_dimension():
    claims = Claims(3)
    for name in ("pinwheel-9", "pinwheel-ext", "a5-two-rel"):
        claims.equal(f"f.dim {name}", str(finitistic_dimension(load_fixture(name))), "2")
    claims.verify()


# -- 4 -----------------------------------------------------------------------


def _both(bq, module):
    return str(proj_dim(bq, module)), str(inj_dim(bq, module))


@pytest.mark.criterion(4)
def test_criterion_04_dimensions():
    claims = Claims(4)
    a5 = load_fixture("a5-two-rel")
    claims.equal("a5-two-rel (pd, id) of S(3)", _both(a5, SimpleAt("3")), ("2", "2"))
    pin = load_fixture("pinwheel-9")
    claims.equal("pinwheel-9 (pd, id) of S(4)", _both(pin, SimpleAt("4")), ("1", "1"))
    m = StringModule(parse_word("a41 a31^-1"))
    claims.equal("pinwheel-9 (pd, id) of M(a41 a31^-1)", _both(pin, m), ("1", "1"))
    ext = load_fixture("pinwheel-ext")
    rep = string_rep(ext, m.word)
    claims.equal("pinwheel-ext module (3 4 / 1) has that dimension pattern",
                 {v: d for v, d in rep.dims.items() if d}, {"1": 1, "3": 1, "4": 1})
    got = _both(ext, m)
    claims.equal("pinwheel-ext (pd, id) of M(a41 a31^-1)", got, ("1", "2"))
    claims.equal("pinwheel-ext pd + id of M(a41 a31^-1)", str(proj_dim(ext, m) + inj_dim(ext, m)), "3")
    claims.verify()


# -- 5 -----------------------------------------------------------------------


@pytest.mark.criterion(5)
def test_criterion_05_hb_dim():
    claims = Claims(5)
    results = {}
    for name in ("pinwheel-9", "a5-two-rel", "fan", "a5-one-rel", "double-a5"):
        bq = load_fixture(name)
        ex = hb_dim(bq, "exhaustive", max_len=_exhaustive_len(bq))
        ee = hb_dim(bq, "endpoint_exact")
        results[name] = ex
        claims.equal(f"{name} endpoint_exact agrees with exhaustive", ee.value, ex.value)
    pin = results["pinwheel-9"]
    claims.equal("pinwheel-9 hb.dim", str(pin.value), "2")
    fd = finitistic_dimension(load_fixture("pinwheel-9"))
    claims.check("pinwheel-9 hb.dim < 2 f.dim - 1", pin.value.finite and pin.value.value < 2 * fd.value - 1,
                 f"hb.dim {pin.value}, 2 f.dim - 1 = {2 * fd.value - 1}")
    a5 = results["a5-two-rel"]
    claims.equal("a5-two-rel hb.dim", str(a5.value), "4")
    claims.equal("a5-two-rel witness", module_label(a5.witness), "S(3)")
    for name in ("fan", "a5-one-rel", "double-a5"):
        v = results[name].value
        claims.check(f"{name} hb.dim <= 3", v.finite and v.value <= 3, f"got {v}")
    claims.verify()


# -- 6 -----------------------------------------------------------------------


@pytest.mark.criterion(6)
def test_criterion_06_bound_theorems():
    claims = Claims(6)
    pairs = [load_fixture(n) for n in FIXTURES] + [random_gentle(seed, 8, 10) for seed in range(500)]
    applied = 0
    violations = []
    for bq in pairs:
        check = verify_bound(bq)
        if check.applies is None:
            continue
        applied += 1
        if not check.holds:
            violations.append(f"{bq.name}: hb.dim {check.hb.value} > {check.bound}")
    claims.check("the hypotheses apply somewhere", applied > 0, "no pair met the hypotheses")
    claims.check(f"bound holds on all {applied} applicable pairs", not violations, "; ".join(violations[:5]))
    claims.verify()


# -- 7 -----------------------------------------------------------------------


@pytest.mark.criterion(7)
def test_criterion_07_band_rule():
    claims = Claims(7)
    for name in FIXTURES:
        bq = load_fixture(name)
        for band in enumerate_bands(bq, 6):
            report = lambda_independence(bq, band, PRIMES, (1, 2), LAMBDAS)
            bad = [(p, n, lam, str(pd), str(idim)) for p, n, lam, pd, idim in report.runs
                   if (str(pd), str(idim)) != ("1", "1")]
            claims.check(f"{name} band {format_word(band)}: oracle pd = id = 1 in {len(report.runs)} runs",
                         not bad, f"(p, n, lambda, pd, id) {bad[:3]}")
    claims.verify()


# -- 8 -----------------------------------------------------------------------


@pytest.mark.criterion(8)
def test_criterion_08_oracle_equivalence():
    claims = Claims(8)
    for name in FIXTURES:
        bq = load_fixture(name)
        bad = []
        count = 0
        for w in enumerate_strings(bq, 6):
            comb = (proj_dim(bq, w), inj_dim(bq, w))
            for p in PRIMES:
                rep = string_rep(bq, w, p)
                orc = (pd_oracle(rep, 10), id_oracle(rep, 10))
                count += 1
                if not (orc[0].matches(comb[0]) and orc[1].matches(comb[1])):
                    bad.append(f"{format_word(w)} p={p}: ({comb[0]}, {comb[1]}) vs ({orc[0]}, {orc[1]})")
        claims.check(f"{name}: {count} string checks agree", not bad, f"{len(bad)} mismatches, e.g. {bad[:3]}")
    claims.verify()


# -- 9 -----------------------------------------------------------------------


@pytest.mark.criterion(9)
def test_criterion_09_discrepancy_adjudication():
    claims = Claims(9)
    bq = load_fixture("kron-bridge")
    w = parse_word("b2 b1^-1 b2")
    golden = json.loads(golden_text("kron-bridge-b2-b1inv-b2"))
    for p in PRIMES:
        rep = string_rep(bq, w, p)
        proj = resolve_projective(rep, 10, check_minimal=True)
        inj = resolve_projective(dual(rep), 10, check_minimal=True)
        recorded = golden["primes"][str(p)]
        claims.equal(f"p={p} cover top", top_of(rep), {"2": 2})
        claims.equal(f"p={p} envelope socle", socle_of(rep), {"3": 2})
        claims.equal(f"p={p} first cover is P(2)^2", proj.steps[0].cover_multiplicities, {"2": 2})
        claims.equal(f"p={p} first envelope is E(3)^2", inj.steps[0].cover_multiplicities, {"3": 2})
        claims.equal(f"p={p} oracle pd matches the recorded verdict", str(proj.dimension), recorded["pd"])
        claims.equal(f"p={p} oracle id matches the recorded verdict", str(inj.dimension), recorded["id"])
    claims.equal("combinatorial pd agrees with the oracle", str(proj_dim(bq, w)), golden["primes"][str(DEFAULT_PRIME)]["pd"])
    claims.equal("combinatorial id agrees with the oracle", str(inj_dim(bq, w)), golden["primes"][str(DEFAULT_PRIME)]["id"])
    claims.verify()


# -- 10 ----------------------------------------------------------------------


@pytest.mark.criterion(10)
def test_criterion_10_quasi_tilted():
    claims = Claims(10)
    fan = is_quasi_tilted(load_fixture("fan"))
    claims.equal("fan verdict", fan.status, "QuasiTilted")
    a5 = load_fixture("a5-two-rel")
    verdict = is_quasi_tilted(a5)
    claims.equal("a5-two-rel verdict", verdict.status, "NotQuasiTilted")
    if verdict.witness is not None:
        claims.equal("a5-two-rel witness (pd, id)", _both(a5, verdict.witness), ("2", "2"))
    for name in ("a5-one-rel", "double-a5"):
        bq = load_fixture(name)
        claims.equal(f"{name} verdict", is_quasi_tilted(bq).status, "QuasiTilted")
        cross = qt_cross_check(bq, 8)
        claims.equal(f"{name} cross-check status", cross.scan_status, "QuasiTilted")
    for name in FIXTURES:
        bq = load_fixture(name)
        if global_dimension(bq) != 2:
            continue
        cross = qt_cross_check(bq, 8)
        claims.check(f"{name}: verdict and scan agree", cross.consistent,
                     f"{cross.verdict.status} vs {cross.scan_status}")
    disagree = []
    for bq in random_gl2_pairs(200):
        cross = qt_cross_check(bq, 8)
        if not cross.consistent:
            disagree.append(bq.name)
    claims.check("200 random gl.dim 2 pairs: verdict and scan agree", not disagree, f"{disagree[:5]}")
    claims.verify()


# -- 11 ----------------------------------------------------------------------


@pytest.mark.criterion(11)
def test_criterion_11_duality_and_locality():
    claims = Claims(11)
    for name in FIXTURES:
        bq = load_fixture(name)
        op = opposite(bq)
        strings = enumerate_strings(bq, 8)
        bad = [format_word(w) for w in strings if inj_dim(bq, w) != proj_dim(op, transport(w))]
        claims.check(f"{name}: inj.dim equals proj.dim over the opposite on {len(strings)} strings",
                     not bad, f"{bad[:3]}")

        seen: dict[tuple, tuple] = {}
        clashes = []
        for w in strings:
            if len(w) < 2:
                continue
            dims = (str(proj_dim(bq, w)), str(inj_dim(bq, w)))
            for u in (w, inverse(w)):
                first = seen.setdefault((u[0], u[-1]), (format_word(u), dims))
                if first[1] != dims:
                    clashes.append(f"{first[0]} {first[1]} vs {format_word(u)} {dims}")
        claims.check(f"{name}: (pd, id) depends only on the end letters", not clashes,
                     f"{len(clashes)} clashes, e.g. {clashes[:2]}")

        ex = hb_dim(bq, "exhaustive", max_len=_exhaustive_len(bq))
        ee = hb_dim(bq, "endpoint_exact")
        claims.equal(f"{name}: hb.dim endpoint_exact equals exhaustive", ee.value, ex.value)
    claims.verify()

