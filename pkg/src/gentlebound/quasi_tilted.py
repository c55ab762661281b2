"""Quasi-tilted gentle algebras of global dimension two.

The four string conditions are read through end data: ``u_L``/``u_R`` are
the lengths of the relation chains running into the two ends of a string,
``d_L``/``d_R`` those running out of them.

* Qt1: both incoming chains have length at most 1 (and outgoing ones at
  most 2), so ``inj.dim <= 1``.
* Qt2: the dual statement, so ``proj.dim <= 1``.
* Qt3: some maximal forbidden path of length two ends at ``s(s)``, and
  every forbidden path of length two passing through ``t(s)`` has ``t(s)``
  as its middle vertex.
* Qt4: the dual of Qt3 with the roles of the two ends exchanged.
"""
from __future__ import annotations

from dataclasses import dataclass

from .forbidden import DimValue, forbidden_paths, global_dimension, maximal_forbidden_paths
from .homology import (
    StringModule,
    _longer_walks,
    check_bound_hypotheses,
    endpoint_profile,
    inj_dim,
    module_label,
    proj_dim,
)
from .quiver import BoundQuiver
from .walks import Word, canonical_string, enumerate_strings, format_word, transition_graph

__all__ = [
    "QtClass",
    "QtVerdict",
    "classify_string_qt",
    "is_quasi_tilted",
    "QtCrossCheck",
    "qt_cross_check",
]


@dataclass(frozen=True)
class QtClass:
    satisfied: frozenset[str]
    shape: tuple[str, str]

    @property
    def ok(self) -> bool:
        return bool(self.satisfied)


@dataclass(frozen=True)
class QtVerdict:
    status: str  # QuasiTilted | NotQuasiTilted | Hereditary | NotApplicable
    witness: Word | None = None
    reason: str = ""

    def as_dict(self) -> dict:
        out = {"status": self.status}
        if self.witness is not None:
            out["witness"] = module_label(StringModule(self.witness))
        return out


def _end_type(u: DimValue, d: DimValue) -> str:
    if u >= 1 and d >= 1:
        return "mid"
    if u >= 1:
        return "in"
    if d >= 1:
        return "out"
    return "free"


def _length_two(bq: BoundQuiver) -> list[tuple[str, str]]:
    return [p.arrows for p in forbidden_paths(bq, 2) if p.length == 2]


def _max_length_two(bq: BoundQuiver) -> list[tuple[str, str]]:
    return [p.arrows for p in maximal_forbidden_paths(bq) if p.length == 2]


def _only_middle(bq: BoundQuiver, v: str, paths) -> bool:
    for f, g in paths:
        verts = (bq.s(f), bq.t(f), bq.t(g))
        if v in verts and bq.t(f) != v:
            return False
    return True


def classify_string_qt(bq: BoundQuiver, w: Word) -> QtClass:
    gl = global_dimension(bq)
    if gl != 2:
        raise ValueError(f"the quasi-tilted conditions need gl.dim 2, got {gl}")
    prof = endpoint_profile(bq, w)
    s, t = w.start(bq), w.end(bq)
    sat = set()
    if prof.u_L <= 1 and prof.u_R <= 1 and prof.d_L <= 2 and prof.d_R <= 2:
        sat.add("Qt1")
    if prof.d_L <= 1 and prof.d_R <= 1 and prof.u_L <= 2 and prof.u_R <= 2:
        sat.add("Qt2")
    two = _length_two(bq)
    max_two = _max_length_two(bq)
    if any(bq.t(g) == s for _, g in max_two) and _only_middle(bq, t, two):
        sat.add("Qt3")
    if any(bq.s(f) == t for f, _ in max_two) and _only_middle(bq, s, two):
        sat.add("Qt4")
    return QtClass(frozenset(sat), (_end_type(prof.u_L, prof.d_L), _end_type(prof.u_R, prof.d_R)))


def _scan_words(bq: BoundQuiver):
    """Strings of length at most two, then one longer representative per
    pair of end letters (the conditions only see end data)."""
    yield from enumerate_strings(bq, 2)
    g = transition_graph(bq)
    limit = 3 + len(g.nodes)
    seen = set()
    for x in g.nodes:
        for y in g.nodes:
            for walk in _longer_walks(bq, x, y, limit):
                c = canonical_string(bq, walk)
                if c not in seen:
                    seen.add(c)
                    yield c
                break


def is_quasi_tilted(bq: BoundQuiver) -> QtVerdict:
    gl = global_dimension(bq)
    if gl <= 1:
        return QtVerdict("Hereditary", reason=f"gl.dim {gl}")
    if gl != 2:
        return QtVerdict("NotApplicable", reason=f"gl.dim {gl} is not 2")
    if check_bound_hypotheses(bq).either:
        return QtVerdict("QuasiTilted", reason="strong source or strong sink hypothesis")
    for w in _scan_words(bq):
        if not classify_string_qt(bq, w).ok:
            return QtVerdict("NotQuasiTilted", w, reason=f"{format_word(w)} meets none of Qt1-Qt4")
    return QtVerdict("QuasiTilted", reason="every string meets one of Qt1-Qt4")


@dataclass(frozen=True)
class QtCrossCheck:
    consistent: bool
    verdict: QtVerdict
    scan_status: str
    witness: Word | None
    scanned: int


def qt_cross_check(bq: BoundQuiver, max_len: int = 8) -> QtCrossCheck:
    """Check the verdict against ``pd + id <= 3`` over all strings up to
    ``max_len``; bands always give 2."""
    verdict = is_quasi_tilted(bq)
    witness = None
    scanned = 0
    for w in enumerate_strings(bq, max_len):
        scanned += 1
        total = proj_dim(bq, w) + inj_dim(bq, w)
        if total.finite and total.value > 3:
            witness = w
            break
    gl = global_dimension(bq)
    if gl <= 1:
        scan_status = "Hereditary"
    elif gl != 2:
        scan_status = "NotApplicable"
    else:
        scan_status = "NotQuasiTilted" if witness is not None else "QuasiTilted"
    return QtCrossCheck(scan_status == verdict.status, verdict, scan_status, witness, scanned)
