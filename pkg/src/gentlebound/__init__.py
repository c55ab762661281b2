"""Homological invariants of gentle algebras given by bound quivers."""
from __future__ import annotations

from importlib import resources

from .dsl import ParseError, SourceSpan, format_bound_quiver, load_bound_quiver, parse_bound_quiver
from .forbidden import (
    INFINITE,
    DimValue,
    Finite,
    ForbiddenPath,
    finitistic_dimension,
    forbidden_cycles,
    forbidden_paths,
    global_dimension,
    maximal_forbidden_paths,
)
from .homology import (
    BandModule,
    InjectiveAt,
    ProjectiveAt,
    SimpleAt,
    StringModule,
    check_bound_hypotheses,
    closed_form_dims,
    cosyzygy,
    dims,
    hb_dim,
    inj_dim,
    module_label,
    proj_dim,
    syzygy,
    verify_bound,
)
from .quasi_tilted import classify_string_qt, is_quasi_tilted, qt_cross_check
from .quiver import Arrow, BoundQuiver, opposite, random_gentle, validate_gentle
from .report import build_report, emit_report_json, oracle_check
from .walks import Letter, Word, enumerate_bands, enumerate_strings, format_word, parse_word

__version__ = "0.1.0"

FIXTURES = (
    "a5-two-rel",
    "kron-bridge",
    "a5-one-rel",
    "double-a5",
    "fan",
    "pinwheel-9",
    "pinwheel-ext",
)


def fixture_text(name: str) -> str:
    """Text of a bundled fixture, by name without extension."""
    res = resources.files(__name__) / "fixtures" / f"{name}.gq"
    if not res.is_file():
        raise FileNotFoundError(f"no bundled fixture named {name!r}")
    return res.read_text(encoding="utf-8")


def load_fixture(name: str) -> BoundQuiver:
    return parse_bound_quiver(fixture_text(name), name=name)


def golden_text(name: str) -> str:
    """Recorded JSON report of a bundled fixture."""
    return (resources.files(__name__) / "fixtures" / "golden" / f"{name}.json").read_text(encoding="utf-8")


__all__ = [
    "Arrow",
    "BoundQuiver",
    "Letter",
    "Word",
    "DimValue",
    "Finite",
    "INFINITE",
    "ForbiddenPath",
    "StringModule",
    "BandModule",
    "ProjectiveAt",
    "InjectiveAt",
    "SimpleAt",
    "ParseError",
    "SourceSpan",
    "FIXTURES",
    "parse_bound_quiver",
    "load_bound_quiver",
    "format_bound_quiver",
    "fixture_text",
    "load_fixture",
    "golden_text",
    "validate_gentle",
    "opposite",
    "random_gentle",
    "parse_word",
    "format_word",
    "enumerate_strings",
    "enumerate_bands",
    "forbidden_paths",
    "maximal_forbidden_paths",
    "forbidden_cycles",
    "global_dimension",
    "finitistic_dimension",
    "proj_dim",
    "inj_dim",
    "dims",
    "syzygy",
    "cosyzygy",
    "closed_form_dims",
    "hb_dim",
    "check_bound_hypotheses",
    "verify_bound",
    "module_label",
    "classify_string_qt",
    "is_quasi_tilted",
    "qt_cross_check",
    "oracle_check",
    "build_report",
    "emit_report_json",
]
