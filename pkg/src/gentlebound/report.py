"""Whole-algebra reports and the oracle agreement sweep."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .forbidden import DimValue, finitistic_dimension, global_dimension
from .homology import (
    HbResult,
    check_bound_hypotheses,
    hb_dim,
    inj_dim,
    proj_dim,
)
from .oracle import DEFAULT_PRIME, band_rep, id_oracle, pd_oracle, string_rep
from .quasi_tilted import QtVerdict, is_quasi_tilted
from .quiver import BoundQuiver, GentleReport, validate_gentle
from .walks import enumerate_bands, enumerate_strings, format_word

__all__ = ["Mismatch", "OracleCheck", "oracle_check", "Report", "build_report", "emit_report_json"]

SPEC_VERSION = "1"


@dataclass(frozen=True)
class Mismatch:
    module: str
    prime: int
    combinatorial: tuple[str, str]
    oracle: tuple[str, str]


@dataclass
class OracleCheck:
    checked: int = 0
    mismatches: list[Mismatch] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def oracle_check(bq: BoundQuiver, max_len: int = 6, depth_cap: int = 10,
                 primes=(DEFAULT_PRIME,), band_ns=(1, 2), lams=(1, 2, 5),
                 cap: int = 500_000) -> OracleCheck:
    """Compare combinatorial dimensions with resolutions over each prime for
    every string up to ``max_len`` and every band up to that length."""
    out = OracleCheck()
    for w in enumerate_strings(bq, max_len, cap):
        comb = (proj_dim(bq, w), inj_dim(bq, w))
        for p in primes:
            rep = string_rep(bq, w, p)
            orc = (pd_oracle(rep, depth_cap), id_oracle(rep, depth_cap))
            out.checked += 1
            if not (orc[0].matches(comb[0]) and orc[1].matches(comb[1])):
                out.mismatches.append(Mismatch(format_word(w), p, tuple(map(str, comb)), tuple(map(str, orc))))
    for b in enumerate_bands(bq, max_len, cap):
        for p in primes:
            for n in band_ns:
                for lam in lams:
                    rep = band_rep(bq, b, n, lam, p)
                    orc = (pd_oracle(rep, depth_cap), id_oracle(rep, depth_cap))
                    out.checked += 1
                    if not (orc[0].matches(DimValue(1)) and orc[1].matches(DimValue(1))):
                        label = f"B({format_word(b)}; n={n}, lambda={lam})"
                        out.mismatches.append(Mismatch(label, p, ("1", "1"), tuple(map(str, orc))))
    return out


@dataclass
class Report:
    algebra: str
    gentle: GentleReport
    gldim: DimValue | None = None
    findim: DimValue | None = None
    hbdim: HbResult | None = None
    sources_ok: bool | None = None
    sinks_ok: bool | None = None
    quasi_tilted: QtVerdict | None = None
    oracle: OracleCheck | None = None

    def as_dict(self) -> dict:
        return {
            "spec": SPEC_VERSION,
            "algebra": self.algebra,
            "gentle": {
                "ok": self.gentle.is_gentle,
                "violations": [v.as_dict() for v in self.gentle.violations],
            },
            "gldim": None if self.gldim is None else self.gldim.as_dict(),
            "findim": None if self.findim is None else self.findim.value,
            "hbdim": None if self.hbdim is None else self.hbdim.as_dict(),
            "hypotheses": {"sources_ok": self.sources_ok, "sinks_ok": self.sinks_ok},
            "quasi_tilted": None if self.quasi_tilted is None else self.quasi_tilted.as_dict(),
            "oracle": None if self.oracle is None else {
                "checked": self.oracle.checked,
                "mismatches": len(self.oracle.mismatches),
            },
        }


def build_report(bq: BoundQuiver, oracle_len: int = 4, depth_cap: int = 10) -> Report:
    """Every invariant of a gentle pair; only the validation block is filled
    in when the input is not gentle."""
    gentle = validate_gentle(bq)
    rep = Report(bq.name, gentle)
    if not gentle.is_gentle:
        return rep
    hyp = check_bound_hypotheses(bq)
    rep.gldim = global_dimension(bq)
    rep.findim = finitistic_dimension(bq)
    rep.hbdim = hb_dim(bq, "endpoint_exact")
    rep.sources_ok, rep.sinks_ok = hyp.sources_ok, hyp.sinks_ok
    rep.quasi_tilted = is_quasi_tilted(bq)
    rep.oracle = oracle_check(bq, oracle_len, depth_cap)
    return rep


def emit_report_json(report: Report) -> str:
    return json.dumps(report.as_dict(), indent=2, ensure_ascii=False) + "\n"

