"""Shared helpers for the test-suite."""
from __future__ import annotations

from dataclasses import dataclass, field

from gentlebound import FIXTURES, load_fixture, validate_gentle
from gentlebound.dsl import parse_bound_quiver
from gentlebound.forbidden import global_dimension
from gentlebound.quiver import random_gentle

GENTLE_FIXTURES = tuple(n for n in FIXTURES if validate_gentle(load_fixture(n)).is_gentle)


def quiver(text: str, name: str = "test"):
    return parse_bound_quiver(text, name=name)


def random_gl2_pairs(count: int, first_seed: int = 10_000, max_vertices: int = 6, max_arrows: int = 7):
    """The first ``count`` seeded random gentle pairs of global dimension 2."""
    out = []
    seed = first_seed
    while len(out) < count:
        bq = random_gentle(seed, max_vertices, max_arrows)
        if global_dimension(bq) == 2:
            out.append(bq)
        seed += 1
    return out


@dataclass
class Claims:
    """Collects labelled sub-claims so that one test reports all of them."""

    criterion: int
    results: list[tuple[str, bool, str]] = field(default_factory=list)

    def check(self, label: str, ok: bool, detail: str = "") -> bool:
        self.results.append((label, bool(ok), detail))
        return bool(ok)

    def equal(self, label: str, got, expected) -> bool:
        return self.check(label, got == expected, f"got {got}, expected {expected}")

    def verify(self) -> None:
        for label, ok, detail in self.results:
            mark = "ok  " if ok else "FAIL"
            print(f"[{self.criterion:>2}] {mark} {label}" + (f" ({detail})" if detail and not ok else ""))
        failed = [f"{label}: {detail}" for label, ok, detail in self.results if not ok]
        assert not failed, "\n".join(failed)
