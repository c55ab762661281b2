"""Forbidden paths (relation chains), forbidden cycles, and the dimension
formulas that read gl.dim and f.dim off them."""
from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering
from typing import Iterable

from .quiver import BoundQuiver
from .walks import Letter

__all__ = [
    "DimValue",
    "Finite",
    "INFINITE",
    "ForbiddenPath",
    "ForbiddenPaths",
    "Continuation",
    "forbidden_paths",
    "maximal_forbidden_paths",
    "forbidden_cycles",
    "forbidden_continuation",
    "global_dimension",
    "finitistic_dimension",
    "vertices_on_forbidden_cycles",
]


@total_ordering
@dataclass(frozen=True)
class DimValue:
    """A homological dimension: a nonnegative integer or infinity.

    ``value is None`` encodes infinity, which is larger than every finite
    value and absorbs addition.
    """

    value: int | None

    @property
    def finite(self) -> bool:
        return self.value is not None

    def __lt__(self, other):
        other = _as_dim(other)
        if self.value is None:
            return False
        if other.value is None:
            return True
        return self.value < other.value

    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return self.value == other
        if isinstance(other, DimValue):
            return self.value == other.value
        return NotImplemented

    def __hash__(self):
        return hash(("dim", self.value))

    def __add__(self, other):
        other = _as_dim(other)
        if self.value is None or other.value is None:
            return INFINITE
        return DimValue(self.value + other.value)

    __radd__ = __add__

    def __str__(self):
        return "inf" if self.value is None else str(self.value)

    def __repr__(self):
        return "Infinite" if self.value is None else f"Finite({self.value})"

    def as_dict(self) -> dict:
        return {"finite": self.finite, "value": self.value}


def _as_dim(x) -> DimValue:
    if isinstance(x, DimValue):
        return x
    if isinstance(x, int):
        return DimValue(x)
    raise TypeError(f"cannot compare DimValue with {type(x).__name__}")


def Finite(n: int) -> DimValue:
    if n < 0:
        raise ValueError("dimensions are nonnegative")
    return DimValue(n)


INFINITE = DimValue(None)


def dim_max(values: Iterable[DimValue | int], default: int = 0) -> DimValue:
    out = DimValue(default)
    for v in values:
        v = _as_dim(v)
        if v > out:
            out = v
    return out


@dataclass(frozen=True)
class ForbiddenPath:
    """A relation chain ``a1 ... an`` (each ``a_i a_{i+1}`` a relation), or a
    length-zero path at a vertex with exactly one arrow in, one arrow out,
    and their composite a relation."""

    arrows: tuple[str, ...]
    left_maximal: bool
    right_maximal: bool
    vertex: str | None = None
    in_arrow: str | None = None
    out_arrow: str | None = None

    @property
    def length(self) -> int:
        return len(self.arrows)

    @property
    def is_zero_length(self) -> bool:
        return not self.arrows

    @property
    def is_maximal(self) -> bool:
        return self.is_zero_length or (self.left_maximal and self.right_maximal)

    def source(self, bq: BoundQuiver) -> str:
        return self.vertex if self.is_zero_length else bq.s(self.arrows[0])

    def target(self, bq: BoundQuiver) -> str:
        return self.vertex if self.is_zero_length else bq.t(self.arrows[-1])

    def __str__(self):
        if self.is_zero_length:
            return f"e({self.vertex})"
        return " ".join(self.arrows)


class ForbiddenPaths(list):
    """A list of forbidden paths that remembers whether a length cap cut
    some chain short."""

    def __init__(self, items=(), truncated: bool = False):
        super().__init__(items)
        self.truncated = truncated


def _flags(bq: BoundQuiver, arrows: tuple[str, ...]) -> tuple[bool, bool]:
    return not bq.rel_predecessors(arrows[0]), not bq.rel_successors(arrows[-1])


def _zero_length(bq: BoundQuiver) -> list[ForbiddenPath]:
    out = []
    for v in bq.vertices:
        ins, outs = bq.in_arrows[v], bq.out_arrows[v]
        if len(ins) == 1 and len(outs) == 1 and bq.is_relation(ins[0], outs[0]):
            out.append(ForbiddenPath((), True, True, v, ins[0], outs[0]))
    return out


def forbidden_paths(bq: BoundQuiver, cap: int) -> ForbiddenPaths:
    """All forbidden paths of length at most ``cap``.

    Single arrows, relation chains and length-zero paths are included. The
    result's ``truncated`` flag is set when some chain of length ``cap`` can
    still be extended, which happens exactly when a forbidden cycle exists
    and ``cap`` is at least its length.
    """
    if cap < 0:
        raise ValueError("cap must be nonnegative")
    out = ForbiddenPaths(_zero_length(bq))
    frontier = [(a.name,) for a in bq.arrows] if cap >= 1 else []
    while frontier:
        nxt = []
        for chain in frontier:
            left, right = _flags(bq, chain)
            out.append(ForbiddenPath(chain, left, right))
            for b in bq.rel_successors(chain[-1]):
                if len(chain) < cap:
                    nxt.append(chain + (b,))
                else:
                    out.truncated = True
        frontier = nxt
    return out


def _chain_forward(bq: BoundQuiver, first: str) -> tuple[tuple[str, ...], bool]:
    """Follow relation successors from ``first``; report whether the chain
    runs into a repeat (and is therefore unbounded)."""
    chain = [first]
    seen = {first}
    while True:
        nxt = bq.rel_successors(chain[-1])
        if not nxt:
            return tuple(chain), False
        b = nxt[0]
        if b in seen:
            return tuple(chain), True
        seen.add(b)
        chain.append(b)


def _chain_backward(bq: BoundQuiver, last: str) -> tuple[tuple[str, ...], bool]:
    chain = [last]
    seen = {last}
    while True:
        prv = bq.rel_predecessors(chain[0])
        if not prv:
            return tuple(chain), False
        a = prv[0]
        if a in seen:
            return tuple(chain), True
        seen.add(a)
        chain.insert(0, a)


def maximal_forbidden_paths(bq: BoundQuiver) -> list[ForbiddenPath]:
    """Chains maximal on both sides, followed by the length-zero paths."""
    out = []
    for a in bq.arrows:
        if bq.rel_predecessors(a.name):
            continue
        chain, looped = _chain_forward(bq, a.name)
        if looped:  # cannot happen in a gentle pair; guard for safety
            continue
        out.append(ForbiddenPath(chain, True, True))
    out.extend(_zero_length(bq))
    return out


def forbidden_cycles(bq: BoundQuiver) -> list[tuple[str, ...]]:
    """Oriented cycles whose cyclically consecutive pairs are all relations,
    one per rotation class, each starting at its earliest declared arrow."""
    found = []
    seen: set[str] = set()
    for a in bq.arrows:
        if a.name in seen:
            continue
        chain, looped = _chain_forward(bq, a.name)
        if not looped:
            continue
        # the repeat closes a cycle at the successor of the last arrow
        closing = bq.rel_successors(chain[-1])[0]
        cyc = chain[chain.index(closing):]
        if any(x in seen for x in cyc):
            continue
        seen.update(cyc)
        k = min(range(len(cyc)), key=lambda i: bq.arrow_index[cyc[i]])
        found.append(cyc[k:] + cyc[:k])
    found.sort(key=lambda c: bq.arrow_index[c[0]])
    return found


def vertices_on_forbidden_cycles(bq: BoundQuiver) -> set[str]:
    out = set()
    for cyc in forbidden_cycles(bq):
        out.update(bq.s(x) for x in cyc)
    return out


@dataclass(frozen=True)
class Continuation:
    """Result of :func:`forbidden_continuation`.

    ``path`` is the maximal chain (``None`` when no compatible arrow exists);
    ``unbounded`` is set when the chain runs around a forbidden cycle.
    """

    path: ForbiddenPath | None
    unbounded: bool = False

    @property
    def length(self) -> DimValue:
        if self.unbounded:
            return INFINITE
        return DimValue(0 if self.path is None else self.path.length)


def _compatible_into(bq: BoundQuiver, f: str, s1: Letter | None) -> bool:
    if s1 is None:
        return True
    if s1.inv:
        return f != s1.arrow
    return not bq.is_relation(f, s1.arrow)


def _compatible_out(bq: BoundQuiver, g: str, s1: Letter | None) -> bool:
    if s1 is None:
        return True
    if s1.inv:
        return not bq.is_relation(s1.arrow, g)
    return g != s1.arrow


def forbidden_continuation(bq: BoundQuiver, v: str, side: str,
                           compat: Letter | None = None) -> Continuation:
    """The unique maximal relation chain ending at ``v`` (``side="into"``) or
    starting at ``v`` (``side="out_of"``) that joins the letter ``compat``
    into a two-letter string.

    ``compat`` is the first letter of a string starting at ``v``. With
    ``compat=None`` every arrow at ``v`` is a candidate and the longest
    resulting chain is returned (ties go to the earlier declared arrow).
    """
    if side not in ("into", "out_of"):
        raise ValueError(f"side must be 'into' or 'out_of', not {side!r}")
    best: Continuation | None = None
    if side == "into":
        cands = [f for f in bq.in_arrows[v] if _compatible_into(bq, f, compat)]
    else:
        cands = [g for g in bq.out_arrows[v] if _compatible_out(bq, g, compat)]
    for x in cands:
        if side == "into":
            chain, looped = _chain_backward(bq, x)
        else:
            chain, looped = _chain_forward(bq, x)
        left, right = (False, False) if looped else _flags(bq, chain)
        cont = Continuation(ForbiddenPath(chain, left, right), looped)
        if best is None or cont.length > best.length:
            best = cont
    return best if best is not None else Continuation(None)


def global_dimension(bq: BoundQuiver) -> DimValue:
    if forbidden_cycles(bq):
        return INFINITE
    longest = 0
    for a in bq.arrows:
        chain, _ = _chain_forward(bq, a.name)
        longest = max(longest, len(chain))
    return DimValue(longest)


def finitistic_dimension(bq: BoundQuiver) -> DimValue:
    """Length of the longest maximal forbidden path.

    When that length is 0 while arrows exist, every arrow lies on a forbidden
    cycle. The value is then 0 or 1 and is settled by looking for a module of
    projective dimension exactly one.
    """
    longest = max((p.length for p in maximal_forbidden_paths(bq)), default=0)
    if longest == 0 and bq.arrows:
        from .homology import finite_pd_sup

        return finite_pd_sup(bq)
    return DimValue(longest)
