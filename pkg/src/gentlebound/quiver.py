"""Bound quivers with quadratic monomial relations and the gentle axioms.

Paths compose left to right: ``ab`` is defined when ``t(a) == s(b)``, and a
relation ``(a, b)`` says that the path ``ab`` is zero in the algebra.
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

__all__ = [
    "Arrow",
    "BoundQuiver",
    "MalformedQuiver",
    "GenerationFailure",
    "Violation",
    "GentleReport",
    "validate_gentle",
    "opposite",
    "op_name",
    "strong_sources",
    "strong_sinks",
    "vertex_with_relation",
    "random_gentle",
]

OP_SUFFIX = "_op"


class MalformedQuiver(ValueError):
    """Raised when a bound quiver is not even structurally well formed."""


class GenerationFailure(RuntimeError):
    pass


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class BoundQuiver:
    """A finite quiver together with a set of length-two zero relations.

    ``long_relations`` holds generators of any other length; they never
    occur in a gentle pair and only exist so that validation can report G4.
    """

    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    relations: tuple[tuple[str, str], ...] = ()
    long_relations: tuple[tuple[str, ...], ...] = ()
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arrows", tuple(self.arrows))
        object.__setattr__(self, "relations", tuple(tuple(r) for r in self.relations))
        object.__setattr__(self, "long_relations", tuple(tuple(r) for r in self.long_relations))
        if len(set(self.vertices)) != len(self.vertices):
            raise MalformedQuiver("duplicate vertex")
        if any(not v for v in self.vertices):
            raise MalformedQuiver("empty vertex id")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise MalformedQuiver("duplicate arrow name")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise MalformedQuiver(f"arrow {a.name} refers to an undeclared vertex")
        if len(set(self.relations)) != len(self.relations):
            raise MalformedQuiver("duplicate relation")
        by_name = {a.name: a for a in self.arrows}
        for rel in self.relations + self.long_relations:
            for x in rel:
                if x not in by_name:
                    raise MalformedQuiver(f"relation uses unknown arrow {x}")
            for x, y in zip(rel, rel[1:]):
                if by_name[x].target != by_name[y].source:
                    raise MalformedQuiver(f"relation {' '.join(rel)} is not composable")
        for rel in self.relations:
            if len(rel) != 2:
                raise MalformedQuiver("relations must have length two; use long_relations")

    # -- lookup tables -----------------------------------------------------

    @cached_property
    def arrow(self) -> dict[str, Arrow]:
        return {a.name: a for a in self.arrows}

    @cached_property
    def arrow_index(self) -> dict[str, int]:
        return {a.name: i for i, a in enumerate(self.arrows)}

    @cached_property
    def vertex_index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def out_arrows(self) -> dict[str, tuple[str, ...]]:
        out = {v: [] for v in self.vertices}
        for a in self.arrows:
            out[a.source].append(a.name)
        return {v: tuple(x) for v, x in out.items()}

    @cached_property
    def in_arrows(self) -> dict[str, tuple[str, ...]]:
        inc = {v: [] for v in self.vertices}
        for a in self.arrows:
            inc[a.target].append(a.name)
        return {v: tuple(x) for v, x in inc.items()}

    @cached_property
    def relation_set(self) -> frozenset[tuple[str, str]]:
        return frozenset(self.relations)

    def s(self, a: str) -> str:
        return self.arrow[a].source

    def t(self, a: str) -> str:
        return self.arrow[a].target

    def is_relation(self, a: str, b: str) -> bool:
        return (a, b) in self.relation_set

    def rel_successors(self, a: str) -> tuple[str, ...]:
        """Arrows b with ab in the ideal."""
        return tuple(b for b in self.out_arrows[self.t(a)] if (a, b) in self.relation_set)

    def free_successors(self, a: str) -> tuple[str, ...]:
        """Arrows b composable after a with ab not in the ideal."""
        return tuple(b for b in self.out_arrows[self.t(a)] if (a, b) not in self.relation_set)

    def rel_predecessors(self, b: str) -> tuple[str, ...]:
        return tuple(a for a in self.in_arrows[self.s(b)] if (a, b) in self.relation_set)

    def free_predecessors(self, b: str) -> tuple[str, ...]:
        return tuple(a for a in self.in_arrows[self.s(b)] if (a, b) not in self.relation_set)

    def in_degree(self, v: str) -> int:
        return len(self.in_arrows[v])

    def out_degree(self, v: str) -> int:
        return len(self.out_arrows[v])

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<BoundQuiver{label}: {len(self.vertices)} vertices, {len(self.arrows)} arrows, {len(self.relations)} relations>"


@dataclass(frozen=True)
class Violation:
    code: str  # G1 | G2 | G3 | G4 | FD
    witness: tuple[str, ...]
    message: str

    def as_dict(self) -> dict:
        return {"code": self.code, "witness": list(self.witness), "message": self.message}


@dataclass(frozen=True)
class GentleReport:
    violations: tuple[Violation, ...] = ()

    @property
    def is_gentle(self) -> bool:
        return not self.violations

    @property
    def codes(self) -> list[str]:
        return [v.code for v in self.violations]


def _free_cycles(bq: BoundQuiver) -> list[tuple[str, ...]]:
    """One relation-free oriented cycle per strongly connected component of
    the arrow graph ``a -> b`` (b composable after a, ab not a relation)."""
    succ = {a.name: bq.free_successors(a.name) for a in bq.arrows}
    # Tarjan, iterative
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    comps: list[list[str]] = []
    counter = 0
    for root in succ:
        if root in index:
            continue
        work = [(root, 0)]
        while work:
            node, i = work.pop()
            if i == 0:
                index[node] = low[node] = counter
                counter += 1
                stack.append(node)
                on_stack.add(node)
            nxt = succ[node]
            if i < len(nxt):
                work.append((node, i + 1))
                child = nxt[i]
                if child not in index:
                    work.append((child, 0))
                elif child in on_stack:
                    low[node] = min(low[node], index[child])
                continue
            if low[node] == index[node]:
                comp = []
                while True:
                    x = stack.pop()
                    on_stack.discard(x)
                    comp.append(x)
                    if x == node:
                        break
                comps.append(comp)
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
    cycles = []
    for comp in comps:
        members = set(comp)
        start = min(comp, key=bq.arrow_index.__getitem__)
        if len(comp) == 1 and start not in succ[start]:
            continue
        # shortest route back to start inside the component
        parent: dict[str, str | None] = {start: None}
        queue = deque([start])
        last = None
        while queue and last is None:
            node = queue.popleft()
            for b in succ[node]:
                if b == start:
                    last = node
                    break
                if b in members and b not in parent:
                    parent[b] = node
                    queue.append(b)
        path = []
        node = last
        while node is not None:
            path.append(node)
            node = parent[node]
        cycles.append(tuple(reversed(path)))
    cycles.sort(key=lambda c: bq.arrow_index[c[0]])
    return cycles


def validate_gentle(bq: BoundQuiver) -> GentleReport:
    """Check G1-G4 and finite dimensionality, accumulating every violation."""
    out: list[Violation] = []
    for v in bq.vertices:
        if bq.out_degree(v) > 2:
            out.append(Violation("G1", (v,), f"vertex {v} is the source of {bq.out_degree(v)} arrows"))
        if bq.in_degree(v) > 2:
            out.append(Violation("G1", (v,), f"vertex {v} is the target of {bq.in_degree(v)} arrows"))
    for a in bq.arrows:
        free = bq.free_successors(a.name)
        if len(free) > 1:
            out.append(Violation("G2", (a.name,) + free,
                                 f"{a.name} has {len(free)} relation-free successors"))
        free = bq.free_predecessors(a.name)
        if len(free) > 1:
            out.append(Violation("G2", free + (a.name,),
                                 f"{a.name} has {len(free)} relation-free predecessors"))
    for a in bq.arrows:
        rel = bq.rel_successors(a.name)
        if len(rel) > 1:
            out.append(Violation("G3", (a.name,) + rel,
                                 f"{a.name} is the left factor of {len(rel)} relations"))
        rel = bq.rel_predecessors(a.name)
        if len(rel) > 1:
            out.append(Violation("G3", rel + (a.name,),
                                 f"{a.name} is the right factor of {len(rel)} relations"))
    for rel in bq.long_relations:
        out.append(Violation("G4", rel, f"generator {' '.join(rel)} has length {len(rel)}, not 2"))
    for cyc in _free_cycles(bq):
        out.append(Violation("FD", cyc,
                             f"relation-free oriented cycle {' '.join(cyc)} makes the algebra infinite-dimensional"))
    return GentleReport(tuple(out))


def op_name(name: str) -> str:
    if name.endswith(OP_SUFFIX):
        return name[: -len(OP_SUFFIX)]
    return name + OP_SUFFIX


def opposite(bq: BoundQuiver) -> BoundQuiver:
    """Reverse every arrow; relation ``(a, b)`` becomes ``(b_op, a_op)``.

    The renaming toggles an ``_op`` suffix, so ``opposite`` is an involution.
    """
    arrows = tuple(Arrow(op_name(a.name), a.target, a.source) for a in bq.arrows)
    rels = tuple((op_name(b), op_name(a)) for a, b in bq.relations)
    longs = tuple(tuple(op_name(x) for x in reversed(r)) for r in bq.long_relations)
    name = op_name(bq.name) if bq.name else ""
    return BoundQuiver(bq.vertices, arrows, rels, longs, name=name)


def strong_sources(bq: BoundQuiver) -> list[str]:
    return [v for v in bq.vertices if bq.in_degree(v) == 0 and bq.out_degree(v) <= 1]


def strong_sinks(bq: BoundQuiver) -> list[str]:
    return [v for v in bq.vertices if bq.out_degree(v) == 0 and bq.in_degree(v) <= 1]


def vertex_with_relation(bq: BoundQuiver, v: str) -> bool:
    if v not in bq.vertex_index:
        raise KeyError(v)
    return any((a, b) in bq.relation_set for a in bq.in_arrows[v] for b in bq.out_arrows[v])


def _pair_up(rng: random.Random, ins: list[str], outs: list[str]) -> set[tuple[str, str]]:
    """Choose the relation pairs at one vertex.

    Both the relation pairs and the relation-free pairs must form partial
    matchings between incoming and outgoing arrows.
    """
    pairs = [(a, b) for a in ins for b in outs]
    if not pairs:
        return set()
    if len(ins) == 2 and len(outs) == 2:
        a1, a2 = ins
        b1, b2 = outs
        match = [(a1, b1), (a2, b2)] if rng.random() < 0.5 else [(a1, b2), (a2, b1)]
        return set(match)
    if len(ins) == 2 or len(outs) == 2:
        # one side has a single arrow: exactly one of the two pairs is a relation
        return {rng.choice(pairs)}
    return {pairs[0]} if rng.random() < 0.45 else set()


def random_gentle(seed: int, max_vertices: int, max_arrows: int,
                  loop_weight: float = 0.05, max_tries: int = 200) -> BoundQuiver:
    """Deterministic random gentle pair with at most the given sizes."""
    if max_vertices < 1 or max_arrows < 0:
        raise ValueError("bounds must be positive")
    rng = random.Random(seed)
    for _ in range(max_tries):
        n = rng.randint(1, max_vertices)
        verts = [str(i + 1) for i in range(n)]
        indeg = dict.fromkeys(verts, 0)
        outdeg = dict.fromkeys(verts, 0)
        target_arrows = rng.randint(0, max_arrows)
        arrows: list[Arrow] = []
        attempts = 0
        while len(arrows) < target_arrows and attempts < 20 * (target_arrows + 1):
            attempts += 1
            s = rng.choice(verts)
            t = s if rng.random() < loop_weight else rng.choice(verts)
            if s == t and n > 1 and rng.random() > loop_weight:
                continue
            if outdeg[s] >= 2 or indeg[t] >= 2:
                continue
            outdeg[s] += 1
            indeg[t] += 1
            arrows.append(Arrow(f"x{len(arrows) + 1}", s, t))
        rels: set[tuple[str, str]] = set()
        for v in verts:
            ins = [a.name for a in arrows if a.target == v]
            outs = [a.name for a in arrows if a.source == v]
            rels |= _pair_up(rng, ins, outs)
        arrow_order = [a.name for a in arrows]
        rel_tuple = tuple(sorted(rels, key=lambda r: (arrow_order.index(r[0]), arrow_order.index(r[1]))))
        bq = BoundQuiver(tuple(verts), tuple(arrows), rel_tuple, name=f"random-{seed}")
        # repair: drop one arrow of each relation-free cycle until none remain
        for _ in range(len(arrows) + 1):
            cycles = _free_cycles(bq)
            if not cycles:
                break
            drop = cycles[0][rng.randrange(len(cycles[0]))]
            bq = BoundQuiver(
                bq.vertices,
                tuple(a for a in bq.arrows if a.name != drop),
                tuple(r for r in bq.relations if drop not in r),
                name=bq.name,
            )
        if validate_gentle(bq).is_gentle:
            return bq
    raise GenerationFailure(f"no gentle pair found for seed {seed} within {max_tries} tries")
