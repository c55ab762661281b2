"""Strings and bands: reduced walks in arrows and their formal inverses."""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

from .quiver import BoundQuiver, op_name

__all__ = [
    "Letter",
    "Word",
    "StringViolation",
    "UnknownArrow",
    "CapExceeded",
    "parse_word",
    "format_word",
    "check_string",
    "is_valid_string",
    "inverse",
    "word_key",
    "canonical_string",
    "is_band",
    "canonical_band",
    "enumerate_strings",
    "enumerate_walks",
    "enumerate_bands",
    "TransitionGraph",
    "transition_graph",
    "transport",
    "direct_word",
]


class UnknownArrow(KeyError):
    pass


class CapExceeded(RuntimeError):
    """Enumeration produced more objects than the configured hard cap."""


class Letter(NamedTuple):
    arrow: str
    inv: bool = False

    def __str__(self):
        return f"{self.arrow}^-1" if self.inv else self.arrow

    @property
    def flipped(self) -> "Letter":
        return Letter(self.arrow, not self.inv)


@dataclass(frozen=True)
class Word:
    """A finite walk: either a nonempty letter sequence or the trivial walk
    ``e(v)`` at a vertex."""

    letters: tuple[Letter, ...] = ()
    vertex: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(Letter(*x) for x in self.letters))
        if not self.letters and self.vertex is None:
            raise ValueError("a trivial word needs a vertex")
        if self.letters and self.vertex is not None:
            raise ValueError("a nonempty word carries no vertex")

    @classmethod
    def trivial(cls, v: str) -> "Word":
        return cls((), v)

    @property
    def is_trivial(self) -> bool:
        return not self.letters

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, i):
        return self.letters[i]

    def __str__(self):
        return format_word(self)

    def __repr__(self):
        return f"Word({format_word(self)!r})"

    def start(self, bq: BoundQuiver) -> str:
        if self.is_trivial:
            return self.vertex
        return letter_source(bq, self.letters[0])

    def end(self, bq: BoundQuiver) -> str:
        if self.is_trivial:
            return self.vertex
        return letter_target(bq, self.letters[-1])

    def positions(self, bq: BoundQuiver) -> list[str]:
        """Vertices visited by the walk, one per position ``0..len``."""
        if self.is_trivial:
            return [self.vertex]
        out = [letter_source(bq, self.letters[0])]
        for x in self.letters:
            out.append(letter_target(bq, x))
        return out


def letter_source(bq: BoundQuiver, x: Letter) -> str:
    try:
        a = bq.arrow[x.arrow]
    except KeyError:
        raise UnknownArrow(x.arrow) from None
    return a.target if x.inv else a.source


def letter_target(bq: BoundQuiver, x: Letter) -> str:
    try:
        a = bq.arrow[x.arrow]
    except KeyError:
        raise UnknownArrow(x.arrow) from None
    return a.source if x.inv else a.target


_TRIVIAL = re.compile(r"^e\(([^()\s]+)\)$")


def parse_word(text: str) -> Word:
    """Parse ``"b2 b1^-1 b2"``; ``b1-`` is accepted for ``b1^-1`` and
    ``e(v)`` denotes the trivial walk at ``v``."""
    text = text.strip()
    m = _TRIVIAL.match(text)
    if m:
        return Word.trivial(m.group(1))
    toks = text.split()
    if not toks:
        raise ValueError("empty word")
    letters = []
    for tok in toks:
        if tok.endswith("^-1"):
            letters.append(Letter(tok[:-3], True))
        elif tok.endswith("-") and len(tok) > 1:
            letters.append(Letter(tok[:-1], True))
        else:
            letters.append(Letter(tok, False))
        if not letters[-1].arrow:
            raise ValueError(f"bad letter {tok!r}")
    return Word(tuple(letters))


def format_word(w: Word) -> str:
    if w.is_trivial:
        return f"e({w.vertex})"
    return " ".join(str(x) for x in w.letters)


class StringViolation(NamedTuple):
    code: str  # S1 | S2 | S3
    index: int


def _pair_violation(bq: BoundQuiver, x: Letter, y: Letter) -> str | None:
    if letter_target(bq, x) != letter_source(bq, y):
        return "S1"
    if not x.inv and not y.inv and bq.is_relation(x.arrow, y.arrow):
        return "S2"
    if x.inv and y.inv and bq.is_relation(y.arrow, x.arrow):
        return "S2"
    if x.inv != y.inv and x.arrow == y.arrow:
        return "S3"
    return None


def check_string(bq: BoundQuiver, letters: Word | Sequence[Letter]) -> StringViolation | None:
    """First violated string axiom, reported at the index of the second
    letter of the offending pair; ``None`` when the walk is a string."""
    if isinstance(letters, Word):
        if letters.is_trivial:
            if letters.vertex not in bq.vertex_index:
                raise KeyError(letters.vertex)
            return None
        letters = letters.letters
    letters = [Letter(*x) for x in letters]
    for x in letters:
        if x.arrow not in bq.arrow:
            raise UnknownArrow(x.arrow)
    for i in range(1, len(letters)):
        code = _pair_violation(bq, letters[i - 1], letters[i])
        if code:
            return StringViolation(code, i)
    return None


def is_valid_string(bq: BoundQuiver, letters: Word | Sequence[Letter]) -> bool:
    return check_string(bq, letters) is None


def inverse(w: Word) -> Word:
    if w.is_trivial:
        return w
    return Word(tuple(x.flipped for x in reversed(w.letters)))


def word_key(bq: BoundQuiver, w: Word) -> tuple:
    """Sort key: length first, then letters by arrow declaration order with
    forward before inverse."""
    if w.is_trivial:
        return (0, (bq.vertex_index[w.vertex],))
    return (len(w), tuple((bq.arrow_index[x.arrow], x.inv) for x in w.letters))


def canonical_string(bq: BoundQuiver, w: Word) -> Word:
    if w.is_trivial:
        return w
    v = inverse(w)
    return min(w, v, key=lambda u: word_key(bq, u))


def _is_power(letters: tuple[Letter, ...]) -> bool:
    n = len(letters)
    for d in range(1, n):
        if n % d == 0 and letters == letters[:d] * (n // d):
            return True
    return False


def is_band(bq: BoundQuiver, w: Word) -> tuple[bool, str]:
    if w.is_trivial:
        return False, "trivial walk"
    bad = check_string(bq, w)
    if bad:
        return False, f"not a string ({bad.code} at {bad.index})"
    if w.end(bq) != w.start(bq):
        return False, "not closed"
    if _is_power(w.letters):
        return False, "proper power"
    bad = check_string(bq, w.letters + w.letters)
    if bad:
        return False, f"square is not a string ({bad.code} at {bad.index})"
    return True, "band"


def _rotations(letters: tuple[Letter, ...]):
    for t in range(len(letters)):
        yield letters[t:] + letters[:t]


def canonical_band(bq: BoundQuiver, w: Word) -> Word:
    cands = [Word(r) for r in _rotations(w.letters)]
    cands += [Word(r) for r in _rotations(inverse(w).letters)]
    return min(cands, key=lambda u: word_key(bq, u))


def all_letters(bq: BoundQuiver) -> list[Letter]:
    return [Letter(a.name, inv) for a in bq.arrows for inv in (False, True)]


def letter_key(bq: BoundQuiver, x: Letter) -> tuple[int, bool]:
    return (bq.arrow_index[x.arrow], x.inv)


def enumerate_walks(bq: BoundQuiver, max_len: int, cap: int = 500_000) -> Iterable[Word]:
    """Every oriented nontrivial string of length ``1..max_len``,
    breadth-first. Each string is produced in both orientations."""
    graph = transition_graph(bq)
    frontier = [(x,) for x in all_letters(bq)] if max_len >= 1 else []
    produced = 0
    length = 1
    while frontier:
        nxt = []
        for walk in frontier:
            produced += 1
            if produced > cap:
                raise CapExceeded(f"more than {cap} walks up to length {max_len}")
            yield Word(walk)
            if length < max_len:
                for y in graph.successors(walk[-1]):
                    nxt.append(walk + (y,))
        frontier = nxt
        length += 1


def enumerate_strings(bq: BoundQuiver, max_len: int, cap: int = 500_000) -> list[Word]:
    """Canonical representatives of all strings of length ``<= max_len``,
    trivial ones first, then sorted by :func:`word_key`."""
    if max_len < 0:
        raise ValueError("max_len must be nonnegative")
    out = [Word.trivial(v) for v in bq.vertices]
    seen = set()
    for w in enumerate_walks(bq, max_len, cap):
        c = canonical_string(bq, w)
        if c not in seen:
            seen.add(c)
    out.extend(sorted(seen, key=lambda u: word_key(bq, u)))
    return out


def enumerate_bands(bq: BoundQuiver, max_len: int, cap: int = 500_000) -> list[Word]:
    found = set()
    for w in enumerate_walks(bq, max_len, cap):
        if w.start(bq) == w.end(bq) and is_band(bq, w)[0]:
            found.add(canonical_band(bq, w))
    return sorted(found, key=lambda u: word_key(bq, u))


class TransitionGraph:
    """Letters as nodes; ``x -> y`` whenever ``x y`` is a string."""

    def __init__(self, bq: BoundQuiver):
        self.bq = bq
        self.nodes = all_letters(bq)
        self.edges: dict[Letter, tuple[Letter, ...]] = {}
        for x in self.nodes:
            self.edges[x] = tuple(
                y for y in self.nodes if _pair_violation(bq, x, y) is None
            )

    def successors(self, x: Letter) -> tuple[Letter, ...]:
        return self.edges[x]

    def has_edge(self, x: Letter, y: Letter) -> bool:
        return y in self.edges[x]

    @cached_property
    def _reach(self) -> dict[Letter, frozenset[Letter]]:
        out = {}
        for x in self.nodes:
            seen: set[Letter] = set()
            queue = deque(self.edges[x])
            while queue:
                y = queue.popleft()
                if y in seen:
                    continue
                seen.add(y)
                queue.extend(self.edges[y])
            out[x] = frozenset(seen)
        return out

    def reach(self, x: Letter, y: Letter) -> bool:
        """Is there a walk ``x ... y`` using at least one edge?"""
        return y in self._reach[x]

    def reachable(self, x: Letter) -> frozenset[Letter]:
        return self._reach[x]

    def shortest_walk(self, x: Letter, y: Letter) -> Word | None:
        """A shortest string of length >= 2 starting with x and ending with y."""
        parent: dict[Letter, Letter | None] = {}
        queue = deque()
        for z in self.edges[x]:
            if z not in parent:
                parent[z] = None
                queue.append(z)
        while queue:
            z = queue.popleft()
            if z == y:
                path = []
                node = z
                while node is not None:
                    path.append(node)
                    node = parent[node]
                return Word((x,) + tuple(reversed(path)))
            for u in self.edges[z]:
                if u not in parent:
                    parent[u] = z
                    queue.append(u)
        return None

    @cached_property
    def on_cycle(self) -> frozenset[Letter]:
        return frozenset(x for x in self.nodes if x in self._reach[x])

    def has_cycle(self) -> bool:
        return bool(self.on_cycle)


_GRAPHS: dict[BoundQuiver, TransitionGraph] = {}


def transition_graph(bq: BoundQuiver) -> TransitionGraph:
    g = _GRAPHS.get(bq)
    if g is None:
        g = _GRAPHS[bq] = TransitionGraph(bq)
    return g


def transport(w: Word) -> Word:
    """The same walk read in the opposite quiver: every letter changes
    direction and its arrow is renamed."""
    if w.is_trivial:
        return w
    return Word(tuple(Letter(op_name(x.arrow), not x.inv) for x in w.letters))


def direct_word(bq: BoundQuiver, start: str, arrows: Sequence[str]) -> Word:
    if not arrows:
        return Word.trivial(start)
    return Word(tuple(Letter(a) for a in arrows))
