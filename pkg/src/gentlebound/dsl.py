"""A small line-oriented text format for bound quivers.

::

    # comment
    vertices 1 2 3
    arrow a 1 2
    arrow b 2 3
    rel a b        # the path ab (t(a) = s(b)) is zero

``rel`` lines with other than two arrows are kept as long generators so
that validation can flag them.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .quiver import Arrow, BoundQuiver

__all__ = ["SourceSpan", "ParseError", "parse_bound_quiver", "load_bound_quiver", "format_bound_quiver"]


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int
    offset: int

    def __str__(self):
        return f"{self.line}:{self.column}"


class ParseError(ValueError):
    def __init__(self, span: SourceSpan, message: str):
        super().__init__(f"{span}: {message}")
        self.span = span
        self.message = message


def _tokens(line: str) -> list[tuple[str, int]]:
    """Whitespace-separated tokens with their 0-based column."""
    out = []
    i = 0
    n = len(line)
    while i < n:
        if line[i].isspace():
            i += 1
            continue
        j = i
        while j < n and not line[j].isspace():
            j += 1
        out.append((line[i:j], i))
        i = j
    return out


def parse_bound_quiver(text: str, name: str = "") -> BoundQuiver:
    vertices: list[str] = []
    arrows: dict[str, Arrow] = {}
    rels: list[tuple[str, str]] = []
    longs: list[tuple[str, ...]] = []
    offset = 0
    for lineno, raw in enumerate(text.splitlines(keepends=True), start=1):
        line = raw.split("#", 1)[0]
        toks = _tokens(line.rstrip("\r\n"))

        def span(k: int) -> SourceSpan:
            col = toks[k][1] if k < len(toks) else len(line.rstrip())
            return SourceSpan(lineno, col + 1, start + len(line[:col].encode("utf-8")))

        start = offset
        offset += len(raw.encode("utf-8"))
        if not toks:
            continue
        kw = toks[0][0]
        args = [t for t, _ in toks[1:]]
        if kw == "vertices":
            if not args:
                raise ParseError(span(0), "vertices needs at least one id")
            for k, v in enumerate(args, start=1):
                if v in vertices:
                    raise ParseError(span(k), f"duplicate vertex {v}")
                vertices.append(v)
        elif kw == "arrow":
            if len(args) != 3:
                raise ParseError(span(0), "expected: arrow <name> <source> <target>")
            a, s, t = args
            if a in arrows:
                raise ParseError(span(1), f"duplicate arrow {a}")
            for k, v in ((2, s), (3, t)):
                if v not in vertices:
                    raise ParseError(span(k), f"undeclared vertex {v}")
            arrows[a] = Arrow(a, s, t)
        elif kw == "rel":
            if len(args) < 2:
                raise ParseError(span(0), "a relation needs at least two arrows")
            for k, a in enumerate(args, start=1):
                if a not in arrows:
                    raise ParseError(span(k), f"undeclared arrow {a}")
            for k in range(1, len(args)):
                if arrows[args[k - 1]].target != arrows[args[k]].source:
                    raise ParseError(span(k + 1), f"relation not composable: t({args[k-1]}) != s({args[k]})")
            key = tuple(args)
            if key in rels or key in longs:
                raise ParseError(span(1), f"duplicate relation {' '.join(args)}")
            if len(args) == 2:
                rels.append(key)
            else:
                longs.append(key)
        else:
            raise ParseError(span(0), f"unknown keyword {kw!r}")
    return BoundQuiver(tuple(vertices), tuple(arrows.values()), tuple(rels), tuple(longs), name=name)


def load_bound_quiver(path: str | Path) -> BoundQuiver:
    path = Path(path)
    return parse_bound_quiver(path.read_text(encoding="utf-8"), name=path.stem)


def format_bound_quiver(bq: BoundQuiver) -> str:
    """Canonical text; parsing it back gives an equal bound quiver."""
    lines = []
    if bq.vertices:
        lines.append("vertices " + " ".join(bq.vertices))
    lines += [f"arrow {a.name} {a.source} {a.target}" for a in bq.arrows]
    lines += ["rel " + " ".join(r) for r in bq.relations]
    lines += ["rel " + " ".join(r) for r in bq.long_relations]
    return "\n".join(lines) + "\n"
