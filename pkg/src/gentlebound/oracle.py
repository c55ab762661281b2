"""Representations over F_p and minimal projective resolutions.

This module is deliberately independent of the combinatorial syzygy rules:
projective covers and kernels are computed by plain linear algebra, so the
results can be used to check :mod:`gentlebound.homology`.

A representation assigns a space ``F_p^{dims[v]}`` to every vertex and to
every arrow ``a`` a matrix of shape ``(dims[t(a)], dims[s(a)])`` acting on
column vectors. A relation ``(a, b)`` then reads ``mats[b] @ mats[a] == 0``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from . import fp
from .quiver import BoundQuiver, opposite, op_name
from .walks import Word, check_string, format_word, is_band

__all__ = [
    "DEFAULT_PRIME",
    "SECOND_PRIME",
    "Representation",
    "RelationViolated",
    "string_rep",
    "band_rep",
    "jordan_block",
    "projective_rep",
    "injective_rep",
    "dual",
    "top_of",
    "socle_of",
    "Cover",
    "minimal_cover",
    "OracleDim",
    "ResolutionStep",
    "ResolutionTrace",
    "resolve_projective",
    "pd_oracle",
    "id_oracle",
    "LambdaReport",
    "lambda_independence",
]

DEFAULT_PRIME = 101
SECOND_PRIME = 32003


class RelationViolated(ValueError):
    pass


@dataclass
class Representation:
    bq: BoundQuiver
    dims: dict[str, int]
    mats: dict[str, np.ndarray]
    p: int = DEFAULT_PRIME

    def __post_init__(self):
        for a in self.bq.arrows:
            shape = (self.dims[a.target], self.dims[a.source])
            m = self.mats.get(a.name)
            if m is None:
                m = np.zeros(shape, dtype=np.int64)
            m = np.asarray(m, dtype=np.int64).reshape(shape) % self.p
            self.mats[a.name] = m
        self.check_relations()

    def check_relations(self):
        for a, b in self.bq.relations:
            prod = fp.matmul(self.mats[b], self.mats[a], self.p)
            if prod.any():
                raise RelationViolated(f"relation {a} {b} does not act as zero")
        for rel in self.bq.long_relations:
            prod = self.mats[rel[0]]
            for x in rel[1:]:
                prod = fp.matmul(self.mats[x], prod, self.p)
            if prod.any():
                raise RelationViolated(f"relation {' '.join(rel)} does not act as zero")

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def dim_vector(self) -> dict[str, int]:
        return {v: self.dims[v] for v in self.bq.vertices if self.dims[v]}


def _positions(bq: BoundQuiver, verts: list[str]) -> tuple[dict[str, int], list[int]]:
    """Per-vertex dimensions and the local index of each position."""
    dims = dict.fromkeys(bq.vertices, 0)
    local = []
    for v in verts:
        local.append(dims[v])
        dims[v] += 1
    return dims, local


def string_rep(bq: BoundQuiver, w: Word, p: int = DEFAULT_PRIME) -> Representation:
    """``M(w)``: one basis vector per walk position, every letter acting by 1."""
    bad = check_string(bq, w)
    if bad:
        raise ValueError(f"{format_word(w)} is not a string: {bad.code} at {bad.index}")
    verts = w.positions(bq)
    dims, local = _positions(bq, verts)
    mats = {a.name: np.zeros((dims[a.target], dims[a.source]), dtype=np.int64) for a in bq.arrows}
    for i, x in enumerate(w.letters, start=1):
        if x.inv:
            mats[x.arrow][local[i - 1], local[i]] += 1
        else:
            mats[x.arrow][local[i], local[i - 1]] += 1
    return Representation(bq, dims, mats, p)


def jordan_block(n: int, lam: int, p: int) -> np.ndarray:
    """``lam`` on the diagonal and 1 on the superdiagonal."""
    j = np.eye(n, dtype=np.int64) * (lam % p)
    for i in range(n - 1):
        j[i, i + 1] = 1
    return j % p


def band_rep(bq: BoundQuiver, b: Word, n: int, lam: int, p: int = DEFAULT_PRIME) -> Representation:
    """``B(b, n, lam)``: an ``n``-dimensional block per position; the closing
    letter acts by a Jordan block, the others by identities."""
    ok, why = is_band(bq, b)
    if not ok:
        raise ValueError(f"{format_word(b)} is not a band: {why}")
    if lam % p == 0:
        raise ValueError("band parameter must be nonzero")
    if n < 1:
        raise ValueError("n must be at least 1")
    m = len(b)
    verts = b.positions(bq)[:m]
    dims1, local = _positions(bq, verts)
    dims = {v: d * n for v, d in dims1.items()}
    mats = {a.name: np.zeros((dims[a.target], dims[a.source]), dtype=np.int64) for a in bq.arrows}
    eye = np.eye(n, dtype=np.int64)
    for i, x in enumerate(b.letters):
        src, dst = i, (i + 1) % m
        block = jordan_block(n, lam, p) if i == m - 1 else eye
        s0, d0 = local[src] * n, local[dst] * n
        if x.inv:
            mats[x.arrow][s0:s0 + n, d0:d0 + n] += block
        else:
            mats[x.arrow][d0:d0 + n, s0:s0 + n] += block
    return Representation(bq, dims, mats, p)


def _nonzero_paths_from(bq: BoundQuiver, v: str) -> list[tuple[str, ...]]:
    """Paths from ``v`` avoiding every relation, breadth first, ``()`` first."""
    out: list[tuple[str, ...]] = [()]
    frontier: list[tuple[str, ...]] = [()]
    limit = 10_000
    while frontier:
        nxt = []
        for q in frontier:
            here = v if not q else bq.t(q[-1])
            for a in bq.out_arrows[here]:
                if q and bq.is_relation(q[-1], a):
                    continue
                cand = q + (a,)
                if any(cand[i:i + len(r)] == r for r in bq.long_relations for i in range(len(cand) - len(r) + 1)):
                    continue
                nxt.append(cand)
        out.extend(nxt)
        frontier = nxt
        if len(out) > limit:
            raise ValueError(f"P({v}) is infinite dimensional or too large")
    return out


def projective_rep(bq: BoundQuiver, v: str, p: int = DEFAULT_PRIME) -> Representation:
    """``P(v) = e_v A``: basis the nonzero paths starting at ``v``; an arrow
    ``a`` sends ``q`` to ``qa``."""
    paths = _nonzero_paths_from(bq, v)
    ends = [v if not q else bq.t(q[-1]) for q in paths]
    dims, local = _positions(bq, ends)
    index = {q: i for i, q in enumerate(paths)}
    mats = {a.name: np.zeros((dims[a.target], dims[a.source]), dtype=np.int64) for a in bq.arrows}
    for q, i in index.items():
        for a in bq.out_arrows[ends[i]]:
            j = index.get(q + (a,))
            if j is not None:
                mats[a][local[j], local[i]] = 1
    return Representation(bq, dims, mats, p)


def dual(rep: Representation) -> Representation:
    """``D(M)`` as a representation of the opposite quiver."""
    bop = opposite(rep.bq)
    mats = {op_name(a): m.T.copy() for a, m in rep.mats.items()}
    return Representation(bop, dict(rep.dims), mats, rep.p)


def injective_rep(bq: BoundQuiver, v: str, p: int = DEFAULT_PRIME) -> Representation:
    """``E(v) = D(A e_v)``, built as the dual of ``P(v)`` over the opposite
    quiver."""
    pop = projective_rep(opposite(bq), v, p)
    return dual(pop)


def _radical_basis(rep: Representation, v: str) -> np.ndarray:
    cols = [rep.mats[a] for a in rep.bq.in_arrows[v] if rep.mats[a].shape[1]]
    if not cols:
        return np.zeros((rep.dims[v], 0), dtype=np.int64)
    return np.concatenate(cols, axis=1) % rep.p


def top_of(rep: Representation) -> dict[str, int]:
    """Multiplicity of each simple in ``M / rad M``."""
    out = {}
    for v in rep.bq.vertices:
        d = rep.dims[v] - fp.rank(_radical_basis(rep, v), rep.p)
        if d:
            out[v] = d
    return out


def socle_of(rep: Representation) -> dict[str, int]:
    return top_of(dual(rep))


@dataclass
class Cover:
    cover: Representation
    generators: list[tuple[str, np.ndarray]]
    maps: dict[str, np.ndarray]  # per vertex: cover_v -> module_v
    kernel: Representation
    kernel_basis: dict[str, np.ndarray]

    @property
    def multiplicities(self) -> dict[str, int]:
        return dict(Counter(v for v, _ in self.generators))


def _direct_sum(bq: BoundQuiver, reps: list[Representation], p: int) -> Representation:
    dims = dict.fromkeys(bq.vertices, 0)
    for r in reps:
        for v in bq.vertices:
            dims[v] += r.dims[v]
    mats = {}
    for a in bq.arrows:
        m = np.zeros((dims[a.target], dims[a.source]), dtype=np.int64)
        ro = co = 0
        for r in reps:
            block = r.mats[a.name]
            m[ro:ro + block.shape[0], co:co + block.shape[1]] = block
            ro += block.shape[0]
            co += block.shape[1]
        mats[a.name] = m
    return Representation(bq, dims, mats, p)


def minimal_cover(rep: Representation) -> Cover:
    """Projective cover ``P -> M`` of the top of ``M`` and its kernel."""
    bq, p = rep.bq, rep.p
    gens: list[tuple[str, np.ndarray]] = []
    for v in bq.vertices:
        if rep.dims[v] == 0:
            continue
        comp = fp.extend_basis(_radical_basis(rep, v), rep.dims[v], p)
        for j in range(comp.shape[1]):
            gens.append((v, comp[:, j:j + 1]))
    summands = []
    images: dict[str, list[np.ndarray]] = {v: [] for v in bq.vertices}
    for v, g in gens:
        paths = _nonzero_paths_from(bq, v)
        proj = projective_rep(bq, v, p)
        summands.append(proj)
        # columns of the map follow the basis order used in projective_rep
        for q in paths:
            vec = g
            for a in q:
                vec = fp.matmul(rep.mats[a], vec, p)
            end = v if not q else bq.t(q[-1])
            images[end].append(vec)
    cover = _direct_sum(bq, summands, p)
    maps = {}
    kernel_basis = {}
    for v in bq.vertices:
        if images[v]:
            phi = np.concatenate(images[v], axis=1) % p
        else:
            phi = np.zeros((rep.dims[v], 0), dtype=np.int64)
        if fp.rank(phi, p) != rep.dims[v]:
            raise ArithmeticError(f"cover is not surjective at vertex {v}")
        maps[v] = phi
        kernel_basis[v] = fp.nullspace(phi, p) if cover.dims[v] else np.zeros((0, 0), dtype=np.int64)
    kdims = {v: kernel_basis[v].shape[1] for v in bq.vertices}
    kmats = {}
    for a in bq.arrows:
        ns, nt = kernel_basis[a.source], kernel_basis[a.target]
        if kdims[a.source] == 0 or kdims[a.target] == 0:
            kmats[a.name] = np.zeros((kdims[a.target], kdims[a.source]), dtype=np.int64)
            continue
        image = fp.matmul(cover.mats[a.name], ns, p)
        kmats[a.name] = fp.solve(nt, image, p)
    kernel = Representation(bq, kdims, kmats, p)
    return Cover(cover, gens, maps, kernel, kernel_basis)


@dataclass(frozen=True)
class OracleDim:
    """``Finite(n)`` when ``at_least`` is false, otherwise a lower bound."""

    value: int
    at_least: bool = False

    def __str__(self):
        return f">={self.value}" if self.at_least else str(self.value)

    def matches(self, combinatorial) -> bool:
        """Compare with a :class:`DimValue`; an unbounded oracle result pairs
        only with infinity."""
        if self.at_least:
            return not combinatorial.finite
        return combinatorial.finite and combinatorial.value == self.value


@dataclass(frozen=True)
class ResolutionStep:
    cover_multiplicities: dict[str, int]
    kernel_dims: dict[str, int]
    kernel_top: dict[str, int]


@dataclass
class ResolutionTrace:
    steps: list[ResolutionStep] = field(default_factory=list)
    terminated: bool = False
    depth_cap: int = 10

    @property
    def dimension(self) -> OracleDim:
        if self.terminated:
            return OracleDim(len(self.steps) - 1)
        return OracleDim(self.depth_cap, at_least=True)


def resolve_projective(rep: Representation, depth_cap: int = 10,
                       check_minimal: bool = True) -> ResolutionTrace:
    """Iterate minimal covers until a zero kernel or ``depth_cap`` steps."""
    if depth_cap < 1:
        raise ValueError("depth_cap must be at least 1")
    trace = ResolutionTrace(depth_cap=depth_cap)
    current = rep
    for _ in range(depth_cap):
        cov = minimal_cover(current)
        if check_minimal and top_of(cov.cover) != top_of(current):
            raise ArithmeticError("projective cover is not minimal")
        ktop = top_of(cov.kernel)
        trace.steps.append(ResolutionStep(cov.multiplicities, cov.kernel.dim_vector(), ktop))
        if cov.kernel.is_zero():
            trace.terminated = True
            return trace
        current = cov.kernel
    return trace


def pd_oracle(rep: Representation, depth_cap: int = 10) -> OracleDim:
    return resolve_projective(rep, depth_cap).dimension


def id_oracle(rep: Representation, depth_cap: int = 10) -> OracleDim:
    return resolve_projective(dual(rep), depth_cap).dimension


@dataclass(frozen=True)
class LambdaReport:
    band: Word
    runs: tuple[tuple[int, int, int, OracleDim, OracleDim], ...]  # (p, n, lam, pd, id)

    @property
    def ok(self) -> bool:
        return all(not pd.at_least and not idim.at_least and pd.value == 1 and idim.value == 1
                   for _, _, _, pd, idim in self.runs)


def lambda_independence(bq: BoundQuiver, b: Word, primes=(DEFAULT_PRIME, SECOND_PRIME),
                        ns=(1, 2), lams=(1, 2, 5), depth_cap: int = 10) -> LambdaReport:
    runs = []
    for p in primes:
        for n in ns:
            for lam in lams:
                rep = band_rep(bq, b, n, lam, p)
                runs.append((p, n, lam, pd_oracle(rep, depth_cap), id_oracle(rep, depth_cap)))
    return LambdaReport(b, tuple(runs))
