"""Graded bases of the graph complexes and their cohomology over Q."""

from __future__ import annotations

import os
from math import lcm
import random
from dataclasses import dataclass, field

from .complex import Chain, delta_graph
from .errors import BasisIncompleteError, ResourceGuardError
from .graph import EVEN, CanonicalGraph, RawGraph, canonicalize
from .linalg import SparseExactMatrix, rank, rank_kernel

MAX_RAW_GRAPHS = 5_000_000
MAX_MATRIX_DIM = 10_000


def max_raw_graphs():
    return int(os.environ.get("KNOTGRAPH_MAX_RAW_GRAPHS", MAX_RAW_GRAPHS))


def max_matrix_dim():
    return int(os.environ.get("KNOTGRAPH_MAX_MATRIX_DIM", MAX_MATRIX_DIM))


@dataclass(frozen=True)
class GradedBasis:
    backbone: str
    parity: str
    k: int
    m: int
    graphs: tuple
    index: dict = field(compare=False, repr=False, default=None)

    def __post_init__(self):
        object.__setattr__(self, "index", {g: i for i, g in enumerate(self.graphs)})

    def __len__(self):
        return len(self.graphs)

    def __iter__(self):
        return iter(self.graphs)

    def __getitem__(self, i):
        return self.graphs[i]

    def shuffled(self, seed):
        """Same generators in a seeded random order (for order-independence checks)."""
        graphs = list(self.graphs)
        random.Random(seed).shuffle(graphs)
        return GradedBasis(self.backbone, self.parity, self.k, self.m, tuple(graphs))


def vertex_splits(k, m):
    """Admissible ``(v_e, v_i, e)`` for order ``k`` and degree ``m``."""
    out = []
    for v_i in range(0, 2 * k - m + 1):
        v_e = 2 * k - m - v_i
        e = k + v_i
        if v_e < 0:
            continue
        if v_e == 0 and (v_i or e):
            continue
        out.append((v_e, v_i, e))
    return out


def raw_graphs(backbone, parity, v_e, v_i, e, budget=None):
    """Every edge set on standard ids meeting the valence and loop rules.

    Yields :class:`RawGraph` objects with externals ``1..v_e`` in backbone
    order.  Odd external loops are skipped (they vanish); components without
    external vertices are skipped.
    """
    V = v_e + v_i
    need = [1] * v_e + [3] * v_i
    excess = 2 * e - sum(need)
    if excess < 0:
        return
    pairs = []
    for u in range(V):
        if u < v_e and parity == EVEN:
            pairs.append((u, u))
        for v in range(u + 1, V):
            pairs.append((u, v))
    # last pair index touching each vertex, to close vertices early
    last = [-1] * V
    for idx, (u, v) in enumerate(pairs):
        last[u] = idx
        last[v] = idx
    closes_at = {}
    for x in range(V):
        closes_at.setdefault(last[x], []).append(x)
    deg = [0] * V
    chosen = []
    count = [0]
    limit = budget if budget is not None else max_raw_graphs()

    def deficit():
        return sum(max(0, n - d) for n, d in zip(need, deg))

    def rec(idx, remaining):
        if remaining == 0:
            if deficit() == 0 and _touches_backbone(V, v_e, chosen):
                count[0] += 1
                if count[0] > limit:
                    raise ResourceGuardError(
                        f"enumeration exceeds {limit} raw graphs; raise KNOTGRAPH_MAX_RAW_GRAPHS"
                    )
                yield tuple(chosen)
            return
        if idx >= len(pairs) or len(pairs) - idx < remaining:
            return
        if deficit() > 2 * remaining:
            return
        u, v = pairs[idx]
        # take the pair
        if deg[u] + (2 if u == v else 1) <= need[u] + excess and (
            u == v or deg[v] + 1 <= need[v] + excess
        ):
            deg[u] += 1
            deg[v] += 1
            chosen.append((u, v))
            if all(deg[x] >= need[x] for x in closes_at.get(idx, ())):
                yield from rec(idx + 1, remaining - 1)
            chosen.pop()
            deg[u] -= 1
            deg[v] -= 1
        # skip the pair
        if all(deg[x] >= need[x] for x in closes_at.get(idx, ())):
            yield from rec(idx + 1, remaining)

    for edges in rec(0, e):
        yield RawGraph(backbone, parity, v_e, v_i, tuple((u + 1, v + 1) for u, v in edges))


def _touches_backbone(V, v_e, edges):
    parent = list(range(V))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        parent[find(u)] = find(v)
    ext_roots = {find(p) for p in range(v_e)}
    return all(find(x) in ext_roots for x in range(V))


def enumerate_basis(backbone, parity, k, m, budget=None):
    """All nonzero canonical generators of order ``k`` and degree ``m``."""
    if k < 0 or m < 0:
        raise ValueError("order and degree must be non-negative")
    found = set()
    for v_e, v_i, e in vertex_splits(k, m):
        for raw in raw_graphs(backbone, parity, v_e, v_i, e, budget):
            sg = canonicalize(raw, check=False)
            if not sg.is_zero:
                found.add(sg.graph)
    return GradedBasis(backbone, parity, k, m, tuple(sorted(found, key=lambda g: g.key)))


_BASIS_CACHE = {}


def basis(backbone, parity, k, m):
    """Memoized :func:`enumerate_basis` (negative degree gives the empty basis)."""
    key = (backbone, parity, k, m)
    if key not in _BASIS_CACHE:
        if m < 0:
            _BASIS_CACHE[key] = GradedBasis(backbone, parity, k, m, ())
        else:
            _BASIS_CACHE[key] = enumerate_basis(backbone, parity, k, m)
    return _BASIS_CACHE[key]


def coordinates(chain, target):
    """Coordinate vector of ``chain`` in ``target``; raises if a graph is missing."""
    vec = {}
    for g, c in chain:
        i = target.index.get(g)
        if i is None:
            raise BasisIncompleteError(f"{g!r} is missing from the ({target.k}, {target.m}) basis")
        vec[i] = c
    return vec


def delta_matrix(src, dst):
    """Matrix of the coboundary from ``src`` (columns) to ``dst`` (rows)."""
    if max(len(src), len(dst)) > max_matrix_dim():
        raise ResourceGuardError(
            f"matrix {len(dst)}x{len(src)} exceeds {max_matrix_dim()}; raise KNOTGRAPH_MAX_MATRIX_DIM"
        )
    entries = {}
    for c, g in enumerate(src):
        for r, v in coordinates(delta_graph(g), dst).items():
            if v.denominator != 1:
                raise ValueError("coboundary produced a non-integer coefficient")
            entries[(r, c)] = int(v)
    return SparseExactMatrix(len(dst), len(src), entries)


def _bases(backbone, parity, k, m, order_seed):
    out = [basis(backbone, parity, k, mm) for mm in (m - 1, m, m + 1)]
    if order_seed is not None:
        out = [b.shuffled(order_seed * 3 + i) for i, b in enumerate(out)]
    return out


def cohomology_dim(backbone, parity, k, m, *, order_seed=None, pivoting="sparse"):
    """``dim H^{k,m}`` = dim ker of the outgoing map minus rank of the incoming one."""
    prev, cur, nxt = _bases(backbone, parity, k, m, order_seed)
    r_out = rank(delta_matrix(cur, nxt), pivoting)
    r_in = rank(delta_matrix(prev, cur), pivoting) if len(prev) else 0
    return len(cur) - r_out - r_in


def cocycle_representatives(backbone, parity, k, m):
    """An integer basis of the kernel of the coboundary on ``(k, m)`` as chains."""
    cur = basis(backbone, parity, k, m)
    nxt = basis(backbone, parity, k, m + 1)
    _, kernel = rank_kernel(delta_matrix(cur, nxt))
    return [Chain({cur[i]: v for i, v in enumerate(vec) if v}) for vec in kernel]


def _integer_column(vec):
    den = 1
    for v in vec.values():
        den = lcm(den, v.denominator)
    return {r: int(v * den) for r, v in vec.items()}


def in_span(chain, chains, basis_):
    """Whether ``chain`` is a rational combination of ``chains`` in ``basis_``."""
    cols = [_integer_column(coordinates(c, basis_)) for c in chains]
    cols.append(_integer_column(coordinates(chain, basis_)))
    entries = {(r, j): v for j, col in enumerate(cols) for r, v in col.items()}
    B = SparseExactMatrix(len(basis_), len(cols), entries)
    A = SparseExactMatrix(len(basis_), len(cols) - 1, {rc: v for rc, v in entries.items() if rc[1] < len(cols) - 1})
    return rank(A) == rank(B)


def cohomology_table(backbone, parity, kmax, mmax):
    """``{(k, m): dim}`` for ``k <= kmax``, ``m <= mmax``."""
    return {
        (k, m): cohomology_dim(backbone, parity, k, m)
        for k in range(kmax + 1)
        for m in range(mmax + 1)
    }
