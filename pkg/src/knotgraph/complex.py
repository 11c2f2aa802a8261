"""Chains of decorated graphs and the coboundary operator."""

from __future__ import annotations

from fractions import Fraction

from .errors import GradingError, GraphValidationError, NotContractibleError
from .graph import (
    CIRCLE,
    EVEN,
    ODD,
    CanonicalGraph,
    RawGraph,
    SignedGraph,
    ZERO,
    canonicalize,
)


class Chain:
    """Finite rational combination of canonical graphs.

    Zero coefficients are never stored.  All graphs share one backbone and
    parity; the empty chain is compatible with everything.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        self._terms = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for g, c in items:
                self._add(g, c)

    @classmethod
    def of(cls, g, coefficient=1):
        if isinstance(g, SignedGraph):
            if g.is_zero:
                return cls()
            return cls({g.graph: coefficient * g.sign})
        return cls({g: coefficient})

    def _add(self, g, c):
        if not isinstance(g, CanonicalGraph):
            raise TypeError(f"chains hold canonical graphs, got {type(g).__name__}")
        c = Fraction(c)
        if not c:
            return
        if self._terms:
            ref = next(iter(self._terms))
            if (ref.backbone, ref.parity) != (g.backbone, g.parity):
                raise GraphValidationError(
                    "mixed_complex",
                    f"cannot mix {ref.backbone}/{ref.parity} with {g.backbone}/{g.parity}",
                )
        new = self._terms.get(g, 0) + c
        if new:
            self._terms[g] = new
        else:
            del self._terms[g]

    def copy(self):
        out = Chain()
        out._terms = dict(self._terms)
        return out

    def items(self):
        return sorted(self._terms.items(), key=lambda t: t[0].key)

    def graphs(self):
        return [g for g, _ in self.items()]

    def coefficient(self, g):
        return self._terms.get(g, Fraction(0))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __iter__(self):
        return iter(self.items())

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self._terms
        if not isinstance(other, Chain):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other):
        out = self.copy()
        for g, c in other._terms.items():
            out._add(g, c)
        return out

    def __sub__(self, other):
        out = self.copy()
        for g, c in other._terms.items():
            out._add(g, -c)
        return out

    def __neg__(self):
        return Chain({g: -c for g, c in self._terms.items()})

    def __mul__(self, scalar):
        scalar = Fraction(scalar)
        if not scalar:
            return Chain()
        return Chain({g: c * scalar for g, c in self._terms.items()})

    __rmul__ = __mul__

    def gradings(self):
        return {(g.grading.k, g.grading.m) for g in self._terms}

    @property
    def backbone(self):
        return next(iter(self._terms)).backbone if self._terms else None

    @property
    def parity(self):
        return next(iter(self._terms)).parity if self._terms else None

    def __repr__(self):
        if not self._terms:
            return "Chain(0)"
        return "Chain(" + " + ".join(f"{c}*{g!r}" for g, c in self.items()) + ")"


def as_chain(x):
    if isinstance(x, Chain):
        return x
    return Chain.of(x)


# -- contractions -------------------------------------------------------------


def arcs(g):
    """Arc indices ``i`` (1-based) of a graph: the arc from ``i`` to its successor."""
    if g.n_ext < 2:
        return []
    if g.backbone == CIRCLE:
        return list(range(1, g.n_ext + 1))
    return list(range(1, g.n_ext))


def regular_edges(g):
    """1-based positions of the edges with an internal endpoint."""
    return [a + 1 for a, (u, v) in enumerate(g.edges) if v >= g.n_ext]


def _merge_labels(x, keep, drop):
    if x == drop:
        return keep
    return x - 1 if x > drop else x


def contract_arc(g, i):
    """Contract the arc leaving external vertex ``i`` (1-based).

    Returns a :class:`SignedGraph`; zero if a double line appears.
    """
    if g.n_ext < 2:
        raise NotContractibleError("arc contraction needs at least two external vertices")
    if i not in arcs(g):
        raise NotContractibleError(f"no arc leaves external vertex {i}")
    j = i % g.n_ext + 1
    sign = (-1) ** j if j > i else (-1) ** (i + 1)
    keep, drop = min(i, j), max(i, j)
    edges = []
    half = []
    for u, v in g.edges:
        a = _merge_labels(u + 1, keep, drop)
        b = _merge_labels(v + 1, keep, drop)
        edges.append((a, b))
        if a == b and g.parity == ODD:
            # former endpoints u < v: the half-edge at the smaller label leads
            half.append((1, 2))
        else:
            half.append(None)
    raw = RawGraph(
        g.backbone,
        g.parity,
        g.n_ext - 1,
        g.n_int,
        tuple(edges),
        half_orders=tuple(half) if g.parity == ODD else None,
    )
    sg = canonicalize(raw, check=False)
    if sg.is_zero:
        return ZERO
    return SignedGraph(sign * sg.sign, sg.graph)


def contract_edge(g, alpha):
    """Contract the regular edge at 1-based position ``alpha`` of ``g.edges``.

    For even graphs ``alpha`` is the edge label.
    """
    if not 1 <= alpha <= g.n_edges:
        raise NotContractibleError(f"edge {alpha} does not exist")
    u, v = g.edges[alpha - 1]
    if v < g.n_ext:
        raise NotContractibleError(
            f"edge {alpha} joins two external vertices and is not regular"
        )
    i, j = u + 1, v + 1
    n_ext = g.n_ext
    n_int = g.n_int - 1
    if g.parity == ODD:
        sign = (-1) ** j
        edges = []
        for a, (x, y) in enumerate(g.edges):
            if a == alpha - 1:
                continue
            edges.append((_merge_labels(x + 1, i, j), _merge_labels(y + 1, i, j)))
        raw = RawGraph(g.backbone, g.parity, n_ext, n_int, tuple(edges))
    else:
        sign = (-1) ** (alpha + 1 + g.n_ext)
        edges = []
        for a, (x, y) in enumerate(g.edges):
            if a == alpha - 1:
                continue
            edges.append((_merge_labels(x + 1, i, j), _merge_labels(y + 1, i, j)))
        raw = RawGraph(g.backbone, g.parity, n_ext, n_int, tuple(edges))
    sg = canonicalize(raw, check=False)
    if sg.is_zero:
        return ZERO
    return SignedGraph(sign * sg.sign, sg.graph)


def delta_graph(g):
    out = {}
    for i in arcs(g):
        sg = contract_arc(g, i)
        if not sg.is_zero:
            out[sg.graph] = out.get(sg.graph, 0) + sg.sign
    for alpha in regular_edges(g):
        sg = contract_edge(g, alpha)
        if not sg.is_zero:
            out[sg.graph] = out.get(sg.graph, 0) + sg.sign
    return Chain(out)


def delta(c):
    """Coboundary of a chain homogeneous in (order, degree)."""
    c = as_chain(c)
    if len(c.gradings()) > 1:
        raise GradingError(f"chain mixes gradings {sorted(c.gradings())}")
    return delta_any(c)


def delta_any(c):
    """Coboundary extended linearly over mixed gradings."""
    acc = {}
    for g, coef in as_chain(c):
        for h, v in delta_graph(g):
            acc[h] = acc.get(h, 0) + coef * v
    return Chain(acc)
