"""Decorated graphs on an oriented circle or line, and their signed canonical forms.

A canonical graph numbers its vertices ``0 .. V-1``: the external vertices
first, in backbone order, then the internal ones.  The decoration is read off
that numbering:

* odd parity: vertex ``i`` carries label ``i + 1`` and every edge ``(u, v)``
  is oriented from ``u`` to ``v`` with ``u < v``;
* even parity: external vertex ``i`` carries label ``i + 1``, internal vertices
  are unlabeled, and the edge at position ``a`` of the sorted edge tuple
  carries label ``a + 1``.

Raw graphs use 1-based labels throughout and may carry any decoration; they
are reduced to the canonical representative of their class by
:func:`canonicalize`, which also reports the sign picked up on the way.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple

from .errors import GraphValidationError, UnsupportedBackboneError

CIRCLE = "circle"
LINE = "line"
ODD = "odd"
EVEN = "even"
BACKBONES = (CIRCLE, LINE)
PARITIES = (ODD, EVEN)

# Sign conventions that the relations leave open.  These are reported (and
# hashed) by the command line tool so results can be tied to a convention set.
SIGN_CONVENTIONS = {
    "external_renumbering": "sign of the permutation, both parities",
    "half_edge_swap": "-1 (odd); an odd external loop is therefore zero",
    "induced_half_order": "half-edge at the smaller former label first",
    "arc_sign": "(-1)^j if j > i else (-1)^(i+1); label min(i,j) kept",
    "edge_sign_odd": "(-1)^j for i -> j, i < j",
    "edge_sign_even": "(-1)^(alpha + 1 + v_e)",
    "shuffle_sign": "(-1)^(v_e(g2) e(g1)) even, +1 odd",
    "circle_shuffles": "all cyclic orders compatible with both factors",
}

# Even parity: whether a non-cyclic renumbering of the external vertices
# contributes the sign of the permutation.  The unsigned alternative is kept
# only so that the test suite can demonstrate that it breaks the algebra.
SIGNED_EXTERNAL_RENUMBERING = True


def perm_sign(seq):
    """Sign of the permutation that sorts ``seq`` (distinct items)."""
    n = len(seq)
    order = sorted(range(n), key=seq.__getitem__)
    seen = [False] * n
    sign = 1
    for i in range(n):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = order[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def rotation_sign(n, r):
    """Sign of the cyclic shift by ``r`` places of ``n`` items."""
    return -1 if (n - 1) * r % 2 else 1


class Grading(NamedTuple):
    k: int
    m: int
    label_degree: int


@dataclass(frozen=True)
class RawGraph:
    """A decorated graph with arbitrary 1-based labels.

    ``edges`` are pairs of vertex labels.  In odd parity each pair is an
    oriented edge ``(src, dst)``; in even parity the pair is unordered and its
    position in the tuple is the edge label minus one.  ``ext_order`` lists
    the labels of the external vertices in backbone order (default
    ``1 .. n_ext``).  In even parity the external vertices are exactly the
    labels ``1 .. n_ext`` and larger labels merely name internal vertices.

    ``half_orders`` is aligned with ``edges``: ``(1, 2)`` or ``(2, 1)`` for an
    odd-parity loop at an external vertex, ``None`` otherwise.  ``(1, 2)``
    means the source half-edge comes first.
    """

    backbone: str
    parity: str
    n_ext: int
    n_int: int
    edges: tuple = ()
    ext_order: tuple | None = None
    half_orders: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        if self.ext_order is not None:
            object.__setattr__(self, "ext_order", tuple(self.ext_order))
        if self.half_orders is not None:
            object.__setattr__(
                self,
                "half_orders",
                tuple(None if h is None else tuple(h) for h in self.half_orders),
            )

    @property
    def n_vertices(self):
        return self.n_ext + self.n_int

    @property
    def n_edges(self):
        return len(self.edges)

    def external_labels(self):
        if self.ext_order is None:
            return tuple(range(1, self.n_ext + 1))
        return self.ext_order


@dataclass(frozen=True, eq=True)
class CanonicalGraph:
    """Canonical representative of a decorated graph class (see module doc)."""

    backbone: str
    parity: str
    n_ext: int
    n_int: int
    edges: tuple
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(
            self,
            "_hash",
            hash((self.backbone, self.parity, self.n_ext, self.n_int, self.edges)),
        )

    def __hash__(self):
        return self._hash

    @property
    def key(self):
        return (self.n_ext, self.n_int, self.edges)

    def __lt__(self, other):
        return self.key < other.key

    @property
    def n_vertices(self):
        return self.n_ext + self.n_int

    @property
    def n_edges(self):
        return len(self.edges)

    @property
    def is_unit(self):
        return self.n_vertices == 0

    @property
    def grading(self):
        return _grading(self.parity, self.n_ext, self.n_int, len(self.edges))

    @property
    def label_degree(self):
        return self.grading.label_degree

    def to_raw(self):
        edges = tuple((u + 1, v + 1) for u, v in self.edges)
        return RawGraph(self.backbone, self.parity, self.n_ext, self.n_int, edges)

    def __repr__(self):
        body = " ".join(f"{u + 1}-{v + 1}" for u, v in self.edges)
        return (
            f"<{self.backbone}/{self.parity} v_e={self.n_ext} v_i={self.n_int}"
            f" [{body}]>"
        )


class SignedGraph(NamedTuple):
    """``sign * graph``; the zero class is ``SignedGraph(0, None)``."""

    sign: int
    graph: CanonicalGraph | None

    @property
    def is_zero(self):
        return self.sign == 0


ZERO = SignedGraph(0, None)


def unit(backbone, parity):
    return CanonicalGraph(backbone, parity, 0, 0, ())


def _grading(parity, n_ext, n_int, n_edges):
    k = n_edges - n_int
    m = 2 * n_edges - n_ext - 3 * n_int
    if parity == EVEN:
        label_degree = n_edges + n_ext
    else:
        label_degree = n_ext + n_int
    return Grading(k, m, label_degree)


def grading(g):
    """Order, degree and label degree of a graph."""
    if isinstance(g, RawGraph):
        validate(g)
    return _grading(g.parity, g.n_ext, g.n_int, g.n_edges)


# -- validation ---------------------------------------------------------------


def _fail(invariant, message):
    raise GraphValidationError(invariant, message)


def validate(g, allow_forbidden=False):
    """Check a :class:`RawGraph` against the structural invariants.

    Double lines and internal loops are rejected unless ``allow_forbidden``
    is set (they are then left for :func:`canonicalize` to send to zero).
    """
    if g.backbone not in BACKBONES:
        _fail("backbone", f"unknown backbone {g.backbone!r}")
    if g.parity not in PARITIES:
        _fail("parity", f"unknown parity {g.parity!r}")
    if not (isinstance(g.n_ext, int) and isinstance(g.n_int, int)):
        _fail("vertex_count", "vertex counts must be integers")
    if g.n_ext < 0 or g.n_int < 0:
        _fail("vertex_count", "vertex counts must be non-negative")
    V = g.n_vertices
    ext = g.external_labels()
    if len(ext) != g.n_ext or len(set(ext)) != g.n_ext:
        _fail("external_order", "external order must list n_ext distinct labels")
    for lab in ext:
        if not (isinstance(lab, int) and 1 <= lab <= V):
            _fail("label_range", f"external label {lab!r} out of range 1..{V}")
    if g.parity == EVEN and set(ext) != set(range(1, g.n_ext + 1)):
        _fail("external_labels", "even graphs label their external vertices 1..v_e")
    ext_set = set(ext)
    for e in g.edges:
        if len(e) != 2:
            _fail("edge_shape", f"edge {e!r} must have two endpoints")
        for x in e:
            if not (isinstance(x, int) and 1 <= x <= V):
                _fail("label_range", f"edge endpoint {x!r} out of range 1..{V}")
    if g.half_orders is not None and len(g.half_orders) != len(g.edges):
        _fail("half_order", "half_orders must be aligned with edges")
    for idx, (a, b) in enumerate(g.edges):
        h = None if g.half_orders is None else g.half_orders[idx]
        external_loop = a == b and a in ext_set
        if g.parity == ODD and external_loop:
            if h is None:
                _fail("missing_half_order", f"external loop at {a} needs a half-edge order")
            if h not in ((1, 2), (2, 1)):
                _fail("half_order", f"half-edge order {h!r} must be (1, 2) or (2, 1)")
        elif h is not None:
            _fail("half_order", f"edge {a}-{b} cannot carry a half-edge order")

    if not allow_forbidden:
        seen = set()
        for a, b in g.edges:
            if a == b and a not in ext_set:
                _fail("internal_loop", f"internal loop at vertex {a}")
            key = (min(a, b), max(a, b))
            if key in seen:
                _fail("double_line", f"two edges join {key[0]} and {key[1]}")
            seen.add(key)

    deg = dict.fromkeys(range(1, V + 1), 0)
    for a, b in g.edges:
        deg[a] += 1
        deg[b] += 1
    for v in range(1, V + 1):
        if v in ext_set:
            if deg[v] < 1:
                _fail("external_valence", f"external vertex {v} has no incident edge")
        elif deg[v] < 3:
            _fail("internal_valence", f"internal vertex {v} has valence {deg[v]} < 3")

    parent = list(range(V + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in g.edges:
        parent[find(a)] = find(b)
    touching = {find(v) for v in ext_set}
    for v in range(1, V + 1):
        if find(v) not in touching:
            _fail("internal_component", f"vertex {v} lies in a component with no external vertex")


# -- canonical forms ----------------------------------------------------------


def _standardize(g, signed_externals):
    """Renumber a raw graph to standard ids; return ``(sign, edges)``.

    ``edges`` is sorted and normalized to ``u <= v``.  A zero sign means a
    forbidden feature (or an odd external loop) was found.
    """
    n_ext = g.n_ext
    ext = g.external_labels()
    if g.parity == ODD:
        V = g.n_vertices
        ext_set = set(ext)
        seq = list(ext) + [x for x in range(1, V + 1) if x not in ext_set]
        sign = perm_sign(seq)
        newid = {lab: i for i, lab in enumerate(seq)}
        edges = []
        for a, b in g.edges:
            u, v = newid[a], newid[b]
            if u == v:
                # Internal loops are forbidden; an external loop is fixed by
                # the half-edge swap, which acts by -1.
                return 0, ()
            if u > v:
                u, v = v, u
                sign = -sign
            edges.append((u, v))
        edges.sort()
    else:
        if signed_externals:
            sign = perm_sign(ext)
        elif g.backbone == CIRCLE and n_ext:
            sign = rotation_sign(n_ext, ext.index(1))
        else:
            sign = 1
        newid = {lab: i for i, lab in enumerate(ext)}
        for x in range(n_ext + 1, g.n_vertices + 1):
            newid[x] = x - 1
        edges = []
        for a, b in g.edges:
            u, v = newid[a], newid[b]
            if u == v and u >= n_ext:
                return 0, ()
            edges.append((u, v) if u <= v else (v, u))
        sign *= perm_sign(edges)
        edges.sort()
    for i in range(1, len(edges)):
        if edges[i] == edges[i - 1]:
            return 0, ()
    return sign, tuple(edges)


def _external_invariants(n_ext, adj, deg):
    inv = []
    for p in range(n_ext):
        tokens = []
        for q in adj[p]:
            if q < n_ext:
                tokens.append((0, (q - p) % n_ext))
            else:
                tokens.append((1, deg[q]))
        inv.append((deg[p], tuple(sorted(tokens))))
    return inv


def _candidate_rotations(backbone, n_ext, adj, deg):
    if backbone == LINE or n_ext == 0:
        return [0]
    inv = _external_invariants(n_ext, adj, deg)
    best = None
    rots = []
    for r in range(n_ext):
        seq = inv[r:] + inv[:r]
        if best is None or seq < best:
            best = seq
            rots = [r]
        elif seq == best:
            rots.append(r)
    return rots


def _internal_classes(n_ext, V, adj, deg, extid):
    internal = range(n_ext, V)
    sig = {
        x: (deg[x], tuple(sorted(extid[q] for q in adj[x] if q < n_ext)))
        for x in internal
    }
    distinct = sorted(set(sig.values()))
    color = {x: distinct.index(sig[x]) for x in internal}
    n_classes = len(distinct)
    while True:
        sig = {
            x: (color[x], tuple(sorted(color[y] for y in adj[x] if y >= n_ext)))
            for x in internal
        }
        distinct = sorted(set(sig.values()))
        color = {x: distinct.index(sig[x]) for x in internal}
        if len(distinct) == n_classes:
            break
        n_classes = len(distinct)
    classes = [[] for _ in range(n_classes)]
    for x in internal:
        classes[color[x]].append(x)
    return classes


@lru_cache(maxsize=1 << 18)
def _canonical_form(backbone, parity, n_ext, n_int, edges):
    """Minimal encoding of a standardized graph and the sign reaching it.

    Returns ``(sign, encoding)``; the sign is 0 when the minimal encoding is
    reached with both signs, i.e. the graph has an odd automorphism.
    """
    V = n_ext + n_int
    adj = [[] for _ in range(V)]
    deg = [0] * V
    for u, v in edges:
        adj[u].append(v)
        if u != v:
            adj[v].append(u)
        deg[u] += 1
        deg[v] += 1
    odd = parity == ODD
    best = None
    signs = set()
    for r in _candidate_rotations(backbone, n_ext, adj, deg):
        rsign = rotation_sign(n_ext, r) if backbone == CIRCLE else 1
        extid = [(p - r) % n_ext for p in range(n_ext)]
        classes = _internal_classes(n_ext, V, adj, deg, extid)
        offsets = []
        start = n_ext
        for cls in classes:
            offsets.append(start)
            start += len(cls)
        for choice in itertools.product(*(itertools.permutations(c) for c in classes)):
            mapping = extid + [0] * n_int
            for off, perm in zip(offsets, choice):
                for i, x in enumerate(perm):
                    mapping[x] = off + i
            new_edges = []
            flips = 0
            for u, v in edges:
                a, b = mapping[u], mapping[v]
                if a > b:
                    a, b = b, a
                    flips += 1
                new_edges.append((a, b))
            if odd:
                s = rsign * perm_sign(mapping[n_ext:]) * (-1 if flips % 2 else 1)
            else:
                s = rsign * perm_sign(new_edges)
            enc = tuple(sorted(new_edges))
            if best is None or enc < best:
                best = enc
                signs = {s}
            elif enc == best:
                signs.add(s)
    sign = signs.pop() if len(signs) == 1 else 0
    return sign, best


def canonical_encoding(g):
    """``(sign, CanonicalGraph)`` even for zero classes (sign 0 then).

    Returns ``None`` when a forbidden feature is present.
    """
    validate(g, allow_forbidden=True)
    s, edges = _standardize(g, SIGNED_EXTERNAL_RENUMBERING)
    if s == 0:
        return None
    s2, enc = _canonical_form(g.backbone, g.parity, g.n_ext, g.n_int, edges)
    return s * s2, CanonicalGraph(g.backbone, g.parity, g.n_ext, g.n_int, enc)


def canonicalize(g, *, check=True):
    """Reduce a graph to ``sign * canonical`` or to :data:`ZERO`.

    Accepts a :class:`RawGraph` or a :class:`CanonicalGraph`.  ``check=False``
    skips validation for inputs produced by trusted internal code.
    """
    if isinstance(g, CanonicalGraph):
        g = g.to_raw()
    if check:
        validate(g, allow_forbidden=True)
    s, edges = _standardize(g, SIGNED_EXTERNAL_RENUMBERING)
    if s == 0:
        return ZERO
    s2, enc = _canonical_form(g.backbone, g.parity, g.n_ext, g.n_int, edges)
    if s2 == 0:
        return ZERO
    return SignedGraph(s * s2, CanonicalGraph(g.backbone, g.parity, g.n_ext, g.n_int, enc))


def clear_caches():
    _canonical_form.cache_clear()


# -- line graphs --------------------------------------------------------------


def _components(V, edges):
    parent = list(range(V))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        parent[find(u)] = find(v)
    return [find(x) for x in range(V)]


def factor_blocks(g):
    """Split a line graph into primitive blocks, left to right.

    Each block is ``(external ids, internal ids)`` in increasing order.
    """
    if g.backbone != LINE:
        raise UnsupportedBackboneError("primitive factors exist only on the line")
    if g.n_ext == 0:
        return []
    root = _components(g.n_vertices, g.edges)
    span = {}
    for p in range(g.n_ext):
        lo, hi = span.get(root[p], (p, p))
        span[root[p]] = (min(lo, p), max(hi, p))
    # reach[p]: furthest external position tied to p by some component.
    reach = list(range(g.n_ext))
    for lo, hi in span.values():
        reach[lo] = max(reach[lo], hi)
    blocks = []
    start = 0
    end = 0
    for p in range(g.n_ext):
        end = max(end, reach[p])
        if p == end:
            exts = list(range(start, p + 1))
            roots = {root[q] for q in exts}
            ints = [x for x in range(g.n_ext, g.n_vertices) if root[x] in roots]
            blocks.append((exts, ints))
            start = p + 1
            end = p + 1
    return blocks


def subgraph(g, vertices):
    """Raw graph induced on ``vertices`` (ids), relabeled in the given order.

    In odd parity the given order becomes the vertex labeling (externals need
    not come first); in even parity the external vertices are relabeled in
    order and edges keep their relative order.
    """
    vertices = list(vertices)
    pos = {x: i + 1 for i, x in enumerate(vertices)}
    exts = [x for x in vertices if x < g.n_ext]
    n_int = len(vertices) - len(exts)
    edges = tuple((pos[u], pos[v]) for u, v in g.edges if u in pos and v in pos)
    if g.parity == ODD:
        ext_order = tuple(pos[x] for x in sorted(exts))
        return RawGraph(g.backbone, g.parity, len(exts), n_int, edges, ext_order=ext_order)
    # even: externals must be labeled 1..n in backbone order
    relabel = {}
    for i, x in enumerate(sorted(exts)):
        relabel[pos[x]] = i + 1
    nxt = len(exts) + 1
    for x in vertices:
        if x >= g.n_ext:
            relabel[pos[x]] = nxt
            nxt += 1
    edges = tuple((relabel[a], relabel[b]) for a, b in edges)
    return RawGraph(g.backbone, g.parity, len(exts), n_int, edges)


def primitive_factors(g):
    """Canonical primitive factors of a line graph, left to right."""
    out = []
    for exts, ints in factor_blocks(g):
        sg = canonicalize(subgraph(g, exts + ints), check=False)
        out.append(sg.graph)
    return out


def is_primitive(g):
    return len(factor_blocks(g)) == 1
