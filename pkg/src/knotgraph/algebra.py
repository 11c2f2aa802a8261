"""Shuffle product on both backbones; coproduct, counit and antipode on the line."""

from __future__ import annotations

import itertools
from fractions import Fraction

from .complex import Chain, as_chain, delta_graph
from .errors import GraphValidationError, UnsupportedBackboneError
from .graph import (
    CIRCLE,
    EVEN,
    LINE,
    ODD,
    CanonicalGraph,
    RawGraph,
    canonicalize,
    factor_blocks,
    perm_sign,
    subgraph,
    unit,
)


class TensorChain:
    """Rational combination of tuples of canonical graphs (fixed arity)."""

    __slots__ = ("_terms", "arity")

    def __init__(self, terms=None, arity=2):
        self.arity = arity
        self._terms = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for key, c in items:
                self.add(key, c)

    def add(self, key, c):
        key = tuple(key)
        if len(key) != self.arity:
            raise ValueError(f"expected {self.arity} tensor factors, got {len(key)}")
        c = Fraction(c)
        if not c:
            return
        new = self._terms.get(key, 0) + c
        if new:
            self._terms[key] = new
        else:
            del self._terms[key]

    def items(self):
        return sorted(self._terms.items(), key=lambda t: tuple(g.key for g in t[0]))

    def __iter__(self):
        return iter(self.items())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def coefficient(self, *key):
        return self._terms.get(tuple(key), Fraction(0))

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self._terms
        if not isinstance(other, TensorChain):
            return NotImplemented
        return self._terms == other._terms

    def __add__(self, other):
        out = TensorChain(self._terms, self.arity)
        for k, c in other._terms.items():
            out.add(k, c)
        return out

    def __sub__(self, other):
        out = TensorChain(self._terms, self.arity)
        for k, c in other._terms.items():
            out.add(k, -c)
        return out

    def __mul__(self, scalar):
        return TensorChain({k: c * scalar for k, c in self._terms.items()}, self.arity)

    __rmul__ = __mul__

    def __repr__(self):
        if not self._terms:
            return "TensorChain(0)"
        return "TensorChain(" + " + ".join(
            f"{c}*" + "(x)".join(repr(g) for g in k) for k, c in self.items()
        ) + ")"


def tensor(*chains):
    """Tensor product of chains (no signs: factors are only juxtaposed)."""
    out = TensorChain(arity=len(chains))
    chains = [as_chain(c) for c in chains]
    for combo in itertools.product(*(c.items() for c in chains)):
        coef = Fraction(1)
        for _, c in combo:
            coef *= c
        out.add(tuple(g for g, _ in combo), coef)
    return out


# -- shuffle product ----------------------------------------------------------


def shuffle_sign_exponent(g1, g2):
    """Exponent of the global product sign for a pair of graphs."""
    if g1.parity == EVEN:
        return g2.n_ext * g1.n_edges
    return 0


def shuffles(n1, n2, backbone):
    """Arrangements of two ordered external vertex sets on a backbone.

    Each arrangement is a tuple of ``(factor, index)`` read along the
    backbone.  On the line both linear orders are kept.  On the circle the
    result runs over every cyclic order compatible with both cyclic orders,
    written starting at the first vertex of the first factor.
    """
    N = n1 + n2
    if n1 == 0 or n2 == 0 or backbone == LINE:
        for pos2 in itertools.combinations(range(N), n2):
            s2 = set(pos2)
            it1 = iter(range(n1))
            it2 = iter(range(n2))
            yield tuple((1, next(it2)) if p in s2 else (0, next(it1)) for p in range(N))
        return
    for pos2 in itertools.combinations(range(1, N), n2):
        s2 = set(pos2)
        for r in range(n2):
            it1 = iter(range(1, n1))
            it2 = iter([(r + t) % n2 for t in range(n2)])
            yield ((0, 0),) + tuple(
                (1, next(it2)) if p in s2 else (0, next(it1)) for p in range(1, N)
            )


def shuffle_raw(g1, g2, arrangement):
    """The raw graph ``g1 •_σ g2`` labeled as the product prescribes."""
    bb, par = g1.backbone, g1.parity
    n1, n2 = g1.n_ext, g2.n_ext
    if par == ODD:
        off = g1.n_vertices

        def lab(f, x):
            return x + 1 if f == 0 else x + 1 + off

        ext_order = tuple(lab(f, x) for f, x in arrangement)
        edges = tuple((u + 1, v + 1) for u, v in g1.edges) + tuple(
            (u + 1 + off, v + 1 + off) for u, v in g2.edges
        )
        return RawGraph(bb, par, n1 + n2, g1.n_int + g2.n_int, edges, ext_order=ext_order)
    N = n1 + n2

    def lab(f, x):
        if f == 0:
            return x + 1 if x < n1 else N + (x - n1) + 1
        return n1 + x + 1 if x < n2 else N + g1.n_int + (x - n2) + 1

    ext_order = tuple(lab(f, x) for f, x in arrangement)
    edges = tuple((lab(0, u), lab(0, v)) for u, v in g1.edges) + tuple(
        (lab(1, u), lab(1, v)) for u, v in g2.edges
    )
    return RawGraph(bb, par, N, g1.n_int + g2.n_int, edges, ext_order=ext_order)


def shuffle_terms(g1, g2):
    """Yield ``(sign, arrangement, signed canonical graph)`` for every shuffle."""
    _check_pair(g1, g2)
    glob = -1 if shuffle_sign_exponent(g1, g2) % 2 else 1
    for arr in shuffles(g1.n_ext, g2.n_ext, g1.backbone):
        sg = canonicalize(shuffle_raw(g1, g2, arr), check=False)
        yield glob, arr, sg


def _check_pair(g1, g2):
    if (g1.backbone, g1.parity) != (g2.backbone, g2.parity):
        raise GraphValidationError(
            "complex_mismatch",
            f"cannot multiply {g1.backbone}/{g1.parity} by {g2.backbone}/{g2.parity}",
        )


_PRODUCT_CACHE = {}


def product_graphs(g1, g2):
    key = (g1, g2)
    hit = _PRODUCT_CACHE.get(key)
    if hit is not None:
        return hit
    acc = {}
    for glob, _, sg in shuffle_terms(g1, g2):
        if not sg.is_zero:
            acc[sg.graph] = acc.get(sg.graph, 0) + glob * sg.sign
    out = Chain(acc)
    _PRODUCT_CACHE[key] = out
    return out


def shuffle_product(x, y):
    """Bilinear shuffle product of graphs or chains."""
    x, y = as_chain(x), as_chain(y)
    acc = {}
    for g1, c1 in x:
        for g2, c2 in y:
            for g, c in product_graphs(g1, g2):
                acc[g] = acc.get(g, 0) + c1 * c2 * c
    return Chain(acc)


def power(x, n):
    x = as_chain(x)
    if n < 0:
        raise ValueError("negative power")
    if n == 0:
        g = x.graphs()[0]
        return Chain.of(unit(g.backbone, g.parity))
    out = x
    for _ in range(n - 1):
        out = shuffle_product(out, x)
    return out


# -- coproduct ----------------------------------------------------------------


def _require_line(g):
    if g.backbone != LINE:
        raise UnsupportedBackboneError("the coproduct is defined on line graphs only")


def _cuts(g):
    """``(sign, left raw, right raw)`` for every cut of a line graph."""
    blocks = factor_blocks(g)
    if g.parity == ODD:
        order = [x for exts, ints in blocks for x in exts + ints]
        sign = perm_sign(order)
    else:
        # edges grouped by block, keeping their relative order
        block_of = {}
        for b, (exts, ints) in enumerate(blocks):
            for x in exts + ints:
                block_of[x] = b
        ranks = sorted(range(g.n_edges), key=lambda a: (block_of[g.edges[a][0]], a))
        sign = perm_sign(ranks)
    out = []
    for s in range(len(blocks) + 1):
        left = [x for exts, ints in blocks[:s] for x in exts + ints]
        right = [x for exts, ints in blocks[s:] for x in exts + ints]
        out.append((sign, subgraph(g, left), subgraph(g, right)))
    return out


_COPRODUCT_CACHE = {}


def coproduct_graph(g):
    _require_line(g)
    hit = _COPRODUCT_CACHE.get(g)
    if hit is not None:
        return hit
    out = TensorChain()
    if g.is_unit:
        out.add((g, g), 1)
    else:
        for sign, left, right in _cuts(g):
            a = canonicalize(left, check=False)
            b = canonicalize(right, check=False)
            if a.is_zero or b.is_zero:
                continue
            lam = shuffle_sign_exponent(a.graph, b.graph)
            out.add((a.graph, b.graph), sign * a.sign * b.sign * (-1 if lam % 2 else 1))
    _COPRODUCT_CACHE[g] = out
    return out


def coproduct(x):
    """Deconcatenation coproduct of a line graph or chain."""
    x = as_chain(x)
    out = TensorChain()
    for g, c in x:
        for key, v in coproduct_graph(g):
            out.add(key, c * v)
    return out


def counit(x):
    """Coefficient of the unit graph."""
    x = as_chain(x)
    for g, c in x:
        if g.is_unit:
            return c
    return Fraction(0)


_ANTIPODE_CACHE = {}


def antipode_graph(g):
    _require_line(g)
    hit = _ANTIPODE_CACHE.get(g)
    if hit is not None:
        return hit
    if g.is_unit:
        out = Chain.of(g)
    else:
        out = -Chain.of(g)
        for (a, b), c in coproduct_graph(g):
            if a.is_unit or b.is_unit:
                continue
            out = out - c * shuffle_product(antipode_graph(a), b)
    _ANTIPODE_CACHE[g] = out
    return out


def antipode(x):
    x = as_chain(x)
    acc = Chain()
    for g, c in x:
        _require_line(g)
        acc = acc + c * antipode_graph(g)
    return acc


# -- tensor operations used by the axiom checks -------------------------------


def tensor_map(t, fn, slot):
    """Apply a linear map (graph -> Chain or TensorChain) to one tensor slot."""
    sample = None
    out = None
    for key, c in t:
        img = fn(key[slot])
        if isinstance(img, TensorChain):
            parts = [(k, v) for k, v in img]
            width = img.arity
        else:
            parts = [((g,), v) for g, v in img]
            width = 1
        if out is None:
            out = TensorChain(arity=t.arity - 1 + width)
        for k, v in parts:
            out.add(key[:slot] + k + key[slot + 1:], c * v)
        sample = width
    if out is None:
        return TensorChain(arity=t.arity)
    return out


def tensor_product_algebra(s, t):
    """``(a ⊗ b)(c ⊗ d) = (-1)^{|b||c|} ac ⊗ bd`` for 2-tensors."""
    out = TensorChain()
    for (a, b), c1 in s:
        for (c, d), c2 in t:
            sign = -1 if (b.label_degree * c.label_degree) % 2 else 1
            left = product_graphs(a, c)
            right = product_graphs(b, d)
            for g, u in left:
                for h, v in right:
                    out.add((g, h), sign * c1 * c2 * u * v)
    return out


def multiply_tensor(t):
    """Collapse a 2-tensor with the shuffle product."""
    acc = {}
    for (a, b), c in t:
        for g, v in product_graphs(a, b):
            acc[g] = acc.get(g, 0) + c * v
    return Chain(acc)


def delta_tensor(t):
    """``δ(a ⊗ b) = δa ⊗ b + (-1)^{|a|} a ⊗ δb``."""
    out = TensorChain()
    for (a, b), c in t:
        for g, v in delta_graph(a):
            out.add((g, b), c * v)
        sign = -1 if a.label_degree % 2 else 1
        for h, v in delta_graph(b):
            out.add((a, h), sign * c * v)
    return out


def clear_caches():
    _PRODUCT_CACHE.clear()
    _COPRODUCT_CACHE.clear()
    _ANTIPODE_CACHE.clear()
