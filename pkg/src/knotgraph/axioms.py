"""Exhaustive checks of the algebraic laws on enumerated bases.

Every check returns an :class:`AxiomResult`; ``failures`` counts violations
and ``witness`` holds a serialized graph (or pair) for the first one.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from . import algebra
from .cohomology import basis, cohomology_dim, delta_matrix, raw_graphs, vertex_splits
from .complex import Chain, delta_any
from .graph import (
    BACKBONES,
    CIRCLE,
    LINE,
    ODD,
    PARITIES,
    RawGraph,
    canonicalize,
    factor_blocks,
    perm_sign,
    rotation_sign,
)
from .linalg import rank

COMPLEXES = [(bb, par) for bb in BACKBONES for par in PARITIES]


@dataclass
class AxiomResult:
    name: str
    checked: int = 0
    failures: int = 0
    witness: str | None = None
    detail: dict = field(default_factory=dict)

    @property
    def passed(self):
        return self.failures == 0 and self.checked > 0

    def record(self, ok, witness=None):
        self.checked += 1
        if not ok:
            self.failures += 1
            if self.witness is None and witness is not None:
                self.witness = str(witness)

    def as_dict(self):
        out = {"axiom": self.name, "checked": self.checked, "failures": self.failures, "passed": self.passed}
        if self.witness:
            out["witness"] = self.witness
        if self.detail:
            out["detail"] = self.detail
        return out


def generators(backbone, parity, kmax, mmax=None):
    """All basis graphs with ``k <= kmax`` (and ``m <= mmax`` if given)."""
    out = []
    for k in range(kmax + 1):
        top = 2 * k if mmax is None else min(mmax, 2 * k)
        for m in range(top + 1):
            out.extend(basis(backbone, parity, k, m))
    return out


def _sign(x):
    return -1 if x % 2 else 1


# -- differential and product -------------------------------------------------


def check_delta_squared(kmax=3, mmax=2, complexes=COMPLEXES):
    res = AxiomResult("delta_squared")
    for bb, par in complexes:
        for g in generators(bb, par, kmax, mmax):
            res.record(not delta_any(delta_any(g)), g)
    return res


def _pairs(bb, par, kmax):
    gens = [g for g in generators(bb, par, kmax) if not g.is_unit]
    for a in gens:
        for b in gens:
            if a.grading.k + b.grading.k <= kmax:
                yield a, b


def check_leibniz(kmax=3, complexes=COMPLEXES):
    res = AxiomResult("leibniz")
    sp = algebra.shuffle_product
    for bb, par in complexes:
        for a, b in _pairs(bb, par, kmax):
            lhs = delta_any(sp(a, b))
            rhs = sp(delta_any(a), b) + _sign(a.label_degree) * sp(a, delta_any(b))
            res.record(lhs == rhs, (a, b))
    return res


def check_commutativity(kmax=3, complexes=COMPLEXES):
    res = AxiomResult("graded_commutativity")
    sp = algebra.shuffle_product
    for bb, par in complexes:
        for a, b in _pairs(bb, par, kmax):
            res.record(sp(a, b) == _sign(a.label_degree * b.label_degree) * sp(b, a), (a, b))
    return res


def check_associativity(kmax=3, complexes=COMPLEXES):
    res = AxiomResult("associativity")
    sp = algebra.shuffle_product
    for bb, par in complexes:
        gens = [g for g in generators(bb, par, kmax) if not g.is_unit]
        for a, b, c in itertools.product(gens, repeat=3):
            if a.grading.k + b.grading.k + c.grading.k <= kmax:
                res.record(sp(sp(a, b), c) == sp(a, sp(b, c)), (a, b, c))
    return res


def check_unit(kmax=3, complexes=COMPLEXES):
    """``1 • g = g = g • 1`` and the unit is the only graph of label degree 0."""
    res = AxiomResult("unit")
    for bb, par in complexes:
        one = basis(bb, par, 0, 0)[0]
        for g in generators(bb, par, kmax):
            ok = algebra.shuffle_product(one, g) == Chain.of(g) == algebra.shuffle_product(g, one)
            ok = ok and (g.label_degree > 0 or g.is_unit)
            res.record(ok, g)
    return res


# -- Hopf structure on the line -----------------------------------------------


def line_generators(parity, kmax, max_factors=3):
    return [g for g in generators(LINE, parity, kmax) if len(factor_blocks(g)) <= max_factors]


def check_hopf(kmax=3, max_factors=3, parities=PARITIES):
    """Coassociativity, counit, Δδ = δΔ, both antipode identities, compatibility."""
    names = ["coassociativity", "counit", "coproduct_differential", "antipode_left", "antipode_right", "compatibility"]
    out = {n: AxiomResult(n) for n in names}
    for par in parities:
        gens = line_generators(par, kmax, max_factors)
        one = basis(LINE, par, 0, 0)[0]
        for g in gens:
            D = algebra.coproduct(g)
            out["coassociativity"].record(
                algebra.tensor_map(D, algebra.coproduct_graph, 0)
                == algebra.tensor_map(D, algebra.coproduct_graph, 1),
                g,
            )
            left = Chain({b: c for (a, b), c in D if a.is_unit})
            right = Chain({a: c for (a, b), c in D if b.is_unit})
            out["counit"].record(left == Chain.of(g) == right, g)
            out["coproduct_differential"].record(
                algebra.coproduct(delta_any(g)) == algebra.delta_tensor(D), g
            )
            eps = Chain.of(one, algebra.counit(g))
            out["antipode_left"].record(
                algebra.multiply_tensor(algebra.tensor_map(D, algebra.antipode_graph, 0)) == eps, g
            )
            out["antipode_right"].record(
                algebra.multiply_tensor(algebra.tensor_map(D, algebra.antipode_graph, 1)) == eps, g
            )
        small = [g for g in gens if not g.is_unit and len(factor_blocks(g)) <= 2]
        for a in small:
            for b in small:
                if a.grading.k + b.grading.k > kmax:
                    continue
                lhs = algebra.coproduct(algebra.shuffle_product(a, b))
                rhs = algebra.tensor_product_algebra(algebra.coproduct(a), algebra.coproduct(b))
                out["compatibility"].record(lhs == rhs, (a, b))
    return [out[n] for n in names]


# -- canonical forms ----------------------------------------------------------


def random_relabeling(g, rng):
    """A random allowed relabeling of ``g`` and the sign it should carry.

    Returns ``(raw, sign)`` with ``canonicalize(raw) == (sign, g)`` expected.
    """
    n, V = g.n_ext, g.n_vertices
    r = rng.randrange(n) if (g.backbone == CIRCLE and n) else 0
    if g.parity == ODD:
        labels = list(range(1, V + 1))
        rng.shuffle(labels)
        lab = dict(enumerate(labels))
        ext_order = tuple(lab[(p + r) % n] for p in range(n))
        edges = []
        sign = perm_sign(labels)
        for u, v in g.edges:
            if rng.random() < 0.5:
                edges.append((lab[v], lab[u]))
                sign = -sign
            else:
                edges.append((lab[u], lab[v]))
        rng.shuffle(edges)
        return RawGraph(g.backbone, g.parity, n, g.n_int, tuple(edges), ext_order=ext_order), sign
    # even: rotate the external labels, rename internals, permute edge labels
    ext_lab = {x: (x - r) % n + 1 for x in range(n)}
    sign = rotation_sign(n, r) if n else 1
    ints = list(range(n + 1, V + 1))
    rng.shuffle(ints)
    lab = dict(ext_lab)
    lab.update({x: ints[x - n] for x in range(n, V)})
    order = list(range(g.n_edges))
    rng.shuffle(order)
    sign *= perm_sign(order)
    edges = []
    for a in order:
        u, v = g.edges[a]
        e = (lab[u], lab[v])
        edges.append(e if rng.random() < 0.5 else e[::-1])
    return RawGraph(g.backbone, g.parity, n, g.n_int, tuple(edges)), sign


def check_canonical_coherence(kmax=3, samples=100, seed=0, complexes=COMPLEXES):
    res = AxiomResult("canonical_coherence")
    rng = random.Random(seed)
    for bb, par in complexes:
        for g in generators(bb, par, kmax):
            idem = canonicalize(g.to_raw())
            res.record(idem.sign == 1 and idem.graph == g, g)
            for _ in range(samples):
                raw, sign = random_relabeling(g, rng)
                sg = canonicalize(raw)
                res.record(sg.sign == sign and sg.graph == g, raw)
    return res


def _symmetry_signs(backbone, parity, n_ext, n_int, edges):
    """Signs of all automorphisms among the allowed relabelings (brute force).

    ``edges`` use 0-based standard ids; odd edges are oriented ``u -> v``.
    """
    V = n_ext + n_int
    rots = range(n_ext) if (backbone == CIRCLE and n_ext) else [0]
    target = sorted(tuple(sorted(e)) for e in edges)
    signs = set()
    for r in rots:
        for p in itertools.permutations(range(n_ext, V)):
            phi = [(x + r) % n_ext for x in range(n_ext)] + list(p)
            image = [(phi[u], phi[v]) for u, v in edges]
            if sorted(tuple(sorted(e)) for e in image) != target:
                continue
            if parity == ODD:
                s = perm_sign(phi)
                for u, v in image:
                    if u > v:
                        s = -s
                    elif u == v:
                        # the half-edge swap automorphism of an external loop
                        signs.add(-1)
                signs.add(s)
            else:
                s = rotation_sign(n_ext, r) if n_ext else 1
                pos = {}
                for a, e in enumerate(edges):
                    pos.setdefault(tuple(sorted(e)), []).append(a)
                perm = [pos[tuple(sorted(e))].pop(0) for e in image]
                signs.add(s * perm_sign(perm))
    return signs


def check_zero_detection(max_vertices=8, kmax=3, complexes=COMPLEXES):
    """Zero graphs found by canonicalization match a brute-force symmetry search."""
    res = AxiomResult("zero_detection")
    zeros = 0
    for bb, par in complexes:
        for k in range(1, kmax + 1):
            for m in range(2 * k + 1):
                for v_e, v_i, e in vertex_splits(k, m):
                    if v_e + v_i > max_vertices:
                        continue
                    for raw in raw_graphs(bb, par, v_e, v_i, e):
                        edges = [(u - 1, v - 1) for u, v in raw.edges]
                        brute = -1 in _symmetry_signs(bb, par, v_e, v_i, edges)
                        fast = canonicalize(raw, check=False).is_zero
                        zeros += brute
                        res.record(brute == fast, raw)
    res.detail["zero_graphs"] = zeros
    return res


# -- linear algebra -----------------------------------------------------------


def check_rank_consistency(kmax=3, mmax=2, seeds=10, complexes=COMPLEXES):
    """Both pivot strategies agree; dimensions ignore the enumeration order."""
    res = AxiomResult("rank_consistency")
    for bb, par in complexes:
        for k in range(kmax + 1):
            for m in range(mmax + 1):
                M = delta_matrix(basis(bb, par, k, m), basis(bb, par, k, m + 1))
                res.record(rank(M, "sparse") == rank(M, "natural"), (bb, par, k, m))
                ref = cohomology_dim(bb, par, k, m)
                for s in range(seeds):
                    res.record(cohomology_dim(bb, par, k, m, order_seed=s) == ref, (bb, par, k, m, s))
    return res


def run_all(kmax=3, seed=0, samples=100):
    """The full battery; order of the list is stable."""
    out = [
        check_delta_squared(kmax),
        check_leibniz(kmax),
        check_commutativity(kmax),
        check_associativity(kmax),
        check_unit(kmax),
    ]
    out += check_hopf(kmax)
    out += [
        check_canonical_coherence(kmax, samples, seed),
        check_zero_detection(kmax=kmax),
        check_rank_consistency(kmax),
    ]
    return out
