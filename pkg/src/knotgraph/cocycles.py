"""The degree-zero even cocycle Ψ, its shuffle powers and the tripod graphs Γ_l.

Ψ lives in the circle complex with even decoration, order 2 and degree 0::

    Ψ = 1/4 Φ - 1/3 Γ_1

with Φ the two crossing chords on four external vertices and Γ_1 the tripod
(one internal vertex joined to three external ones).  Γ_l places ``l`` tripods
side by side on ``3l`` consecutive external vertices.  Because nothing has
negative degree, a closed chain of degree 0 is a nonzero class as soon as it
is nonzero, so a nonzero Γ_l coefficient in Ψ^l proves that Ψ^l is a
nontrivial class.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction

from .algebra import power, shuffle_product, shuffle_terms
from .cohomology import basis
from .complex import Chain, delta
from .errors import NontrivialityError
from .graph import CIRCLE, EVEN, CanonicalGraph, RawGraph, SignedGraph, canonicalize, unit

# Chord labels: the chord leaving external vertex 2 carries label 1.  With
# this decoration the arc contractions of Φ and the edge contractions of
# Γ_1 cancel in 1/4 Φ - 1/3 Γ_1.
PHI_RAW = RawGraph(CIRCLE, EVEN, 4, 0, ((2, 4), (1, 3)))


def tripods_raw(l):
    """Raw Γ_l: block ``j`` joins internal vertex ``3l + j`` to ``3j-2, 3j-1, 3j``."""
    if l < 1:
        raise ValueError("Γ_l needs l >= 1")
    edges = []
    for j in range(1, l + 1):
        hub = 3 * l + j
        edges += [(3 * j - 2, hub), (3 * j - 1, hub), (3 * j, hub)]
    return RawGraph(CIRCLE, EVEN, 3 * l, l, tuple(edges))


def _signed(raw):
    sg = canonicalize(raw)
    if sg.is_zero:
        raise NontrivialityError(f"{raw} vanishes in the even circle complex")
    return sg


def phi():
    return Chain.of(_signed(PHI_RAW))


def gamma_chain(l):
    """Γ_l with its block decoration, as a one-term chain (sign included)."""
    return Chain.of(_signed(tripods_raw(l)))


def build_gamma_l(l):
    """The canonical graph underlying Γ_l."""
    return _signed(tripods_raw(l)).graph


def build_psi():
    return Fraction(1, 4) * phi() - Fraction(1, 3) * gamma_chain(1)


def psi_power(l):
    if l < 1:
        raise ValueError("power must be at least 1")
    return power(build_psi(), l)


def coefficient_of(c, g):
    """Coefficient of ``g`` in ``c``.

    ``g`` may be canonical, a raw graph, or a signed graph; for the latter
    two the answer is the coefficient of that decorated representative, i.e.
    the stored coefficient multiplied by its canonicalization sign.
    """
    if isinstance(g, RawGraph):
        g = canonicalize(g)
    if isinstance(g, SignedGraph):
        if g.is_zero:
            return Fraction(0)
        return g.sign * c.coefficient(g.graph)
    return c.coefficient(g)


def gamma_coefficient(c, l):
    """Coefficient of the decorated Γ_l in ``c``."""
    return coefficient_of(c, canonicalize(tripods_raw(l)))


def gamma_contributions(l):
    """Shuffles of Γ_{l-1} with Γ_1 that land on Γ_l.

    Returns a list of ``(arrangement, sign)`` with the sign of each term
    measured against the decorated Γ_l.
    """
    target = canonicalize(tripods_raw(l))
    left = canonicalize(tripods_raw(l - 1))
    right = canonicalize(tripods_raw(1))
    out = []
    for glob, arr, sg in shuffle_terms(left.graph, right.graph):
        if not sg.is_zero and sg.graph == target.graph:
            out.append((arr, glob * sg.sign * left.sign * right.sign * target.sign))
    return out


def placement_classes(arrangements):
    """Group arrangements by the set of positions of the second factor."""
    return Counter(
        tuple(p for p, (f, _) in enumerate(arr) if f == 1) for arr in arrangements
    )


def term_provenance(l):
    """Γ_l coefficient of each monomial Φ^a Γ_1^b (a + b = l) before weighting."""
    phis = {0: None}
    out = {}
    target = canonicalize(tripods_raw(l))
    ph = phi()
    ga = gamma_chain(1)
    for b in range(l + 1):
        a = l - b
        mono = None
        for factor in [ph] * a + [ga] * b:
            mono = factor if mono is None else shuffle_product(mono, factor)
        out[(a, b)] = coefficient_of(mono, target)
    return out


def _no_negative_degree(l):
    return len(basis(CIRCLE, EVEN, 2 * l, -1)) == 0


def prop4_report(l_max):
    """Check that Ψ^l is closed with a nonzero Γ_l coefficient for ``l <= l_max``.

    Raises :class:`NontrivialityError` on the first failed check.
    """
    if l_max < 1:
        raise ValueError("l_max must be at least 1")
    psi = build_psi()
    if delta(psi):
        raise NontrivialityError(f"Ψ is not closed: δΨ = {delta(psi)!r}")
    rows = []
    current = psi
    for l in range(1, l_max + 1):
        if l > 1:
            current = shuffle_product(current, psi)
        if {(g.grading.k, g.grading.m) for g, _ in current} != {(2 * l, 0)}:
            raise NontrivialityError(f"Ψ^{l} is not homogeneous of grading ({2 * l}, 0)")
        closed = not delta(current)
        if not closed:
            raise NontrivialityError(f"Ψ^{l} is not closed")
        coeff = gamma_coefficient(current, l)
        if coeff == 0:
            raise NontrivialityError(f"Γ_{l} has coefficient 0 in Ψ^{l}")
        if not _no_negative_degree(l):
            raise NontrivialityError("graphs of negative degree exist")
        row = {
            "l": l,
            "closed": closed,
            "gamma_coefficient": str(coeff),
            "nonexact": True,
            "terms": len(current),
        }
        if l > 1:
            contrib = gamma_contributions(l)
            classes = placement_classes(a for a, _ in contrib)
            row["contributing_shuffles"] = len(contrib)
            row["contributing_placements"] = len(classes)
            row["contribution_signs"] = sorted(Counter(s for _, s in contrib).items())
            row["provenance"] = {
                f"phi^{a} gamma^{b}": str(v) for (a, b), v in term_provenance(l).items()
            }
        rows.append(row)
    return {"l_max": l_max, "rows": rows}
