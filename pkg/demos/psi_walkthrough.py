"""Building the degree-(2, 0) cocycle on the even circle and watching its powers.

Run with ``python3 demos/psi_walkthrough.py``.  Everything is exact: coefficients
are Fractions and closedness means the coboundary is literally the zero chain.
"""
from fractions import Fraction

from knotgraph import build_gamma_l, build_psi, coefficient_of, delta, psi_power
from knotgraph.cocycles import gamma_contributions, phi, gamma_chain, placement_classes
from knotgraph.io import serialize

# The two ingredients: a pair of crossing chords and a tripod.
# phi is stored on its canonical representative, which costs a sign.
print("crossing chords:", phi())
print("tripod:")
print(serialize(build_gamma_l(1)))

# Neither is closed alone.  Their coboundaries land on the same graph with
# coefficients in the ratio 4 : 3, which fixes the combination.
print("delta(phi)     =", delta(phi()))
print("delta(tripod)  =", delta(gamma_chain(1)))

psi = build_psi()
print("psi            =", psi)
print("delta(psi) == 0:", delta(psi) == 0)

# Powers under the shuffle product stay closed, and the chain of l disjoint
# tripods keeps a nonzero coefficient.
for l in (1, 2, 3):
    p = psi_power(l)
    print(f"psi^{l}: {len(p)} graphs, closed={delta(p) == 0}, "
          f"coefficient of gamma_{l} = {coefficient_of(p, build_gamma_l(l))}")

# Where the gamma_2 coefficient comes from: cyclic shuffles of two tripods
# that keep the blocks apart.  Rotating a tripod is a symmetry, so each of the
# three placements is hit three times with the same sign.
contrib = gamma_contributions(2)
print("shuffles landing on gamma_2:", len(contrib))
print("distinct placements:", len(placement_classes(a for a, _ in contrib)))
print("sum of signs / 9 =", Fraction(sum(s for _, s in contrib), 9))
