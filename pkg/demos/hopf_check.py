"""Line graphs form a Hopf algebra: a short tour with a tiny example.

The chord graph theta is primitive; its square under the shuffle product is
not, and the coproduct cuts it along its primitive blocks.
"""
from knotgraph import antipode, coproduct, counit, shuffle_product, unit
from knotgraph.algebra import multiply_tensor, tensor_map, antipode_graph
from knotgraph.axioms import check_hopf
from knotgraph.graph import RawGraph, canonicalize

theta = canonicalize(RawGraph("line", "odd", 2, 0, ((1, 2),))).graph
one = unit("line", "odd")

sq = shuffle_product(theta, theta)
print("theta . theta =", sq)
print("coproduct(theta) =", coproduct(theta))
print("coproduct(theta . theta) =", coproduct(sq))
print("counit(1) =", counit(one), " counit(theta) =", counit(theta))
print("S(theta) =", antipode(theta))

# m (S x id) Delta kills everything of positive degree.
print("m(S x id)Delta(theta.theta) =", multiply_tensor(tensor_map(coproduct(sq), antipode_graph, 0)))

# The full battery on generators with up to two primitive factors.
for res in check_hopf(kmax=2, max_factors=2):
    print(f"{res.name:<24} {res.checked:>5} checks, {res.failures} failures")
