"""
Degree correlations of a small network
======================================

"""

from gambitnet import Network
from gambitnet.measures import (
    knn_curve,
    local_degree_difference,
    newman_assortativity,
    rich_club,
    spearman_assortativity,
)

# a triangle B-C-D with a pendant A
net = Network("ABCD", [("A", "B"), ("B", "C"), ("C", "D"), ("D", "B")], kind="binary")

r = newman_assortativity(net)
print("newman r  :", r.value)
print("spearman r:", spearman_assortativity(net).value)

# a regular graph has no degree variance, so r is undefined rather than 0
ring = Network("ABC", [("A", "B"), ("B", "C"), ("C", "A")], kind="binary")
res = newman_assortativity(ring)
print("triangle  :", res.value, "-", res.reason)

curve = knn_curve(net)
print("knn per degree:", curve.per_degree, "slope", round(curve.slope, 3), curve.trend)
print("rich club:", rich_club(net).per_k)
print("local difference at B:", local_degree_difference(net, "B"))
