"""Degree-correlation measures: Newman r, rank-based r, knn curve, rich club,
and the per-node mean degree difference.

Results that cannot be computed (no edges, or every edge endpoint has the
same degree) are reported with ``value=None`` rather than NaN or 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .graph import Network, edge_degree_pairs
from .npstats import rank_with_ties

NEWMAN = "newman"
SPEARMAN = "spearman"

UNDEFINED_REASON = "zero degree variance"


@dataclass(frozen=True)
class AssortativityResult:
    value: float | None
    n_edges: int
    method: str

    @property
    def defined(self) -> bool:
        return self.value is not None

    @property
    def reason(self) -> str | None:
        if self.defined:
            return None
        return "no edges" if self.n_edges == 0 else UNDEFINED_REASON


@dataclass(frozen=True)
class KnnCurve:
    per_node: dict
    per_degree: dict
    slope: float | None

    @property
    def trend(self) -> str:
        if self.slope is None or self.slope == 0:
            return "neutral"
        return "assortative" if self.slope > 0 else "disassortative"


@dataclass(frozen=True)
class RichClubCurve:
    per_k: dict = field(default_factory=dict)


def integer_correlation(x, y) -> float | None:
    """Pearson correlation of two integer sequences, or None if either is constant.

    Sums and cross-products are accumulated in Python integers so the only
    rounding is the final division; affine shifts of the inputs therefore give
    bit-identical results.
    """
    x = [int(v) for v in x]
    y = [int(v) for v in y]
    n = len(x)
    if n == 0:
        return None
    sx, sy = sum(x), sum(y)
    sxx = sum(v * v for v in x)
    syy = sum(v * v for v in y)
    sxy = sum(a * b for a, b in zip(x, y))
    vx = n * sxx - sx * sx
    vy = n * syy - sy * sy
    if vx == 0 or vy == 0:
        return None
    cov = n * sxy - sx * sy
    if vx == vy:
        return cov / vx
    return cov / math.sqrt(vx * vy)


def _symmetric_correlation(k_src: np.ndarray, k_dst: np.ndarray) -> float | None:
    # Pearson over the doubled edge list, given one orientation per edge.
    # Both marginals are the pooled multiset, so one variance suffices.
    m = len(k_src)
    if m == 0:
        return None
    a = np.asarray(k_src, dtype=np.int64)
    b = np.asarray(k_dst, dtype=np.int64)
    n = 2 * m
    # int64 sums cannot overflow for any graph that fits in memory; the
    # products below are Python ints
    s1 = int(a.sum()) + int(b.sum())
    s2 = int(np.dot(a, a)) + int(np.dot(b, b))
    sxy = 2 * int(np.dot(a, b))
    var = n * s2 - s1 * s1
    if var == 0:
        return None
    return (n * sxy - s1 * s1) / var


def newman_from_adjacency(adj: np.ndarray) -> float | None:
    """Newman r for a boolean adjacency matrix (fast path for null models)."""
    k = adj.sum(axis=1)
    iu, ju = np.nonzero(np.triu(adj, 1))
    return _symmetric_correlation(k[iu], k[ju])


def spearman_from_adjacency(adj: np.ndarray) -> float | None:
    k = adj.sum(axis=1)
    iu, ju = np.nonzero(np.triu(adj, 1))
    if len(iu) == 0:
        return None
    pooled = np.concatenate([k[iu], k[ju]])
    doubled = np.rint(2 * np.asarray(rank_with_ties(pooled))).astype(np.int64)
    m = len(iu)
    return _symmetric_correlation(doubled[:m], doubled[m:])


def newman_assortativity(net: Network) -> AssortativityResult:
    """Pearson correlation between the degrees at either end of every edge."""
    pairs = edge_degree_pairs(net)
    value = _symmetric_correlation(pairs[0::2, 0], pairs[0::2, 1])
    return AssortativityResult(value, net.number_of_edges, NEWMAN)


def spearman_assortativity(net: Network) -> AssortativityResult:
    """Rank-based variant: endpoint degrees are replaced by their average
    ranks among the 2M pooled endpoint degrees before correlating.
    """
    pairs = edge_degree_pairs(net)
    if len(pairs) == 0:
        return AssortativityResult(None, 0, SPEARMAN)
    ranks = rank_with_ties(pairs[:, 0])
    rank_of = dict(zip(pairs[:, 0].tolist(), ranks))
    # half-integer ranks -> integers, keeps the correlation exact
    src = np.array([round(2 * rank_of[d]) for d in pairs[0::2, 0].tolist()], dtype=np.int64)
    dst = np.array([round(2 * rank_of[d]) for d in pairs[0::2, 1].tolist()], dtype=np.int64)
    return AssortativityResult(_symmetric_correlation(src, dst), net.number_of_edges, SPEARMAN)


def knn_curve(net: Network) -> KnnCurve:
    deg = net.degrees()
    per_node = {}
    for v in net.nodes:
        if deg[v] == 0:
            continue
        per_node[v] = sum(deg[u] for u in net.neighbors(v)) / deg[v]

    classes = {}
    for v, knn in per_node.items():
        classes.setdefault(deg[v], []).append(knn)
    per_degree = {k: float(np.mean(classes[k])) for k in sorted(classes)}

    slope = None
    if len(per_degree) >= 2:
        ks = np.array(list(per_degree), dtype=float)
        ys = np.array(list(per_degree.values()))
        dk = ks - ks.mean()
        slope = float((dk * (ys - ys.mean())).sum() / (dk * dk).sum())
    return KnnCurve(per_node, per_degree, slope)


def rich_club(net: Network) -> RichClubCurve:
    """Density of the subgraph induced by nodes with degree > k, for each k
    from 0 to max degree - 1. Not normalised against a random baseline.
    """
    deg = net.degrees()
    kmax = max(deg.values(), default=0)
    per_k = {}
    for k in range(kmax):
        rich = {v for v, d in deg.items() if d > k}
        n = len(rich)
        if n < 2:
            per_k[k] = None
            continue
        inside = sum(1 for u, v in net.edges if u in rich and v in rich)
        per_k[k] = 2 * inside / (n * (n - 1))
    return RichClubCurve(per_k)


def local_degree_difference(net: Network, v) -> float | None:
    """Mean absolute degree difference between ``v`` and its neighbours.

    None for an isolated node.
    """
    dv = net.degree(v)
    if dv == 0:
        return None
    return sum(abs(dv - net.degree(u)) for u in net.neighbors(v)) / dv


ASSORTATIVITY = {NEWMAN: newman_assortativity, SPEARMAN: spearman_assortativity}
ADJACENCY_STATISTICS = {NEWMAN: newman_from_adjacency, SPEARMAN: spearman_from_adjacency}
