"""Undirected weighted/binary networks, degree queries, filtering and dichotomization."""

from __future__ import annotations

from types import MappingProxyType
from typing import Hashable, Iterable, Mapping

import numpy as np

BINARY = "binary"
WEIGHTED = "weighted"


def _key(u, v):
    return (u, v) if u <= v else (v, u)


class Network:
    """Immutable undirected network.

    Node identifiers are opaque strings (anything orderable works) and are kept
    in sorted order so every derived array has a deterministic layout. Edges
    map an unordered pair to a positive weight; an absent pair is no edge.

    Parameters
    ----------
    nodes : iterable
        Node identifiers. Endpoints of ``edges`` are added automatically.
    edges : mapping or iterable of (u, v, weight)
        Undirected edges. Each unordered pair may appear only once.
    kind : {"binary", "weighted"}
        A binary network must carry weight 1 on every edge.
    """

    __slots__ = ("_nodes", "_index", "_edges", "_adj", "kind")

    def __init__(self, nodes: Iterable[Hashable] = (), edges=(), kind: str = WEIGHTED):
        if kind not in (BINARY, WEIGHTED):
            raise ValueError(f"unknown network kind {kind!r}")
        if isinstance(edges, Mapping):
            triples = [(u, v, w) for (u, v), w in edges.items()]
        else:
            triples = [tuple(e) if len(e) == 3 else (e[0], e[1], 1.0) for e in edges]

        store = {}
        node_set = set(nodes)
        for u, v, w in triples:
            if u == v:
                raise ValueError(f"self-loop on node {u!r}")
            w = float(w)
            if not w > 0:
                raise ValueError(f"edge ({u!r}, {v!r}) has non-positive weight {w}")
            if kind == BINARY and w != 1.0:
                raise ValueError(f"binary network edge ({u!r}, {v!r}) has weight {w}")
            k = _key(u, v)
            if k in store:
                raise ValueError(f"duplicate edge ({u!r}, {v!r})")
            store[k] = w
            node_set.update(k)

        self._nodes = tuple(sorted(node_set))
        self._index = {n: i for i, n in enumerate(self._nodes)}
        self._edges = MappingProxyType(dict(sorted(store.items())))
        adj = {n: {} for n in self._nodes}
        for (u, v), w in self._edges.items():
            adj[u][v] = w
            adj[v][u] = w
        self._adj = adj
        self.kind = kind

    @classmethod
    def from_adjacency(cls, nodes, weights: np.ndarray, kind: str = WEIGHTED) -> "Network":
        """Build from a symmetric weight matrix; zero entries are non-edges."""
        nodes = list(nodes)
        w = np.asarray(weights, dtype=float)
        if w.shape != (len(nodes), len(nodes)):
            raise ValueError("weight matrix shape does not match node count")
        iu, ju = np.nonzero(np.triu(w, 1))
        return cls(nodes, [(nodes[i], nodes[j], w[i, j]) for i, j in zip(iu, ju)], kind)

    @property
    def nodes(self) -> tuple:
        return self._nodes

    @property
    def edges(self) -> Mapping:
        """Read-only map ``(u, v) -> weight`` with ``u < v``."""
        return self._edges

    def __len__(self):
        return len(self._nodes)

    def __contains__(self, v):
        return v in self._index

    def __eq__(self, other):
        if not isinstance(other, Network):
            return NotImplemented
        return (
            self.kind == other.kind
            and self._nodes == other._nodes
            and dict(self._edges) == dict(other._edges)
        )

    def __hash__(self):
        return hash((self.kind, self._nodes, tuple(self._edges.items())))

    def __repr__(self):
        return f"Network(kind={self.kind!r}, nodes={len(self._nodes)}, edges={len(self._edges)})"

    @property
    def number_of_edges(self) -> int:
        return len(self._edges)

    def _check(self, v):
        if v not in self._index:
            raise KeyError(f"unknown node {v!r}")

    def weight(self, u, v) -> float:
        """Weight of edge {u, v}, or 0.0 if absent."""
        self._check(u)
        self._check(v)
        return self._adj[u].get(v, 0.0)

    def neighbors(self, v) -> tuple:
        self._check(v)
        return tuple(sorted(self._adj[v]))

    def degree(self, v) -> int:
        """Number of distinct neighbours of ``v`` (weights ignored)."""
        self._check(v)
        return len(self._adj[v])

    def degrees(self) -> dict:
        return {n: len(self._adj[n]) for n in self._nodes}

    def adjacency(self, weighted: bool = False) -> np.ndarray:
        """Dense symmetric matrix in ``self.nodes`` order."""
        n = len(self._nodes)
        a = np.zeros((n, n), dtype=float if weighted else bool)
        for (u, v), w in self._edges.items():
            i, j = self._index[u], self._index[v]
            a[i, j] = a[j, i] = w if weighted else True
        return a


def degree(net: Network, v) -> int:
    return net.degree(v)


def edge_degree_pairs(net: Network) -> np.ndarray:
    """Endpoint degrees of every edge, once per orientation.

    Returns an integer array of shape ``(2 * M, 2)``; the row ``(deg u, deg v)``
    for edge ``{u, v}`` is followed by ``(deg v, deg u)``.
    """
    deg = net.degrees()
    out = np.empty((2 * net.number_of_edges, 2), dtype=np.int64)
    for i, (u, v) in enumerate(net.edges):
        out[2 * i] = deg[u], deg[v]
        out[2 * i + 1] = deg[v], deg[u]
    return out


def filter_edges(net: Network, threshold: float) -> Network:
    """Keep edges with weight >= threshold and binarize them.

    The node set is unchanged, so nodes that lose all their edges stay in the
    network as isolates.
    """
    threshold = float(threshold)
    if not threshold > 0:
        raise ValueError(f"threshold must be positive, got {threshold}")
    kept = [(u, v, 1.0) for (u, v), w in net.edges.items() if w >= threshold]
    return Network(net.nodes, kept, kind=BINARY)


def dichotomize(net: Network) -> Network:
    """Binary version of ``net`` keeping every positive-weight edge."""
    if net.kind == BINARY:
        return net
    return Network(net.nodes, [(u, v, 1.0) for (u, v) in net.edges], kind=BINARY)
