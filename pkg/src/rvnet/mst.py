"""rvnet.mst

Minimum spanning tree of the complete distance graph.

kruskal_mst is the production path: edges sorted by (distance, a, b), cycles
rejected through a disjoint-set forest with path compression and union by
rank. brute_force_mst enumerates every labeled tree through its Prüfer
sequence and serves as the exhaustive oracle for small N.
"""

from __future__ import annotations

import heapq
import itertools
import math
from collections import deque
from typing import Iterable, List, Optional, Sequence, Tuple

from .errors import IndexOutOfRange, InsufficientOverlap, InvalidTree, TooLarge
from .types import Edge, SimilarityMatrix, SpanningTree, TreeSummary

BRUTE_FORCE_MAX_N = 8


# ================================
# Disjoint set
# ================================

class DisjointSet:
    """Disjoint-set forest over elements 0..size-1.

        >>> ds = DisjointSet(3)
        >>> ds.union(0, 2)
        True
        >>> ds.union(2, 0)
        False
        >>> ds.find(0) == ds.find(2) != ds.find(1)
        True
    """

    def __init__(self, size: int) -> None:
        if size < 0:
            raise ValueError("size must be >= 0")
        self._parent = list(range(size))
        self._rank = [0] * size
        self.components = size

    def find(self, x: int) -> int:
        root = x
        while self._parent[root] != root:
            root = self._parent[root]
        # path compression
        while self._parent[x] != root:
            self._parent[x], x = root, self._parent[x]
        return root

    def union(self, x: int, y: int) -> bool:
        """Merge the sets of x and y; False if they were already joined."""
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if self._rank[rx] < self._rank[ry]:
            rx, ry = ry, rx
        self._parent[ry] = rx
        if self._rank[rx] == self._rank[ry]:
            self._rank[rx] += 1
        self.components -= 1
        return True


# ================================
# Tree construction
# ================================

def default_labels(n: int) -> Tuple[str, ...]:
    """Zero-padded index labels, so lexicographic order equals index order."""
    width = len(str(max(n - 1, 0)))
    return tuple(str(i).zfill(width) for i in range(n))


def tree_from_edges(
    node_count: int,
    edges: Iterable[Edge],
    labels: Optional[Sequence[str]] = None,
) -> SpanningTree:
    """Build a SpanningTree, checking it has N-1 edges, no cycle and full reach."""
    if node_count < 2:
        raise InsufficientOverlap(f"a spanning tree needs at least 2 nodes, got {node_count}")
    labels = tuple(labels) if labels is not None else default_labels(node_count)
    if len(labels) != node_count:
        raise InvalidTree(f"{len(labels)} labels for {node_count} nodes")

    canonical: List[Edge] = []
    for e in edges:
        a, b = (e.a, e.b) if e.a < e.b else (e.b, e.a)
        if a == b or a < 0 or b >= node_count:
            raise InvalidTree(f"bad edge ({e.a}, {e.b}) for {node_count} nodes")
        canonical.append(Edge(a=a, b=b, distance=e.distance, rv=e.rv))
    if len(canonical) != node_count - 1:
        raise InvalidTree(f"expected {node_count - 1} edges, got {len(canonical)}")

    ds = DisjointSet(node_count)
    for e in canonical:
        if not ds.union(e.a, e.b):
            raise InvalidTree(f"edge ({e.a}, {e.b}) closes a cycle")

    canonical.sort()
    adjacency: List[List[int]] = [[] for _ in range(node_count)]
    for e in canonical:
        adjacency[e.a].append(e.b)
        adjacency[e.b].append(e.a)
    return SpanningTree(
        node_count=node_count,
        edges=tuple(canonical),
        adjacency=tuple(tuple(sorted(nbrs)) for nbrs in adjacency),
        labels=labels,
    )


def tree_from_pairs(
    node_count: int,
    pairs: Iterable[Tuple[int, int]],
    labels: Optional[Sequence[str]] = None,
) -> SpanningTree:
    """Topology-only tree: every edge gets rv = 1, distance = 0."""
    edges = [Edge(a=a, b=b, distance=0.0, rv=1.0) for a, b in pairs]
    return tree_from_edges(node_count, edges, labels)


def _edge(sim: SimilarityMatrix, i: int, j: int) -> Edge:
    return Edge(a=i, b=j, distance=float(sim.dist[i, j]), rv=float(sim.rv[i, j]))


# ================================
# Kruskal
# ================================

def kruskal_mst(sim: SimilarityMatrix) -> SpanningTree:
    """Minimum spanning tree; ties resolved by (distance, a, b)."""
    n = sim.size
    if n < 2:
        raise InsufficientOverlap(f"need at least 2 assets, got {n}")

    candidates = sorted(
        (float(sim.dist[i, j]), i, j) for i in range(n) for j in range(i + 1, n)
    )
    ds = DisjointSet(n)
    chosen: List[Edge] = []
    for _, i, j in candidates:
        if ds.union(i, j):
            chosen.append(_edge(sim, i, j))
            if len(chosen) == n - 1:
                break
    return tree_from_edges(n, chosen, sim.assets)


# ================================
# Exhaustive oracle
# ================================

def prufer_to_pairs(sequence: Sequence[int], n: int) -> List[Tuple[int, int]]:
    """Decode a Prüfer sequence of length n - 2 into the edges of a labeled tree."""
    degree = [1] * n
    for x in sequence:
        degree[x] += 1
    leaves = [i for i in range(n) if degree[i] == 1]
    heapq.heapify(leaves)

    pairs: List[Tuple[int, int]] = []
    for x in sequence:
        leaf = heapq.heappop(leaves)
        pairs.append((min(leaf, x), max(leaf, x)))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u, v = heapq.heappop(leaves), heapq.heappop(leaves)
    pairs.append((u, v))
    return pairs


def brute_force_mst(sim: SimilarityMatrix) -> SpanningTree:
    """Minimum spanning tree by enumerating all N^(N-2) labeled trees."""
    n = sim.size
    if n < 2:
        raise InsufficientOverlap(f"need at least 2 assets, got {n}")
    if n > BRUTE_FORCE_MAX_N:
        raise TooLarge(f"exhaustive enumeration is limited to N <= {BRUTE_FORCE_MAX_N}, got {n}")

    best_pairs: Optional[List[Tuple[int, int]]] = None
    best_weight = math.inf
    for sequence in itertools.product(range(n), repeat=n - 2):
        pairs = prufer_to_pairs(sequence, n)
        weight = math.fsum(float(sim.dist[a, b]) for a, b in pairs)
        if weight < best_weight:
            best_weight, best_pairs = weight, pairs

    assert best_pairs is not None
    return tree_from_edges(n, [_edge(sim, a, b) for a, b in best_pairs], sim.assets)


# ================================
# Queries
# ================================

def _check_node(tree: SpanningTree, i: int) -> None:
    if not 0 <= i < tree.node_count:
        raise IndexOutOfRange(f"node {i} outside 0..{tree.node_count - 1}")


def tree_degree(tree: SpanningTree, i: int) -> int:
    """Number of tree edges incident to node i."""
    _check_node(tree, i)
    return len(tree.adjacency[i])


def hops_from(tree: SpanningTree, source: int) -> List[int]:
    """Breadth-first hop counts from `source` to every node."""
    _check_node(tree, source)
    dist = [-1] * tree.node_count
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in tree.adjacency[u]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def tree_summary(tree: SpanningTree) -> TreeSummary:
    """Length, leaf fraction, hub and mean occupation layer around the hub."""
    n = tree.node_count
    degrees = [len(nbrs) for nbrs in tree.adjacency]
    hub = max(range(n), key=lambda i: (degrees[i], -i))
    total = tree.total_distance
    layers = hops_from(tree, hub)
    return TreeSummary(
        total_distance=total,
        mean_distance=total / (n - 1),
        leaf_fraction=sum(1 for d in degrees if d == 1) / n,
        hub=tree.labels[hub],
        hub_degree=degrees[hub],
        mean_occupation_layer=sum(layers) / n,
    )
