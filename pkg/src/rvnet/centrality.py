"""rvnet.centrality

Degree, betweenness, closeness and eigenvector centrality on a spanning tree.

    degree       C_D(i) = deg(i) / (N - 1)
    betweenness  C_B(i) = #{pairs {j, k} routed through i} / ((N - 1)(N - 2) / 2)
    closeness    C_C(i) = (N - 1) / sum_j hops(i, j)
    eigenvector  Perron vector of the adjacency matrix, unit Euclidean norm

Geodesic distances are unweighted hop counts. Every path in a tree is unique,
so betweenness needs no path counting: removing node i splits the tree into
components of sizes s_1..s_r, and i lies on the path of every pair drawn from
two different components.
"""

from __future__ import annotations

import logging
from typing import Dict, List, Tuple

import numpy as np

from .config import DEFAULT_EIG_MAX_ITER as DEFAULT_MAX_ITER
from .config import DEFAULT_EIG_TOL as DEFAULT_TOL
from .errors import IndexOutOfRange, NoConvergence
from .mst import hops_from, tree_degree
from .types import CentralityScores, EigenSolveReport, Measure, ScoreTables, SpanningTree

logger = logging.getLogger("rvnet")


def _scores(tree: SpanningTree, measure: Measure, values: np.ndarray) -> CentralityScores:
    return CentralityScores(measure=measure, values=values, assets=tree.labels)


def degree_centrality(tree: SpanningTree) -> CentralityScores:
    n = tree.node_count
    values = np.array([tree_degree(tree, i) / (n - 1) for i in range(n)], dtype=np.float64)
    return _scores(tree, Measure.DEGREE, values)


def hop_distance(tree: SpanningTree, i: int, j: int) -> int:
    """Number of edges on the unique tree path from i to j."""
    hops = hops_from(tree, i)
    if not 0 <= j < tree.node_count:
        raise IndexOutOfRange(f"node {j} outside 0..{tree.node_count - 1}")
    return hops[j]


def _subtree_sizes(tree: SpanningTree, root: int = 0) -> Tuple[List[int], List[int]]:
    """Parent and subtree size of every node, rooted at `root`."""
    n = tree.node_count
    parent = [-1] * n
    order = [root]
    seen = [False] * n
    seen[root] = True
    for u in order:
        for v in tree.adjacency[u]:
            if not seen[v]:
                seen[v] = True
                parent[v] = u
                order.append(v)
    size = [1] * n
    for u in reversed(order):
        if parent[u] >= 0:
            size[parent[u]] += size[u]
    return parent, size


def betweenness_centrality(tree: SpanningTree) -> CentralityScores:
    n = tree.node_count
    values = np.zeros(n, dtype=np.float64)
    if n < 3:
        return _scores(tree, Measure.BETWEENNESS, values)

    parent, size = _subtree_sizes(tree)
    norm = (n - 1) * (n - 2) / 2.0
    for i in range(n):
        parts = [size[v] for v in tree.adjacency[i] if parent[v] == i]
        if parent[i] >= 0:
            parts.append(n - size[i])
        # pairs across different components of T - i
        through = ((n - 1) ** 2 - sum(s * s for s in parts)) // 2
        values[i] = through / norm
    return _scores(tree, Measure.BETWEENNESS, values)


def closeness_centrality(tree: SpanningTree) -> CentralityScores:
    n = tree.node_count
    values = np.array([(n - 1) / sum(hops_from(tree, i)) for i in range(n)], dtype=np.float64)
    return _scores(tree, Measure.CLOSENESS, values)


def adjacency_matrix(tree: SpanningTree) -> np.ndarray:
    n = tree.node_count
    a = np.zeros((n, n), dtype=np.float64)
    for e in tree.edges:
        a[e.a, e.b] = a[e.b, e.a] = 1.0
    return a


def eigenvector_centrality(
    tree: SpanningTree,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> Tuple[CentralityScores, EigenSolveReport]:
    """Perron vector of the adjacency matrix by power iteration on A + I.

    Trees are bipartite, so the spectrum of A is symmetric about zero and
    plain power iteration oscillates between +lambda_max and -lambda_max. The
    unit shift keeps the eigenvectors and makes lambda_max + 1 strictly
    dominant. Convergence needs successive iterates within `tol` and a
    residual ||A x - lambda x|| below tol * N.
    """
    n = tree.node_count
    a = adjacency_matrix(tree)
    shifted = a + np.eye(n)
    x = np.full(n, 1.0 / np.sqrt(n))

    lam = 0.0
    residual = float("inf")
    for iteration in range(1, max_iter + 1):
        y = shifted @ x
        y /= np.linalg.norm(y)
        step = float(np.linalg.norm(y - x))
        x = y
        if step < tol:
            ax = a @ x
            lam = float(x @ ax)
            residual = float(np.linalg.norm(ax - lam * x))
            if residual < tol * n:
                # Perron sign convention; entries are positive up to rounding.
                x = np.abs(x)
                x /= np.linalg.norm(x)
                report = EigenSolveReport(lambda_max=lam, iterations=iteration, residual=residual)
                logger.debug(
                    "eigenvector centrality converged: lambda_max=%.12g iterations=%d",
                    lam, iteration,
                )
                return _scores(tree, Measure.EIGENVECTOR, x), report

    ax = a @ x
    lam = float(x @ ax)
    residual = float(np.linalg.norm(ax - lam * x))
    raise NoConvergence(max_iter, residual)


def all_centralities(
    tree: SpanningTree,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> Tuple[ScoreTables, EigenSolveReport]:
    """The four score tables keyed by measure, plus the eigen-solve report."""
    eigen, report = eigenvector_centrality(tree, tol=tol, max_iter=max_iter)
    tables: Dict[Measure, CentralityScores] = {
        Measure.DEGREE: degree_centrality(tree),
        Measure.CLOSENESS: closeness_centrality(tree),
        Measure.BETWEENNESS: betweenness_centrality(tree),
        Measure.EIGENVECTOR: eigen,
    }
    return tables, report
