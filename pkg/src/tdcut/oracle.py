"""Exponential-time ground truth for small instances.

``brute_q_parity`` enumerates the candidate-cut pairs directly from their
definitions, one per-vertex code per vertex (e.g. "not chosen / left / right"),
so it shares no code with the branching recursion it is used to check.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .engine import WeightFunction
from .graph import (
    Graph,
    count_components,
    is_bipartite,
    is_induced_forest,
    is_vertex_cover,
)
from .solvers import ProblemInstance

SOLVE_LIMIT = 20
PARITY_LIMIT = 10


class OracleRefusal(ValueError):
    pass


def _connected(g: Graph, x) -> bool:
    # the empty set counts as connected
    return count_components(g, x) <= 1


def brute_solve(instance: ProblemInstance, g: Graph) -> bool:
    if g.n > SOLVE_LIMIT:
        raise OracleRefusal(f"brute_solve refused for n={g.n} > {SOLVE_LIMIT}")
    p, k = instance.problem, instance.k
    if not 0 <= k <= g.n:
        return False
    verts = list(g.vertices)
    for combo in combinations(verts, k):
        x = set(combo)
        rest = [v for v in verts if v not in x]
        if p == "cvc":
            ok = is_vertex_cover(g, x, verts) and _connected(g, x)
        elif p == "fvs":
            ok = is_induced_forest(g, rest)
        elif p == "st":
            ok = instance.terminals <= x and _connected(g, x)
        elif p == "cds":
            ok = len(g.closed_neighborhood(x)) == g.n and _connected(g, x)
        else:
            ok = is_bipartite(g, rest) and _connected(g, x)
        if ok:
            return True
    return False


def brute_consistent_cut_count(g: Graph, x, v1: int) -> int:
    """Number of consistent cuts (x_L, x_R) of G[x] with v1 on the left."""
    x = sorted(set(x))
    if v1 not in x:
        raise ValueError("v1 must belong to x")
    if len(x) > SOLVE_LIMIT:
        raise OracleRefusal("x too large")
    pos = {v: i for i, v in enumerate(x)}
    inner = [(pos[u], pos[v]) for u, v in g.induced_edges(x)]
    count = 0
    for mask in range(1 << len(x)):  # bit set = right side
        if mask >> pos[v1] & 1:
            continue
        if all((mask >> a & 1) == (mask >> b & 1) for a, b in inner):
            count += 1
    return count


def _codes(n: int, q: int) -> np.ndarray:
    """All q**n code vectors, row r holding the base-q digits of r."""
    idx = np.arange(q**n, dtype=np.int64)
    out = np.empty((q**n, n), dtype=np.int8)
    for v in range(n):
        out[:, v] = idx % q
        idx //= q
    return out


def _no_crossing(s: np.ndarray, edges, left, right) -> np.ndarray:
    ok = np.ones(len(s), dtype=bool)
    for u, v in edges:
        lu, lv = np.isin(s[:, u], left), np.isin(s[:, v], left)
        ru, rv = np.isin(s[:, u], right), np.isin(s[:, v], right)
        ok &= ~((lu & rv) | (ru & lv))
    return ok


def _table(sizes: np.ndarray, weights: np.ndarray, n: int) -> dict[int, dict[int, int]]:
    """Group the surviving pairs by (size, weight) and keep odd classes."""
    out: dict[int, dict[int, int]] = {k: {} for k in range(n + 1)}
    if len(sizes) == 0:
        return out
    span = int(weights.max()) + 1
    keys, counts = np.unique(sizes.astype(np.int64) * span + weights, return_counts=True)
    for key, c in zip(keys.tolist(), counts.tolist()):
        if c % 2:
            out[key // span][key % span] = 1
    return out


def brute_q_tables(problem: str, g: Graph, weights: WeightFunction, v1: int | None = None,
                   terminals=frozenset()) -> dict[int, dict[int, int]]:
    """For every budget k, the odd weight classes of the candidate-cut pairs."""
    n = g.n
    if n > PARITY_LIMIT:
        raise OracleRefusal(f"brute_q_parity refused for n={n} > {PARITY_LIMIT}")
    w = np.asarray(weights.weights, dtype=np.int64)
    edges = g.edges
    if problem in ("cvc", "st", "cds"):
        # 0 = outside X, 1 = X_L, 2 = X_R
        s = _codes(n, 3)
        inside = s > 0
        ok = _no_crossing(s, edges, [1], [2])
        if problem == "cvc":
            for u, v in edges:
                ok &= inside[:, u] | inside[:, v]
        elif problem == "st":
            terminals = frozenset(terminals)
            if v1 is None:
                if not terminals:
                    raise ValueError("Steiner tree needs a terminal to force left")
                v1 = min(terminals)
            for t in terminals:
                ok &= inside[:, t]
        else:
            dominated = inside.copy()
            for u, v in edges:
                dominated[:, u] |= inside[:, v]
                dominated[:, v] |= inside[:, u]
            ok &= dominated.all(axis=1)
        if v1 is None:
            raise ValueError(f"{problem} needs a forced vertex v1")
        ok &= s[:, v1] == 1
        sizes = inside.sum(axis=1)
        wt = (inside * w).sum(axis=1)
        return _table(sizes[ok], wt[ok], n)
    if problem == "coct":
        # 0 = A, 1 = B, 2 = X_L, 3 = X_R; w[2v] = w(v, X), w[2v+1] = w(v, A)
        s = _codes(n, 4)
        ok = _no_crossing(s, edges, [2], [3])
        for u, v in edges:
            ok &= ~((s[:, u] == 0) & (s[:, v] == 0))
            ok &= ~((s[:, u] == 1) & (s[:, v] == 1))
        if v1 is None:
            raise ValueError("coct needs a forced vertex v1")
        ok &= s[:, v1] == 2
        in_x = s >= 2
        in_a = s == 0
        sizes = in_x.sum(axis=1)
        wt = (in_x * w[0::2]).sum(axis=1) + (in_a * w[1::2]).sum(axis=1)
        return _table(sizes[ok], wt[ok], n)
    if problem == "fvs":
        # 0 = deleted, 1 = Y_L unmarked, 2 = Y_L marked, 3 = Y_R;
        # w[2v] = w(v, F), w[2v+1] = w(v, M)
        s = _codes(n, 4)
        ok = _no_crossing(s, edges, [1, 2], [3])
        in_y = s > 0
        marked = s == 2
        y_edges = np.zeros(len(s), dtype=np.int64)
        for u, v in edges:
            y_edges += in_y[:, u] & in_y[:, v]
        y_size = in_y.sum(axis=1)
        n_marked = marked.sum(axis=1)
        # marker count n-k-j with j = |E(G[Y])| in 0..n-k-1
        ok &= (n_marked == y_size - y_edges) & (n_marked >= 1)
        wt = (in_y * w[0::2]).sum(axis=1) + (marked * w[1::2]).sum(axis=1)
        return _table((n - y_size)[ok], wt[ok], n)
    raise ValueError(f"unknown problem {problem!r}")


def brute_q_parity(instance: ProblemInstance, g: Graph, weights: WeightFunction) -> dict[int, int]:
    tables = brute_q_tables(instance.problem, g, weights, instance.v1, instance.terminals)
    return tables.get(instance.k, {})
