"""Small graph families and generators shared by the test modules."""

from __future__ import annotations

import random
from itertools import combinations, product

from tdcut.graph import Graph, is_connected


def path(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n):
    return Graph.from_edges(n, list(combinations(range(n), 2)))


def star(leaves):
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


K2, K3, P3, C4 = complete(2), complete(3), path(3), cycle(4)


def all_graphs(n):
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, [p for i, p in enumerate(pairs) if mask >> i & 1])


def all_connected_graphs(n):
    return [g for g in all_graphs(n) if is_connected(g)]


def random_connected_graph(rng: random.Random, n, p=None):
    """Random spanning tree plus independent extra edges with probability p."""
    if p is None:
        p = rng.uniform(0.1, 0.7)
    edges = set()
    order = list(range(n))
    rng.shuffle(order)
    for i in range(1, n):
        u, v = order[i], order[rng.randrange(i)]
        edges.add((min(u, v), max(u, v)))
    for u, v in combinations(range(n), 2):
        if rng.random() < p:
            edges.add((u, v))
    return Graph.from_edges(n, sorted(edges))


def random_tree(rng: random.Random, n):
    return random_connected_graph(rng, n, p=0.0)


def decode_prufer(n, seq):
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(i for i in range(n) if degree[i] == 1)
        edges.append((min(leaf, x), max(leaf, x)))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = [i for i in range(n) if degree[i] == 1]
    edges.append((u, v))
    return Graph.from_edges(n, edges)


def prufer_trees(n):
    """Every labelled tree on n >= 2 vertices."""
    for seq in product(range(n), repeat=n - 2):
        yield decode_prufer(n, seq)


def random_prufer_tree(rng: random.Random, n):
    return decode_prufer(n, [rng.randrange(n) for _ in range(n - 2)])
