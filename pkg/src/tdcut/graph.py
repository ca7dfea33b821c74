"""Simple undirected graphs, the PACE-style ``.gr`` format, and the vertex-set
predicates shared by the solvers and the brute-force oracle.

Vertices are ``0..n-1`` in memory and ``1..n`` on disk.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence


class GraphFormatError(ValueError):
    """Raised for malformed graph input; the message names the offending line."""


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[frozenset[int], ...] = field(repr=False, compare=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        """Build a simple graph, rejecting self-loops and duplicate edges."""
        if n < 0:
            raise ValueError(f"negative vertex count {n}")
        adj: list[set[int]] = [set() for _ in range(n)]
        norm = []
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if v in adj[u]:
                raise ValueError(f"duplicate edge ({u}, {v})")
            adj[u].add(v)
            adj[v].add(u)
            norm.append((min(u, v), max(u, v)))
        return cls(n, tuple(sorted(norm)), tuple(frozenset(a) for a in adj))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adjacency[v]

    def closed_neighborhood(self, s: Iterable[int]) -> set[int]:
        out: set[int] = set()
        for v in s:
            out.add(v)
            out |= self.adjacency[v]
        return out

    def induced_edges(self, s: Iterable[int]) -> list[tuple[int, int]]:
        s = set(s)
        return [(u, v) for u, v in self.edges if u in s and v in s]

    def subgraph(self, keep: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph relabelled to ``0..len(keep)-1``; also returns the
        list mapping new ids back to old ones."""
        old = sorted(set(keep))
        new_id = {v: i for i, v in enumerate(old)}
        edges = [(new_id[u], new_id[v]) for u, v in self.induced_edges(old)]
        return Graph.from_edges(len(old), edges), old


def parse_graph(text: str | bytes) -> Graph:
    if isinstance(text, bytes):
        text = text.decode("ascii")
    header = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    n = m = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 4 or parts[0] != "p" or parts[1] != "tdp":
                raise GraphFormatError(f"line {lineno}: expected header 'p tdp <n> <m>'")
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise GraphFormatError(f"line {lineno}: non-integer header field") from None
            if n < 0 or m < 0:
                raise GraphFormatError(f"line {lineno}: negative header field")
            header = lineno
            continue
        if len(parts) != 2:
            raise GraphFormatError(f"line {lineno}: expected '<u> <v>'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer vertex id") from None
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphFormatError(f"line {lineno}: vertex index out of [1, {n}]")
        if u == v:
            raise GraphFormatError(f"line {lineno}: self-loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphFormatError(f"line {lineno}: duplicate edge {u} {v}")
        seen.add(key)
        edges.append((u - 1, v - 1))
    if header is None:
        raise GraphFormatError("missing header 'p tdp <n> <m>'")
    if len(edges) != m:
        raise GraphFormatError(f"header announces {m} edges, found {len(edges)}")
    return Graph.from_edges(n, edges)


def serialize_graph(g: Graph) -> str:
    lines = [f"p tdp {g.n} {g.m}"]
    lines += [f"{u + 1} {v + 1}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def components(g: Graph, s: Iterable[int] | None = None) -> list[list[int]]:
    """Connected components of G[s] (all of G when s is None), each sorted,
    listed by smallest vertex."""
    allowed = set(g.vertices) if s is None else set(s)
    seen: set[int] = set()
    out = []
    for start in sorted(allowed):
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        stack = [start]
        while stack:
            u = stack.pop()
            for w in g.adjacency[u]:
                if w in allowed and w not in seen:
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        out.append(sorted(comp))
    return out


def count_components(g: Graph, s: Iterable[int]) -> int:
    return len(components(g, s))


def is_connected(g: Graph) -> bool:
    # n == 0 counts as connected
    return count_components(g, g.vertices) <= 1


def is_consistent_cut(g: Graph, left: Iterable[int], right: Iterable[int]) -> bool:
    left, right = set(left), set(right)
    if left & right:
        raise ValueError("cut sides overlap")
    return not any(
        (u in left and v in right) or (u in right and v in left) for u, v in g.edges
    )


def is_vertex_cover(g: Graph, s: Iterable[int], scope: Iterable[int]) -> bool:
    s, scope = set(s), set(scope)
    return all(u in s or v in s for u, v in g.edges if u in scope and v in scope)


def is_bipartition(g: Graph, a: Iterable[int], b: Iterable[int]) -> bool:
    a, b = set(a), set(b)
    if a & b:
        raise ValueError("bipartition sides overlap")
    return not any((u in a and v in a) or (u in b and v in b) for u, v in g.edges)


def is_bipartite(g: Graph, s: Iterable[int] | None = None) -> bool:
    """Two-colouring test on G[s]."""
    allowed = set(g.vertices) if s is None else set(s)
    colour: dict[int, int] = {}
    for start in sorted(allowed):
        if start in colour:
            continue
        colour[start] = 0
        stack = [start]
        while stack:
            u = stack.pop()
            for w in g.adjacency[u]:
                if w not in allowed:
                    continue
                if w not in colour:
                    colour[w] = 1 - colour[u]
                    stack.append(w)
                elif colour[w] == colour[u]:
                    return False
    return True


def has_cycle(g: Graph, s: Iterable[int]) -> bool:
    """DFS cycle test on G[s]: a non-tree edge back to a visited vertex."""
    allowed = set(s)
    parent: dict[int, int | None] = {}
    for start in sorted(allowed):
        if start in parent:
            continue
        parent[start] = None
        stack = [start]
        while stack:
            u = stack.pop()
            for w in g.adjacency[u]:
                if w not in allowed or w == parent[u]:
                    continue
                if w in parent:
                    return True
                parent[w] = u
                stack.append(w)
    return False


def is_induced_forest(g: Graph, s: Iterable[int]) -> bool:
    """G[s] is acyclic iff it has at most |s| - |E(G[s])| components.

    Every graph has at least that many, so acyclic means equality.
    """
    s = set(s)
    by_count = count_components(g, s) <= len(s) - len(g.induced_edges(s))
    assert by_count == (not has_cycle(g, s)), "forest criterion disagrees with DFS"
    return by_count
