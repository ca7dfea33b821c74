"""Elimination forests (treedepth decompositions): validation, navigation and
constructors.

Every constructor returns a forest in which each graph edge joins an
ancestor/descendant pair, which is what the branching recursion in
:mod:`tdcut.solvers` relies on.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .graph import Graph, components, has_cycle


class ForestError(ValueError):
    pass


@dataclass(frozen=True)
class EliminationForest:
    """Rooted forest over ``0..n-1`` given by parent pointers (``None`` = root)."""

    parent: tuple[int | None, ...]

    @classmethod
    def from_parents(cls, parent: Sequence[int | None]) -> "EliminationForest":
        f = cls(tuple(parent))
        n = len(f.parent)
        for v, p in enumerate(f.parent):
            if p is not None and not 0 <= p < n:
                raise ForestError(f"parent {p} of vertex {v} out of range")
        cyc = f.find_cycle()
        if cyc:
            raise ForestError(f"parent cycle through vertices {cyc}")
        return f

    @property
    def n(self) -> int:
        return len(self.parent)

    def find_cycle(self) -> list[int] | None:
        """A cycle in the parent links, or None."""
        state = [0] * self.n  # 0 new, 1 on current walk, 2 reaches a root
        for start in range(self.n):
            walk = []
            v = start
            while v is not None and state[v] == 0:
                state[v] = 1
                walk.append(v)
                v = self.parent[v]
            if v is not None and state[v] == 1:
                return walk[walk.index(v):]
            for u in walk:
                state[u] = 2
        return None

    @cached_property
    def children(self) -> tuple[tuple[int, ...], ...]:
        kids: list[list[int]] = [[] for _ in range(self.n)]
        for v, p in enumerate(self.parent):
            if p is not None:
                kids[p].append(v)
        return tuple(tuple(k) for k in kids)

    @cached_property
    def roots(self) -> tuple[int, ...]:
        return tuple(v for v, p in enumerate(self.parent) if p is None)

    @cached_property
    def depth_of(self) -> tuple[int, ...]:
        if self.find_cycle():
            raise ForestError("parent links contain a cycle")
        d = [0] * self.n
        for root in self.roots:
            d[root] = 1
            stack = [root]
            while stack:
                u = stack.pop()
                for c in self.children[u]:
                    d[c] = d[u] + 1
                    stack.append(c)
        return tuple(d)

    @property
    def depth(self) -> int:
        return max(self.depth_of, default=0)

    def is_leaf(self, v: int) -> bool:
        return not self.children[v]

    @property
    def leaves(self) -> list[int]:
        return [v for v in range(self.n) if not self.children[v]]

    def tail(self, v: int) -> list[int]:
        """Strict ancestors of v, root first."""
        out = []
        p = self.parent[v]
        while p is not None:
            out.append(p)
            p = self.parent[p]
        return out[::-1]

    def closed_tail(self, v: int) -> list[int]:
        return self.tail(v) + [v]

    def tree(self, v: int) -> set[int]:
        """Strict descendants of v."""
        out: set[int] = set()
        stack = list(self.children[v])
        while stack:
            u = stack.pop()
            out.add(u)
            stack.extend(self.children[u])
        return out

    def closed_tree(self, v: int) -> set[int]:
        return self.tree(v) | {v}

    def broom(self, v: int) -> set[int]:
        return {v} | set(self.tail(v)) | self.tree(v)

    def is_ancestor(self, a: int, v: int) -> bool:
        p = self.parent[v]
        while p is not None:
            if p == a:
                return True
            p = self.parent[p]
        return False


def validate_forest(g: Graph, f: EliminationForest) -> list[str]:
    """Violations of the elimination-forest conditions; empty means valid."""
    if f.n != g.n:
        raise ValueError(f"forest covers {f.n} vertices, graph has {g.n}")
    cyc = f.find_cycle()
    if cyc:
        return [f"parent cycle through vertices {cyc}"]
    problems = []
    for u, v in g.edges:
        if not (f.is_ancestor(u, v) or f.is_ancestor(v, u)):
            problems.append(f"edge {{{u}, {v}}} joins vertices with no ancestor relation")
    return problems


def parse_forest(text: str | bytes) -> EliminationForest:
    if isinstance(text, bytes):
        text = text.decode("ascii")
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ForestError("empty forest file")
    try:
        n = int(lines[0])
        raw = [int(x) for x in lines[1:]]
    except ValueError:
        raise ForestError("non-integer entry in forest file") from None
    if len(raw) != n:
        raise ForestError(f"expected {n} parent lines, found {len(raw)}")
    parents: list[int | None] = []
    for i, p in enumerate(raw, start=1):
        if not 0 <= p <= n:
            raise ForestError(f"line {i + 1}: parent index {p} out of [0, {n}]")
        if p == i:
            raise ForestError(f"line {i + 1}: vertex {i} is its own parent")
        parents.append(None if p == 0 else p - 1)
    return EliminationForest.from_parents(parents)


def serialize_forest(f: EliminationForest) -> str:
    lines = [str(f.n)] + ["0" if p is None else str(p + 1) for p in f.parent]
    return "\n".join(lines) + "\n"


def build_dfs_forest(g: Graph, start: int = 0) -> EliminationForest:
    """DFS tree rooted at ``start``; an undirected DFS has no cross edges."""
    if g.n == 0:
        return EliminationForest(())
    parent: list[int | None] = [None] * g.n
    seen = [False] * g.n
    seen[start] = True
    stack = [(start, iter(sorted(g.adjacency[start])))]
    while stack:
        u, it = stack[-1]
        for w in it:
            if not seen[w]:
                seen[w] = True
                parent[w] = u
                stack.append((w, iter(sorted(g.adjacency[w]))))
                break
        else:
            stack.pop()
    if not all(seen):
        raise ForestError("graph is disconnected; build a forest per component")
    return EliminationForest(tuple(parent))


def _centroid(g: Graph, comp: list[int]) -> int:
    # smallest id among vertices minimising the largest remaining component
    best, best_size = None, None
    members = set(comp)
    for v in comp:
        rest = members - {v}
        biggest = max((len(c) for c in components(g, rest)), default=0)
        if best_size is None or biggest < best_size:
            best, best_size = v, biggest
    return best


def _centroid_parents(g: Graph, verts: Iterable[int], parent: list[int | None],
                      attach: int | None) -> None:
    work = [(comp, attach) for comp in components(g, verts)]
    while work:
        comp, above = work.pop()
        c = _centroid(g, comp)
        parent[c] = above
        rest = [v for v in comp if v != c]
        work.extend((sub, c) for sub in components(g, rest))


def build_centroid_forest(g: Graph) -> EliminationForest:
    """Recursive centroid removal on an acyclic graph; depth <= ceil(log2(n+1))."""
    if has_cycle(g, g.vertices):
        raise ForestError("centroid construction needs an acyclic graph")
    parent: list[int | None] = [None] * g.n
    _centroid_parents(g, g.vertices, parent, None)
    return EliminationForest(tuple(parent))


def build_forest_from_fvs(g: Graph, x: Iterable[int]) -> EliminationForest:
    """Put the feedback vertex set ``x`` on a root path in ascending order and
    hang centroid forests of ``g - x`` below its last vertex."""
    path = sorted(set(x))
    rest = [v for v in g.vertices if v not in set(path)]
    if has_cycle(g, rest):
        raise ForestError("g - x still contains a cycle")
    parent: list[int | None] = [None] * g.n
    for above, v in zip([None] + path, path):
        parent[v] = above
    _centroid_parents(g, rest, parent, path[-1] if path else None)
    return EliminationForest(tuple(parent))


def greedy_fvs(g: Graph) -> list[int]:
    """Some feedback vertex set: prune degree <= 1 vertices, then delete a
    maximum-degree vertex of what remains, until nothing is left."""
    alive = set(g.vertices)
    chosen = []
    while True:
        changed = True
        while changed:
            changed = False
            for v in sorted(alive):
                if len(g.adjacency[v] & alive) <= 1:
                    alive.discard(v)
                    changed = True
        if not alive:
            return sorted(chosen)
        v = max(sorted(alive), key=lambda u: len(g.adjacency[u] & alive))
        alive.discard(v)
        chosen.append(v)


def optimal_forest_small(g: Graph, limit: int = 12) -> EliminationForest:
    """Minimum-depth elimination forest by exhaustive search over root choices,
    memoised on vertex subsets (bitmasks)."""
    if g.n > limit:
        raise ForestError(f"exact treedepth search refused for n={g.n} > {limit}")
    nbr = [sum(1 << w for w in g.adjacency[v]) for v in g.vertices]
    memo: dict[int, tuple[int, int]] = {}

    def split(mask: int) -> list[int]:
        out = []
        while mask:
            low = mask & -mask
            comp = frontier = low
            while frontier:
                grow = 0
                f = frontier
                while f:
                    b = f & -f
                    grow |= nbr[b.bit_length() - 1]
                    f ^= b
                frontier = grow & mask & ~comp
                comp |= frontier
            out.append(comp)
            mask &= ~comp
        return out

    def td(mask: int) -> int:
        # mask is connected and nonempty
        hit = memo.get(mask)
        if hit is not None:
            return hit[0]
        best, best_root = None, -1
        m = mask
        while m:
            b = m & -m
            m ^= b
            rest = mask ^ b
            depth = 1 + max((td(c) for c in split(rest)), default=0)
            if best is None or depth < best:
                best, best_root = depth, b.bit_length() - 1
        memo[mask] = (best, best_root)
        return best

    parent: list[int | None] = [None] * g.n
    work = [(c, None) for c in split((1 << g.n) - 1)]
    while work:
        mask, above = work.pop()
        td(mask)
        root = memo[mask][1]
        parent[root] = above
        work.extend((c, root) for c in split(mask & ~(1 << root)))
    return EliminationForest(tuple(parent))


def log_depth_bound(n: int) -> int:
    """ceil(log2(n + 1)), the treedepth of a path on n vertices."""
    return n.bit_length()
