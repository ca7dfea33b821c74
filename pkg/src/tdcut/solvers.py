"""Counting procedures for the five connectivity problems, all driven by one
branching recursion over an elimination forest.

``inc(v)`` branches on the state of ``v`` given the states already fixed on
its strict ancestors; ``exc(v)`` multiplies the ``inc`` polynomials of the
children of ``v`` (distinct subtrees share no edges).  A problem only supplies
its states, the leaf predicate, and the monomial each state contributes.

The assignment lives in a single per-vertex array that is written on the way
down and cleared on the way back, so the recursion stores O(depth)
polynomials.  With pruning enabled (the default) a state is rejected as soon
as it conflicts with an already assigned neighbour; every leaf below such a
vertex would fail its predicate, so the resulting polynomial is identical to
the unpruned one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .elimination import EliminationForest, validate_forest
from .engine import RunConfig, Universe, WeightFunction, run_cut_and_count
from .gf2poly import Exponent, Layout, TrackedPoly, live_counter, poly_zero, weight_slice
from .graph import (
    Graph,
    is_bipartite,
    is_bipartition,
    is_connected,
    is_consistent_cut,
    is_vertex_cover,
)

PROBLEMS = ("cvc", "fvs", "st", "cds", "coct")

STATES = {
    "cvc": ("0", "1L", "1R"),
    "st": ("0", "1L", "1R"),
    "fvs": ("0L", "0R", "1"),
    "cds": ("0A", "0F", "1L", "1R"),
    "coct": ("0A", "0B", "1L", "1R"),
}


class InstanceError(ValueError):
    """The instance or forest does not satisfy a solver precondition."""


@dataclass(frozen=True)
class ProblemInstance:
    problem: str
    k: int
    terminals: frozenset[int] = frozenset()
    v1: int | None = None

    def __post_init__(self) -> None:
        if self.problem not in PROBLEMS:
            raise InstanceError(f"unknown problem {self.problem!r}")
        object.__setattr__(self, "terminals", frozenset(self.terminals))

    def with_v1(self, v1: int | None) -> "ProblemInstance":
        return ProblemInstance(self.problem, self.k, self.terminals, v1)


@dataclass
class SolveStats:
    countc_calls: int = 0
    leaf_evaluations: int = 0
    max_call_leaf_evaluations: int = 0
    peak_live: int = 0
    repeated_visits: int = 0
    depth: int = 0
    states: int = 0
    bypass: str | None = None


def in_set(f: Mapping[int, str], *names: str) -> set[int]:
    return {v for v, s in f.items() if s in names}


# --- leaf predicates (verbatim definitions; used by the unpruned recursion) ---


def leaf_cvc(g: Graph, f: Mapping[int, str], v1: int | None) -> int:
    chosen = in_set(f, "1L", "1R")
    return int(
        is_vertex_cover(g, chosen, f.keys())
        and is_consistent_cut(g, in_set(f, "1L"), in_set(f, "1R"))
        and (v1 not in f or f[v1] == "1L")
    )


def leaf_fvs(g: Graph, f: Mapping[int, str]) -> int:
    return int(is_consistent_cut(g, in_set(f, "0L"), in_set(f, "0R")))


def leaf_cds(g: Graph, f: Mapping[int, str], v1: int | None) -> int:
    chosen = in_set(f, "1L", "1R")
    return int(
        is_consistent_cut(g, in_set(f, "1L"), in_set(f, "1R"))
        and not (g.closed_neighborhood(chosen) & in_set(f, "0F"))
        and (v1 not in f or f[v1] == "1L")
    )


def leaf_st(g: Graph, f: Mapping[int, str], terminals: Iterable[int], t1: int | None) -> int:
    chosen = in_set(f, "1L", "1R")
    return int(
        is_consistent_cut(g, in_set(f, "1L"), in_set(f, "1R"))
        and all(t in chosen for t in terminals if t in f)
        and (t1 not in f or f[t1] == "1L")
    )


def leaf_coct(g: Graph, f: Mapping[int, str], v1: int | None) -> int:
    return int(
        is_consistent_cut(g, in_set(f, "1L"), in_set(f, "1R"))
        and is_bipartition(g, in_set(f, "0A"), in_set(f, "0B"))
        and (v1 not in f or f[v1] == "1L")
    )


# --- problem plugins --------------------------------------------------------


class _Problem:
    """States, edge compatibility, unary restrictions and monomial shifts."""

    name = ""
    # pairs of state names that may not sit on the two ends of an edge
    forbidden_pairs: tuple[tuple[str, str], ...] = ()

    def __init__(self, g: Graph, weights: WeightFunction, instance: ProblemInstance):
        self.g = g
        self.weights = weights
        self.instance = instance
        self.v1 = instance.v1
        self.states = STATES[self.name]
        idx = {s: i for i, s in enumerate(self.states)}
        q = len(self.states)
        self.compat = [[True] * q for _ in range(q)]
        for a, b in self.forbidden_pairs:
            self.compat[idx[a]][idx[b]] = False
            self.compat[idx[b]][idx[a]] = False
        self.layout = self.make_layout()

    @property
    def universe(self) -> Universe:
        return universe_for(self.name, self.g.n)

    def make_layout(self) -> Layout:
        return Layout(w=self.weights.total, x=self.g.n)

    def unary(self, v: int) -> tuple[int, ...]:
        if v == self.v1:
            return (self.states.index("1L"),)
        return tuple(range(len(self.states)))

    def shifts(self, v: int, s: int, state: list) -> tuple[Exponent, ...]:
        raise NotImplementedError

    def leaf(self, f: Mapping[int, str]) -> int:
        raise NotImplementedError

    def extract(self, poly: TrackedPoly, k: int) -> dict[int, int]:
        return _bits_to_map(weight_slice(poly, x=k))


def _bits_to_map(mask: int) -> dict[int, int]:
    out = {}
    while mask:
        low = mask & -mask
        out[low.bit_length() - 1] = 1
        mask ^= low
    return out


class _SizeWeight(_Problem):
    """Shared by CVC, ST and CDS: states named 1* enter the solution with
    weight w(v) and size 1; every other state contributes the constant."""

    def shifts(self, v, s, state):
        if self.states[s].startswith("1"):
            return ((self.weights[v], 1, 0, 0),)
        return ((0, 0, 0, 0),)


class CVCProblem(_SizeWeight):
    name = "cvc"
    forbidden_pairs = (("0", "0"), ("1L", "1R"))

    def leaf(self, f):
        return leaf_cvc(self.g, f, self.v1)


class STProblem(_SizeWeight):
    name = "st"
    forbidden_pairs = (("1L", "1R"),)

    def __init__(self, g, weights, instance):
        super().__init__(g, weights, instance)
        if self.v1 is None and instance.terminals:
            self.v1 = min(instance.terminals)

    def unary(self, v):
        if v == self.v1:
            return (self.states.index("1L"),)
        if v in self.instance.terminals:
            return (self.states.index("1L"), self.states.index("1R"))
        return (0, 1, 2)

    def leaf(self, f):
        return leaf_st(self.g, f, self.instance.terminals, self.v1)


class CDSProblem(_SizeWeight):
    """Domination by inclusion-exclusion: "allowed" (0A) minus "forbidden"
    (0F); over GF(2) the subtraction is just another addition."""

    name = "cds"
    forbidden_pairs = (("0F", "1L"), ("0F", "1R"), ("1L", "1R"))

    def leaf(self, f):
        return leaf_cds(self.g, f, self.v1)


class COCTProblem(_Problem):
    name = "coct"
    forbidden_pairs = (("0A", "0A"), ("0B", "0B"), ("1L", "1R"))

    def shifts(self, v, s, state):
        # weights: (v, X) at 2v, (v, A) at 2v + 1
        name = self.states[s]
        if name == "0A":
            return ((self.weights[2 * v + 1], 0, 0, 0),)
        if name == "0B":
            return ((0, 0, 0, 0),)
        return ((self.weights[2 * v], 1, 0, 0),)

    def leaf(self, f):
        return leaf_coct(self.g, f, self.v1)


class FVSProblem(_Problem):
    name = "fvs"
    forbidden_pairs = (("0L", "0R"),)

    def __init__(self, g, weights, instance):
        super().__init__(g, weights, instance)
        self.v1 = None  # markers take the role of the forced vertex

    def make_layout(self):
        return Layout(w=self.weights.total, x=self.g.n, e=self.g.m, m=self.g.n)

    def unary(self, v):
        return (0, 1, 2)

    def shifts(self, v, s, state):
        if s == 2:
            return ((0, 0, 0, 0),)
        delta = sum(1 for u in self.g.adjacency[v] if state[u] in (0, 1))
        wf, wm = self.weights[2 * v], self.weights[2 * v + 1]
        if s == 0:
            return ((wf, 1, delta, 0), (wf + wm, 1, delta, 1))
        return ((wf, 1, delta, 0),)

    def leaf(self, f):
        return leaf_fvs(self.g, f)

    def extract(self, poly, k):
        n, m = self.g.n, self.g.m
        y = n - k
        mask = 0
        for j in range(0, min(m, y - 1) + 1):
            mask ^= weight_slice(poly, x=y, e=j, m=y - j)
        return _bits_to_map(mask)


PLUGINS = {
    "cvc": CVCProblem,
    "st": STProblem,
    "fvs": FVSProblem,
    "cds": CDSProblem,
    "coct": COCTProblem,
}


def universe_for(problem: str, n: int) -> Universe:
    if problem == "fvs":
        return Universe.labeled(n, ("F", "M"))
    if problem == "coct":
        return Universe.labeled(n, ("X", "A"))
    return Universe.plain(n)


def make_problem(g: Graph, instance: ProblemInstance, weights: WeightFunction) -> _Problem:
    expected = universe_for(instance.problem, g.n).size
    if len(weights) != expected:
        raise InstanceError(f"weight function has {len(weights)} entries, universe has {expected}")
    return PLUGINS[instance.problem](g, weights, instance)


# --- the branching recursion -------------------------------------------------


class BranchingCounter:
    """Evaluates calc_poly_inc / calc_poly_exc for one weighting."""

    def __init__(self, problem: _Problem, forest: EliminationForest, prune: bool = True,
                 track_visits: bool = False):
        self.p = problem
        self.forest = forest
        self.prune = prune
        self.layout = problem.layout
        g = problem.g
        self.state: list[int | None] = [None] * g.n
        anc = [set(forest.tail(v)) for v in range(g.n)]
        # neighbours of v fixed before v (its ancestors)
        self.up_nbrs = [tuple(u for u in g.adjacency[v] if u in anc[v]) for v in range(g.n)]
        self.options = [problem.unary(v) if prune else tuple(range(len(problem.states)))
                        for v in range(g.n)]
        self.closed_tails = [forest.closed_tail(v) for v in range(g.n)]
        # small subtrees first: a zero factor there skips the expensive ones
        size = [len(forest.closed_tree(v)) for v in range(g.n)]
        self.kids = [tuple(sorted(forest.children[v], key=lambda c: (size[c], c)))
                     for v in range(g.n)]
        self.leaf_evaluations = 0
        self.visits: set | None = set() if track_visits else None
        self.repeated_visits = 0

    def _visit(self, kind: str, v: int) -> None:
        key = (kind, v, tuple(self.state[u] for u in self.closed_tails[v]))
        if key in self.visits:
            self.repeated_visits += 1
        self.visits.add(key)

    def _fits(self, v: int, s: int) -> bool:
        row = self.p.compat[s]
        state = self.state
        return all(row[state[u]] for u in self.up_nbrs[v])

    def _inc(self, v: int) -> TrackedPoly:
        if self.visits is not None:
            self._visit("inc", v)
        acc = TrackedPoly(self.layout)
        state = self.state
        for s in self.options[v]:
            if self.prune and not self._fits(v, s):
                continue
            state[v] = s
            part = self._exc(v)
            if part.bits:
                for sh in self.p.shifts(v, s, state):
                    acc.iadd_shifted(part, sh)
            del part
            state[v] = None
        return acc

    def _exc(self, v: int) -> TrackedPoly:
        if self.visits is not None:
            self._visit("exc", v)
        kids = self.kids[v]
        if not kids:
            self.leaf_evaluations += 1
            if self.prune:
                return TrackedPoly(self.layout, 1)
            names = self.p.states
            f = {u: names[self.state[u]] for u in self.closed_tails[v]}
            return TrackedPoly(self.layout, self.p.leaf(f))
        acc = None
        for c in kids:
            part = self._inc(c)
            if acc is None:
                acc = part
            else:
                acc.imul(part)
            del part
            if self.prune and not acc.bits:
                break
        return acc

    def _load(self, assignment: Mapping[int, str], expect: list[int]) -> None:
        if sorted(assignment) != sorted(expect):
            raise InstanceError("assignment must cover exactly the required tail")
        names = self.p.states
        self.state = [None] * self.p.g.n
        for u, s in assignment.items():
            self.state[u] = names.index(s)

    def _feasible(self) -> bool:
        # the pruned recursion only ever extends feasible states; a caller's
        # assignment has to be checked once up front
        state = self.state
        return all(
            state[v] in self.p.unary(v) and self._fits(v, state[v])
            for v in range(self.p.g.n) if state[v] is not None
        )

    def calc_poly_exc(self, v: int, f: Mapping[int, str]) -> TrackedPoly:
        self._load(f, self.closed_tails[v])
        try:
            if self.prune and not self._feasible():
                return TrackedPoly(self.layout)
            return self._exc(v)
        finally:
            self.state = [None] * self.p.g.n

    def calc_poly_inc(self, v: int, g: Mapping[int, str]) -> TrackedPoly:
        self._load(g, self.closed_tails[v][:-1])
        try:
            if self.prune and not self._feasible():
                return TrackedPoly(self.layout)
            return self._inc(v)
        finally:
            self.state = [None] * self.p.g.n

    def root_polynomial(self) -> TrackedPoly:
        acc = TrackedPoly(self.layout, 1)
        for r in self.forest.roots:
            part = self._inc(r)
            acc.imul(part)
            del part
        return acc


def pin(problem: _Problem, v: int, g: Mapping[int, str],
        parts: Mapping[str, TrackedPoly]) -> TrackedPoly:
    """Combine the per-state exc polynomials of v into inc(v, g)."""
    names = problem.states
    state: list[int | None] = [None] * problem.g.n
    for u, s in g.items():
        state[u] = names.index(s)
    acc = poly_zero(problem.layout)
    for s in problem.unary(v):
        state[v] = s
        for sh in problem.shifts(v, s, state):
            acc.iadd_shifted(parts[names[s]], sh)
    return acc


def pin_cvc(problem, v, g, p0, p1l, p1r):
    return pin(problem, v, g, {"0": p0, "1L": p1l, "1R": p1r})


def pin_st(problem, v, g, p0, p1l, p1r):
    return pin(problem, v, g, {"0": p0, "1L": p1l, "1R": p1r})


def pin_fvs(problem, v, g, p0l, p0r, p1):
    return pin(problem, v, g, {"0L": p0l, "0R": p0r, "1": p1})


def pin_cds(problem, v, g, p0a, p0f, p1l, p1r):
    return pin(problem, v, g, {"0A": p0a, "0F": p0f, "1L": p1l, "1R": p1r})


def pin_coct(problem, v, g, p0a, p0b, p1l, p1r):
    return pin(problem, v, g, {"0A": p0a, "0B": p0b, "1L": p1l, "1R": p1r})


# --- CountC and solve entry points ------------------------------------------


def _check_forest(g: Graph, forest: EliminationForest) -> None:
    problems = validate_forest(g, forest)
    if problems:
        raise InstanceError(f"invalid elimination forest: {problems[0]}")


def root_polynomial(g: Graph, forest: EliminationForest, instance: ProblemInstance,
                    weights: WeightFunction, prune: bool = True,
                    stats: SolveStats | None = None, track_visits: bool = False,
                    check: bool = True) -> TrackedPoly:
    if check:
        _check_forest(g, forest)
    problem = make_problem(g, instance, weights)
    counter = BranchingCounter(problem, forest, prune=prune, track_visits=track_visits)
    if stats is None:
        return counter.root_polynomial()
    with live_counter() as live:
        poly = counter.root_polynomial()
        peak = live.peak
    stats.countc_calls += 1
    stats.leaf_evaluations += counter.leaf_evaluations
    stats.max_call_leaf_evaluations = max(stats.max_call_leaf_evaluations,
                                          counter.leaf_evaluations)
    stats.peak_live = max(stats.peak_live, peak)
    stats.repeated_visits += counter.repeated_visits
    stats.depth = forest.depth
    stats.states = len(problem.states)
    return poly


def extract(g: Graph, instance: ProblemInstance, weights: WeightFunction,
            poly: TrackedPoly) -> dict[int, int]:
    return make_problem(g, instance, weights).extract(poly, instance.k)


def countc_all(g: Graph, forest: EliminationForest, instance: ProblemInstance,
               weights: WeightFunction, prune: bool = True,
               stats: SolveStats | None = None, check: bool = True) -> dict[int, int]:
    """Odd weight classes ``{w: 1}`` of the candidate-cut pairs, all targets at once."""
    _require_consistent(g, instance)
    poly = root_polynomial(g, forest, instance, weights, prune=prune, stats=stats, check=check)
    return extract(g, instance, weights, poly)


def countc_all_cvc(g, forest, instance, weights, **kw):
    return countc_all(g, forest, instance, weights, **kw)


countc_all_fvs = countc_all_st = countc_all_cds = countc_all_coct = countc_all_cvc


def _require_consistent(g: Graph, instance: ProblemInstance) -> None:
    if not 0 <= instance.k <= g.n:
        raise InstanceError(f"k={instance.k} outside [0, {g.n}]")
    if any(not 0 <= t < g.n for t in instance.terminals):
        raise InstanceError("terminal outside the vertex set")
    if instance.problem == "st" and instance.k >= 1 and not instance.terminals:
        raise InstanceError("Steiner tree needs at least one terminal when k >= 1")
    if instance.v1 is not None and not 0 <= instance.v1 < g.n:
        raise InstanceError(f"v1={instance.v1} outside the vertex set")


def _bypass(g: Graph, inst: ProblemInstance) -> tuple[bool, str] | None:
    """Budgets the recurrences cannot express, answered directly."""
    p, k = inst.problem, inst.k
    if p == "cvc":
        if k == 0:
            return g.m == 0, "k=0: empty set covers only an edgeless graph"
        if g.m == 0 and g.n == 1:
            return True, "single vertex"
    elif p == "cds" and k == 0:
        return g.n == 0, "k=0: empty set dominates only the empty graph"
    elif p == "st":
        if k == 0:
            return not inst.terminals, "k=0: only an empty terminal set fits"
        if len(inst.terminals) == 1 and k == 1:
            return True, "single terminal"
    elif p == "coct" and k == 0:
        return is_bipartite(g), "k=0: bipartiteness test"
    elif p == "fvs" and k >= g.n:
        return True, "k>=n: delete everything"
    return None


_DEFAULT_STRATEGY = {
    "cvc": "edge-endpoints",
    "st": "fixed-vertex",
    "fvs": "none",
    "cds": "all-vertices",
    "coct": "all-vertices",
}

_ALLOWED_STRATEGIES = {
    "cvc": {"edge-endpoints", "all-vertices"},
    "st": {"fixed-vertex", "all-vertices"},
    "fvs": {"none"},
    "cds": {"all-vertices"},
    "coct": {"all-vertices"},
}


def v1_choices(g: Graph, inst: ProblemInstance, strategy: str | None = None) -> list[int | None]:
    strategy = strategy or _DEFAULT_STRATEGY[inst.problem]
    if strategy not in _ALLOWED_STRATEGIES[inst.problem]:
        raise InstanceError(f"v1 strategy {strategy!r} is unsound for {inst.problem}")
    if strategy == "none":
        return [None]
    if strategy == "edge-endpoints":
        u, v = g.edges[0]
        return [u, v]
    if strategy == "fixed-vertex":
        return [min(inst.terminals)]
    return list(g.vertices)


def solve(g: Graph, forest: EliminationForest | None, instance: ProblemInstance,
          cfg: RunConfig | None = None, stats: SolveStats | None = None) -> bool:
    """Monte-Carlo decision: never YES on a NO instance; a YES instance is
    missed with probability at most 2**-trials."""
    cfg = cfg or RunConfig()
    _require_consistent(g, instance)
    hit = _bypass(g, instance)
    if hit is not None:
        if stats is not None:
            stats.bypass = hit[1]
        return hit[0]
    if not is_connected(g):
        raise InstanceError("graph is disconnected")
    if forest is None:
        from .elimination import build_dfs_forest

        forest = build_dfs_forest(g)
    _check_forest(g, forest)
    choices = v1_choices(g, instance, cfg.v1_strategy)
    universe = universe_for(instance.problem, g.n)

    def count(choice, weights):
        inst = instance.with_v1(choice)
        return countc_all(g, forest, inst, weights, stats=stats, check=False)

    return run_cut_and_count(universe, count, choices, cfg)


def solve_cvc(g, forest, k, cfg=None, stats=None) -> bool:
    return solve(g, forest, ProblemInstance("cvc", k), cfg, stats)


def solve_fvs(g, forest, k, cfg=None, stats=None) -> bool:
    return solve(g, forest, ProblemInstance("fvs", k), cfg, stats)


def solve_st(g, forest, k, terminals, cfg=None, stats=None) -> bool:
    return solve(g, forest, ProblemInstance("st", k, frozenset(terminals)), cfg, stats)


def solve_cds(g, forest, k, cfg=None, stats=None) -> bool:
    return solve(g, forest, ProblemInstance("cds", k), cfg, stats)


def solve_coct(g, forest, k, cfg=None, stats=None) -> bool:
    return solve(g, forest, ProblemInstance("coct", k), cfg, stats)


@dataclass(frozen=True)
class SteinerReduction:
    graph: Graph
    terminals: frozenset[int]
    k: int
    forest: EliminationForest
    edge_vertex: dict[tuple[int, int], int] = field(compare=False)


def reduce_cvc_to_st(g: Graph, k: int, forest: EliminationForest) -> SteinerReduction:
    """Subdivide every edge with a terminal; the new vertex for edge e gets id
    n + index(e) and hangs directly below the deeper endpoint of e."""
    _check_forest(g, forest)
    depth = forest.depth_of
    edges = []
    parent = list(forest.parent)
    mapping = {}
    for i, (u, v) in enumerate(g.edges):
        w = g.n + i
        mapping[(u, v)] = w
        edges += [(u, w), (w, v)]
        parent.append(u if depth[u] > depth[v] else v)
    g2 = Graph.from_edges(g.n + g.m, edges)
    terminals = frozenset(range(g.n, g.n + g.m))
    return SteinerReduction(g2, terminals, g.m + k, EliminationForest(tuple(parent)), mapping)
