import random

import pytest

from tdcut.elimination import (
    EliminationForest,
    ForestError,
    build_centroid_forest,
    build_dfs_forest,
    build_forest_from_fvs,
    greedy_fvs,
    log_depth_bound,
    optimal_forest_small,
    parse_forest,
    serialize_forest,
    validate_forest,
)
from tdcut.graph import Graph

from helpers import K3, P3, all_connected_graphs, complete, path, random_connected_graph, star

CHAIN = EliminationForest.from_parents([None, 0, 1])


def test_validate_examples():
    f = EliminationForest.from_parents([1, None, 1])
    assert validate_forest(P3, f) == [] and f.depth == 2
    bad = validate_forest(K3, EliminationForest.from_parents([None, 0, 0]))
    assert len(bad) == 1
    assert validate_forest(K3, CHAIN) == [] and CHAIN.depth == 3


def test_validate_vertex_mismatch():
    with pytest.raises(ValueError):
        validate_forest(P3, EliminationForest.from_parents([None, 0]))


def test_tail_tree_broom():
    assert CHAIN.tail(2) == [0, 1]
    assert CHAIN.closed_tail(2) == [0, 1, 2]
    assert CHAIN.tree(0) == {1, 2}
    assert CHAIN.closed_tree(1) == {1, 2}
    assert CHAIN.broom(1) == {0, 1, 2}
    f = EliminationForest.from_parents([None, 0, 0, None])
    assert f.broom(0) == {0, 1, 2}
    assert f.broom(1) == {0, 1}
    assert f.roots == (0, 3)
    assert f.is_ancestor(0, 2) and not f.is_ancestor(1, 2)


def test_from_parents_rejects_cycle():
    with pytest.raises(ForestError):
        EliminationForest.from_parents([1, 0])


class TestForestFile:
    def test_parse(self):
        f = parse_forest("3\n2\n0\n2\n")
        assert f.parent == (1, None, 1)

    def test_round_trip(self):
        f = EliminationForest.from_parents([None, 0, 0, 2, None])
        assert parse_forest(serialize_forest(f)) == f
        assert serialize_forest(parse_forest("3\n2\n0\n2\n")) == "3\n2\n0\n2\n"

    @pytest.mark.parametrize("text", ["2\n2\n1\n", "2\n3\n0\n", "1\n1\n", "3\n0\n0\n", ""])
    def test_errors(self, text):
        with pytest.raises(ForestError):
            parse_forest(text)


class TestDfs:
    def test_path_from_end(self):
        assert build_dfs_forest(P3).depth == 3

    def test_star_from_center(self):
        assert build_dfs_forest(star(3), start=0).depth == 2

    def test_triangle_is_chain(self):
        f = build_dfs_forest(K3)
        assert validate_forest(K3, f) == [] and f.depth == 3

    def test_disconnected(self):
        with pytest.raises(ForestError):
            build_dfs_forest(Graph.from_edges(2, []))

    def test_always_valid(self):
        rng = random.Random(2)
        for _ in range(100):
            g = random_connected_graph(rng, rng.randint(1, 30))
            assert validate_forest(g, build_dfs_forest(g)) == []


class TestCentroid:
    def test_path7(self):
        assert build_centroid_forest(path(7)).depth == 3

    def test_single_vertex(self):
        assert build_centroid_forest(Graph.from_edges(1, [])).depth == 1

    def test_star4_center_first(self):
        f = build_centroid_forest(star(4))
        assert f.roots == (0,) and f.depth == 2
        assert validate_forest(star(4), f) == []

    def test_cycle_rejected(self):
        with pytest.raises(ForestError):
            build_centroid_forest(K3)

    def test_lowest_id_tie_break(self):
        # both middle vertices of P4 are centroids
        assert build_centroid_forest(path(4)).roots == (1,)


class TestFvsForest:
    def test_triangle(self):
        f = build_forest_from_fvs(K3, {0})
        assert validate_forest(K3, f) == [] and f.depth <= 3
        assert f.roots == (0,)

    def test_tree_degenerates(self):
        g = path(5)
        assert build_forest_from_fvs(g, set()) == build_centroid_forest(g)

    def test_k4(self):
        g = complete(4)
        f = build_forest_from_fvs(g, {0, 1})
        # K4 needs depth 4 in any forest, which is exactly |x| + ceil(log2(3))
        assert validate_forest(g, f) == [] and f.depth == 4
        assert f.depth <= 2 + log_depth_bound(2)
        assert f.parent[1] == 0

    def test_not_acyclic(self):
        with pytest.raises(ForestError):
            build_forest_from_fvs(K3, set())

    def test_greedy_fvs_leaves_forest(self):
        rng = random.Random(4)
        for _ in range(50):
            g = random_connected_graph(rng, rng.randint(1, 15))
            x = greedy_fvs(g)
            f = build_forest_from_fvs(g, x)
            assert validate_forest(g, f) == []
            assert f.depth <= len(x) + log_depth_bound(g.n - len(x))


class TestOptimal:
    def test_small(self):
        assert optimal_forest_small(P3).depth == 2
        assert optimal_forest_small(K3).depth == 3
        assert optimal_forest_small(Graph.from_edges(1, [])).depth == 1

    def test_refuses_large(self):
        with pytest.raises(ForestError):
            optimal_forest_small(path(13))

    def test_never_worse_than_constructors(self):
        for n in range(1, 6):
            for g in all_connected_graphs(n):
                best = optimal_forest_small(g)
                assert validate_forest(g, best) == []
                assert best.depth <= build_dfs_forest(g).depth
                assert best.depth <= build_forest_from_fvs(g, greedy_fvs(g)).depth


def test_log_depth_bound():
    assert [log_depth_bound(n) for n in range(8)] == [0, 1, 2, 2, 3, 3, 3, 3]
