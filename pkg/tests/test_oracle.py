import pytest

from tdcut.engine import WeightFunction
from tdcut.oracle import (
    OracleRefusal,
    brute_consistent_cut_count,
    brute_q_parity,
    brute_q_tables,
    brute_solve,
)
from tdcut.solvers import ProblemInstance

from helpers import C4, K2, K3, P3, complete, cycle, path, star


def test_brute_solve_examples():
    assert brute_solve(ProblemInstance("cvc", 2), K3)
    assert brute_solve(ProblemInstance("cds", 1), P3)
    assert not brute_solve(ProblemInstance("fvs", 0), C4)
    assert brute_solve(ProblemInstance("fvs", 1), C4)
    assert brute_solve(ProblemInstance("st", 3, {0, 2}), P3)
    assert not brute_solve(ProblemInstance("st", 2, {0, 2}), P3)
    assert brute_solve(ProblemInstance("coct", 1), cycle(5))
    assert not brute_solve(ProblemInstance("coct", 0), cycle(5))
    assert not brute_solve(ProblemInstance("cds", 1), path(4))


def test_brute_solve_refuses_large():
    with pytest.raises(OracleRefusal):
        brute_solve(ProblemInstance("cvc", 1), path(21))


def test_cvc_k2_parity():
    # X={0} admits only the cut ({0}, {}); X={1} cannot put v1 on the left
    table = brute_q_parity(ProblemInstance("cvc", 1, v1=0), K2, WeightFunction((3, 5), 4))
    assert table == {3: 1}


def test_cvc_k0_empty():
    assert brute_q_parity(ProblemInstance("cvc", 0, v1=0), K2, WeightFunction((3, 5), 4)) == {}


def test_fvs_path_markers():
    # Y = {0,1,2}, both cuts are consistent but markers must sit on the left,
    # so the three odd classes are 9 plus the marked vertex's M weight
    w = WeightFunction((1, 2, 3, 4, 5, 6), 12)
    assert brute_q_parity(ProblemInstance("fvs", 0), path(3), w) == {11: 1, 13: 1, 15: 1}


def test_disconnected_candidates_cancel():
    # P3 with the middle vertex forced out: every X containing 0 and 2 but not 1 is
    # disconnected, so with large k nothing odd survives for the ST instance T={0,2}
    w = WeightFunction((1, 2, 4), 6)
    assert brute_q_parity(ProblemInstance("st", 2, {0, 2}), P3, w) == {}
    assert brute_q_parity(ProblemInstance("st", 3, {0, 2}), P3, w) == {7: 1}


def test_tables_refuse_large():
    with pytest.raises(OracleRefusal):
        brute_q_tables("cvc", complete(11), WeightFunction((1,) * 11, 22), v1=0)


def test_consistent_cut_count_examples():
    assert brute_consistent_cut_count(P3, {0, 1, 2}, 0) == 1
    assert brute_consistent_cut_count(P3, {0, 2}, 0) == 2
    assert brute_consistent_cut_count(star(3), {1}, 1) == 1
    with pytest.raises(ValueError):
        brute_consistent_cut_count(P3, {0, 2}, 1)
