from collections import deque

import pytest

from hcalg.bratteli import STAR, PathTableau, build_graph, paths_to, row_reading_tableau, s_action
from hcalg.shifted_combinatorics import (
    Box,
    StrictPartition,
    l_shape_successors,
    pieri_successors,
    standard_skew_tableaux,
)

A1, A2, A3 = (8, 4, 3, 2, 1), (7, 5, 3, 2, 1), (6, 5, 4, 2, 1)
B1, B2, B3, B4, B5 = (9, 4, 3, 2, 1), (8, 5, 3, 2, 1), (7, 6, 3, 2, 1), (7, 5, 4, 2, 1), (6, 5, 4, 3, 1)
C5 = (7, 6, 4, 2, 1)

GRID = [(n, p, d) for n in (2, 3, 4, 5) for p in (1, 2, 3) for d in (1, 2, 3)]


def path(*parts):
    return PathTableau(tuple(StrictPartition(x) for x in parts))


def test_row_sizes_n5_p3():
    assert build_graph(5, 3, 2).row_sizes() == [1, 3, 5, 7]


def test_first_edge_layer_n5_p3():
    g = build_graph(5, 3, 2)
    assert set(g.successors(0, A1)) == {B1, B2}
    assert set(g.successors(0, A2)) == {B2, B3, B4}
    assert set(g.successors(0, A3)) == {B4, B5}


def test_depth_zero_graph():
    g = build_graph(2, 1, 0)
    assert g.rows == (((2, 1),), ((3, 1),))
    [T] = paths_to(g, (3, 1))
    assert T.depth == 0


def test_bad_parameters():
    with pytest.raises(ValueError):
        build_graph(0, 1, 1)
    with pytest.raises(ValueError):
        build_graph(2, 0, 1)


@pytest.mark.parametrize("n, p, d", GRID)
def test_graph_invariants(n, p, d):
    g = build_graph(n, p, d)
    assert set(g.row(0)) == l_shape_successors(g.alpha, p)
    for i in range(d):
        expected = set()
        for lam in g.row(i):
            succ = pieri_successors(lam, n)
            assert set(g.successors(i, lam)) == succ
            expected |= succ
        assert set(g.row(i + 1)) == expected
    for i in range(0, d + 1):
        assert all(len(lam) == n for lam in g.row(i))
        assert list(g.row(i)) == sorted(g.row(i), reverse=True)


def test_paths_to_c5():
    g = build_graph(5, 3, 2)
    got = {tuple(T.vertices[1:3]) for T in paths_to(g, C5)}
    assert got == {(A2, B3), (A2, B4), (A3, B4)}


def test_printed_path_tableau():
    g = build_graph(5, 3, 2)
    T = path((5, 4, 3, 2, 1), A2, B3, C5)
    assert T in paths_to(g, C5)
    assert T.tableau.as_dict() == {Box(2, 7): 1, Box(3, 6): 2}


def test_paths_to_rejects_foreign_lambda():
    g = build_graph(5, 3, 2)
    with pytest.raises(ValueError):
        paths_to(g, A1)


@pytest.mark.parametrize("n, p", [(2, 1), (4, 3), (5, 3)])
def test_depth_zero_has_one_path_per_vertex(n, p):
    g = build_graph(n, p, 0)
    for lam in g.row(0):
        assert len(paths_to(g, lam)) == 1


# the s0 examples live at n = 4, p = 3 (three green boxes on the staircase (4,3,2,1))
ALPHA4 = (4, 3, 2, 1)
T_EX = path(ALPHA4, (6, 4, 2, 1), (7, 4, 2, 1), (7, 5, 2, 1), (8, 5, 2, 1), (8, 5, 3, 1))
L_EX = path(ALPHA4, (7, 3, 2, 1), (7, 4, 2, 1), (7, 5, 2, 1), (8, 5, 2, 1), (8, 5, 3, 1))
STAR_EX = path(ALPHA4, (6, 4, 2, 1), (6, 5, 2, 1), (7, 5, 2, 1), (8, 5, 2, 1), (8, 5, 3, 1))


def test_s0_example_pair():
    assert s_action(0, T_EX) == L_EX
    assert s_action(0, L_EX) == T_EX
    assert L_EX.tableau.as_dict() == {Box(2, 5): 1, Box(2, 6): 2, Box(1, 8): 3, Box(3, 5): 4}


def test_s0_example_star():
    assert s_action(0, STAR_EX) is STAR


def test_star_absorbs():
    for i in range(4):
        assert s_action(i, STAR) is STAR


def test_s_index_out_of_range():
    with pytest.raises(ValueError):
        s_action(5, T_EX)


@pytest.mark.parametrize("n, p, d", GRID)
def test_s_actions_are_involutions_and_local(n, p, d):
    g = build_graph(n, p, d)
    for lam in g.row(d):
        paths = paths_to(g, lam)
        for T in paths:
            for i in range(d):
                S = s_action(i, T)
                if S is STAR:
                    continue
                assert S in paths
                assert s_action(i, S) == T
                changed = [k for k in range(-1, d + 1) if S.level(k) != T.level(k)]
                assert changed == [i]
                if i == 0:
                    # the two row-0 vertices differ by one box in the first row
                    assert abs(S.level(0)[0] - T.level(0)[0]) == 1


@pytest.mark.parametrize("n, p, d", GRID)
def test_s_actions_are_transitive(n, p, d):
    g = build_graph(n, p, d)
    for lam in g.row(d):
        paths = paths_to(g, lam)
        seen = {paths[0]}
        todo = deque(seen)
        while todo:
            T = todo.popleft()
            for i in range(d):
                S = s_action(i, T)
                if S is not STAR and S not in seen:
                    seen.add(S)
                    todo.append(S)
        assert seen == set(paths)


@pytest.mark.parametrize("n, p, d", GRID)
def test_paths_are_standard_tableaux(n, p, d):
    g = build_graph(n, p, d)
    for lam in g.row(d):
        paths = paths_to(g, lam)
        expected = set()
        for mu in g.row(0):
            if StrictPartition(lam).contains(mu):
                for t in standard_skew_tableaux(lam, mu):
                    expected.add(PathTableau.from_tableau(g.alpha, t))
        assert all(T.tableau.is_standard() for T in paths)
        assert set(paths) == expected
        assert len(paths) == len(expected)


def test_row_reading_tableau():
    g = build_graph(4, 2, 3)
    for lam in g.row(3):
        for T in paths_to(g, lam):
            R = row_reading_tableau(T)
            assert R.tableau.outer == T.tableau.outer and R.tableau.inner == T.tableau.inner
            assert row_reading_tableau(R) == R
            # R is reached from T by simple transpositions s_1..s_{d-1}
            seen, todo = {T}, deque([T])
            while todo:
                S = todo.popleft()
                for i in range(1, 3):
                    U = s_action(i, S)
                    if U is not STAR and U not in seen:
                        seen.add(U)
                        todo.append(U)
            assert R in seen


def test_json_export():
    data = build_graph(5, 3, 2).to_json()
    assert data["row_index_start"] == -1
    assert [len(r) for r in data["rows"]] == [1, 3, 5, 7]
    assert all(len(e) == 3 for e in data["edges"])
