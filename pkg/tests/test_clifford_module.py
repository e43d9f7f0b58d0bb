import cmath
import math

import numpy as np
import pytest

from hcalg.bratteli import STAR, PathTableau, build_graph, paths_to, s_action
from hcalg.clifford_module import (
    EVEN,
    ODD,
    Dmat,
    build_module,
    clifford_sign,
    default_f,
    f_rhs,
    f_rhs_via_c,
    kappa,
    kappa_data,
    kappa_squared,
    module_for,
    x1_block,
)
from hcalg.shifted_combinatorics import StrictPartition

GRID = [(n, p, d) for n in (2, 3, 4, 5) for p in (1, 2, 3) for d in (1, 2, 3)]


def all_paths(n, p, d):
    g = build_graph(n, p, d)
    for lam in g.row(d):
        yield from paths_to(g, lam)


def s0_paths(n, p, d):
    for T in all_paths(n, p, d):
        if s_action(0, T) is not STAR:
            yield T


def test_clifford_square_is_minus_one():
    assert clifford_sign(0b1, 0b1) == (-1, 0)


def test_clifford_anticommutation():
    assert clifford_sign(0b01, 0b10) == (1, 0b11)
    assert clifford_sign(0b10, 0b01) == (-1, 0b11)


def test_clifford_identity():
    assert clifford_sign(0, 0b101) == (1, 0b101)


def test_clifford_sign_is_associative():
    for a in range(8):
        for b in range(8):
            for c in range(8):
                s1, ab = clifford_sign(a, b)
                s2, abc = clifford_sign(ab, c)
                t1, bc = clifford_sign(b, c)
                t2, abc2 = clifford_sign(a, bc)
                assert abc == abc2 and s1 * s2 == t1 * t2


def test_kappa_of_content_one_box():
    # the added box (2,3) has content 1
    T = PathTableau(tuple(StrictPartition(x) for x in [(2, 1), (3, 1), (3, 2)]))
    assert T.content_of(1) == 1
    assert kappa(T, 1) == pytest.approx(math.sqrt(2))


def test_kappa_zero_through_a2():
    g = build_graph(5, 3, 2)
    T = next(T for T in paths_to(g, (7, 6, 4, 2, 1)) if T.level(0) == (7, 5, 3, 2, 1))
    assert kappa_squared(T, 0) == 84
    assert kappa(T, 0) == pytest.approx(math.sqrt(84))


@pytest.mark.parametrize("n, p, d", GRID)
def test_kappa_positive_with_integer_squares(n, p, d):
    for T in all_paths(n, p, d):
        assert T.first_row > p
        for i in range(d + 1):
            sq = kappa_squared(T, i)
            assert isinstance(sq, int) and sq > 0


@pytest.mark.parametrize("n, p, d", GRID)
def test_specific_values_on_s0_pairs(n, p, d):
    # the pair member with the shorter first row m has kappa_1^2 = m(m+1),
    # the other has kappa_0^2 = (m+1)p(m+1-p) and kappa_1^2 = (m-p)(m-p+1)
    for T in s0_paths(n, p, d):
        S = s_action(0, T)
        if T.first_row > S.first_row:
            continue
        m = T.first_row
        assert S.first_row == m + 1
        assert kappa_squared(T, 0) == m * p * (m - p)
        assert kappa_squared(T, 1) == m * (m + 1)
        assert kappa_squared(S, 0) == (m + 1) * p * (m + 1 - p)
        assert kappa_squared(S, 1) == (m - p) * (m - p + 1)


@pytest.mark.parametrize("n, p, d", GRID)
def test_sum_constant(n, p, d):
    for T in s0_paths(n, p, d):
        S = s_action(0, T)
        assert kappa_squared(T, 0) + kappa_squared(T, 1) == kappa_squared(S, 0) + kappa_squared(S, 1)


def test_l2_row_of_eigenvalue_table():
    # a path whose second box sits at content n after the first extends row 1
    n, p, d = 4, 2, 2
    N0 = n * (n + 1)
    hits = 0
    for T in s0_paths(n, p, d):
        S = s_action(0, T)
        if T.first_row < S.first_row and T.content_of(1) == T.first_row and T.content_of(2) == n:
            m = T.first_row
            assert [kappa_squared(T, i) for i in range(3)] == [m * p * (m - p), m * (m + 1), N0]
            hits += 1
    assert hits


@pytest.mark.parametrize("n, p, d", GRID)
def test_f_rhs_is_symmetric_and_nonzero(n, p, d):
    for T in s0_paths(n, p, d):
        F = f_rhs(T)
        assert abs(F) > 0
        assert F == pytest.approx(f_rhs(s_action(0, T)), rel=1e-12)
        assert F == pytest.approx(f_rhs_via_c(T), rel=1e-10)


@pytest.mark.parametrize("n, p, d", GRID)
def test_three_forms_of_c_agree(n, p, d):
    for T in s0_paths(n, p, d):
        first, second, third = kappa_data(T).c_forms()
        assert first == pytest.approx(second, rel=1e-12)
        assert second == pytest.approx(third, rel=1e-12)


def test_f_rhs_on_star_raises():
    g = build_graph(2, 1, 1)
    for T in paths_to(g, g.row(1)[0]):
        if s_action(0, T) is STAR:
            with pytest.raises(ValueError):
                f_rhs(T)


def test_f_rhs_value_n5_p3():
    g = build_graph(5, 3, 2)
    T = next(T for T in paths_to(g, (7, 6, 4, 2, 1)) if s_action(0, T) is not STAR)
    S = s_action(0, T)
    if T.first_row > S.first_row:
        T, S = S, T
    # the pair is A_3 <-> A_2 through B_4, so m = 6:
    # kappa_0^2 = 54, kappa_1^2 = 42, kappa_0'^2 = 84, kappa_1'^2 = 12, N_0 = 30, p = 3
    assert T.level(0) == (6, 5, 4, 2, 1)
    num = (54 + 9 * 42) * (30 - 42) * (30 - 12)
    den = (54 + 3 * 42) ** 2 * ((math.sqrt(54) - math.sqrt(84)) ** 2 + (math.sqrt(42) + math.sqrt(12)) ** 2)
    assert f_rhs(T) == pytest.approx(-num / den, rel=1e-12)


@pytest.mark.parametrize("n, p, d", GRID)
def test_f_rhs_is_positive(n, p, d):
    # kappa_1^2 = m(m+1) exceeds N_0 while kappa_1'^2 = (m-p)(m-p+1) stays below it
    for T in s0_paths(n, p, d):
        F = f_rhs(T)
        assert F.imag == 0 and F.real > 0


@pytest.mark.parametrize("n, p, d", GRID)
def test_default_f_condition(n, p, d):
    g = build_graph(n, p, d)
    for lam in g.row(d):
        f = default_f(g, lam)
        for T, v in f.items():
            S = s_action(0, T)
            assert v * f[S] == pytest.approx(f_rhs(T), rel=1e-12)
            assert v == pytest.approx(f[S], rel=1e-12)
            assert v == cmath.sqrt(f_rhs(T))


def test_default_f_may_be_empty():
    g = build_graph(2, 1, 1)
    lam = g.row(1)[0]
    assert all(s_action(0, T) is STAR for T in paths_to(g, lam)) == (default_f(g, lam) == {})


@pytest.mark.parametrize("n, p, d", GRID)
def test_matrix_identities(n, p, d):
    I = np.eye(2)
    for T in s0_paths(n, p, d):
        K = kappa_data(T)
        Q, X = Dmat(K.k1, -K.k0), Dmat(K.k0, K.k1)
        R, Y = Dmat(K.k1p, K.k0p), Dmat(K.k0p, -K.k1p)
        Z = Dmat(K.k0 - K.k0p, K.k1 + K.k1p)
        for M in (Q, R, X, Y):
            assert np.abs(M @ M - K.ksq * I).max() < 1e-12 * K.ksq
        zsq = (K.k0 - K.k0p) ** 2 + (K.k1 + K.k1p) ** 2
        assert np.abs(Z @ Z - zsq * I).max() < 1e-12 * max(1, zsq)
        scale = K.ksq + zsq
        for A, B in ((Q @ X, X @ Q), (Y @ R, R @ Y), (X @ Z, Z @ Y), (Z @ X, Y @ Z), (Q @ Z, Z @ R), (R @ Z, Z @ Q)):
            assert np.abs(A + B).max() < 1e-12 * scale


@pytest.mark.parametrize("n, p, d", GRID)
def test_x1_block_rewrite(n, p, d):
    g = build_graph(n, p, d)
    N0 = n * (n + 1)
    for lam in g.row(d):
        f = default_f(g, lam)
        for T in paths_to(g, lam):
            if s_action(0, T) is STAR:
                continue
            K = kappa_data(T)
            blk = x1_block(T, f)
            upper = N0 / K.ksq * Dmat(K.k1, -K.k0) + K.c * Dmat(K.k0, K.k1)
            lower = N0 / K.ksq * Dmat(K.k1p, K.k0p) + K.c * Dmat(K.k0p, -K.k1p)
            assert np.abs(blk[:2, :2] - upper).max() < 1e-10 * N0
            assert np.abs(blk[2:, 2:] - lower).max() < 1e-10 * N0


@pytest.mark.parametrize("n, p, d", GRID)
def test_dimension_formula(n, p, d):
    g = build_graph(n, p, d)
    for lam in g.row(d):
        k = len(paths_to(g, lam))
        assert build_module(g, lam, EVEN).dim == 2 ** (d + 1) * k
        assert build_module(g, lam, ODD).dim == 2 ** (d + 2) * k


@pytest.mark.parametrize("n, p, d", [(2, 2, 2), (3, 2, 2), (4, 3, 3), (5, 1, 3)])
def test_generator_structure(n, p, d):
    g = build_graph(n, p, d)
    for lam in g.row(d):
        for variant in (EVEN, ODD):
            rep = build_module(g, lam, variant)
            par = rep.parity.astype(int)
            # parity of v_T is the parity of the first row of T^(0)
            for (mask, t), q in zip(rep.basis, par):
                assert q == (rep.paths[t].first_row + bin(mask).count("1")) % 2
            for name, M in rep.generators.items():
                A = M.toarray()
                rows, cols = np.nonzero(np.abs(A) > 1e-14)
                flip = rep.generator_parity(name)
                assert np.all((par[rows] + par[cols]) % 2 == flip), name
                if name.startswith("z"):
                    assert np.count_nonzero(A - np.diag(np.diag(A))) == 0
            for i in range(1, d):
                S = rep.dense(f"s{i}")
                assert np.abs(S @ S - np.eye(rep.dim)).max() < 1e-12


def test_z_spectrum_is_advertised():
    g = build_graph(4, 2, 2)
    lam = g.row(2)[0]
    rep = build_module(g, lam, EVEN)
    for i in range(3):
        diag = np.diag(rep.dense(f"z{i}"))
        for (mask, t), z in zip(rep.basis, diag):
            sign = -1 if (mask >> i) & 1 else 1
            assert z == pytest.approx(sign * kappa(rep.paths[t], i))


def test_s0_partners_have_opposite_parity():
    for n, p, d in GRID:
        for T in s0_paths(n, p, d):
            assert (T.first_row - s_action(0, T).first_row) % 2 == 1


def test_build_module_errors():
    g = build_graph(4, 2, 2)
    with pytest.raises(ValueError):
        build_module(g, (9, 9), EVEN)
    with pytest.raises(ValueError):
        build_module(g, g.row(2)[0], "X")
    with pytest.raises(ValueError):
        build_module(build_graph(4, 2, 0), build_graph(4, 2, 0).row(0)[0], EVEN)
    lam = next(l for l in g.row(2) if default_f(g, l))
    with pytest.raises(KeyError):
        build_module(g, lam, EVEN, f={})


def test_module_json_round_trip():
    rep = module_for(2, 1, 1, build_graph(2, 1, 1).row(1)[0])
    data = rep.to_json()
    assert data["dim"] == rep.dim == len(data["basis"]) == len(data["parity"])
    x1 = np.array(data["generators"]["x1"])
    assert x1.shape == (rep.dim, rep.dim, 2)
    assert np.allclose(x1[..., 0] + 1j * x1[..., 1], rep.dense("x1"))
