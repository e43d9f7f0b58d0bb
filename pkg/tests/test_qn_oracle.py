import numpy as np
import pytest
import scipy.sparse as sp

from hcalg.qn_oracle import (
    C_matrix,
    QnElement,
    affine_specialize_report,
    casimir_identity_report,
    central_element_matrix,
    central_eigenvalue,
    highest_weight_submodule,
    kappa_minimal_polynomial_report,
    omega_pair,
    pieri_scalar_report,
    q_action,
    qn_generators,
    quotient_relation_report,
    rational_nullspace,
    sergeev_rep,
    simple_hw_dim,
    specialize_report,
    superbracket,
    supercommutation_report,
    twoboundary_rep,
    placement_report,
    verify_exact,
)
from hcalg.relation_verifier import relation_set


def dense(m):
    return m.toarray() if sp.issparse(m) else np.asarray(m)


def test_C_squares_to_minus_one():
    for n in (1, 2, 3):
        C = C_matrix(n)
        assert np.array_equal(C @ C, -np.eye(2 * n, dtype=int))


def test_generators_commute_with_C_up_to_parity():
    es, fs, C = qn_generators(3)
    for x in es.values():
        assert np.array_equal(x.matrix @ C, C @ x.matrix)
    for x in fs.values():
        assert np.array_equal(x.matrix @ C, -C @ x.matrix)


def test_superbrackets():
    es, fs, _ = qn_generators(2)
    assert np.array_equal(superbracket(es[1, 1], es[1, 2]).matrix, es[1, 2].matrix)
    assert np.array_equal(superbracket(fs[1, 2], fs[2, 1]).matrix, es[1, 1].matrix + es[2, 2].matrix)
    assert np.array_equal(superbracket(es[1, 2], fs[2, 1]).matrix, fs[1, 1].matrix - fs[2, 2].matrix)


def test_qn_element_rejects_bad_blocks():
    with pytest.raises(ValueError):
        QnElement(np.eye(4, dtype=int)[:, ::-1], 0)
    es, _, _ = qn_generators(2)
    with pytest.raises(ValueError):
        QnElement(es[1, 1].matrix, 1)


@pytest.mark.parametrize("n, d", [(1, 3), (2, 3), (3, 2)])
def test_sergeev_generators(n, d):
    rep = sergeev_rep(n, d)
    g = {k: dense(v) for k, v in rep.generators.items()}
    I = np.eye(rep.ambient_dim, dtype=int)
    for i in range(1, d + 1):
        assert np.array_equal(g[f"c{i}"] @ g[f"c{i}"], -I)
        for j in range(i + 1, d + 1):
            assert np.array_equal(g[f"c{i}"] @ g[f"c{j}"], -g[f"c{j}"] @ g[f"c{i}"])
    for i in range(1, d):
        s = g[f"s{i}"]
        assert np.array_equal(s @ s, I)
        assert np.array_equal(s @ g[f"c{i}"] @ s, g[f"c{i+1}"])
    assert verify_exact(rep, relation_set("Sergeev", d)).passed


@pytest.mark.parametrize("n, d", [(1, 3), (2, 3)])
def test_sergeev_supercommutes_with_qn(n, d):
    report = supercommutation_report(sergeev_rep(n, d))
    assert report.passed, report.text()


def test_omega_supercommutes_with_coproduct():
    # Omega is odd, so it supercommutes with Delta(e) and anticommutes with Delta(f)
    n, K = 2, 2
    om = dense(omega_pair(n, K, [1], [2]))
    for name, x in q_action(n, K).items():
        x = dense(x)
        sign = -1 if name.startswith("f") else 1
        assert np.array_equal(om @ x, sign * x @ om), name


def test_omega_is_additive_in_the_first_group():
    n, K = 1, 4
    whole = omega_pair(n, K, [1, 2, 3], [4])
    parts = omega_pair(n, K, [1], [4]) + omega_pair(n, K, [2], [4]) + omega_pair(n, K, [3], [4])
    assert abs(whole - parts).max() == 0


def test_omega_placement_order_enforced():
    with pytest.raises(ValueError):
        omega_pair(1, 2, [2], [1])


@pytest.mark.parametrize("n", [1, 2, 3])
def test_casimir_identity(n):
    report = casimir_identity_report(n)
    assert report.passed, report.text()


@pytest.mark.parametrize("n, d", [(1, 2), (2, 2), (2, 3)])
def test_trivial_boundaries_give_sergeev(n, d):
    report = specialize_report(n, d)
    assert report.passed, report.text()


def test_trivial_left_boundary_gives_affine_hecke_clifford():
    N = highest_weight_submodule(2, (2,))
    report = affine_specialize_report(N, 2, 2)
    assert report.passed, report.text()


def test_twoboundary_relations_on_genuine_boundaries():
    M = highest_weight_submodule(2, (2, 1))
    N = highest_weight_submodule(2, (1,))
    rep = twoboundary_rep(M, N, 2, 2)
    report = verify_exact(rep, relation_set("H_d-twoboundary", 2))
    assert report.passed, report.text()
    assert placement_report(rep).passed


def test_boundary_over_wrong_n():
    with pytest.raises(ValueError):
        twoboundary_rep(highest_weight_submodule(1, (1,)), None, 2, 1)


@pytest.mark.parametrize("n, lam, dim", [
    (1, (1,), 2),
    # character 2 P_(2) in two variables: 2(x1^2 + 2 x1 x2 + x2^2)
    (2, (2,), 8),
    (2, (1,), 4),
])
def test_highest_weight_dimensions(n, lam, dim):
    L = highest_weight_submodule(n, lam)
    assert L.copies == 1
    assert L.dim == dim
    assert L.hw_dim == simple_hw_dim(lam)


def test_character_of_L2():
    L = highest_weight_submodule(2, (2,))
    assert L.character() == {(2, 0): 2, (1, 1): 4, (0, 2): 2}


def test_staircase_module_has_nonzero_highest_weight_vector():
    L = highest_weight_submodule(2, (2, 1))
    assert np.any(L.hw_vector)
    # over Q only L + Pi L exists here, and one copy has character 2 P_(2,1) = 2(x1^2 x2 + x1 x2^2)
    assert L.copies == 2
    assert L.character() == {(2, 1): 2 * L.copies, (1, 2): 2 * L.copies}


def test_submodule_is_closed():
    L = highest_weight_submodule(2, (2, 1))
    B = L.basis
    for name, x in q_action(2, L.K).items():
        Y = x @ B
        # Y lies in the column span of B
        coeffs, *_ = np.linalg.lstsq(B.astype(float), Y.astype(float), rcond=None)
        assert np.allclose(B @ coeffs, Y), name


@pytest.mark.parametrize("lam, r, value", [((2, 1), 1, 3), ((1,), 2, 0), ((2, 1), 2, 0), ((3, 2, 1), 2, 0)])
def test_central_eigenvalue_examples(lam, r, value):
    assert central_eigenvalue(lam, r) == value


@pytest.mark.parametrize("lam", [(1,), (3,), (4, 1), (5, 3, 2)])
def test_central_eigenvalue_r2_closed_form(lam):
    # for r = 2 the sum collapses to sum(lam_i^3) - (sum lam_i)^2
    assert central_eigenvalue(lam, 2) == sum(x ** 3 for x in lam) - sum(lam) ** 2


@pytest.mark.parametrize("n, lam", [(1, (1,)), (2, (2,)), (2, (2, 1))])
@pytest.mark.parametrize("r", [1, 2])
def test_central_element_acts_by_scalar(n, lam, r):
    L = highest_weight_submodule(n, lam)
    z = central_element_matrix(n, r, q_action(n, L.K))
    assert np.array_equal(z @ L.basis, central_eigenvalue(lam, r) * L.basis)


@pytest.mark.parametrize("n, lam", [(2, (1,)), (2, (2,)), (2, (2, 1)), (3, (1,))])
def test_pieri_scalars(n, lam):
    report = pieri_scalar_report(n, lam)
    assert report.passed, report.text()


def test_quotient_relations():
    report = quotient_relation_report(2, 2, 1)
    assert report.passed, report.text()
    assert report.info["subspace_dim"] < report.info["ambient_dim"]


def test_kappa_minimal_polynomials():
    report = kappa_minimal_polynomial_report(2, 2)
    assert report.passed, report.text()


def test_rational_nullspace():
    M = np.array([[1, 2, 3], [2, 4, 6]])
    ker = rational_nullspace(M)
    assert len(ker) == 2
    for v in ker:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in M.tolist())


def test_memory_guardrail():
    with pytest.raises(MemoryError):
        q_action(2, 10)
