import numpy as np
import pytest

from ordercones.errors import DimensionMismatch, DomainError, NotHermitian
from ordercones.hermitian import (
    HermitianMatrix,
    classify,
    func_calc,
    lattice_ops,
    matrix_abs,
    matrix_sqrt,
    projection_decomposition,
    spectral,
)

S0 = np.eye(2, dtype=complex)
S1 = np.array([[0, 1], [1, 0]], dtype=complex)
S2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
S3 = np.array([[1, 0], [0, -1]], dtype=complex)


def random_hermitian(rng, n):
    m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return HermitianMatrix((m + m.conj().T) / 2)


def test_construction_symmetrizes_tiny_noise():
    a = HermitianMatrix([[1.0, 0.5 + 1e-14j], [0.5, 2.0]])
    assert np.allclose(a.mat, a.mat.conj().T)


def test_construction_rejects_far_from_hermitian():
    with pytest.raises(NotHermitian):
        HermitianMatrix([[0, 1], [0, 0]])


def test_spectral_diagonal_sorted_ascending():
    dec = spectral(HermitianMatrix.diag([2, 1]))
    assert dec.eigenvalues.tolist() == [1.0, 2.0]


def test_spectral_sigma1_matches_characteristic_polynomial():
    # oracle: roots of t^2 - tr t + det for the 2x2 case
    tr = float(np.trace(S1).real)
    det = float(np.linalg.det(S1).real)
    disc = np.sqrt(tr * tr - 4 * det)
    roots = sorted([(tr - disc) / 2, (tr + disc) / 2])
    dec = spectral(HermitianMatrix(S1))
    assert np.allclose(dec.eigenvalues, roots, atol=1e-12)


def test_spectral_identity_degenerate():
    dec = spectral(HermitianMatrix(S0))
    assert np.allclose(dec.eigenvalues, [1.0, 1.0])
    assert np.allclose(dec.eigenvectors @ dec.eigenvectors.conj().T, np.eye(2))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_spectral_reconstruction_and_orthonormality(n):
    rng = np.random.default_rng(n)
    for _ in range(50):
        a = random_hermitian(rng, n)
        dec = spectral(a)
        assert np.all(np.diff(dec.eigenvalues) >= -1e-12)
        assert np.max(np.abs(dec.reconstruct() - a.mat)) <= 1e-9
        gram = dec.eigenvectors.conj().T @ dec.eigenvectors
        assert np.max(np.abs(gram - np.eye(n))) <= 1e-9


def test_func_calc_identity_returns_input():
    rng = np.random.default_rng(1)
    a = random_hermitian(rng, 3)
    assert func_calc(a, lambda x: x).allclose(a, tol=1e-9)


def test_abs_of_sigma3_is_identity():
    assert matrix_abs(HermitianMatrix(S3)).allclose(S0, tol=1e-12)


def test_sqrt_of_scaled_identity():
    assert matrix_sqrt(HermitianMatrix(4 * S0)).allclose(2 * S0, tol=1e-12)


def test_abs_of_sigma3_minus_sigma1():
    # oracle: (S3 - S1)^2 = 2 I, so the positive square root is sqrt(2) I
    d = S3 - S1
    assert np.allclose(d @ d, 2 * S0)
    assert matrix_abs(HermitianMatrix(d)).allclose(np.sqrt(2) * S0, tol=1e-12)


def test_sqrt_rejects_negative_spectrum():
    with pytest.raises(DomainError):
        matrix_sqrt(HermitianMatrix.diag([-1.0, 1.0]))


def test_lattice_ops_commuting_componentwise():
    join, meet = lattice_ops(HermitianMatrix.diag([3, 0]), HermitianMatrix.diag([1, 2]))
    assert join.allclose(np.diag([3.0, 2.0]), tol=1e-12)
    assert meet.allclose(np.diag([1.0, 0.0]), tol=1e-12)


def test_lattice_ops_pauli_closed_form():
    join, _ = lattice_ops(HermitianMatrix(S3), HermitianMatrix(S1))
    assert join.allclose((S3 + S1) / 2 + (np.sqrt(2) / 2) * S0, tol=1e-12)


def test_join_with_self_is_self():
    rng = np.random.default_rng(2)
    a = random_hermitian(rng, 2)
    join, meet = lattice_ops(a, a)
    assert join.allclose(a, tol=1e-12) and meet.allclose(a, tol=1e-12)


def test_lattice_ops_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        lattice_ops(HermitianMatrix.diag([1, 2]), HermitianMatrix.diag([1, 2, 3]))


def test_join_plus_meet_equals_sum():
    rng = np.random.default_rng(3)
    for _ in range(100):
        a, b = random_hermitian(rng, 2), random_hermitian(rng, 2)
        join, meet = lattice_ops(a, b)
        assert np.max(np.abs((join.mat + meet.mat) - (a.mat + b.mat))) <= 1e-12


def test_symmetry_and_shift_covariance():
    rng = np.random.default_rng(4)
    for _ in range(50):
        a, b = random_hermitian(rng, 2), random_hermitian(rng, 2)
        k = float(rng.normal())
        jab, mab = lattice_ops(a, b)
        jba, mba = lattice_ops(b, a)
        assert jab.allclose(jba, tol=1e-12) and mab.allclose(mba, tol=1e-12)
        jsh, msh = lattice_ops(a + k * S0, b + k * S0)
        assert jsh.allclose(jab.mat + k * S0, tol=1e-9)
        assert msh.allclose(mab.mat + k * S0, tol=1e-9)


def test_commuting_pair_matches_pointwise_extremes():
    # diagonal in a common basis: the pair acts componentwise on joint
    # eigenvalues, matching the pointwise join/meet of the function side
    # through the diagonal embedding
    from ordercones.isotone_cone import Generator, Join, Meet, eval_expr

    rng = np.random.default_rng(5)
    for _ in range(30):
        da = rng.normal(size=3)
        db = rng.normal(size=3)
        pointwise_max = eval_expr(Join(Generator(0), Generator(1)), [da, db])
        pointwise_min = eval_expr(Meet(Generator(0), Generator(1)), [da, db])
        q, _ = np.linalg.qr(rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3)))
        a = HermitianMatrix(q @ np.diag(da) @ q.conj().T)
        b = HermitianMatrix(q @ np.diag(db) @ q.conj().T)
        join, meet = lattice_ops(a, b)
        assert join.allclose(q @ np.diag(pointwise_max) @ q.conj().T, tol=1e-9)
        assert meet.allclose(q @ np.diag(pointwise_min) @ q.conj().T, tol=1e-9)


def test_pair_operations_are_not_associative_in_general():
    # fixed witness triple: the operations stop being lattice operations
    # as soon as the matrices fail to commute
    def join(x, y):
        return lattice_ops(HermitianMatrix(x), HermitianMatrix(y))[0].mat

    lhs = join(join(S3, S1), S2)
    rhs = join(S3, join(S1, S2))
    assert np.max(np.abs(lhs - rhs)) > 1e-6


def test_classify_examples():
    c = classify(HermitianMatrix(S3))
    assert c.norm == pytest.approx(1.0) and not c.positive
    c = classify(HermitianMatrix(S0 + S3))
    assert c.positive and not c.positive_invertible
    c = classify(HermitianMatrix(2 * S0))
    assert c.positive_invertible and c.norm == pytest.approx(2.0)


def test_func_calc_monotone_on_diagonals():
    rng = np.random.default_rng(6)
    for _ in range(30):
        d = rng.normal(size=4)
        a = HermitianMatrix.diag(d)
        out = func_calc(a, np.tanh)
        assert np.allclose(np.diag(out.mat).real, np.tanh(d), atol=1e-12)
        for i in range(4):
            for j in range(4):
                if d[i] <= d[j]:
                    assert out.mat[i, i].real <= out.mat[j, j].real + 1e-12


def test_projection_decomposition_reconstructs():
    rng = np.random.default_rng(7)
    for n in (2, 3, 4):
        for _ in range(20):
            d = np.abs(rng.normal(size=n)) + 0.01
            q, _ = np.linalg.qr(rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))
            a = HermitianMatrix(q @ np.diag(d) @ q.conj().T)
            total = np.zeros((n, n), dtype=complex)
            for coeff, proj in projection_decomposition(a):
                assert coeff >= -1e-12
                assert np.max(np.abs(proj.mat @ proj.mat - proj.mat)) <= 1e-9
                total += coeff * proj.mat
            assert np.max(np.abs(total - a.mat)) <= 1e-9


def test_matrix_json_round_trip():
    rng = np.random.default_rng(8)
    a = random_hermitian(rng, 2)
    assert HermitianMatrix.from_json(a.to_json()).allclose(a, tol=0.0)
