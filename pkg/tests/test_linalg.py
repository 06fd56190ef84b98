"""Linear algebra layer: scalars, decompositions, predicates, JSON codec."""

import json

import numpy as np
import pytest

from ineqlab import errors
from ineqlab.linalg import (
    as_matrix,
    as_vector,
    hermitian_eigen,
    inner,
    is_positive_contraction,
    jacobi_hermitian_eigen,
    load_matrix,
    matrix_from_json_dict,
    matrix_to_json_dict,
    modulus,
    norm,
    operator_norm,
    polar_decompose,
    psd_power,
    psd_sqrt,
    require_orthogonal_projection,
    svd,
    vector_from_json_dict,
    vector_to_json_dict,
)


def random_complex(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_hermitian(rng, n):
    g = random_complex(rng, n, n)
    return 0.5 * (g + g.conj().T)


# ---------------------------------------------------------------------------
# validation and scalars


def test_as_matrix_rejects_bad_inputs():
    with pytest.raises(errors.InvalidInput):
        as_matrix([1.0, 2.0])
    with pytest.raises(errors.InvalidInput):
        as_matrix([[np.nan, 0.0], [0.0, 1.0]])
    with pytest.raises(errors.InvalidInput):
        as_matrix([[]])
    with pytest.raises(errors.InvalidInput):
        as_matrix("not a matrix")


def test_as_vector_accepts_column_matrices():
    v = as_vector([[1.0], [2.0]])
    assert v.shape == (2,)
    with pytest.raises(errors.InvalidInput):
        as_vector([[1.0, 2.0], [3.0, 4.0]])
    with pytest.raises(errors.InvalidInput):
        as_vector([np.inf, 1.0])


def test_inner_is_linear_in_first_slot():
    rng = np.random.default_rng(0)
    x, y = random_complex(rng, 5), random_complex(rng, 5)
    c = 2.0 - 3.0j
    assert np.isclose(inner(c * x, y), c * inner(x, y))
    assert np.isclose(inner(x, c * y), np.conj(c) * inner(x, y))
    assert np.isclose(inner(x, y), np.conj(inner(y, x)))
    # Explicit convention check: sum x_j conj(y_j).
    assert np.isclose(inner(x, y), np.sum(x * np.conj(y)))


def test_inner_dimension_mismatch():
    with pytest.raises(errors.DimensionMismatch):
        inner([1.0, 2.0], [1.0, 2.0, 3.0])


def test_norm_basics():
    assert norm([3.0, 4.0]) == pytest.approx(5.0)
    assert norm([1j, 0.0]) == pytest.approx(1.0)


# ---------------------------------------------------------------------------
# eigendecompositions


def test_hermitian_eigen_descending_and_reconstructs():
    rng = np.random.default_rng(1)
    for n in (1, 2, 3, 5, 8):
        m = random_hermitian(rng, n)
        eig = hermitian_eigen(m)
        assert np.all(np.diff(eig.eigenvalues) <= 0)
        rebuilt = (eig.eigenvectors * eig.eigenvalues) @ eig.eigenvectors.conj().T
        assert np.max(np.abs(rebuilt - m)) < 1e-12 * (1 + np.max(np.abs(m)))
        gram = eig.eigenvectors.conj().T @ eig.eigenvectors
        assert np.max(np.abs(gram - np.eye(n))) < 1e-12


def test_hermitian_eigen_rejects_non_hermitian():
    with pytest.raises(errors.NotHermitian):
        hermitian_eigen([[0.0, 1.0], [0.0, 0.0]])


def test_jacobi_agrees_with_lapack_path():
    rng = np.random.default_rng(2)
    for n in (2, 3, 4, 6, 8):
        for _ in range(5):
            m = random_hermitian(rng, n)
            ref = hermitian_eigen(m)
            jac = jacobi_hermitian_eigen(m)
            scale = 1 + np.max(np.abs(ref.eigenvalues))
            assert np.max(np.abs(jac.eigenvalues - ref.eigenvalues)) < 1e-10 * scale
            rebuilt = (jac.eigenvectors * jac.eigenvalues) @ jac.eigenvectors.conj().T
            assert np.max(np.abs(rebuilt - m)) < 1e-10 * scale
            gram = jac.eigenvectors.conj().T @ jac.eigenvectors
            assert np.max(np.abs(gram - np.eye(n))) < 1e-10


def test_jacobi_handles_diagonal_and_scalar_input():
    eig = jacobi_hermitian_eigen(np.diag([3.0, -1.0, 2.0]))
    assert np.allclose(eig.eigenvalues, [3.0, 2.0, -1.0])
    single = jacobi_hermitian_eigen([[4.0]])
    assert single.eigenvalues[0] == pytest.approx(4.0)


# ---------------------------------------------------------------------------
# svd, psd roots, polar


def test_svd_reconstructs_and_orders():
    rng = np.random.default_rng(3)
    for n in (1, 2, 4, 7):
        m = random_complex(rng, n, n)
        fac = svd(m)
        assert np.all(np.diff(fac.singular_values) <= 0)
        rebuilt = (fac.left * fac.singular_values) @ fac.right.conj().T
        assert np.max(np.abs(rebuilt - m)) < 1e-12 * (1 + np.max(np.abs(m)))


def test_svd_requires_square():
    with pytest.raises(errors.DimensionMismatch):
        svd(np.ones((2, 3)))


def test_operator_norm_matches_svd():
    rng = np.random.default_rng(4)
    m = random_complex(rng, 5, 5)
    assert operator_norm(m) == pytest.approx(np.linalg.svd(m, compute_uv=False)[0])
    assert operator_norm(np.zeros((3, 3))) == 0.0


def test_psd_sqrt_squares_back():
    rng = np.random.default_rng(5)
    for n in (2, 3, 6):
        g = random_complex(rng, n, n)
        m = g.conj().T @ g
        root = psd_sqrt(m)
        assert np.max(np.abs(root @ root - m)) < 1e-10 * (1 + np.max(np.abs(m)))
        assert np.max(np.abs(root - root.conj().T)) < 1e-13


def test_psd_sqrt_clamps_rounding_noise_but_rejects_negative():
    tiny = np.diag([1.0, -1e-12])
    root = psd_sqrt(tiny)
    assert root[1, 1] == 0.0
    with pytest.raises(errors.NotPositiveSemidefinite):
        psd_sqrt(np.diag([1.0, -1e-3]))


def test_psd_power_matches_eigen_power():
    rng = np.random.default_rng(6)
    g = random_complex(rng, 4, 4)
    m = g.conj().T @ g
    cubed = psd_power(m, 3.0)
    assert np.max(np.abs(cubed - m @ m @ m)) < 1e-8 * (1 + np.max(np.abs(m)) ** 3)


def test_modulus_and_polar():
    rng = np.random.default_rng(7)
    for n in (2, 3, 5):
        m = random_complex(rng, n, n)
        pol = polar_decompose(m)
        # Unitary factor and exact reconstruction.
        gram = pol.unitary.conj().T @ pol.unitary
        assert np.max(np.abs(gram - np.eye(n))) < 1e-12
        assert np.max(np.abs(pol.unitary @ pol.modulus - m)) < 1e-12 * (1 + np.max(np.abs(m)))
        # modulus agrees with the direct square root of M* M.
        direct = psd_sqrt(m.conj().T @ m)
        assert np.max(np.abs(pol.modulus - direct)) < 1e-7 * (1 + np.max(np.abs(m)))
        assert np.max(np.abs(modulus(m) - pol.modulus)) < 1e-13


def test_polar_of_singular_matrix_still_unitary():
    m = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
    pol = polar_decompose(m)
    assert np.max(np.abs(pol.unitary.conj().T @ pol.unitary - np.eye(2))) < 1e-14
    assert np.max(np.abs(pol.unitary @ pol.modulus - m)) < 1e-14


# ---------------------------------------------------------------------------
# predicates


def test_is_positive_contraction():
    assert is_positive_contraction(np.eye(3))
    assert is_positive_contraction(np.zeros((2, 2)))
    assert is_positive_contraction(np.diag([0.3, 0.9]))
    assert not is_positive_contraction(np.diag([0.3, 1.5]))
    assert not is_positive_contraction(np.diag([-0.2, 0.5]))
    assert not is_positive_contraction([[0.0, 1.0], [0.0, 0.0]])


def test_require_orthogonal_projection():
    p = np.full((2, 2), 0.5)
    require_orthogonal_projection(p)
    with pytest.raises(errors.NotOrthogonalProjection):
        require_orthogonal_projection(np.diag([1.0, 0.5]))
    with pytest.raises(errors.NotOrthogonalProjection):
        require_orthogonal_projection([[0.0, 1.0], [0.0, 0.0]])


# ---------------------------------------------------------------------------
# JSON codec


def test_matrix_json_round_trip_is_exact():
    rng = np.random.default_rng(8)
    m = rng.standard_normal((3, 4)) + 1j * rng.standard_normal((3, 4))
    doc = json.loads(json.dumps(matrix_to_json_dict(m)))
    back = matrix_from_json_dict(doc)
    assert np.array_equal(back, m)


def test_vector_json_round_trip():
    v = np.array([1.5, -2.25 + 0.5j, 3.0])
    doc = vector_to_json_dict(v)
    assert doc["cols"] == 1 and doc["rows"] == 3
    assert np.array_equal(vector_from_json_dict(doc), v)


def test_json_real_only_input_allowed():
    m = matrix_from_json_dict({"rows": 2, "cols": 2, "re": [[1.0, 0.0], [0.0, 1.0]]})
    assert np.array_equal(m, np.eye(2))


def test_json_rejects_malformed_documents():
    with pytest.raises(errors.InvalidInput):
        matrix_from_json_dict({"rows": 2, "cols": 2})
    with pytest.raises(errors.InvalidInput):
        matrix_from_json_dict({"rows": 2, "cols": 2, "re": [[1.0]]})
    with pytest.raises(errors.InvalidInput):
        matrix_from_json_dict({"rows": 0, "cols": 2, "re": []})
    with pytest.raises(errors.InvalidInput):
        matrix_from_json_dict([1, 2, 3])
    with pytest.raises(errors.InvalidInput):
        vector_from_json_dict({"rows": 2, "cols": 2, "re": [[1.0, 2.0], [3.0, 4.0]]})


def test_load_matrix_missing_file(tmp_path):
    with pytest.raises(errors.InvalidInput):
        load_matrix(str(tmp_path / "absent.json"))
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(errors.InvalidInput):
        load_matrix(str(bad))
