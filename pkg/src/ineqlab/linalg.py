"""Dense complex linear algebra layer shared by every checker.

All public entry points validate their inputs (dtype, shape, finiteness) and
raise the typed errors from :mod:`ineqlab.errors`, so the numerical code above
this layer never has to defend itself.  Matrices are numpy ``complex128``
arrays; eigenvalue and singular-value arrays are real float64, sorted
descending.

Tolerances fixed here:

* ``HERMITIAN_TOL = 1e-10``: max-entry deviation ``|M - M*|`` accepted by the
  Hermitian eigensolver.
* PSD clamp: eigenvalues in ``[-1e-9 * (1 + max|lambda|), 0)`` are treated as
  rounding noise and clamped to zero; anything lower is rejected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import (
    ConvergenceError,
    DimensionMismatch,
    InvalidInput,
    NotHermitian,
    NotOrthogonalProjection,
    NotPositiveSemidefinite,
    ZeroVector,
)

HERMITIAN_TOL = 1e-10
PSD_CLAMP_REL = 1e-9
JACOBI_MAX_SWEEPS = 100
JACOBI_OFF_TOL = 1e-13


# ---------------------------------------------------------------------------
# input validation


def as_matrix(value, name: str = "matrix") -> np.ndarray:
    """Coerce to a 2-D complex128 array, rejecting non-finite entries."""
    try:
        arr = np.asarray(value, dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise InvalidInput(f"{name}: cannot interpret as a complex matrix: {exc}") from None
    if arr.ndim != 2:
        raise InvalidInput(f"{name}: expected a 2-D array, got shape {arr.shape}")
    if arr.size == 0:
        raise InvalidInput(f"{name}: empty matrix")
    if not np.all(np.isfinite(arr)):
        raise InvalidInput(f"{name}: contains NaN or infinite entries")
    return arr


def as_square_matrix(value, name: str = "matrix") -> np.ndarray:
    arr = as_matrix(value, name)
    if arr.shape[0] != arr.shape[1]:
        raise DimensionMismatch(f"{name}: expected a square matrix, got shape {arr.shape}")
    return arr


def as_vector(value, name: str = "vector") -> np.ndarray:
    """Coerce to a 1-D complex128 array; column matrices are flattened."""
    try:
        arr = np.asarray(value, dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise InvalidInput(f"{name}: cannot interpret as a complex vector: {exc}") from None
    if arr.ndim == 2 and arr.shape[1] == 1:
        arr = arr[:, 0]
    if arr.ndim != 1:
        raise InvalidInput(f"{name}: expected a 1-D array, got shape {arr.shape}")
    if arr.size == 0:
        raise InvalidInput(f"{name}: empty vector")
    if not np.all(np.isfinite(arr)):
        raise InvalidInput(f"{name}: contains NaN or infinite entries")
    return arr


def require_same_length(*pairs) -> None:
    """Check that the named vectors share one length.

    Accepts ``(name, array)`` tuples so error messages can point at the
    offending argument.
    """
    base_name, base = pairs[0]
    for name, arr in pairs[1:]:
        if arr.shape[0] != base.shape[0]:
            raise DimensionMismatch(
                f"{name} has length {arr.shape[0]} but {base_name} has length {base.shape[0]}"
            )


def require_operator_on(matrix: np.ndarray, vector: np.ndarray, mname: str, vname: str) -> None:
    if matrix.shape[1] != vector.shape[0]:
        raise DimensionMismatch(
            f"{mname} has shape {matrix.shape} and cannot act on {vname} of length {vector.shape[0]}"
        )


# ---------------------------------------------------------------------------
# scalars


def inner(x, y) -> complex:
    """Inner product, linear in the first slot: sum_j x_j * conj(y_j)."""
    xv = as_vector(x, "x")
    yv = as_vector(y, "y")
    require_same_length(("x", xv), ("y", yv))
    return complex(np.vdot(yv, xv))


def norm(x) -> float:
    """Euclidean norm of a vector."""
    return float(np.linalg.norm(as_vector(x, "x")))


def hermitian_deviation(matrix: np.ndarray) -> float:
    """Largest entry of |M - M*|."""
    return float(np.max(np.abs(matrix - matrix.conj().T)))


def require_hermitian(matrix: np.ndarray, tol: float = HERMITIAN_TOL, name: str = "matrix") -> None:
    dev = hermitian_deviation(matrix)
    if dev > tol:
        raise NotHermitian(f"{name}: max|M - M*| = {dev:.3e} exceeds tolerance {tol:.3e}")


# ---------------------------------------------------------------------------
# decompositions


@dataclass
class EigenDecomposition:
    """Spectral factorization M = V diag(w) V* with w sorted descending."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


@dataclass
class SVDResult:
    """Factorization M = left @ diag(singular_values) @ right*.

    ``right`` holds the right singular vectors as columns, so reconstruction
    uses its conjugate transpose.
    """

    left: np.ndarray
    singular_values: np.ndarray
    right: np.ndarray


@dataclass
class PolarDecomposition:
    """Factorization M = unitary @ modulus with modulus = (M* M)^(1/2)."""

    unitary: np.ndarray
    modulus: np.ndarray


def hermitian_eigen(matrix, tol: float = HERMITIAN_TOL) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix, eigenvalues descending.

    The input must satisfy max|M - M*| <= tol; it is then symmetrized before
    factorization so that roundoff in the caller cannot leak into the result.
    """
    mat = as_square_matrix(matrix)
    require_hermitian(mat, tol)
    sym = 0.5 * (mat + mat.conj().T)
    values, vectors = np.linalg.eigh(sym)
    order = np.argsort(values)[::-1]
    return EigenDecomposition(values[order].astype(np.float64), vectors[:, order])


def jacobi_hermitian_eigen(matrix, tol: float = HERMITIAN_TOL) -> EigenDecomposition:
    """Cyclic Jacobi eigensolver for Hermitian matrices.

    Independent of the LAPACK path in :func:`hermitian_eigen`; the test suite
    cross-checks the two.  Sweeps stop when the off-diagonal Frobenius mass
    falls below 1e-13 times the Frobenius norm of the input, with a hard cap
    of 100 sweeps.
    """
    mat = as_square_matrix(matrix)
    require_hermitian(mat, tol)
    n = mat.shape[0]
    work = 0.5 * (mat + mat.conj().T)
    basis = np.eye(n, dtype=np.complex128)
    scale = float(np.linalg.norm(work))
    if n == 1 or scale == 0.0:
        values = np.real(np.diag(work)).astype(np.float64)
        order = np.argsort(values)[::-1]
        return EigenDecomposition(values[order], basis[:, order])
    target = JACOBI_OFF_TOL * scale

    def off_diag_mass(a: np.ndarray) -> float:
        # Summing the off-diagonal entries directly avoids the cancellation
        # that a total-minus-diagonal formula hits near convergence.
        off = a.copy()
        np.fill_diagonal(off, 0.0)
        return float(np.linalg.norm(off))

    for _ in range(JACOBI_MAX_SWEEPS):
        if off_diag_mass(work) <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                b = work[p, q]
                mag = abs(b)
                if mag == 0.0:
                    continue
                phase = b / mag
                app = work[p, p].real
                aqq = work[q, q].real
                tau = (aqq - app) / (2.0 * mag)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = 1.0 / (tau - np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # 2x2 unitary: diag phase factor times a real rotation.
                rot = np.array(
                    [[c, s], [-s * np.conj(phase), c * np.conj(phase)]],
                    dtype=np.complex128,
                )
                work[:, [p, q]] = work[:, [p, q]] @ rot
                work[[p, q], :] = rot.conj().T @ work[[p, q], :]
                basis[:, [p, q]] = basis[:, [p, q]] @ rot
                work[p, q] = 0.0
                work[q, p] = 0.0
                work[p, p] = work[p, p].real
                work[q, q] = work[q, q].real
    else:
        raise ConvergenceError(
            f"Jacobi sweep limit {JACOBI_MAX_SWEEPS} reached with off-diagonal mass "
            f"{off_diag_mass(work):.3e} above target {target:.3e}"
        )
    values = np.real(np.diag(work)).astype(np.float64)
    order = np.argsort(values)[::-1]
    return EigenDecomposition(values[order], basis[:, order])


def svd(matrix) -> SVDResult:
    """Singular value decomposition of a square matrix, values descending."""
    mat = as_square_matrix(matrix)
    left, values, right_h = np.linalg.svd(mat)
    return SVDResult(left, values.astype(np.float64), right_h.conj().T)


def operator_norm(matrix) -> float:
    """Largest singular value."""
    mat = as_matrix(matrix)
    return float(np.linalg.svd(mat, compute_uv=False)[0])


def psd_power(matrix, exponent: float, name: str = "matrix") -> np.ndarray:
    """Spectral power M^exponent of a positive semidefinite Hermitian matrix.

    Eigenvalues in [-clamp, 0) with clamp = 1e-9 * (1 + max|lambda|) are set
    to zero; anything more negative raises NotPositiveSemidefinite.
    """
    eig = hermitian_eigen(matrix)
    values = eig.eigenvalues
    scale = float(np.max(np.abs(values))) if values.size else 0.0
    clamp = PSD_CLAMP_REL * (1.0 + scale)
    low = float(values.min())
    if low < -clamp:
        raise NotPositiveSemidefinite(
            f"{name}: eigenvalue {low:.6e} below the PSD clamp -{clamp:.3e}"
        )
    clipped = np.clip(values, 0.0, None)
    powered = clipped**exponent
    result = (eig.eigenvectors * powered) @ eig.eigenvectors.conj().T
    return 0.5 * (result + result.conj().T)


def psd_sqrt(matrix, name: str = "matrix") -> np.ndarray:
    """Positive semidefinite square root via the spectral decomposition."""
    return psd_power(matrix, 0.5, name)


def modulus(matrix) -> np.ndarray:
    """|M| = (M* M)^(1/2), computed from the singular value decomposition.

    Using the SVD factors directly (right @ diag(s) @ right*) avoids squaring
    the condition number the way forming M* M first would.
    """
    fac = svd(matrix)
    result = (fac.right * fac.singular_values) @ fac.right.conj().T
    return 0.5 * (result + result.conj().T)


def polar_decompose(matrix) -> PolarDecomposition:
    """Polar factorization M = U |M| with U unitary.

    Both factors come from one SVD (U = left @ right*, |M| from the right
    singular vectors), so the product reconstructs M to float precision even
    when M is singular; in that case U is a unitary completion rather than
    anything canonical.
    """
    fac = svd(matrix)
    unitary = fac.left @ fac.right.conj().T
    mod = (fac.right * fac.singular_values) @ fac.right.conj().T
    return PolarDecomposition(unitary, 0.5 * (mod + mod.conj().T))


# ---------------------------------------------------------------------------
# predicates


def is_positive_contraction(matrix, tol: float = HERMITIAN_TOL) -> bool:
    """True when the matrix is Hermitian with spectrum inside [-tol, 1 + tol]."""
    mat = as_square_matrix(matrix)
    if hermitian_deviation(mat) > tol:
        return False
    values = np.linalg.eigvalsh(0.5 * (mat + mat.conj().T))
    return bool(values[0] >= -tol and values[-1] <= 1.0 + tol)


def require_positive_semidefinite(matrix, tol: float = HERMITIAN_TOL, name: str = "matrix") -> np.ndarray:
    """Validate Hermitian + nonnegative spectrum; returns the symmetrized matrix."""
    mat = as_square_matrix(matrix, name)
    require_hermitian(mat, tol, name)
    sym = 0.5 * (mat + mat.conj().T)
    low = float(np.linalg.eigvalsh(sym)[0])
    scale = float(np.max(np.abs(sym))) if sym.size else 0.0
    clamp = PSD_CLAMP_REL * (1.0 + scale)
    if low < -clamp:
        raise NotPositiveSemidefinite(f"{name}: smallest eigenvalue {low:.6e} is negative")
    return sym


def require_orthogonal_projection(matrix, tol: float = HERMITIAN_TOL, name: str = "matrix") -> np.ndarray:
    """Validate P = P* = P^2 to the given entrywise tolerance."""
    mat = as_square_matrix(matrix, name)
    if hermitian_deviation(mat) > tol:
        raise NotOrthogonalProjection(f"{name}: not Hermitian to tolerance {tol:.3e}")
    dev = float(np.max(np.abs(mat @ mat - mat)))
    if dev > tol:
        raise NotOrthogonalProjection(
            f"{name}: max|P^2 - P| = {dev:.3e} exceeds tolerance {tol:.3e}"
        )
    return mat


def require_nonzero_vector(vector: np.ndarray, name: str = "vector") -> None:
    if float(np.linalg.norm(vector)) == 0.0:
        raise ZeroVector(f"{name}: zero vector not allowed here")


# ---------------------------------------------------------------------------
# JSON interchange


def matrix_to_json_dict(matrix) -> dict:
    """Serializable form: rows, cols, and entrywise real/imag parts."""
    mat = as_matrix(matrix)
    return {
        "rows": int(mat.shape[0]),
        "cols": int(mat.shape[1]),
        "re": mat.real.tolist(),
        "im": mat.imag.tolist(),
    }


def vector_to_json_dict(vector) -> dict:
    """Vectors travel as single-column matrices."""
    vec = as_vector(vector)
    return matrix_to_json_dict(vec.reshape(-1, 1))


def matrix_from_json_dict(obj, name: str = "matrix") -> np.ndarray:
    """Parse the {"rows", "cols", "re", "im"} wire format.

    The "im" block may be omitted for real matrices.
    """
    if not isinstance(obj, dict):
        raise InvalidInput(f"{name}: expected a JSON object, got {type(obj).__name__}")
    for key in ("rows", "cols", "re"):
        if key not in obj:
            raise InvalidInput(f"{name}: missing required key {key!r}")
    rows, cols = obj["rows"], obj["cols"]
    if not isinstance(rows, int) or not isinstance(cols, int) or rows < 1 or cols < 1:
        raise InvalidInput(f"{name}: rows/cols must be positive integers")
    try:
        re_part = np.asarray(obj["re"], dtype=np.float64)
        im_part = (
            np.asarray(obj["im"], dtype=np.float64)
            if "im" in obj and obj["im"] is not None
            else np.zeros((rows, cols))
        )
    except (TypeError, ValueError) as exc:
        raise InvalidInput(f"{name}: malformed entry arrays: {exc}") from None
    if re_part.shape != (rows, cols) or im_part.shape != (rows, cols):
        raise InvalidInput(
            f"{name}: entry arrays must have shape ({rows}, {cols}); "
            f"got re {re_part.shape}, im {im_part.shape}"
        )
    mat = re_part + 1j * im_part
    return as_matrix(mat, name)


def vector_from_json_dict(obj, name: str = "vector") -> np.ndarray:
    mat = matrix_from_json_dict(obj, name)
    if mat.shape[1] != 1:
        raise InvalidInput(f"{name}: expected a single-column matrix, got shape {mat.shape}")
    return mat[:, 0]


def load_matrix(path: str) -> np.ndarray:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            obj = json.load(handle)
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path}: invalid JSON: {exc}") from None
    return matrix_from_json_dict(obj, name=path)


def load_vector(path: str) -> np.ndarray:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            obj = json.load(handle)
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path}: invalid JSON: {exc}") from None
    return vector_from_json_dict(obj, name=path)
