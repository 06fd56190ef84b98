"""Operator inequality chains: contractive Cauchy-Schwarz refinements,
numerical-radius product bounds, spectral power bounds, and the closing
refinement of omega(T) <= ||T||.

Precondition enforcement is strict: every checker validates the operator
hypotheses it relies on and raises a typed error when they fail.  The one
deliberate exception is :func:`remark36_scaled_unchecked`, which evaluates
the scaled bound without the positivity hypothesis so that the known
counterexample can be reproduced and recorded as a genuine violation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chains import ChainResult, ToleranceConfig, make_chain
from .errors import InvalidInput, SpectrumOutOfRange, ZeroOperator
from .linalg import (
    HERMITIAN_TOL,
    PSD_CLAMP_REL,
    as_square_matrix,
    as_vector,
    operator_norm,
    polar_decompose,
    psd_power,
    psd_sqrt,
    require_hermitian,
    require_operator_on,
    require_positive_semidefinite,
    require_same_length,
)
from .radius import DEFAULT_SWEEP, RadiusSweepConfig, numerical_radius


@dataclass(frozen=True)
class PowerParams:
    """Exponent for the power-inequality checks; only r >= 1 is covered."""

    r: float = 1.0

    def __post_init__(self):
        if not (self.r >= 1.0):
            raise InvalidInput(f"power exponent must satisfy r >= 1, got {self.r}")


def _as_power(power) -> float:
    if isinstance(power, PowerParams):
        return float(power.r)
    return float(PowerParams(float(power)).r)


def _power_tag(r: float) -> str:
    return f"{r:g}"


def _hermitian_with_spectrum(matrix, low: float, high: float, name: str, slack: float) -> np.ndarray:
    """Validate Hermitian-ness and an eigenvalue window; return symmetrized M."""
    mat = as_square_matrix(matrix, name)
    require_hermitian(mat, HERMITIAN_TOL, name)
    sym = 0.5 * (mat + mat.conj().T)
    values = np.linalg.eigvalsh(sym)
    if values[0] < low - slack or values[-1] > high + slack:
        raise SpectrumOutOfRange(
            f"{name}: spectrum [{values[0]:.6e}, {values[-1]:.6e}] lies outside "
            f"[{low}, {high}] beyond tolerance {slack:.3e}"
        )
    return sym


def _require_positive_contraction(matrix, name: str = "A") -> np.ndarray:
    return _hermitian_with_spectrum(matrix, 0.0, 1.0, name, HERMITIAN_TOL)


def _require_nonzero_psd(matrix, name: str = "A") -> np.ndarray:
    sym = require_positive_semidefinite(matrix, name=name)
    if operator_norm(sym) == 0.0:
        raise ZeroOperator(f"{name}: the zero operator is excluded here")
    return sym


def _vector_pair(x, y, operator: np.ndarray, opname: str) -> tuple[np.ndarray, np.ndarray]:
    xv = as_vector(x, "x")
    yv = as_vector(y, "y")
    require_same_length(("x", xv), ("y", yv))
    require_operator_on(operator, xv, opname, "x")
    return xv, yv


def _inner(x: np.ndarray, y: np.ndarray) -> complex:
    return complex(np.vdot(y, x))


def _quad_form(matrix: np.ndarray, vector: np.ndarray) -> float:
    """Re<Mv, v>, clamped at zero; used only where M is PSD up to rounding."""
    value = float(np.real(np.vdot(vector, matrix @ vector)))
    return max(value, 0.0)


def lemma_2A_chain(A, x, y, tolerance: ToleranceConfig | None = None) -> ChainResult:
    """Cauchy-Schwarz defect bound for (I - A) with 0 <= A <= 2I.

    |<(I-A)x, (I-A)y>| <= ||x|| ||y|| - sqrt(<(2A-A^2)x,x> <(2A-A^2)y,y>).
    """
    sym = _hermitian_with_spectrum(A, 0.0, 2.0, "A", HERMITIAN_TOL)
    xv, yv = _vector_pair(x, y, sym, "A")
    residual = sym @ sym
    gap = 2.0 * sym - residual
    lhs = abs(_inner(xv - sym @ xv, yv - sym @ yv))
    radical = np.sqrt(_quad_form(gap, xv) * _quad_form(gap, yv))
    rhs = float(np.linalg.norm(xv)) * float(np.linalg.norm(yv)) - radical
    return make_chain(
        "lemma_2A",
        [("deflated_inner_product", lhs), ("norm_minus_radical", rhs)],
        tolerance,
    )


def theorem_gap_chain(A, x, y, tolerance: ToleranceConfig | None = None) -> ChainResult:
    """Gap bound for a positive contraction: the Cauchy-Schwarz defect of
    A - A^2 is at most a quarter of the defect of the identity."""
    sym = _require_positive_contraction(A, "A")
    xv, yv = _vector_pair(x, y, sym, "A")
    gap = sym - sym @ sym
    radical = np.sqrt(_quad_form(gap, xv) * _quad_form(gap, yv))
    middle = radical - abs(_inner(gap @ xv, yv))
    cap = (float(np.linalg.norm(xv)) * float(np.linalg.norm(yv)) - abs(_inner(xv, yv))) / 4.0
    return make_chain(
        "theorem_gap",
        [("zero", 0.0), ("gap_defect", middle), ("quarter_cs_defect", cap)],
        tolerance,
    )


def corollary33_chain(
    A, x, y, scaled: bool = False, tolerance: ToleranceConfig | None = None
) -> ChainResult:
    """Additive Cauchy-Schwarz refinement through a positive operator.

    Unscaled form requires a positive contraction; the scaled form accepts
    any nonzero PSD operator and divides its contribution by ||A||.
    """
    if scaled:
        sym = _require_nonzero_psd(A, "A")
        denom = operator_norm(sym)
        name = "corollary33_scaled"
    else:
        sym = _require_positive_contraction(A, "A")
        denom = 1.0
        name = "corollary33"
    xv, yv = _vector_pair(x, y, sym, "A")
    radical = np.sqrt(_quad_form(sym, xv) * _quad_form(sym, yv))
    group = (radical - abs(_inner(sym @ xv, yv))) / denom
    lhs = abs(_inner(xv, yv)) + group
    rhs = float(np.linalg.norm(xv)) * float(np.linalg.norm(yv))
    return make_chain(
        name,
        [("refined_inner_product", lhs), ("norm_product", rhs)],
        tolerance,
    )


def corollary35_chain(A, x, y, tolerance: ToleranceConfig | None = None) -> ChainResult:
    """Buzano-type bound for a positive contraction in the middle slot."""
    sym = _require_positive_contraction(A, "A")
    xv, yv = _vector_pair(x, y, sym, "A")
    lhs = abs(_inner(sym @ xv, yv))
    rhs = 0.5 * (
        float(np.linalg.norm(xv)) * float(np.linalg.norm(yv)) + abs(_inner(xv, yv))
    )
    return make_chain(
        "corollary35",
        [("sandwiched_inner_product", lhs), ("buzano_bound", rhs)],
        tolerance,
    )


def _remark36_terms(sym: np.ndarray, xv: np.ndarray, yv: np.ndarray) -> list[tuple[str, float]]:
    lhs = abs(_inner(sym @ xv, yv))
    rhs = 0.5 * operator_norm(sym) * (
        abs(_inner(xv, yv)) + float(np.linalg.norm(xv)) * float(np.linalg.norm(yv))
    )
    return [("operator_inner_product", lhs), ("scaled_buzano_bound", rhs)]


def remark36_scaled(A, x, y, tolerance: ToleranceConfig | None = None) -> ChainResult:
    """Norm-scaled Buzano bound, valid for nonzero PSD operators only."""
    sym = _require_nonzero_psd(A, "A")
    xv, yv = _vector_pair(x, y, sym, "A")
    return make_chain("remark36_scaled", _remark36_terms(sym, xv, yv), tolerance)


def remark36_scaled_unchecked(A, x, y, tolerance: ToleranceConfig | None = None) -> ChainResult:
    """Same expression as :func:`remark36_scaled` with no positivity check.

    For operators that are not PSD the bound can genuinely fail; this path
    exists so that failure can be demonstrated and asserted on.
    """
    mat = as_square_matrix(A, "A")
    xv, yv = _vector_pair(x, y, mat, "A")
    return make_chain("remark36_counterexample", _remark36_terms(mat, xv, yv), tolerance)


def remark36_polar_chain(A, x, y, tolerance: ToleranceConfig | None = None) -> ChainResult:
    """Polar-decomposition route to the scaled bound for arbitrary nonzero A.

    With A = U |A| the first inequality applies the PSD bound to |A| against
    the rotated pair (U* y stands in for y); the second uses ||U* y|| <= ||y||.
    """
    mat = as_square_matrix(A, "A")
    if operator_norm(mat) == 0.0:
        raise ZeroOperator("A: the zero operator is excluded here")
    xv, yv = _vector_pair(x, y, mat, "A")
    polar = polar_decompose(mat)
    half_norm = 0.5 * operator_norm(mat)
    nx = float(np.linalg.norm(xv))
    ny = float(np.linalg.norm(yv))
    u_on_x = abs(_inner(polar.unitary @ xv, yv))
    rotated = float(np.linalg.norm(polar.unitary.conj().T @ yv))
    return make_chain(
        "remark36_polar",
        [
            ("operator_inner_product", abs(_inner(mat @ xv, yv))),
            ("polar_split_bound", half_norm * (u_on_x + nx * rotated)),
            ("scaled_buzano_bound", half_norm * (u_on_x + nx * ny)),
        ],
        tolerance,
    )


def corollary37_chain(
    A,
    B,
    tolerance: ToleranceConfig | None = None,
    sweep: RadiusSweepConfig | None = None,
) -> ChainResult:
    """Numerical radius of a product against a positive factor.

    omega(AB) <= (||B||/2)(omega(A) + ||A||) <= (3/2) ||B|| omega(A).
    """
    mat_a = as_square_matrix(A, "A")
    sym_b = require_positive_semidefinite(B, name="B")
    if mat_a.shape != sym_b.shape:
        raise InvalidInput(
            f"A has shape {mat_a.shape} but B has shape {sym_b.shape}"
        )
    cfg = sweep if sweep is not None else DEFAULT_SWEEP
    omega_ab = numerical_radius(mat_a @ sym_b, cfg).omega
    omega_a = numerical_radius(mat_a, cfg).omega
    norm_a = operator_norm(mat_a)
    norm_b = operator_norm(sym_b)
    return make_chain(
        "corollary37",
        [
            ("omega_product", omega_ab),
            ("half_norm_split", 0.5 * norm_b * (omega_a + norm_a)),
            ("three_halves_bound", 1.5 * norm_b * omega_a),
        ],
        tolerance,
        omega_grade=True,
    )


def _require_triple(A, S, T) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    sym_a = _require_positive_contraction(A, "A")
    mat_s = as_square_matrix(S, "S")
    mat_t = as_square_matrix(T, "T")
    if not (sym_a.shape == mat_s.shape == mat_t.shape):
        raise InvalidInput(
            f"A, S, T must share one shape; got {sym_a.shape}, {mat_s.shape}, {mat_t.shape}"
        )
    return sym_a, mat_s, mat_t


def corollary38_omega_chain(
    A,
    S,
    T,
    tolerance: ToleranceConfig | None = None,
    sweep: RadiusSweepConfig | None = None,
) -> ChainResult:
    """Sandwiched numerical radius bound:

    omega(S A T) <= (1/4) || |T|^2 + |S*|^2 || + (1/2) omega(S T).
    """
    sym_a, mat_s, mat_t = _require_triple(A, S, T)
    cfg = sweep if sweep is not None else DEFAULT_SWEEP
    omega_sat = numerical_radius(mat_s @ sym_a @ mat_t, cfg).omega
    omega_st = numerical_radius(mat_s @ mat_t, cfg).omega
    mod_t_sq = mat_t.conj().T @ mat_t
    mod_s_adj_sq = mat_s @ mat_s.conj().T
    bound = 0.25 * operator_norm(mod_t_sq + mod_s_adj_sq) + 0.5 * omega_st
    return make_chain(
        "corollary38_omega",
        [("omega_sandwich", omega_sat), ("moduli_plus_half_omega", bound)],
        tolerance,
        omega_grade=True,
    )


def corollary38_norm_chain(A, S, T, tolerance: ToleranceConfig | None = None) -> ChainResult:
    """Operator-norm companion bound: ||S A T|| <= (||T|| ||S|| + ||S T||)/2."""
    sym_a, mat_s, mat_t = _require_triple(A, S, T)
    lhs = operator_norm(mat_s @ sym_a @ mat_t)
    rhs = 0.5 * (operator_norm(mat_t) * operator_norm(mat_s) + operator_norm(mat_s @ mat_t))
    return make_chain(
        "corollary38_norm",
        [("norm_sandwich", lhs), ("norm_split_bound", rhs)],
        tolerance,
    )


def power_chain(
    A,
    S,
    T,
    power,
    tolerance: ToleranceConfig | None = None,
    sweep: RadiusSweepConfig | None = None,
) -> ChainResult:
    """Power form of the sandwich bound, r >= 1:

    omega(S A T)^r <= (1/4) || |T|^{2r} + |S*|^{2r} || + (1/2) omega(S T)^r.

    |X|^{2r} is computed by raising the eigenvalues of the PSD matrix X* X to
    the power r, avoiding an intermediate square root.
    """
    r = _as_power(power)
    sym_a, mat_s, mat_t = _require_triple(A, S, T)
    cfg = sweep if sweep is not None else DEFAULT_SWEEP
    omega_sat = numerical_radius(mat_s @ sym_a @ mat_t, cfg).omega
    omega_st = numerical_radius(mat_s @ mat_t, cfg).omega
    mod_t_2r = psd_power(mat_t.conj().T @ mat_t, r, "T*T")
    mod_s_adj_2r = psd_power(mat_s @ mat_s.conj().T, r, "SS*")
    bound = 0.25 * operator_norm(mod_t_2r + mod_s_adj_2r) + 0.5 * omega_st**r
    return make_chain(
        f"power_r{_power_tag(r)}",
        [("omega_sandwich_power", omega_sat**r), ("moduli_power_bound", bound)],
        tolerance,
        omega_grade=True,
    )


def bourin_property(M, N, power, tolerance: ToleranceConfig | None = None) -> ChainResult:
    """Norm convexity transfer for PSD pairs: the r-th power of the average
    is dominated in norm by the average of the r-th powers."""
    r = _as_power(power)
    sym_m = require_positive_semidefinite(M, name="M")
    sym_n = require_positive_semidefinite(N, name="N")
    if sym_m.shape != sym_n.shape:
        raise InvalidInput(f"M has shape {sym_m.shape} but N has shape {sym_n.shape}")
    lhs = operator_norm(psd_power(0.5 * (sym_m + sym_n), r, "(M+N)/2"))
    rhs = 0.5 * operator_norm(psd_power(sym_m, r, "M") + psd_power(sym_n, r, "N"))
    return make_chain(
        f"bourin_r{_power_tag(r)}",
        [("power_of_average", lhs), ("average_of_powers", rhs)],
        tolerance,
    )


def contraction_builder(A) -> np.ndarray:
    """Solve B - B^2 = A for a positive contraction B.

    Requires A Hermitian with spectrum in [0, 1/4]; returns the branch
    B = (I + sqrt(I - 4A))/2, whose spectrum lies in [1/2, 1].
    """
    mat = as_square_matrix(A, "A")
    require_hermitian(mat, HERMITIAN_TOL, "A")
    sym = 0.5 * (mat + mat.conj().T)
    values = np.linalg.eigvalsh(sym)
    slack = PSD_CLAMP_REL * (1.0 + float(np.max(np.abs(values))))
    if values[0] < -slack or values[-1] > 0.25 + slack:
        raise SpectrumOutOfRange(
            f"A: spectrum [{values[0]:.6e}, {values[-1]:.6e}] lies outside [0, 0.25] "
            f"beyond tolerance {slack:.3e}"
        )
    eye = np.eye(sym.shape[0], dtype=np.complex128)
    root = psd_sqrt(eye - 4.0 * sym, "I - 4A")
    return 0.5 * (eye + root)


def final_omega_refinement_chain(
    T,
    tolerance: ToleranceConfig | None = None,
    sweep: RadiusSweepConfig | None = None,
) -> ChainResult:
    """Refinement chain between omega(T) and ||T||.

    With T = U |T| and R = |T|^{1/2}, the numerical radius of the half-rotated
    factor U R interpolates:

    omega(T) <= (||T|| + ||T||^{1/2} omega(UR))/2
            <= (||T|| + ||T||^{1/2} ||UR||)/2
            <= (||T|| + ||T||^{1/2} ||U|| ||T||^{1/2})/2 <= ||T||.
    """
    mat = as_square_matrix(T, "T")
    cfg = sweep if sweep is not None else DEFAULT_SWEEP
    polar = polar_decompose(mat)
    half_power = psd_sqrt(polar.modulus, "|T|")
    rotated = polar.unitary @ half_power
    norm_t = operator_norm(mat)
    sqrt_norm = float(np.sqrt(norm_t))
    omega_t = numerical_radius(mat, cfg).omega
    omega_ur = numerical_radius(rotated, cfg).omega
    return make_chain(
        "final_omega_refinement",
        [
            ("omega", omega_t),
            ("half_rotated_omega", 0.5 * (norm_t + sqrt_norm * omega_ur)),
            ("half_rotated_norm", 0.5 * (norm_t + sqrt_norm * operator_norm(rotated))),
            ("unitary_factor_bound", 0.5 * (norm_t + sqrt_norm * operator_norm(polar.unitary) * sqrt_norm)),
            ("operator_norm", norm_t),
        ],
        tolerance,
        omega_grade=True,
    )
