"""Variance lower bounds for a pair of observables on a pure state.

Computes the Heisenberg-Robertson-Schrodinger bounds

    t1 = CovQ(A,B)^2 + |<[A,B]>|^2 / 4   (product form: Var(A) Var(B) >= t1)
    t2 = |<[A,B]>|                       (sum form:     Var(A) + Var(B) >= t2)

and the Maccone-Pati sum bounds built from a unit vector xi_perp orthogonal
to the state,

    l1(s) = |<xi|(A + s B)|xi_perp>|^2 / 2
    l2(s) = s i <[A,B]> + |<xi|(A + s i B)|xi_perp>|^2,   s in {+1, -1},

together with the closed-form optimal xi_perp for each bound: projecting
(A + s B)|xi> (resp. (A - s i B)|xi>) onto the complement of the state
saturates the Cauchy-Schwarz step of each derivation, so no search is needed.
The optimized l2 always equals Var(A) + Var(B); the optimized l1 equals
(Var(A) + Var(B))/2 + |CovQ(A,B)|.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .quantum import (
    RENORM_WINDOW,
    TOL_EIG,
    TOL_NULL,
    EmptyComplementError,
    Observable,
    QuantumState,
    _as_vector,
    _same_dim,
    commutator_mean,
    is_eigenstate,
    orthonormal_complement_basis,
    quantum_covariance,
    variance,
)

__all__ = [
    "OrthogonalCandidate",
    "BoundReport",
    "OrthogonalityError",
    "hrsur_product_bound",
    "hrsur_sum_bound",
    "l1_bound",
    "l2_bound",
    "optimal_xi_perp_l1",
    "optimal_xi_perp_l2",
    "bound_report",
]

CANDIDATE_KINDS = ("user_supplied", "analytic_optimum", "search_optimum")


class OrthogonalityError(ValueError):
    """Proposed xi_perp is not orthogonal to the state within tolerance."""


@dataclass(frozen=True)
class OrthogonalCandidate:
    """A unit vector in the complement of the state with the bound it attains."""

    vector: QuantumState
    bound_value: float
    sign: int
    kind: str

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")
        if self.kind not in CANDIDATE_KINDS:
            raise ValueError(f"unknown candidate kind {self.kind!r}")


@dataclass(frozen=True)
class BoundReport:
    """Every quantity computed for one (state, A, B) instance.

    l1/l2 carry the maximizing sign (+1 on ties) and its candidate vector;
    the per-sign values are kept unclamped for diagnostics. mpur is
    max(l1, l2) and saturation_gap = sum_var - mpur.
    """

    var_a: float
    var_b: float
    sum_var: float
    prod_var: float
    covq: float
    comm_mean_abs: float
    t1: float
    t2: float
    l1: float
    l2: float
    l1_candidate: OrthogonalCandidate
    l2_candidate: OrthogonalCandidate
    l1_by_sign: tuple[float, float]
    l2_by_sign: tuple[float, float]
    mpur: float
    hrsur_trivial: bool
    common_eigenvector: bool
    saturation_gap: float


def _validate_sign(sign: int) -> int:
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    return sign


def _checked_perp(state: QuantumState, xi_perp) -> np.ndarray:
    vec = _as_vector(xi_perp)
    _same_dim(state.dim, vec.size)
    nrm = float(np.linalg.norm(vec))
    if abs(nrm - 1.0) > RENORM_WINDOW:
        raise OrthogonalityError(f"xi_perp norm {nrm!r} is not 1")
    vec = vec / nrm
    overlap = abs(np.vdot(state.vector, vec))
    if overlap > TOL_EIG:
        raise OrthogonalityError(f"|<state|xi_perp>| = {overlap:.3e} exceeds {TOL_EIG:.1e}")
    return vec


def hrsur_product_bound(a: Observable, b: Observable, state: QuantumState) -> float:
    """t1 = CovQ(A,B)^2 + |<[A,B]>|^2 / 4."""
    covq = quantum_covariance(a, b, state)
    comm = commutator_mean(a, b, state)
    return covq * covq + 0.25 * abs(comm) ** 2


def hrsur_sum_bound(a: Observable, b: Observable, state: QuantumState) -> float:
    """t2 = |<[A,B]>|."""
    return abs(commutator_mean(a, b, state))


def l1_bound(a: Observable, b: Observable, state: QuantumState, xi_perp, sign: int) -> float:
    """|<xi|(A + sign B)|xi_perp>|^2 / 2 for a unit xi_perp orthogonal to xi."""
    _validate_sign(sign)
    _same_dim(a.dim, b.dim, state.dim)
    perp = _checked_perp(state, xi_perp)
    image = (a.matrix + sign * b.matrix) @ state.vector
    return 0.5 * abs(np.vdot(image, perp)) ** 2


def l2_bound(a: Observable, b: Observable, state: QuantumState, xi_perp, sign: int) -> float:
    """sign * i<[A,B]> + |<xi|(A + sign i B)|xi_perp>|^2, signs correlated.

    The first term is real because the commutator mean is purely imaginary;
    the value may be negative for the non-maximizing sign and is returned
    unclamped.
    """
    _validate_sign(sign)
    _same_dim(a.dim, b.dim, state.dim)
    perp = _checked_perp(state, xi_perp)
    comm_term = (sign * 1j * commutator_mean(a, b, state)).real
    # <xi|(A + s i B)|xi_perp> = <(A - s i B) xi | xi_perp>
    dual = (a.matrix - sign * 1j * b.matrix) @ state.vector
    return comm_term + abs(np.vdot(dual, perp)) ** 2


def _project_out_state(state: QuantumState, vec: np.ndarray) -> np.ndarray:
    out = vec - np.vdot(state.vector, vec) * state.vector
    # second pass keeps the normalized direction orthogonal even when the
    # projection nearly annihilates vec
    return out - np.vdot(state.vector, out) * state.vector


def _fallback_candidate(state: QuantumState, sign: int) -> OrthogonalCandidate:
    first = orthonormal_complement_basis(state)[0]
    return OrthogonalCandidate(vector=first, bound_value=0.0, sign=sign, kind="analytic_optimum")


def optimal_xi_perp_l1(a: Observable, b: Observable, state: QuantumState, sign: int) -> OrthogonalCandidate:
    """Complement projection of (A + sign B)|xi>, the Cauchy-Schwarz-saturating choice.

    Falls back to the first complement-basis vector (bound value 0) when the
    projection is numerically null, which happens exactly when l1 vanishes
    for every admissible xi_perp.
    """
    _validate_sign(sign)
    _same_dim(a.dim, b.dim, state.dim)
    if state.dim < 2:
        raise EmptyComplementError("optimal xi_perp needs a nonempty complement (d >= 2)")
    image = (a.matrix + sign * b.matrix) @ state.vector
    projected = _project_out_state(state, image)
    scale = 1.0 + a.frobenius_norm() + b.frobenius_norm()
    if float(np.linalg.norm(projected)) <= TOL_NULL * scale:
        return _fallback_candidate(state, sign)
    perp = QuantumState(projected / np.linalg.norm(projected))
    value = l1_bound(a, b, state, perp, sign)
    return OrthogonalCandidate(vector=perp, bound_value=value, sign=sign, kind="analytic_optimum")


def optimal_xi_perp_l2(a: Observable, b: Observable, state: QuantumState, sign: int) -> OrthogonalCandidate:
    """Complement projection of (A - sign i B)|xi>, dual to the l2 matrix element.

    In the degenerate (null-projection) case any complement vector already
    attains the optimum, so the fallback vector is reported with the actual
    attained value rather than 0.
    """
    _validate_sign(sign)
    _same_dim(a.dim, b.dim, state.dim)
    if state.dim < 2:
        raise EmptyComplementError("optimal xi_perp needs a nonempty complement (d >= 2)")
    dual = (a.matrix - sign * 1j * b.matrix) @ state.vector
    projected = _project_out_state(state, dual)
    scale = 1.0 + a.frobenius_norm() + b.frobenius_norm()
    if float(np.linalg.norm(projected)) <= TOL_NULL * scale:
        perp = orthonormal_complement_basis(state)[0]
    else:
        perp = QuantumState(projected / np.linalg.norm(projected))
    value = l2_bound(a, b, state, perp, sign)
    return OrthogonalCandidate(vector=perp, bound_value=value, sign=sign, kind="analytic_optimum")


def _maximize_over_signs(value_plus: float, value_minus: float, tol: float = TOL_EIG) -> int:
    # values equal within tol count as a tie, which goes to +1 for determinism
    return 1 if value_plus >= value_minus - tol else -1


def bound_report(
    a: Observable,
    b: Observable,
    state: QuantumState,
    user_xi_perp=None,
    tol: float = TOL_EIG,
) -> BoundReport:
    """All four bounds for one instance, with maximizing signs and candidates.

    With `user_xi_perp` the Maccone-Pati bounds are evaluated at that vector
    for both signs; otherwise each bound uses its analytic optimum per sign.
    """
    _same_dim(a.dim, b.dim, state.dim)
    var_a = variance(a, state)
    var_b = variance(b, state)
    sum_var = var_a + var_b
    prod_var = var_a * var_b
    covq = quantum_covariance(a, b, state)
    comm_abs = abs(commutator_mean(a, b, state))
    t1 = covq * covq + 0.25 * comm_abs**2
    t2 = comm_abs

    if user_xi_perp is not None:
        perp = QuantumState(_checked_perp(state, user_xi_perp))
        l1_vals = {s: l1_bound(a, b, state, perp, s) for s in (1, -1)}
        l2_vals = {s: l2_bound(a, b, state, perp, s) for s in (1, -1)}
        l1_sign = _maximize_over_signs(l1_vals[1], l1_vals[-1])
        l2_sign = _maximize_over_signs(l2_vals[1], l2_vals[-1])
        l1_cand = OrthogonalCandidate(perp, l1_vals[l1_sign], l1_sign, "user_supplied")
        l2_cand = OrthogonalCandidate(perp, l2_vals[l2_sign], l2_sign, "user_supplied")
    else:
        l1_cands = {s: optimal_xi_perp_l1(a, b, state, s) for s in (1, -1)}
        l2_cands = {s: optimal_xi_perp_l2(a, b, state, s) for s in (1, -1)}
        l1_vals = {s: c.bound_value for s, c in l1_cands.items()}
        l2_vals = {s: c.bound_value for s, c in l2_cands.items()}
        l1_sign = _maximize_over_signs(l1_vals[1], l1_vals[-1])
        l2_sign = _maximize_over_signs(l2_vals[1], l2_vals[-1])
        l1_cand = l1_cands[l1_sign]
        l2_cand = l2_cands[l2_sign]

    l1 = l1_vals[l1_sign]
    l2 = l2_vals[l2_sign]
    mpur = max(l1, l2)
    return BoundReport(
        var_a=var_a,
        var_b=var_b,
        sum_var=sum_var,
        prod_var=prod_var,
        covq=covq,
        comm_mean_abs=comm_abs,
        t1=t1,
        t2=t2,
        l1=l1,
        l2=l2,
        l1_candidate=l1_cand,
        l2_candidate=l2_cand,
        l1_by_sign=(l1_vals[1], l1_vals[-1]),
        l2_by_sign=(l2_vals[1], l2_vals[-1]),
        mpur=mpur,
        hrsur_trivial=bool(t1 <= tol and t2 <= tol and sum_var > tol),
        common_eigenvector=bool(is_eigenstate(a, state, tol) and is_eigenstate(b, state, tol)),
        saturation_gap=sum_var - mpur,
    )
