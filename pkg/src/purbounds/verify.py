"""Independent verification machinery for the bound computations.

Seeded random instance generation (Haar states, GUE-style observables),
brute-force optimization over the orthogonal complement as a check on the
closed-form optima, direct numeric checks of the foundational identities
(Cauchy-Schwarz, parallelogram law), and the randomized invariant suite that
drives all of them.

Randomness is pinned to numpy's PCG64: every operation takes a seed (or an
already-constructed Generator), and the suite derives one independent stream
per instance from (seed, instance index), so results do not depend on
evaluation order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .bounds import bound_report, optimal_xi_perp_l1, optimal_xi_perp_l2
from .instances import instance_payload
from .quantum import (
    MAX_DIM,
    EmptyComplementError,
    Observable,
    QuantumState,
    _as_vector,
    _same_dim,
    anticommutator_mean,
    commutator_mean,
    deviation_vector,
    normalize,
    orthonormal_complement_basis,
)

__all__ = [
    "RandomSpec",
    "SearchResult",
    "SuiteReport",
    "random_state",
    "random_observable",
    "random_unit_in_complement",
    "search_optimal_xi_perp",
    "check_parallelogram",
    "check_csi",
    "run_invariant_suite",
    "DEFAULT_SUITE_DIMS",
]

DEFAULT_SUITE_DIMS = (2, 3, 4, 6, 8)
DEFAULT_SUITE_TOL = 1e-9


def _rng(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def _check_dim(dim: int) -> int:
    if not 2 <= dim <= MAX_DIM:
        raise ValueError(f"dimension {dim} outside supported range [2, {MAX_DIM}]")
    return dim


def random_state(dim: int, seed) -> QuantumState:
    """Haar-distributed state: standard complex Gaussian components, normalized."""
    _check_dim(dim)
    rng = _rng(seed)
    vec = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return normalize(vec)


def random_observable(dim: int, seed) -> Observable:
    """GUE-style observable: (G + G†)/2 for G with standard complex Gaussian entries."""
    _check_dim(dim)
    rng = _rng(seed)
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return Observable(0.5 * (g + g.conj().T))


def _complement_matrix(state: QuantumState) -> np.ndarray:
    """Complement basis vectors as rows of a (d-1, d) matrix."""
    return np.array([b.vector for b in orthonormal_complement_basis(state)])


def _complement_samples(basis: np.ndarray, count: int, rng: np.random.Generator) -> np.ndarray:
    """`count` unit vectors uniform on the complement sphere, as rows."""
    coeffs = rng.standard_normal((count, basis.shape[0])) + 1j * rng.standard_normal((count, basis.shape[0]))
    vecs = coeffs @ basis
    norms = np.linalg.norm(vecs, axis=1, keepdims=True)
    return vecs / norms


def random_unit_in_complement(state: QuantumState, seed) -> QuantumState:
    """Uniform unit vector orthogonal to the state (Gaussian over the complement basis)."""
    if state.dim < 2:
        raise EmptyComplementError("a 1-dimensional state has an empty orthogonal complement")
    basis = _complement_matrix(state)
    return QuantumState(_complement_samples(basis, 1, _rng(seed))[0])


def _l1_sample_values(a: Observable, b: Observable, state: QuantumState, perps: np.ndarray, sign: int) -> np.ndarray:
    image = (a.matrix + sign * b.matrix) @ state.vector
    return 0.5 * np.abs(perps @ image.conj()) ** 2


def _l2_sample_values(a: Observable, b: Observable, state: QuantumState, perps: np.ndarray, sign: int) -> np.ndarray:
    comm_term = (sign * 1j * commutator_mean(a, b, state)).real
    dual = (a.matrix - sign * 1j * b.matrix) @ state.vector
    return comm_term + np.abs(perps @ dual.conj()) ** 2


@dataclass(frozen=True)
class RandomSpec:
    """Deterministic batch of random instances at one dimension."""

    dim: int
    seed: int
    count: int

    def __post_init__(self):
        _check_dim(self.dim)
        if self.count < 1:
            raise ValueError("count must be positive")

    def instances(self):
        """Yield (state, a, b) triples; stream k is derived from (seed, k)."""
        for k in range(self.count):
            rng = _rng([self.seed, k])
            yield random_state(self.dim, rng), random_observable(self.dim, rng), random_observable(self.dim, rng)


@dataclass(frozen=True)
class SearchResult:
    """Brute-force complement search outcome versus the analytic optimum."""

    best_value: float
    best_vector: QuantumState
    samples_used: int
    analytic_value: float

    @property
    def gap(self) -> float:
        return self.analytic_value - self.best_value


def search_optimal_xi_perp(
    a: Observable,
    b: Observable,
    state: QuantumState,
    which: str,
    sign: int,
    samples: int,
    seed,
) -> SearchResult:
    """Evaluate one bound at `samples` random complement vectors and compare.

    best_value is the maximum over the random samples only; the analytic
    optimum always dominates it (gap >= 0 up to rounding), and for d = 2 the
    complement is a single phase circle so the gap vanishes.
    """
    if which not in ("l1", "l2"):
        raise ValueError(f"which must be 'l1' or 'l2', got {which!r}")
    if samples < 1:
        raise ValueError("samples must be positive")
    _same_dim(a.dim, b.dim, state.dim)
    basis = _complement_matrix(state)
    perps = _complement_samples(basis, samples, _rng(seed))
    if which == "l1":
        values = _l1_sample_values(a, b, state, perps, sign)
        analytic = optimal_xi_perp_l1(a, b, state, sign).bound_value
    else:
        values = _l2_sample_values(a, b, state, perps, sign)
        analytic = optimal_xi_perp_l2(a, b, state, sign).bound_value
    best = int(np.argmax(values))
    return SearchResult(
        best_value=float(values[best]),
        best_vector=QuantumState(perps[best]),
        samples_used=samples,
        analytic_value=analytic,
    )


def check_parallelogram(u, v) -> float:
    """|2(||u||^2 + ||v||^2) - ||u+v||^2 - ||u-v||^2|, zero in exact arithmetic."""
    uv, vv = _as_vector(u), _as_vector(v)
    _same_dim(uv.size, vv.size)
    lhs = 2.0 * (np.linalg.norm(uv) ** 2 + np.linalg.norm(vv) ** 2)
    rhs = np.linalg.norm(uv + vv) ** 2 + np.linalg.norm(uv - vv) ** 2
    return float(abs(lhs - rhs))


def check_csi(u, v) -> float:
    """Cauchy-Schwarz slack <u|u><v|v> - |<u|v>|^2; zero iff collinear (or null)."""
    uv, vv = _as_vector(u), _as_vector(v)
    _same_dim(uv.size, vv.size)
    return float(
        (np.linalg.norm(uv) ** 2) * (np.linalg.norm(vv) ** 2) - abs(np.vdot(uv, vv)) ** 2
    )


@dataclass
class SuiteReport:
    """Aggregate of the randomized invariant suite."""

    count: int
    dims: tuple[int, ...]
    seed: int
    tol: float
    perp_samples: int
    min_slacks: dict = field(default_factory=dict)
    max_defects: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "count": self.count,
            "dims": list(self.dims),
            "seed": self.seed,
            "tol": self.tol,
            "perp_samples": self.perp_samples,
            "passed": self.passed,
            "min_slacks": dict(self.min_slacks),
            "max_defects": dict(self.max_defects),
            "violations": list(self.violations),
        }


def _check_instance(
    report: SuiteReport,
    index: int,
    state: QuantumState,
    a: Observable,
    b: Observable,
    perps: np.ndarray,
    theta: float,
):
    tol = report.tol
    ctx = {"index": index, "dim": state.dim}

    def context():
        # serialized lazily: only violations carry the full instance
        return {**ctx, "instance": instance_payload(state, a, b)}

    rep = bound_report(a, b, state)
    sigma_term = 2.0 * math.sqrt(rep.var_a) * math.sqrt(rep.var_b)

    psi = deviation_vector(a, state)
    phi = deviation_vector(b, state)

    slack_checks = {
        "hrsur_product": rep.prod_var - rep.t1,
        "hrsur_sum_vs_sigma": rep.sum_var - sigma_term,
        "sigma_vs_t2": sigma_term - rep.t2,
        "csi": check_csi(psi, phi),
    }
    defect_checks = {
        "parallelogram": check_parallelogram(psi, phi),
        "commutator_mean_realpart": abs(commutator_mean(a, b, state).real),
        "anticommutator_mean_imagpart": abs(anticommutator_mean(a, b, state).imag),
        "tightness_l2": max(abs(v - rep.sum_var) for v in rep.l2_by_sign),
        "l1_identity": max(
            abs(rep.l1_by_sign[i] - (0.5 * rep.sum_var + s * rep.covq))
            for i, s in ((0, 1), (1, -1))
        ),
    }

    # Maccone-Pati validity and analytic-optimum dominance at sampled xi_perp
    for i, sign in ((0, 1), (1, -1)):
        l1_vals = _l1_sample_values(a, b, state, perps, sign)
        l2_vals = _l2_sample_values(a, b, state, perps, sign)
        slack_checks["mpur_l1_random_perp"] = min(
            slack_checks.get("mpur_l1_random_perp", math.inf), float(np.min(rep.sum_var - l1_vals))
        )
        slack_checks["mpur_l2_random_perp"] = min(
            slack_checks.get("mpur_l2_random_perp", math.inf), float(np.min(rep.sum_var - l2_vals))
        )
        slack_checks["dominance_l1"] = min(
            slack_checks.get("dominance_l1", math.inf), float(np.min(rep.l1_by_sign[i] - l1_vals))
        )
        slack_checks["dominance_l2"] = min(
            slack_checks.get("dominance_l2", math.inf), float(np.min(rep.l2_by_sign[i] - l2_vals))
        )

    # swapping the observables must not change the HRSUR bounds
    swapped = bound_report(b, a, state)
    defect_checks["t1_symmetry"] = abs(rep.t1 - swapped.t1)
    defect_checks["t2_symmetry"] = abs(rep.t2 - swapped.t2)

    # every computed quantity is invariant under a global phase on the state
    phased = QuantumState(np.exp(1j * theta) * state.vector)
    rep_phased = bound_report(a, b, phased)
    defect_checks["phase_invariance"] = max(
        abs(rep.var_a - rep_phased.var_a),
        abs(rep.var_b - rep_phased.var_b),
        abs(rep.t1 - rep_phased.t1),
        abs(rep.t2 - rep_phased.t2),
        abs(rep.l1 - rep_phased.l1),
        abs(rep.l2 - rep_phased.l2),
        abs(rep.mpur - rep_phased.mpur),
    )

    for name, slack in slack_checks.items():
        if slack < -tol:
            report.violations.append({**context(), "check": name, "slack": slack})
        prev = report.min_slacks.get(name)
        if prev is None or slack < prev:
            report.min_slacks[name] = slack
    for name, defect in defect_checks.items():
        if defect > tol:
            report.violations.append({**context(), "check": name, "defect": defect})
        prev = report.max_defects.get(name)
        if prev is None or defect > prev:
            report.max_defects[name] = defect

    # zero bounds only at (numerical) common eigenvectors, and conversely
    if rep.mpur <= tol and (rep.var_a > tol or rep.var_b > tol):
        report.violations.append(
            {**context(), "check": "nontriviality", "defect": max(rep.var_a, rep.var_b)}
        )
    if rep.common_eigenvector and rep.mpur > tol:
        report.violations.append({**context(), "check": "nontriviality_converse", "defect": rep.mpur})


def run_invariant_suite(
    count: int = 1000,
    dims: tuple[int, ...] = DEFAULT_SUITE_DIMS,
    seed: int = 42,
    tol: float = DEFAULT_SUITE_TOL,
    perp_samples: int = 100,
) -> SuiteReport:
    """Run every invariant over `count` random instances, dims cycled in order.

    Instance k draws its own PCG64 stream from (seed, k): state, observable A,
    observable B, `perp_samples` complement vectors, then the test phase.
    """
    if count < 1:
        raise ValueError("count must be positive")
    if perp_samples < 1:
        raise ValueError("perp_samples must be positive")
    dims = tuple(int(d) for d in dims)
    if not dims:
        raise ValueError("dims must be nonempty")
    for d in dims:
        _check_dim(d)
    if tol <= 0:
        raise ValueError("tol must be positive")

    report = SuiteReport(count=count, dims=dims, seed=seed, tol=tol, perp_samples=perp_samples)
    for index in range(count):
        dim = dims[index % len(dims)]
        rng = _rng([seed, index])
        state = random_state(dim, rng)
        a = random_observable(dim, rng)
        b = random_observable(dim, rng)
        basis = _complement_matrix(state)
        perps = _complement_samples(basis, perp_samples, rng)
        theta = 2.0 * math.pi * rng.random()
        _check_instance(report, index, state, a, b, perps, theta)
    return report
