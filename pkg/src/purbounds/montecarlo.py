"""Born-rule measurement simulation and statistical checks of the bounds.

Builds the outcome distribution of an observable on a state (eigenvalue
probabilities via squared overlaps, degenerate eigenvalues merged), draws
i.i.d. outcomes by inverse CDF over the pinned PRNG, estimates variances with
their standard errors, and checks the analytic Maccone-Pati bound against the
empirical variance sum at a 5-sigma margin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .bounds import bound_report
from .quantum import (
    TOL_EIG,
    TOL_NORM,
    Observable,
    QuantumState,
    _same_dim,
    hermitian_eigensystem,
)

__all__ = [
    "BornDistribution",
    "EstimateReport",
    "StatisticalCheckReport",
    "born_distribution",
    "sample_outcomes",
    "empirical_variance",
    "statistical_bound_check",
]

# guards divisions when an estimator is exactly degenerate
_Z_FLOOR = 1e-300

# outcomes below this probability are outside double-precision resolution and
# are dropped from the support
_PROB_FLOOR = 1e-14

SIGMA_MARGIN = 5.0


@dataclass(frozen=True, eq=False)
class BornDistribution:
    """Distinct outcome values (ascending) with their probabilities."""

    values: np.ndarray
    probabilities: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float).copy()
        probs = np.asarray(self.probabilities, dtype=float).copy()
        if vals.ndim != 1 or vals.shape != probs.shape or vals.size == 0:
            raise ValueError("values and probabilities must be matching nonempty 1-D arrays")
        if np.any(probs < -TOL_NORM):
            raise ValueError("probabilities must be nonnegative")
        total = float(probs.sum())
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"probabilities sum to {total!r}, not 1")
        probs = np.clip(probs, 0.0, None) / total
        vals.setflags(write=False)
        probs.setflags(write=False)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "probabilities", probs)

    def mean(self) -> float:
        return float(self.values @ self.probabilities)

    def variance(self) -> float:
        mu = self.mean()
        return float(((self.values - mu) ** 2) @ self.probabilities)


def born_distribution(a: Observable, state: QuantumState) -> BornDistribution:
    """p(lambda) = sum of |<v|state>|^2 over the eigenvectors of lambda.

    Eigenvalues closer than tol_eig * ||A||_F are treated as one degenerate
    outcome whose probability is the sum (value: probability-weighted mean);
    outcomes of numerically zero probability are dropped from the support.
    """
    _same_dim(a.dim, state.dim)
    eig = hermitian_eigensystem(a)
    weights = np.abs(eig.vectors.conj().T @ state.vector) ** 2
    gap_tol = TOL_EIG * a.frobenius_norm()

    values: list[float] = []
    probs: list[float] = []
    group_vals: list[float] = [float(eig.values[0])]
    group_weights: list[float] = [float(weights[0])]
    for lam, w in zip(eig.values[1:], weights[1:]):
        if lam - group_vals[-1] <= gap_tol:
            group_vals.append(float(lam))
            group_weights.append(float(w))
        else:
            values.append(_merged_value(group_vals, group_weights))
            probs.append(sum(group_weights))
            group_vals = [float(lam)]
            group_weights = [float(w)]
    values.append(_merged_value(group_vals, group_weights))
    probs.append(sum(group_weights))
    keep = np.asarray(probs) > _PROB_FLOOR
    return BornDistribution(np.asarray(values)[keep], np.asarray(probs)[keep])


def _merged_value(vals: list[float], weights: list[float]) -> float:
    total = sum(weights)
    if total <= 0.0:
        return sum(vals) / len(vals)
    return sum(v * w for v, w in zip(vals, weights)) / total


def sample_outcomes(dist: BornDistribution, n: int, seed) -> np.ndarray:
    """n i.i.d. outcomes by inverse CDF; deterministic per seed."""
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = np.random.default_rng(seed)
    edges = np.cumsum(dist.probabilities)
    idx = np.searchsorted(edges, rng.random(n), side="right")
    idx = np.minimum(idx, dist.values.size - 1)
    return dist.values[idx]


@dataclass(frozen=True)
class EstimateReport:
    """Sample variance with its large-n standard error.

    var_stderr uses the fourth-central-moment formula sqrt((m4 - m2^2)/n).
    bound_checked/z_margin are filled when the estimate is compared against a
    reference value.
    """

    n: int
    mean_hat: float
    var_hat: float
    var_stderr: float
    bound_checked: float | None = None
    z_margin: float | None = None

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "mean_hat": self.mean_hat,
            "var_hat": self.var_hat,
            "var_stderr": self.var_stderr,
            "bound_checked": self.bound_checked,
            "z_margin": self.z_margin,
        }


def empirical_variance(samples) -> EstimateReport:
    """Unbiased sample variance of a 1-D sample, with standard error."""
    arr = np.asarray(samples, dtype=float)
    if arr.ndim != 1 or arr.size < 2:
        raise ValueError("need a 1-D sample with n >= 2")
    n = arr.size
    mean = float(arr.mean())
    dev = arr - mean
    m2 = float(np.mean(dev**2))
    m4 = float(np.mean(dev**4))
    var_hat = m2 * n / (n - 1)
    stderr = math.sqrt(max(m4 - m2 * m2, 0.0) / n)
    return EstimateReport(n=n, mean_hat=mean, var_hat=var_hat, var_stderr=stderr)


@dataclass(frozen=True)
class StatisticalCheckReport:
    """Empirical variance sum versus the analytic sum and the Maccone-Pati bound."""

    estimate_a: EstimateReport
    estimate_b: EstimateReport
    empirical_sum: float
    combined_stderr: float
    mpur: float
    analytic_sum: float
    z_margin: float
    sigma_margin: float
    undercut_violation: bool
    overshoot_violation: bool

    @property
    def violation(self) -> bool:
        return self.undercut_violation or self.overshoot_violation

    def to_dict(self) -> dict:
        return {
            "estimate_a": self.estimate_a.to_dict(),
            "estimate_b": self.estimate_b.to_dict(),
            "empirical_sum": self.empirical_sum,
            "combined_stderr": self.combined_stderr,
            "mpur": self.mpur,
            "analytic_sum": self.analytic_sum,
            "z_margin": self.z_margin,
            "sigma_margin": self.sigma_margin,
            "undercut_violation": self.undercut_violation,
            "overshoot_violation": self.overshoot_violation,
            "violation": self.violation,
        }


def statistical_bound_check(
    a: Observable,
    b: Observable,
    state: QuantumState,
    n: int,
    seed,
    sigma: float = SIGMA_MARGIN,
) -> StatisticalCheckReport:
    """Estimate Var(A) + Var(B) from sampled outcomes and check the bound.

    Each observable samples its own stream derived from (seed, 0) / (seed, 1).
    Flags a violation when the empirical sum undercuts the optimized
    Maccone-Pati bound by more than `sigma` combined standard errors, or
    exceeds the analytic sum by the same margin.
    """
    if n < 2:
        raise ValueError("variance estimation needs n >= 2")
    _same_dim(a.dim, b.dim, state.dim)
    rep = bound_report(a, b, state)

    estimates = []
    for stream, obs, analytic in ((0, a, rep.var_a), (1, b, rep.var_b)):
        dist = born_distribution(obs, state)
        outcomes = sample_outcomes(dist, n, np.random.default_rng([_seed_entropy(seed), stream]))
        est = empirical_variance(outcomes)
        z = (est.var_hat - analytic) / max(est.var_stderr, _Z_FLOOR)
        estimates.append(replace(est, bound_checked=analytic, z_margin=z))
    est_a, est_b = estimates

    empirical_sum = est_a.var_hat + est_b.var_hat
    combined = math.hypot(est_a.var_stderr, est_b.var_stderr)
    z_margin = (empirical_sum - rep.mpur) / max(combined, _Z_FLOOR)
    return StatisticalCheckReport(
        estimate_a=est_a,
        estimate_b=est_b,
        empirical_sum=empirical_sum,
        combined_stderr=combined,
        mpur=rep.mpur,
        analytic_sum=rep.sum_var,
        z_margin=z_margin,
        sigma_margin=sigma,
        undercut_violation=bool(empirical_sum + sigma * combined < rep.mpur),
        overshoot_violation=bool(empirical_sum - sigma * combined > rep.sum_var),
    )


def _seed_entropy(seed) -> int:
    if isinstance(seed, (int, np.integer)):
        return int(seed)
    raise TypeError("statistical_bound_check needs an integer seed to derive per-observable streams")
