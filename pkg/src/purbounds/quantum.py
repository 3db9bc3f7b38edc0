"""Complex dense linear algebra and quantum-mechanical primitives.

Pure vectors and Hermitian observables on small Hilbert spaces (2 <= d <= 64),
with the inner products, expectations, variances, covariances, commutator
means, eigensystems and orthogonal-complement bases that the bound
computations are built from. All values are immutable after construction and
every operation is a pure function of its inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "MAX_DIM",
    "TOL_NORM",
    "TOL_HERM",
    "TOL_EIG",
    "TOL_NULL",
    "RENORM_WINDOW",
    "DimensionMismatchError",
    "NormalizationError",
    "HermiticityError",
    "NullVectorError",
    "EmptyComplementError",
    "EigensolverError",
    "QuantumState",
    "Observable",
    "EigenSystem",
    "inner_product",
    "norm",
    "normalize",
    "validate_hermitian",
    "expectation",
    "deviation_vector",
    "variance",
    "covariance",
    "quantum_covariance",
    "commutator_mean",
    "anticommutator_mean",
    "orthonormal_complement_basis",
    "hermitian_eigensystem",
    "is_eigenstate",
    "basis_state",
    "identity_observable",
    "pauli_x",
    "pauli_z",
    "equatorial_state",
]

MAX_DIM = 64

# Double-precision headroom at d <= 64.
TOL_NORM = 1e-12
TOL_HERM = 1e-10
TOL_EIG = 1e-10
TOL_NULL = 1e-12

# States further than this from unit norm are rejected instead of renormalized.
RENORM_WINDOW = 1e-6


class DimensionMismatchError(ValueError):
    """Operands live in Hilbert spaces of different dimension."""


class NormalizationError(ValueError):
    """Vector norm too far from 1 to be a benign rounding artifact."""


class HermiticityError(ValueError):
    """Matrix (or a derived mean value) violates Hermiticity beyond tolerance."""


class NullVectorError(ValueError):
    """Operation undefined on the (numerically) null vector."""


class EmptyComplementError(ValueError):
    """The orthogonal complement of a d = 1 state is empty."""


class EigensolverError(RuntimeError):
    """Dense Hermitian eigensolver failed to converge or to reconstruct."""


def _as_vector(u) -> np.ndarray:
    """Coerce a QuantumState or array-like to a 1-D complex ndarray."""
    if isinstance(u, QuantumState):
        return u.vector
    vec = np.asarray(u, dtype=complex)
    if vec.ndim != 1:
        raise ValueError(f"expected a 1-D vector, got shape {vec.shape}")
    if not np.all(np.isfinite(vec)):
        raise ValueError("vector contains non-finite entries")
    return vec


def _same_dim(*dims: int) -> int:
    first = dims[0]
    for d in dims[1:]:
        if d != first:
            raise DimensionMismatchError(f"dimension mismatch: {dims}")
    return first


@dataclass(frozen=True, eq=False)
class QuantumState:
    """Normalized complex vector; the preparation of the system.

    Construction renormalizes inputs whose norm is within RENORM_WINDOW of 1
    and rejects anything farther off. Global phase is kept as given; all
    derived quantities are phase-invariant.
    """

    vector: np.ndarray

    def __post_init__(self):
        vec = _as_vector(self.vector)
        if not 1 <= vec.size <= MAX_DIM:
            raise ValueError(f"state dimension {vec.size} outside supported range [1, {MAX_DIM}]")
        nrm = float(np.linalg.norm(vec))
        if abs(nrm - 1.0) > RENORM_WINDOW:
            raise NormalizationError(f"state norm {nrm!r} differs from 1 by more than {RENORM_WINDOW}")
        if abs(nrm - 1.0) > TOL_NORM:
            vec = vec / nrm
        else:
            vec = vec.copy()
        vec.setflags(write=False)
        object.__setattr__(self, "vector", vec)

    @property
    def dim(self) -> int:
        return self.vector.size


@dataclass(frozen=True, eq=False)
class Observable:
    """d x d Hermitian matrix; eigenvalues are the measurement outcomes.

    The stored matrix is symmetrized to (M + M†)/2 so Hermiticity is exact;
    inputs whose Hermiticity defect exceeds tol_herm are rejected (see
    validate_hermitian for a caller-chosen tolerance).
    """

    matrix: np.ndarray
    tol_herm: float = field(default=TOL_HERM, repr=False, compare=False)

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError(f"observable must be a square matrix, got shape {mat.shape}")
        if not 1 <= mat.shape[0] <= MAX_DIM:
            raise ValueError(f"observable dimension {mat.shape[0]} outside supported range [1, {MAX_DIM}]")
        if not np.all(np.isfinite(mat)):
            raise ValueError("observable contains non-finite entries")
        defect = float(np.max(np.abs(mat - mat.conj().T))) if mat.size else 0.0
        scale = 1.0 + float(np.max(np.abs(mat)))
        if defect > self.tol_herm * scale:
            raise HermiticityError(
                f"Hermiticity defect {defect:.3e} exceeds {self.tol_herm:.1e} * {scale:.3e}"
            )
        mat = 0.5 * (mat + mat.conj().T)
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def frobenius_norm(self) -> float:
        return float(np.linalg.norm(self.matrix))


@dataclass(frozen=True, eq=False)
class EigenSystem:
    """Real eigenvalues in ascending order with orthonormal eigenvectors.

    `vectors[:, k]` is the eigenvector of `values[k]`.
    """

    values: np.ndarray
    vectors: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float).copy()
        vecs = np.asarray(self.vectors, dtype=complex).copy()
        vals.setflags(write=False)
        vecs.setflags(write=False)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "vectors", vecs)


def validate_hermitian(matrix, tol_herm: float = TOL_HERM) -> Observable:
    """Check Hermiticity within `tol_herm` and return the symmetrized Observable."""
    return Observable(matrix, tol_herm=tol_herm)


def inner_product(u, v) -> complex:
    """<u|v> = u† v, conjugate-linear in the first argument."""
    uv, vv = _as_vector(u), _as_vector(v)
    _same_dim(uv.size, vv.size)
    return complex(np.vdot(uv, vv))


def norm(u) -> float:
    """sqrt(<u|u>)."""
    return float(np.linalg.norm(_as_vector(u)))


def normalize(u) -> QuantumState:
    """u / ||u|| as a QuantumState; the numerically null vector is rejected."""
    vec = _as_vector(u)
    nrm = float(np.linalg.norm(vec))
    if vec.size == 0 or nrm <= TOL_NULL:
        raise NullVectorError("cannot normalize a null vector")
    return QuantumState(vec / nrm)


def expectation(a: Observable, state: QuantumState) -> float:
    """Re<state|A|state>; the imaginary residue must vanish within tolerance."""
    _same_dim(a.dim, state.dim)
    raw = complex(np.vdot(state.vector, a.matrix @ state.vector))
    tol = TOL_EIG * (1.0 + a.frobenius_norm())
    if abs(raw.imag) > tol:
        raise HermiticityError(f"expectation has imaginary part {raw.imag:.3e} above tolerance")
    return raw.real


def deviation_vector(a: Observable, state: QuantumState) -> np.ndarray:
    """(A - <A> I)|state>; orthogonal to |state> and of squared norm Var(A)."""
    _same_dim(a.dim, state.dim)
    mean = expectation(a, state)
    return a.matrix @ state.vector - mean * state.vector


def variance(a: Observable, state: QuantumState) -> float:
    """<A^2> - <A>^2, clamped to 0 when rounding pushes it just below zero."""
    _same_dim(a.dim, state.dim)
    image = a.matrix @ state.vector
    second_moment = float(np.vdot(image, image).real)
    mean = expectation(a, state)
    raw = second_moment - mean * mean
    tol = TOL_EIG * (1.0 + a.frobenius_norm() ** 2)
    if raw < -tol:
        raise ArithmeticError(f"variance {raw:.3e} below -{tol:.3e}; inputs are inconsistent")
    return max(raw, 0.0)


def covariance(x: Observable, y: Observable, state: QuantumState) -> complex:
    """<XY> - <X><Y> (complex in general)."""
    _same_dim(x.dim, y.dim, state.dim)
    xy = complex(np.vdot(state.vector, x.matrix @ (y.matrix @ state.vector)))
    return xy - expectation(x, state) * expectation(y, state)


def quantum_covariance(a: Observable, b: Observable, state: QuantumState) -> float:
    """(Cov(A,B) + Cov(B,A))/2; real by Hermiticity, equal to Cov when [A,B] = 0."""
    z = 0.5 * (covariance(a, b, state) + covariance(b, a, state))
    return z.real


def _purity_tol(a: Observable, b: Observable) -> float:
    return TOL_EIG * (1.0 + a.frobenius_norm() * b.frobenius_norm())


def commutator_mean(a: Observable, b: Observable, state: QuantumState) -> complex:
    """<[A,B]> = <AB> - <BA>; purely imaginary for Hermitian inputs (asserted)."""
    _same_dim(a.dim, b.dim, state.dim)
    xi = state.vector
    mean = complex(np.vdot(xi, a.matrix @ (b.matrix @ xi)) - np.vdot(xi, b.matrix @ (a.matrix @ xi)))
    if abs(mean.real) > _purity_tol(a, b):
        raise HermiticityError(f"commutator mean has real part {mean.real:.3e}; inputs not Hermitian")
    return mean


def anticommutator_mean(a: Observable, b: Observable, state: QuantumState) -> complex:
    """<{A,B}> = <AB> + <BA>; purely real for Hermitian inputs (asserted)."""
    _same_dim(a.dim, b.dim, state.dim)
    xi = state.vector
    mean = complex(np.vdot(xi, a.matrix @ (b.matrix @ xi)) + np.vdot(xi, b.matrix @ (a.matrix @ xi)))
    if abs(mean.imag) > _purity_tol(a, b):
        raise HermiticityError(f"anticommutator mean has imaginary part {mean.imag:.3e}; inputs not Hermitian")
    return mean


def orthonormal_complement_basis(state: QuantumState) -> list[QuantumState]:
    """Deterministic orthonormal basis of the complement of |state>.

    Completes the state with standard basis vectors (skipping the one of
    largest overlap modulus) and runs modified Gram-Schmidt with a second
    re-orthogonalization pass.
    """
    d = state.dim
    if d < 2:
        raise EmptyComplementError("a 1-dimensional state has an empty orthogonal complement")
    skip = int(np.argmax(np.abs(state.vector)))
    accepted = [state.vector]
    for j in range(d):
        if j == skip:
            continue
        v = np.zeros(d, dtype=complex)
        v[j] = 1.0
        for _ in range(2):
            for b in accepted:
                v = v - np.vdot(b, v) * b
        nrm = float(np.linalg.norm(v))
        if nrm <= TOL_NULL:
            raise ArithmeticError("Gram-Schmidt produced a null vector from independent inputs")
        accepted.append(v / nrm)
    return [QuantumState(v) for v in accepted[1:]]


def hermitian_eigensystem(a: Observable) -> EigenSystem:
    """Dense eigensystem with ascending eigenvalues and verified reconstruction."""
    try:
        values, vectors = np.linalg.eigh(a.matrix)
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(f"eigensolver failed to converge: {exc}") from exc
    residual = float(np.linalg.norm(a.matrix - (vectors * values) @ vectors.conj().T))
    if residual > TOL_EIG * (1.0 + a.frobenius_norm()):
        raise EigensolverError(f"eigendecomposition residual {residual:.3e} above tolerance")
    return EigenSystem(values, vectors)


def is_eigenstate(a: Observable, state: QuantumState, tol: float = TOL_EIG) -> bool:
    """True iff Var(A) on the state is at most `tol`."""
    return variance(a, state) <= tol


def basis_state(dim: int, index: int) -> QuantumState:
    """Computational basis vector |index> in dimension `dim`."""
    if not 0 <= index < dim:
        raise ValueError(f"basis index {index} outside [0, {dim})")
    vec = np.zeros(dim, dtype=complex)
    vec[index] = 1.0
    return QuantumState(vec)


def identity_observable(dim: int) -> Observable:
    return Observable(np.eye(dim, dtype=complex))


def pauli_x() -> Observable:
    """|0><1| + |1><0|."""
    return Observable(np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex))


def pauli_z() -> Observable:
    """|0><0| - |1><1|."""
    return Observable(np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex))


def equatorial_state(alpha: float) -> QuantumState:
    """(|0> + e^{i alpha}|1>)/sqrt(2), the equatorial qubit family."""
    return QuantumState(np.array([1.0, np.exp(1j * alpha)], dtype=complex) / np.sqrt(2.0))
