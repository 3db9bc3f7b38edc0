import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from purbounds.quantum import (
    TOL_EIG,
    DimensionMismatchError,
    EmptyComplementError,
    HermiticityError,
    NormalizationError,
    NullVectorError,
    Observable,
    QuantumState,
    anticommutator_mean,
    basis_state,
    commutator_mean,
    covariance,
    deviation_vector,
    equatorial_state,
    expectation,
    hermitian_eigensystem,
    identity_observable,
    inner_product,
    is_eigenstate,
    norm,
    normalize,
    orthonormal_complement_basis,
    pauli_x,
    pauli_z,
    quantum_covariance,
    validate_hermitian,
    variance,
)

ALPHAS = [0.0, 0.3, np.pi / 4, np.pi / 3, 1.1, np.pi / 2, 2.5, np.pi, 4.0, 5.9]


def perp_of(alpha):
    return np.array([1.0, -np.exp(1j * alpha)], dtype=complex) / np.sqrt(2.0)


def complex_vectors(dim, max_mag=10.0):
    return arrays(
        np.float64,
        (2 * dim,),
        elements=st.floats(min_value=-max_mag, max_value=max_mag, allow_nan=False),
    ).map(lambda x: x[:dim] + 1j * x[dim:])


class TestQuantumState:
    def test_renormalizes_benign_noise(self):
        state = QuantumState(np.array([1.0 + 3e-7, 0.0], dtype=complex))
        assert norm(state) == pytest.approx(1.0, abs=1e-15)

    def test_rejects_far_from_unit(self):
        with pytest.raises(NormalizationError):
            QuantumState(np.array([2.0, 0.0], dtype=complex))

    def test_global_phase_kept(self):
        phase = np.exp(1j * 0.7)
        state = QuantumState(phase * basis_state(2, 0).vector)
        assert state.vector[0] == pytest.approx(phase)

    def test_vector_is_read_only(self):
        state = basis_state(3, 1)
        with pytest.raises(ValueError):
            state.vector[0] = 1.0

    def test_rejects_nan(self):
        with pytest.raises(ValueError):
            QuantumState(np.array([np.nan, 0.0], dtype=complex))

    def test_rejects_oversized_dimension(self):
        vec = np.zeros(65, dtype=complex)
        vec[0] = 1.0
        with pytest.raises(ValueError):
            QuantumState(vec)


class TestInnerProductAndNorm:
    def test_orthonormal_basis(self):
        assert inner_product(basis_state(2, 0), basis_state(2, 1)) == 0

    @pytest.mark.parametrize("alpha", ALPHAS)
    def test_state_orthogonal_to_its_complement_vector(self, alpha):
        assert abs(inner_product(equatorial_state(alpha), perp_of(alpha))) < 1e-15

    @pytest.mark.parametrize("alpha", ALPHAS)
    def test_state_normalized(self, alpha):
        assert inner_product(equatorial_state(alpha), equatorial_state(alpha)) == pytest.approx(1.0)

    def test_norm_of_plus(self):
        assert norm(np.array([1.0, 1.0])) == pytest.approx(np.sqrt(2.0))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            inner_product(basis_state(2, 0), basis_state(3, 0))

    def test_normalize_scaling(self):
        state = normalize(2.0 * basis_state(2, 0).vector)
        np.testing.assert_allclose(state.vector, basis_state(2, 0).vector)

    def test_normalize_null_rejected(self):
        with pytest.raises(NullVectorError):
            normalize(np.zeros(3))

    @pytest.mark.parametrize("alpha", ALPHAS)
    def test_deviation_norm_squared_is_variance(self, alpha):
        # the squared norm of the centered image vector is the variance
        state = equatorial_state(alpha)
        dev = deviation_vector(pauli_x(), state)
        assert norm(dev) ** 2 == pytest.approx(variance(pauli_x(), state), abs=1e-13)

    @given(complex_vectors(4), complex_vectors(4))
    @settings(max_examples=60, deadline=None)
    def test_conjugate_symmetry(self, u, v):
        assert inner_product(u, v) == pytest.approx(np.conj(inner_product(v, u)))


class TestValidateHermitian:
    def test_pauli_x_accepted(self):
        obs = validate_hermitian([[0.0, 1.0], [1.0, 0.0]])
        np.testing.assert_array_equal(obs.matrix, pauli_x().matrix)

    def test_anti_hermitian_rejected(self):
        with pytest.raises(HermiticityError):
            validate_hermitian([[0.0, 1.0j], [1.0j, 0.0]])

    def test_tiny_defect_accepted_and_symmetrized(self):
        obs = validate_hermitian([[1.0, 1e-14j], [0.0, 2.0]], tol_herm=1e-10)
        defect = np.max(np.abs(obs.matrix - obs.matrix.conj().T))
        assert defect == 0.0
        # symmetrization averages the off-diagonal pair
        assert obs.matrix[0, 1] == pytest.approx(0.5e-14j + 0.0)

    def test_non_square_rejected(self):
        with pytest.raises(ValueError):
            validate_hermitian(np.zeros((2, 3)))


class TestExpectation:
    @pytest.mark.parametrize("alpha", ALPHAS)
    def test_z_mean_zero(self, alpha):
        assert expectation(pauli_z(), equatorial_state(alpha)) == pytest.approx(0.0, abs=1e-15)

    @pytest.mark.parametrize("alpha", ALPHAS)
    def test_x_mean_cosine(self, alpha):
        assert expectation(pauli_x(), equatorial_state(alpha)) == pytest.approx(np.cos(alpha), abs=1e-14)

    @pytest.mark.parametrize("dim", [2, 3, 5])
    def test_identity_mean_one(self, dim):
        state = normalize(np.arange(1, dim + 1, dtype=complex) + 0.5j)
        assert expectation(identity_observable(dim), state) == pytest.approx(1.0)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            expectation(pauli_z(), basis_state(3, 0))


class TestDeviationVector:
    def test_eigenvector_gives_zero(self):
        np.testing.assert_allclose(deviation_vector(pauli_z(), basis_state(2, 0)), np.zeros(2))

    def test_x_on_ground_state(self):
        # oracle: X|0> = |1>, <X> = 0, so the centered image is |1>
        np.testing.assert_allclose(deviation_vector(pauli_x(), basis_state(2, 0)), [0.0, 1.0])

    def test_orthogonal_to_state(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            state = normalize(rng.standard_normal(4) + 1j * rng.standard_normal(4))
            g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
            a = Observable(0.5 * (g + g.conj().T))
            overlap = inner_product(state, deviation_vector(a, state))
            assert abs(overlap) < 1e-12 * (1.0 + a.frobenius_norm())


class TestVariance:
    @pytest.mark.parametrize("alpha", ALPHAS)
    def test_z_variance_one(self, alpha):
        assert variance(pauli_z(), equatorial_state(alpha)) == pytest.approx(1.0, abs=1e-14)

    @pytest.mark.parametrize("alpha", ALPHAS)
    def test_x_variance_sin_squared(self, alpha):
        assert variance(pauli_x(), equatorial_state(alpha)) == pytest.approx(np.sin(alpha) ** 2, abs=1e-14)

    def test_eigenvector_variance_clamped_to_zero(self):
        assert variance(pauli_z(), basis_state(2, 0)) == 0.0
        assert variance(pauli_x(), equatorial_state(0.0)) >= 0.0


class TestCovariance:
    @pytest.mark.parametrize("alpha", ALPHAS)
    def test_covq_xz_zero(self, alpha):
        assert quantum_covariance(pauli_x(), pauli_z(), equatorial_state(alpha)) == pytest.approx(0.0, abs=1e-14)

    def test_covq_self_is_variance(self):
        state = equatorial_state(0.9)
        assert quantum_covariance(pauli_x(), pauli_x(), state) == pytest.approx(
            variance(pauli_x(), state), abs=1e-14
        )

    def test_commuting_diagonal_pair(self):
        # direct 2x2 oracle: A=diag(1,-1), B=diag(2,0) commute; on |+> both
        # covariances are real and equal (Cov = CovQ = 1)
        a = Observable(np.diag([1.0, -1.0]).astype(complex))
        b = Observable(np.diag([2.0, 0.0]).astype(complex))
        plus = normalize(np.array([1.0, 1.0]))
        cov = covariance(a, b, plus)
        covq = quantum_covariance(a, b, plus)
        assert cov.imag == pytest.approx(0.0, abs=1e-15)
        assert cov.real == pytest.approx(1.0, abs=1e-14)
        assert covq == pytest.approx(cov.real, abs=1e-14)


class TestCommutatorMeans:
    @pytest.mark.parametrize("alpha", ALPHAS)
    def test_xz_commutator_mean(self, alpha):
        state = equatorial_state(alpha)
        mean = commutator_mean(pauli_x(), pauli_z(), state)
        assert mean == pytest.approx(-2j * np.sin(alpha), abs=1e-14)
        assert abs(mean) ** 2 == pytest.approx(4.0 * np.sin(alpha) ** 2, abs=1e-13)

    def test_self_commutator_vanishes(self):
        assert commutator_mean(pauli_x(), pauli_x(), equatorial_state(1.3)) == 0

    @pytest.mark.parametrize("alpha", ALPHAS)
    def test_zx_product_mean(self, alpha):
        # <ZX> recovered as Cov(Z, X) + <Z><X>
        state = equatorial_state(alpha)
        zx = covariance(pauli_z(), pauli_x(), state) + expectation(pauli_z(), state) * expectation(
            pauli_x(), state
        )
        assert zx == pytest.approx(1j * np.sin(alpha), abs=1e-14)

    def test_purity_of_phase(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            state = normalize(rng.standard_normal(6) + 1j * rng.standard_normal(6))
            mats = []
            for _ in range(2):
                g = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
                mats.append(Observable(0.5 * (g + g.conj().T)))
            a, b = mats
            tol = 1e-12 * (1.0 + a.frobenius_norm() * b.frobenius_norm())
            assert abs(commutator_mean(a, b, state).real) < tol
            assert abs(anticommutator_mean(a, b, state).imag) < tol


class TestComplementBasis:
    def test_ground_state_complement(self):
        (vec,) = orthonormal_complement_basis(basis_state(2, 0))
        assert abs(inner_product(vec, basis_state(2, 1))) == pytest.approx(1.0)

    @pytest.mark.parametrize("alpha", ALPHAS)
    def test_equatorial_complement_collinear_with_unique_direction(self, alpha):
        (vec,) = orthonormal_complement_basis(equatorial_state(alpha))
        assert abs(inner_product(vec, perp_of(alpha))) == pytest.approx(1.0, abs=1e-12)

    def test_random_d5_gram_identity(self):
        rng = np.random.default_rng(17)
        for _ in range(10):
            state = normalize(rng.standard_normal(5) + 1j * rng.standard_normal(5))
            basis = orthonormal_complement_basis(state)
            assert len(basis) == 4
            mat = np.array([b.vector for b in basis])
            gram = mat.conj() @ mat.T
            np.testing.assert_allclose(gram, np.eye(4), atol=1e-10)
            overlaps = mat.conj() @ state.vector
            assert np.max(np.abs(overlaps)) < 1e-10

    def test_deterministic(self):
        state = equatorial_state(2.2)
        first = orthonormal_complement_basis(state)
        second = orthonormal_complement_basis(state)
        np.testing.assert_array_equal(first[0].vector, second[0].vector)

    def test_empty_complement(self):
        with pytest.raises(EmptyComplementError):
            orthonormal_complement_basis(QuantumState(np.array([1.0 + 0j])))


class TestEigensystem:
    def test_pauli_z(self):
        eig = hermitian_eigensystem(pauli_z())
        np.testing.assert_allclose(eig.values, [-1.0, 1.0])
        assert abs(eig.vectors[1, 0]) == pytest.approx(1.0)  # eigenvector of -1 is |1>
        assert abs(eig.vectors[0, 1]) == pytest.approx(1.0)  # eigenvector of +1 is |0>

    def test_pauli_x(self):
        # analytic 2x2 diagonalization: values -1, +1 with vectors (|0> -+ |1>)/sqrt2
        eig = hermitian_eigensystem(pauli_x())
        np.testing.assert_allclose(eig.values, [-1.0, 1.0], atol=1e-15)
        minus = np.array([1.0, -1.0]) / np.sqrt(2.0)
        plus = np.array([1.0, 1.0]) / np.sqrt(2.0)
        assert abs(np.vdot(minus, eig.vectors[:, 0])) == pytest.approx(1.0, abs=1e-14)
        assert abs(np.vdot(plus, eig.vectors[:, 1])) == pytest.approx(1.0, abs=1e-14)

    def test_degenerate_identity(self):
        eig = hermitian_eigensystem(identity_observable(3))
        np.testing.assert_allclose(eig.values, np.ones(3))
        gram = eig.vectors.conj().T @ eig.vectors
        np.testing.assert_allclose(gram, np.eye(3), atol=1e-14)

    def test_reconstruction_trace_and_frobenius(self):
        rng = np.random.default_rng(23)
        for dim in (2, 3, 8, 16):
            g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
            a = Observable(0.5 * (g + g.conj().T))
            eig = hermitian_eigensystem(a)
            rebuilt = (eig.vectors * eig.values) @ eig.vectors.conj().T
            np.testing.assert_allclose(rebuilt, a.matrix, atol=1e-12 * (1 + a.frobenius_norm()))
            assert eig.values.sum() == pytest.approx(np.trace(a.matrix).real, abs=1e-10)
            assert (eig.values**2).sum() == pytest.approx(a.frobenius_norm() ** 2, abs=1e-10)
            assert np.all(np.diff(eig.values) >= 0)


class TestIsEigenstate:
    def test_basis_state_of_z(self):
        assert is_eigenstate(pauli_z(), basis_state(2, 0))

    def test_plus_state_of_x(self):
        assert is_eigenstate(pauli_x(), equatorial_state(0.0))

    def test_circular_state_not_x_eigenstate(self):
        # variance of X there is 1
        assert not is_eigenstate(pauli_x(), equatorial_state(np.pi / 2))
        assert variance(pauli_x(), equatorial_state(np.pi / 2)) == pytest.approx(1.0, abs=1e-14)


@given(complex_vectors(3), complex_vectors(3))
@settings(max_examples=80, deadline=None)
def test_cauchy_schwarz_property(u, v):
    uu = np.vdot(u, u).real
    vv = np.vdot(v, v).real
    slack = uu * vv - abs(np.vdot(u, v)) ** 2
    assert slack >= -TOL_EIG * (1.0 + uu * vv)


@given(complex_vectors(3), st.floats(min_value=-8.0, max_value=8.0, allow_nan=False), st.floats(min_value=-8.0, max_value=8.0))
@settings(max_examples=60, deadline=None)
def test_cauchy_schwarz_equality_for_collinear(u, cr, ci):
    v = (cr + 1j * ci) * u
    uu = np.vdot(u, u).real
    vv = np.vdot(v, v).real
    slack = uu * vv - abs(np.vdot(u, v)) ** 2
    assert abs(slack) <= 1e-9 * (1.0 + uu * vv)
