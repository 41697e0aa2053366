import numpy as np
import pytest

from passive_spectra import (
    DimensionError,
    NotPositiveDefiniteError,
    NotSymmetricError,
    Orientation,
    Realization,
    RepeatedPolesError,
    SingularMatrixError,
    ValidationError,
    eta_scan,
    hamiltonian,
    inverse_system,
    product_eigen_bounds,
    random_strictly_passive,
    random_symmetric_passive,
    spectral_interlace_check,
    system_poles,
    system_zeros,
    weyl_interlace_bounds,
    zip_check,
    zip_sufficient_condition,
)
from passive_spectra import catalog

SQ2 = np.sqrt(2.0)


class TestInverseSystem:
    def test_ladder(self):
        Y = inverse_system(catalog.rc_ladder_z())
        np.testing.assert_allclose(Y.A, [[-3, -SQ2], [-SQ2, -4]], atol=1e-12)
        np.testing.assert_allclose(Y.B, [[SQ2], [1.0]], atol=1e-12)
        np.testing.assert_allclose(Y.C, -Y.B.T, atol=1e-12)
        np.testing.assert_allclose(Y.D, [[1.0]])

    def test_no_output(self):
        R = Realization(np.diag([-1.0, -2.0]), np.ones((2, 1)), np.zeros((1, 2)), [[1.0]])
        Y = inverse_system(R)
        np.testing.assert_array_equal(Y.A, R.A)
        np.testing.assert_array_equal(Y.B, R.B)
        np.testing.assert_array_equal(Y.C, 0.0)

    def test_involution(self, rng):
        for R in (catalog.rc_ladder_z(), random_strictly_passive(rng, 4, 2)):
            back = inverse_system(inverse_system(R))
            for k in "ABCD":
                np.testing.assert_allclose(getattr(back, k), getattr(R, k), atol=1e-10)

    def test_transfer_inverse(self, rng):
        R = random_strictly_passive(rng, 3, 2)
        Y = inverse_system(R)
        np.testing.assert_allclose(Y.transfer(0.5j) @ R.transfer(0.5j), np.eye(2), atol=1e-10)

    def test_singular_d(self):
        with pytest.raises(SingularMatrixError):
            inverse_system(Realization(-1.0, 1.0, 1.0, 0.0))

    def test_same_hamiltonian(self, rng):
        for _ in range(20):
            R = random_strictly_passive(rng, 4, 2)
            np.testing.assert_allclose(hamiltonian(inverse_system(R)).matrix,
                                       hamiltonian(R).matrix, atol=1e-10)


class TestZeros:
    def test_ladder(self):
        z = system_zeros(catalog.rc_ladder_z()).as_array()
        np.testing.assert_allclose(np.sort(z.real), [-5.0, -2.0])
        np.testing.assert_allclose(np.sort(system_poles(catalog.rc_ladder_z()).real_parts()), [-3, -1])

    def test_example_one(self):
        z = system_zeros(catalog.decoupled_pair(1.0)).as_array()
        np.testing.assert_allclose(np.sort(z.real), [-9.24, -8.24, -4.76, -3.76], atol=5e-3)

    def test_example_two(self):
        R = catalog.multi_agent_path().with_feedthrough(0.1 * np.eye(2))
        z = np.sort(system_zeros(R).real_parts())
        np.testing.assert_allclose(z, [-11.22, -11.20, -2.98, -1.00], atol=5e-3)


class TestZipCheck:
    def test_ladder(self):
        rep = zip_check([-3, -1], [-5, -2])
        assert rep.strict and rep.orientation is Orientation.Z_BEFORE_P
        assert rep.status == "interlaced"

    def test_reverse(self):
        rep = zip_check([-5, -2], [-3, -1])
        assert rep.orientation is Orientation.P_BEFORE_Z

    def test_example_one(self):
        rep = zip_check([-8, -7, -4, -3], [-9.24, -8.24, -4.76, -3.76])
        assert not rep.strict and rep.orientation is Orientation.NONE
        assert rep.status == "not interlaced"

    def test_equal(self):
        rep = zip_check([-2, -1], [-2, -1])
        assert not rep.strict and rep.verge

    def test_length_mismatch(self):
        with pytest.raises(DimensionError):
            zip_check([-1, -2], [-3])

    def test_nonreal(self):
        with pytest.raises(ValidationError):
            zip_check([-1 + 1j, -1 - 1j], [-2, -3])


class TestSpectralInterlace:
    def test_ladder_full_chain(self):
        rep = spectral_interlace_check(catalog.rc_ladder_z())
        np.testing.assert_allclose(rep.stable_spectral.values, [-3.5530, -1.5416], atol=1e-4)
        assert rep.strict and rep.full_chain and rep.sandwich_holds

    def test_example_one_sandwich(self):
        rep = spectral_interlace_check(catalog.decoupled_pair(1.0))
        assert not rep.strict and rep.sandwich_holds and rep.full_chain is None
        np.testing.assert_allclose(rep.stable_spectral.values, [-8.52, -7.51, -4.40, -3.40], atol=5e-3)

    def test_order_one(self):
        rep = spectral_interlace_check(catalog.scalar_are())
        assert rep.stable_spectral.values[0] == pytest.approx(-2.0)
        assert rep.zeros.values[0] == pytest.approx(-4.0) and rep.full_chain

    def test_negative_sign_orientation(self):
        rep = spectral_interlace_check(catalog.rc_ladder_y())
        assert rep.orientation is Orientation.P_BEFORE_Z and rep.sandwich_holds

    def test_not_symmetric(self, rng):
        with pytest.raises(NotSymmetricError):
            spectral_interlace_check(random_strictly_passive(rng, 3, 1))

    def test_random_suite(self, rng):
        for k in range(60):
            n = int(rng.integers(1, 11))
            R = random_symmetric_passive(rng, n, int(rng.integers(1, n + 1)), 1 if k % 2 else -1)
            rep = spectral_interlace_check(R)
            assert rep.sandwich_holds


class TestSufficientCondition:
    def test_ladder(self):
        c = zip_sufficient_condition(catalog.rc_ladder_z())
        assert c.nu_min == pytest.approx(2.0) and c.lambda_max == pytest.approx(3.0)
        assert not c.condition and c.controllable

    @pytest.mark.parametrize("eta,expected", [(1.0, False), (2.5, True), (100.0, True)])
    def test_example_one(self, eta, expected):
        c = zip_sufficient_condition(catalog.decoupled_pair(eta))
        assert c.nu_min == pytest.approx(1.0)
        assert c.lambda_max == pytest.approx(2.0 / eta)
        assert c.condition is expected

    def test_zero_input(self):
        R = Realization(np.diag([-1.0, -2.0]), np.zeros((2, 1)), np.zeros((1, 2)), [[1.0]])
        c = zip_sufficient_condition(R)
        assert c.condition and not c.controllable and not c.implies_zip

    def test_repeated_poles(self):
        R = Realization(-np.eye(2), np.ones((2, 1)), np.ones((1, 2)), [[1.0]])
        with pytest.raises(RepeatedPolesError):
            zip_sufficient_condition(R)

    def test_implication(self, rng):
        for k in range(100):
            R = random_symmetric_passive(rng, 3, 1, 1 if k % 2 else -1)
            R = R.with_feedthrough(R.D * float(rng.uniform(1, 200)))
            c = zip_sufficient_condition(R)
            if c.implies_zip:
                rep = zip_check(system_poles(R).real_parts(), system_zeros(R).real_parts())
                assert rep.strict and rep.orientation is c.orientation


class TestEtaScan:
    def test_poles_constant(self):
        scan = eta_scan(catalog.decoupled_pair(1.0), etas=[1, 2, 5])
        assert len({r.poles.values for r in scan.rows}) == 1
        assert scan.threshold == 2.0

    def test_bisection(self):
        scan = eta_scan(catalog.decoupled_pair(1.0), D0=np.eye(2), bisect=(1.0, 2.0))
        assert 1.19 < scan.threshold < 1.21

    def test_refine(self):
        scan = eta_scan(catalog.decoupled_pair(1.0), D0=np.eye(2), etas=[1, 2], refine=True)
        assert 1.19 < scan.threshold < 1.21

    def test_scalar_always_zip(self):
        scan = eta_scan(catalog.scalar_are(), etas=[0.01, 1, 100])
        assert all(r.zip for r in scan.rows)

    def test_errors(self):
        R = catalog.decoupled_pair(1.0)
        with pytest.raises(NotPositiveDefiniteError):
            eta_scan(R, D0=-np.eye(2), etas=[1])
        with pytest.raises(ValidationError):
            eta_scan(R)
        with pytest.raises(ValidationError):
            eta_scan(R, etas=[0.0])
        with pytest.raises(ValidationError):
            eta_scan(R, bisect=(2.0, 3.0))
        with pytest.raises(DimensionError):
            eta_scan(R, D0=np.eye(3), etas=[1])


class TestWeyl:
    def test_example(self):
        rep = weyl_interlace_bounds(np.diag([1.0, 5.0]), np.ones((2, 2)))
        assert rep.condition and rep.interlaced and rep.strict_expected and rep.strict
        np.testing.assert_allclose(rep.lam_PM, [4 - np.sqrt(5), 4 + np.sqrt(5)])

    def test_zero_perturbation(self):
        rep = weyl_interlace_bounds(np.diag([1.0, 5.0]), np.zeros((2, 2)))
        assert rep.interlaced and not rep.strict and rep.lam_PM == rep.lam_P

    def test_shared_eigenvector(self):
        rep = weyl_interlace_bounds(np.diag([0.0, 1.0]), np.diag([0.0, 0.5]))
        assert rep.interlaced and not rep.strict_expected and not rep.strict
        assert rep.lam_PM[0] == 0.0

    def test_full_rank(self):
        with pytest.raises(ValidationError):
            weyl_interlace_bounds(np.diag([1.0, 2.0]), np.eye(2))

    def test_repeated(self):
        with pytest.raises(RepeatedPolesError):
            weyl_interlace_bounds(np.eye(2), np.zeros((2, 2)))

    def test_random(self, rng):
        for _ in range(50):
            Q, _ = np.linalg.qr(rng.standard_normal((5, 5)))
            lam = np.cumsum(rng.uniform(1, 2, 5))
            P = (Q * lam) @ Q.T
            b = rng.standard_normal((5, 1))
            M = b @ b.T * (0.9 * np.min(np.diff(lam)) / float(b[:, 0] @ b[:, 0]))
            assert weyl_interlace_bounds(P, M).interlaced


class TestProduct:
    def test_random(self, rng):
        for _ in range(50):
            G = rng.standard_normal((4, 4))
            P = G @ G.T + 0.1 * np.eye(4)
            b = rng.standard_normal((4, 2))
            rep = product_eigen_bounds(P, b @ b.T)
            assert rep.bounded and rep.max_imag <= 1e-8 * max(rep.upper)
