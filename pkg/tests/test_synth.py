import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from passive_spectra import (
    NetworkKind,
    NotZipError,
    PoleResidue,
    RationalFunction,
    ValidationError,
    foster1_rc,
    foster2_rl,
    netlist,
    pole_residue_from_rational,
    random_zip_rational,
    realize,
    symmetric_from_pole_residue,
    validate_realization,
)
from passive_spectra import catalog

SQ2 = np.sqrt(2.0)


def _coeff_close(a, b, tol=1e-9):
    a, b = np.asarray(a, float), np.asarray(b, float)
    assert a.shape == b.shape
    assert np.max(np.abs(a - b)) <= tol * max(1.0, np.max(np.abs(b)))


class TestPoleResidue:
    def test_ladder(self):
        pr = pole_residue_from_rational(RationalFunction.from_roots([-2, -5], [-1, -3]))
        assert pr.g_inf == pytest.approx(1.0)
        np.testing.assert_allclose(pr.poles, [-3, -1])
        np.testing.assert_allclose(pr.residues, [1, 2])

    def test_admittance(self):
        pr = pole_residue_from_rational(RationalFunction.from_roots([-1, -3], [-2, -5]))
        np.testing.assert_allclose(pr.poles, [-5, -2])
        np.testing.assert_allclose(pr.residues, [-8 / 3, -1 / 3])
        assert pr.sign == -1

    def test_order_one(self):
        pr = pole_residue_from_rational(RationalFunction([1, 4], [1, 1]))
        assert pr.poles == (-1.0,) and pr.residues[0] == pytest.approx(3.0)

    @pytest.mark.parametrize("num,den", [
        ([1, 3, 3], [1, 2, 1]),          # repeated pole
        ([1, 0, 0], [1, 0, 1]),          # complex poles
        ([1, 2], [1, 0, -1]),            # not biproper
        ([1, 1.5, 1], [1, 3, 2]),        # mixed residue signs
    ])
    def test_invalid(self, num, den):
        with pytest.raises(ValidationError):
            pole_residue_from_rational(RationalFunction(num, den))


class TestRealization:
    def test_ladder(self):
        R = symmetric_from_pole_residue(catalog.rc_ladder_pole_residue())
        np.testing.assert_allclose(R.A, np.diag([-3.0, -1.0]))
        np.testing.assert_allclose(R.B.ravel(), [1.0, SQ2])
        np.testing.assert_allclose(R.C, R.B.T)

    def test_negative_residues(self):
        R = symmetric_from_pole_residue(PoleResidue(1.0, (-5.0, -2.0), (-8 / 3, -1 / 3)))
        np.testing.assert_allclose(R.C, -R.B.T)
        assert validate_realization(R).sign == -1

    def test_single_pole(self):
        R = symmetric_from_pole_residue(PoleResidue(1.0, (-1.0,), (3.0,)))
        np.testing.assert_allclose([R.A[0, 0], R.B[0, 0], R.C[0, 0], R.D[0, 0]],
                                   [-1, np.sqrt(3), np.sqrt(3), 1])

    def test_round_trip(self, rng):
        for _ in range(200):
            f, _ = random_zip_rational(rng, int(rng.integers(1, 9)))
            R = realize(f)
            g = R.to_rational()
            _coeff_close(g.num, f.num)
            _coeff_close(g.den, f.den)
            sign = pole_residue_from_rational(f).sign
            cert = validate_realization(R)
            assert cert.is_symmetric and cert.sign == sign


class TestFoster:
    def test_fig_one(self):
        net = foster1_rc(catalog.rc_ladder_pole_residue())
        assert net.kind is NetworkKind.RC_FOSTER_I and net.resistor == 1.0
        assert sorted(net.branches) == pytest.approx(sorted([(2.0, 0.5), (1 / 3, 1.0)]))

    def test_fig_two(self):
        net = foster2_rl(catalog.rc_ladder_pole_residue())
        assert net.kind is NetworkKind.RL_FOSTER_II and net.resistor == 1.0
        assert sorted(net.branches) == pytest.approx(sorted([(0.5, 0.5), (3.0, 1.0)]))

    def test_one_branch(self):
        net = foster1_rc(PoleResidue(1.0, (-4.0,), (2.0,)))
        assert net.branches[0] == pytest.approx((0.5, 0.5))
        net = foster2_rl(PoleResidue(1.0, (-4.0,), (2.0,)))
        assert net.branches[0] == pytest.approx((2.0, 0.5))

    def test_resistor_only(self):
        assert foster1_rc(PoleResidue(2.0, (), ())).resistor == 2.0
        net = foster2_rl(PoleResidue(5.0, (), ()))
        assert net.resistor == pytest.approx(0.2) and net.branches == ()

    def test_negative_residues(self):
        pr = PoleResidue(1.0, (-2.0,), (-0.5,))
        with pytest.raises(NotZipError):
            foster1_rc(pr)
        with pytest.raises(NotZipError):
            foster2_rl(pr)

    def test_driving_point(self):
        pr = catalog.rc_ladder_pole_residue()
        for s in (0.2, 1.5j, 3 - 1j):
            assert foster1_rc(pr)(s) == pytest.approx(pr(s))
            assert foster2_rl(pr)(s) == pytest.approx(pr(s))

    @settings(max_examples=100, deadline=None)
    @given(st.integers(0, 2 ** 32 - 1), st.integers(1, 6))
    def test_round_trip(self, seed, n):
        rng = np.random.default_rng(seed)
        f, pr = random_zip_rational(rng, n, zero_first=True)
        for net in (foster1_rc(pr), foster2_rl(pr)):
            g = net.to_rational()
            _coeff_close(g.num, f.num)
            _coeff_close(g.den, f.den)

    def test_order_one_duality(self):
        pr = PoleResidue(1.0, (-4.0,), (2.0,))
        (R1, C1), = foster1_rc(pr).branches
        (R2, L2), = foster2_rl(pr).branches
        assert R1 * R2 == pytest.approx(1.0) and C1 == pytest.approx(L2)


class TestNetlist:
    def test_line_counts(self):
        pr = catalog.rc_ladder_pole_residue()
        assert len(netlist(foster1_rc(pr)).splitlines()) == 5
        assert len(netlist(foster2_rl(pr)).splitlines()) == 5
        assert len(netlist(foster1_rc(PoleResidue(2.0, (), ()))).splitlines()) == 1

    def test_format(self):
        text = netlist(foster1_rc(catalog.rc_ladder_pole_residue()))
        lines = text.splitlines()
        assert lines[0] == "R0 in n1 1"
        assert lines[-1] == "C2 n2 0 0.5" and text.endswith("\n")
        assert "0.333333333333" in text
