import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate
from scipy.special import beta as beta_fn
from scipy.special import gammainc, gammaincc

from focklab.bounds import (
    BandKernelOperator,
    DominantFunction,
    admissible_radius,
    bc_bound_check,
    c_scale,
    c_scale_closed,
    c_scale_sequence,
    constant_growth_exponent,
    fit_power_envelope,
    gamma_and_constant,
    gaussian_envelope_violation,
    kernel_tail,
    kernel_tail_quadrature,
    kernel_tail_scan,
    localization_exponent,
    localization_profile,
    nonneg_sandwich_check,
    pbdop_compression_profile,
    power_envelope_check,
    schur_bound,
)
from focklab.core import FockParams, Grid
from focklab.errors import NotIntegrableError, PreconditionError
from focklab.heat import pairing
from focklab.symbols import GaussianRadial, IndicatorBall, RadialStep, constant, parse_symbol
from focklab.toeplitz import identity_operator, toeplitz_matrix

P1 = FockParams(1, 1.0)


def bump(omega):
    def phi(x):
        r2 = np.abs(np.asarray(x)[:, 0]) ** 2 / omega**2
        out = np.zeros(r2.shape)
        inside = r2 < 1
        out[inside] = np.exp(1 - 1 / (1 - r2[inside]))
        return out

    return phi


class TestConstants:
    def test_quarter(self):
        k = gamma_and_constant(0.25, 1.0)
        assert k.gamma_exact == Fraction(1, 6) and k.C_exact == 6
        assert gamma_and_constant(0.25, 1.0, 2).C_exact == 36

    @given(st.floats(0.01, 10), st.floats(0.001, 0.999))
    def test_sign_flips_at_half(self, t, frac):
        k = gamma_and_constant(frac * t, t)
        if frac * t < t / 2:
            assert k.gamma > 0 and k.valid
        elif frac * t > t / 2:
            assert k.gamma < 0 and not k.valid

    def test_boundary_and_equal_times(self):
        assert gamma_and_constant(0.5, 1.0).gamma == 0
        assert not gamma_and_constant(1.0, 1.0).valid

    @pytest.mark.parametrize("n", [1, 2])
    def test_growth_exponent(self, n):
        assert constant_growth_exponent(1.0, n) == pytest.approx(n, rel=0.05)

    def test_rejects_nonpositive(self):
        with pytest.raises(PreconditionError):
            gamma_and_constant(0.0, 1.0)


class TestNormBound:
    @pytest.mark.parametrize("sym", ["const:value=1", "ball:radius=1", "step:r=0,1,2;v=1,0", "gaussian:lambda=-1+2i"])
    def test_ok(self, sym):
        r = bc_bound_check(parse_symbol(sym), 0.25, 1.0, 20)
        assert r.ok and r.C == 6.0 and r.margin >= 0

    def test_requires_small_s(self):
        with pytest.raises(PreconditionError):
            bc_bound_check(IndicatorBall(0, 1), 0.5, 1.0)

    def test_offcentre_scan_reaches_centre(self):
        r = bc_bound_check(IndicatorBall(2 + 2j, 1.0), 0.25, 1.0, 10)
        assert r.heat_sup == pytest.approx(1 - math.exp(-4), rel=1e-3)


class TestSandwich:
    @pytest.mark.parametrize("n", [1, 2])
    @pytest.mark.parametrize("sym", ["ball:radius=1", "step:r=0,1,2;v=1,0.5", "gaussian:lambda=-0.5"])
    def test_ok(self, n, sym):
        r = nonneg_sandwich_check(parse_symbol(sym), 1.0, 20, n=n)
        assert r.ok and r.two_time_ok
        assert r.low <= r.mid + 1e-8 <= r.high + 2e-8

    def test_rejects_signed(self):
        with pytest.raises(PreconditionError):
            nonneg_sandwich_check(RadialStep([0, 1], [-1.0]), 1.0, 10)


class TestLocalization:
    def test_admissible_radius(self):
        R = admissible_radius(P1, 40, 1e-9)
        assert math.sqrt(gammainc(41, R * R)) <= 1e-9 * (1 + 1e-6)
        assert math.sqrt(gammainc(41, (R + 0.01) ** 2)) > 1e-9

    def test_identity_profile(self):
        prof = localization_profile(identity_operator(P1, 60))
        np.testing.assert_allclose(prof.values, np.exp(-prof.d**2 / 2), atol=1e-12)
        R = prof.integral_radius
        assert prof.sup_integral == pytest.approx(2 * math.pi * (1 - math.exp(-R * R / 2)), rel=1e-9)

    @pytest.mark.parametrize("sym", ["ball:radius=1", "ball:center=0.5+0.5i;radius=1", "step:r=0,1,2;v=1,-1"])
    def test_gaussian_envelope(self, sym):
        f = parse_symbol(sym)
        prof = localization_profile(toeplitz_matrix(f, P1, 60))
        assert gaussian_envelope_violation(prof, f.sup_bound) <= 1e-9
        assert prof.beta > 0

    def test_power_envelope_dominates(self):
        f = IndicatorBall(0, 1)
        prof = localization_profile(toeplitz_matrix(f, P1, 60))
        env = power_envelope_check(prof, 5.0, 1.0)
        assert env.one_sided
        d = np.linspace(0, 20, 401)
        assert np.all(env.C / (1 + d) ** 5 >= np.exp(-d**2 / 4) - 1e-15)

    def test_power_fit(self):
        d = np.linspace(0, 5, 20)
        C, beta = fit_power_envelope(d, 3.0 * (1 + d) ** -4.0)
        assert C == pytest.approx(3.0) and beta == pytest.approx(4.0)
        assert fit_power_envelope([1.0], [0.5]) == (None, None)


class TestSchur:
    def test_gaussian(self):
        assert schur_bound(DominantFunction.gaussian(0.25)) == pytest.approx(4.0, abs=1e-12)
        assert schur_bound(DominantFunction.gaussian(0.5, 2)) == pytest.approx(4.0, abs=1e-12)

    @pytest.mark.parametrize("n,beta", [(1, 5.0), (1, 2.5), (2, 7.0)])
    def test_power(self, n, beta):
        H = DominantFunction.power(beta, n)
        closed = schur_bound(H)
        assert closed == pytest.approx(2 * beta_fn(2 * n, beta - 2 * n) / math.factorial(n - 1))
        assert schur_bound(H, "quadrature") == pytest.approx(closed, rel=1e-9)

    def test_sixth(self):
        assert schur_bound(DominantFunction.power(5.0)) == pytest.approx(1 / 6, abs=1e-15)

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_borderline_power(self, n):
        with pytest.raises(NotIntegrableError, match="not integrable"):
            schur_bound(DominantFunction.power(2 * n, n))

    def test_bad_gaussian(self):
        with pytest.raises(NotIntegrableError):
            schur_bound(DominantFunction.gaussian(0.0))


class TestCScale:
    def test_closed_form(self):
        seq = c_scale_sequence(10_000)
        k = np.arange(10_001)
        np.testing.assert_allclose(seq, k / (2 * (k + 1)), atol=1e-15, rtol=0)
        assert np.all(np.diff(seq) > 0) and np.all(seq < 0.5)

    @given(st.integers(0, 3000))
    def test_scalar_matches_closed(self, k):
        assert c_scale(k) == pytest.approx(c_scale_closed(k), abs=1e-15)

    def test_exponent(self):
        for k in range(6):
            assert localization_exponent(k) == pytest.approx(1 / (2 * (k + 2)), abs=1e-15)

    def test_negative(self):
        with pytest.raises(PreconditionError):
            c_scale_sequence(-1)


class TestKernelTail:
    def test_one_dimensional_equality(self):
        for r in np.arange(0.05, 8.0001, 0.05):
            k = kernel_tail(0, r)
            assert k.exact == pytest.approx(math.exp(-r * r / 2), rel=1e-12)
            assert k.ok

    @given(st.integers(2, 3), st.floats(0.01, 8))
    def test_bound(self, n, r):
        k = kernel_tail(0, r, n)
        assert k.exact == pytest.approx(math.sqrt(gammaincc(n, r * r)), rel=1e-11)
        assert k.ok and k.exact <= k.bound

    @pytest.mark.parametrize("z", [0.0, 1.0, 2 - 1j, 3j])
    @pytest.mark.parametrize("r", [0.5, 1.5, 3.0])
    def test_translation_invariance(self, z, r):
        assert kernel_tail_quadrature(z, r) == pytest.approx(math.exp(-r * r / 2), abs=1e-12)

    def test_dblquad_oracle(self):
        z, r = 1 + 0.5j, 1.2

        def integrand(y, x):
            u = x + 1j * y
            return math.exp(-abs(u - z) ** 2) / math.pi if abs(u - z) > r else 0.0

        inside, _ = integrate.dblquad(
            lambda y, x: math.exp(-abs(x + 1j * y - z) ** 2) / math.pi,
            z.real - r, z.real + r,
            lambda x: z.imag - math.sqrt(max(r * r - (x - z.real) ** 2, 0)),
            lambda x: z.imag + math.sqrt(max(r * r - (x - z.real) ** 2, 0)),
            epsabs=1e-13,
        )
        assert kernel_tail_quadrature(z, r) == pytest.approx(math.sqrt(1 - inside), abs=1e-10)

    def test_scan_and_precondition(self):
        assert len(kernel_tail_scan(2, [0.5, 1.0])) == 2
        with pytest.raises(PreconditionError):
            kernel_tail(0, 0.0)


class TestBandOperator:
    def test_multiplication_case(self):
        psi = IndicatorBall(0.5, 1.0)
        B = BandKernelOperator(0.0, lambda x: np.ones(len(x)), psi)
        assert B.pairing(0.2, 1j) == pytest.approx(pairing(psi, 0.2, 1j), abs=1e-14)

    def test_zero_kernel(self):
        B = BandKernelOperator(1.0, None, constant(1.0))
        assert B.pairing(0.3, 0.1) == 0 and B.norm_proxy() == 0

    def test_l1_norm(self):
        B = BandKernelOperator(1.0, bump(1.0), constant(1.0))
        ref, _ = integrate.quad(lambda p: 2 * math.pi * p * math.exp(1 - 1 / (1 - p * p)), 0, 1)
        assert B.phi_l1() == pytest.approx(ref, rel=1e-6)

    def test_phi_support_checked(self):
        with pytest.raises(PreconditionError):
            BandKernelOperator(0.5, bump(1.0), constant(1.0))

    def test_psi_bounded(self):
        with pytest.raises(PreconditionError):
            BandKernelOperator(1.0, bump(1.0), GaussianRadial(0.5))

    def test_profile(self):
        B = BandKernelOperator(1.0, bump(1.0), IndicatorBall(0, 2.0))
        r = pbdop_compression_profile(B, Grid(6.0, 1.0))
        assert r.envelope_ok and r.gaussian_ok and r.short_range_ok
        assert r.K_fit <= r.K_apriori

    def test_profile_dimension(self):
        B = BandKernelOperator(1.0, bump(1.0), IndicatorBall(0, 2.0))
        with pytest.raises(PreconditionError):
            pbdop_compression_profile(B, n=2)
