import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from focklab.errors import DomainError, PreconditionError
from focklab.symbols import (
    GaussianRadial,
    IndicatorBall,
    PolyRadialGaussian,
    RadialStep,
    SampledBounded,
    check_heat_domain,
    constant,
    parse_complex,
    parse_symbol,
)
from focklab.core import Grid


class TestParseComplex:
    @pytest.mark.parametrize(
        "text,value",
        [("1", 1), ("i", 1j), ("-2.5i", -2.5j), ("1e-3-4i", 1e-3 - 4j), (" 0.5 + 0.5i ", 0.5 + 0.5j)],
    )
    def test_literals(self, text, value):
        assert parse_complex(text) == value

    def test_garbage(self):
        with pytest.raises(PreconditionError):
            parse_complex("one")


class TestDSL:
    def test_gaussian(self):
        f = parse_symbol("gaussian:lambda=-1+0.5i")
        assert isinstance(f, GaussianRadial) and f.lam == -1 + 0.5j
        assert f(1.0) == pytest.approx(np.exp(-1 + 0.5j))

    def test_step_last_value_extends(self):
        f = parse_symbol("step:r=0,1;v=0,1")
        assert f(np.array([0.5, 1.5, 100.0])).tolist() == [0, 1, 1]

    def test_step_with_finite_end(self):
        f = parse_symbol("step:r=0,1,2;v=1,0")
        np.testing.assert_array_equal(f(np.array([0.2, 1.2, 2.5])), [1, 0, 0])

    def test_ball(self):
        f = parse_symbol("ball:center=1+i;radius=0.5")
        assert f(1 + 1.4j) == 1 and f(0) == 0
        assert not f.radial and f.radial_about_center

    def test_polygauss_and_const(self):
        f = parse_symbol("polygauss:coeffs=1,0.5;lambda=-0.25")
        assert f(2.0) == pytest.approx(3 * math.exp(-1))
        assert parse_symbol("const:value=2i")(5.0) == 2j

    @pytest.mark.parametrize(
        "text", ["nokind", "wave:x=1", "gaussian:", "step:r=1,2;v=1", "step:r=0,2,1;v=1,0", "ball:radius=-1", "gaussian:lambda=q"]
    )
    def test_errors_name_field(self, text):
        with pytest.raises(PreconditionError) as info:
            parse_symbol(text)
        assert info.value.field == "symbol"

    @given(
        st.lists(st.floats(0.1, 3.0), min_size=1, max_size=4, unique=True),
        st.lists(st.floats(-2, 2), min_size=4, max_size=4),
    )
    def test_describe_round_trip(self, gaps, vals):
        radii = np.concatenate([[0.0], np.cumsum(sorted(gaps))])
        f = RadialStep(radii, vals[: len(gaps)])
        g = parse_symbol(f.describe())
        probe = np.linspace(0, radii[-1] + 1, 57)
        np.testing.assert_array_equal(f(probe), g(probe))


class TestFamilies:
    def test_sup_bounds(self):
        assert GaussianRadial(-1).sup_bound == 1.0
        assert GaussianRadial(0.2).sup_bound is None
        assert IndicatorBall(0, 1).sup_bound == 1.0
        assert PolyRadialGaussian([1.0, 1.0], 0.0).sup_bound is None

    def test_polygauss_sup_scan(self):
        # x e^{-x} peaks at 1/e
        f = PolyRadialGaussian([0.0, 1.0], -1.0)
        assert f.sup_bound == pytest.approx(math.exp(-1), rel=1e-8)

    def test_constant(self):
        f = constant(3.0)
        assert f.radial and f.sup_bound == 3.0 and f(10.0) == 3.0

    def test_nonnegative_flags(self):
        assert IndicatorBall(0, 1).nonnegative
        assert not RadialStep([0, 1], [-1]).nonnegative
        assert not GaussianRadial(-1 + 1j).nonnegative

    def test_points_in_c2(self):
        f = IndicatorBall([0, 0], 1.0)
        pts = np.array([[0.5, 0.5], [1.0, 0.5j]])
        np.testing.assert_array_equal(f(pts), [1, 0])

    def test_sampled_validation(self):
        f = SampledBounded(lambda u: np.cos(u[:, 0].real), 0.5, label="cos")
        with pytest.raises(PreconditionError):
            f.validate(Grid(4.0, 0.1))
        with pytest.raises(PreconditionError):
            SampledBounded(lambda u: u, None)

    def test_heat_domain(self):
        check_heat_domain(1.0, 0.99)
        with pytest.raises(DomainError):
            check_heat_domain(2.0, 0.5)
