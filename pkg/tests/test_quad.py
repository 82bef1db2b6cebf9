"""Circle means, disc quadrature, and radial energy schedules."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cisl.funcs import (
    BlaschkeProduct,
    CoefficientSeries,
    Constant,
    Monomial,
    Polynomial,
)
from cisl.quad import (
    CircleGrid,
    DiscScheme,
    RadialSchedule,
    SingularityError,
    disc_integral,
    disc_integral_singular,
    integral_mean,
    radial_energy,
)


def poly_from_seed(seed: int, degree: int = 16) -> Polynomial:
    rng = np.random.default_rng(seed)
    c = rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1)
    return Polynomial(CoefficientSeries(c / (1.0 + np.arange(degree + 1))))


def parseval_mean(coeffs: np.ndarray, r: float) -> float:
    n = np.arange(len(coeffs))
    return float(np.sqrt(np.sum(np.abs(coeffs) ** 2 * r ** (2 * n))))


# ---------------------------------------------------------------------------
# circle means
# ---------------------------------------------------------------------------

class TestIntegralMean:
    def test_coordinate_function(self):
        assert integral_mean(Monomial(1), 2, 0.7) == pytest.approx(0.7, abs=1e-14)

    @pytest.mark.parametrize("p", [1.0, 2.0, 3.5, math.inf])
    def test_constant_modulus(self, p):
        got = integral_mean(Constant(3 + 4j), p, 0.3)
        assert got == pytest.approx(5.0, abs=1e-12)

    def test_quadratic_polynomial(self):
        f = Polynomial(CoefficientSeries([0.0, 1.0, 1.0]))
        want = math.sqrt(0.25 + 0.0625)
        assert integral_mean(f, 2, 0.5) == pytest.approx(want, abs=1e-13)

    @given(st.integers(0, 2 ** 32 - 1), st.sampled_from([0.3, 0.6, 0.9]))
    def test_quadratic_mean_is_parseval(self, seed, r):
        f = poly_from_seed(seed)
        got = integral_mean(f, 2, r, m=64)  # 64 > 2 * 16: angularly exact
        assert got == pytest.approx(parseval_mean(f.series.coeffs, r), abs=1e-13)

    def test_sup_mean_of_contraction_stays_below_one(self):
        f = BlaschkeProduct((0.5, -0.3j))
        got = integral_mean(f, math.inf, 0.99)
        assert got <= 1.0 + 1e-12

    @given(st.integers(0, 2 ** 32 - 1), st.sampled_from([1.0, 2.0, math.inf]))
    @settings(max_examples=25)
    def test_hardy_monotonicity_in_radius(self, seed, p):
        f = poly_from_seed(seed, degree=10)
        radii = [1.0 - 2.0 ** (-n) for n in range(1, 9)]
        means = [integral_mean(f, p, r, m=256) for r in radii]
        assert all(b >= a - 1e-9 for a, b in zip(means, means[1:]))

    def test_input_validation(self):
        with pytest.raises(ValueError):
            integral_mean(Monomial(1), 2, 1.0)
        with pytest.raises(ValueError):
            integral_mean(Monomial(1), 0.0, 0.5)
        with pytest.raises(ValueError):
            CircleGrid(0.5, 100)  # not a power of two
        with pytest.raises(ValueError):
            CircleGrid(-0.1, 64)


# ---------------------------------------------------------------------------
# disc quadrature
# ---------------------------------------------------------------------------

class TestDiscIntegral:
    def test_unit_density_gives_truncated_area(self):
        scheme = DiscScheme.build()
        r_max = float(scheme.band_edges[-1])
        got = disc_integral(lambda z: np.ones_like(z, dtype=float), scheme)
        assert got == pytest.approx(r_max ** 2, rel=1e-12)
        assert got == pytest.approx(1.0, abs=1e-6)

    def test_radial_square_density(self):
        got = disc_integral(lambda z: np.abs(z) ** 2)
        assert got == pytest.approx(0.5, abs=1e-6)

    @pytest.mark.parametrize("s", [0.25, 1.0, 2.0])
    def test_power_weight_closed_form(self, s):
        got = disc_integral(lambda z: (1.0 - np.abs(z) ** 2) ** s)
        assert got == pytest.approx(1.0 / (s + 1.0), abs=1e-6)

    def test_refinement_stability(self):
        f = poly_from_seed(7)

        def density(scheme):
            def rows(z):
                d = f._eval(z, 1)[1]
                return (1.0 - np.abs(z) ** 2) * np.abs(d) ** 2
            return disc_integral(rows, scheme)

        base = density(DiscScheme.build())
        fine = density(DiscScheme.build(bands=240, angles=2048))
        assert abs(fine - base) < 1e-6

    def test_nonfinite_node_raises_with_location(self):
        scheme = DiscScheme.build(bands=8, angles=16)

        def density(z):
            out = np.ones_like(z, dtype=float)
            out[np.abs(z - scheme.ring_r[0]) < 1e-12] = np.inf
            return out

        with pytest.raises(SingularityError) as info:
            disc_integral(density, scheme)
        assert abs(info.value.node - scheme.ring_r[0]) < 1e-12

    def test_truncated_scheme_keeps_prefix(self):
        scheme = DiscScheme.build(bands=16)
        cut = scheme.truncated(4)
        assert cut.bands == 4
        assert np.array_equal(cut.ring_r, scheme.ring_r[: 4 * scheme.nodes_per_band])


class TestSingularIntegral:
    # accuracy is limited by quadrature cells straddling the masked rim,
    # so the harsh inverse-modulus case is held to a looser band than the
    # log class the callers actually integrate
    def test_inverse_modulus_at_origin(self):
        got = disc_integral_singular(lambda z: 1.0 / np.abs(z),
                                     singular_point=0.0)
        assert got == pytest.approx(2.0, rel=5e-2)

    def test_log_singularity_at_origin(self):
        got = disc_integral_singular(lambda z: np.log(1.0 / np.abs(z)),
                                     singular_point=0.0)
        assert got == pytest.approx(0.5, abs=2e-2)

    def test_log_singularity_off_centre(self):
        a = 0.3 + 0.1j
        got = disc_integral_singular(lambda z: np.log(1.0 / np.abs(z - a)),
                                     singular_point=a)
        assert got == pytest.approx((1.0 - abs(a) ** 2) / 2.0, abs=5e-3)

    def test_nonfinite_away_from_singularity_still_raises(self):
        scheme = DiscScheme.build(bands=8, angles=16)

        def density(z):
            out = np.ones_like(z, dtype=float)
            out[np.abs(z - scheme.ring_r[-1]) < 1e-12] = np.nan
            return out

        with pytest.raises(SingularityError):
            disc_integral_singular(density, scheme, singular_point=0.0)


# ---------------------------------------------------------------------------
# radial schedules
# ---------------------------------------------------------------------------

class TestRadialEnergy:
    def test_linear_weight_closed_form(self):
        schedule = RadialSchedule.dyadic(6)
        partials = radial_energy(Monomial(1), 1.0, schedule)
        # the n = 2 entry integrates (1 - r) from 0 to 0.75
        assert partials[1] == pytest.approx(0.46875, abs=1e-12)

    def test_constant_has_zero_energy(self):
        partials = radial_energy(Constant(2.0), 0.5, RadialSchedule.dyadic(5))
        assert partials == [0.0] * 5

    @given(st.integers(0, 2 ** 32 - 1), st.sampled_from([0.25, 1.0]))
    @settings(max_examples=25)
    def test_partials_monotone(self, seed, s):
        f = poly_from_seed(seed, degree=8)
        partials = radial_energy(f, s, RadialSchedule.dyadic(10))
        assert all(b >= a for a, b in zip(partials, partials[1:]))

    def test_schedule_validation(self):
        with pytest.raises(ValueError):
            RadialSchedule((0.5, 0.5))
        with pytest.raises(ValueError):
            RadialSchedule((0.9, 0.5))
        with pytest.raises(ValueError):
            RadialSchedule(())
        with pytest.raises(ValueError):
            RadialSchedule((1.0,))
        assert RadialSchedule.dyadic(3).dyadic_indices == (1, 2, 3)

    def test_weight_exponent_floor(self):
        with pytest.raises(ValueError):
            radial_energy(Monomial(1), -1.0, RadialSchedule.dyadic(3))
