"""Expression atoms, truncated series algebra, and the parser."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cisl.funcs import (
    BlaschkeProduct,
    CoefficientSeries,
    ComposeMobius,
    Constant,
    DomainError,
    GapSeries,
    LacunaryCoefficients,
    LogKernel,
    MobiusAtom,
    Monomial,
    ParseError,
    Polynomial,
    PowerKernel,
    Primitive,
    ProductExpr,
    SumExpr,
    derivative_values,
    eval_with_derivative,
    make_atom,
    parse_expr,
    second_derivative_values,
    series_antiderivative,
    series_multiply,
    suggest_truncation,
    taylor,
    value_at,
)

inner_points = st.complex_numbers(max_magnitude=0.9, allow_nan=False,
                                  allow_infinity=False)
params = st.complex_numbers(max_magnitude=0.95, allow_nan=False,
                            allow_infinity=False)


def poly_from_seed(seed: int, degree: int = 16) -> Polynomial:
    rng = np.random.default_rng(seed)
    c = rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1)
    return Polynomial(CoefficientSeries(c / (1.0 + np.arange(degree + 1))))


# ---------------------------------------------------------------------------
# pointwise evaluation
# ---------------------------------------------------------------------------

class TestEval:
    def test_automorphism_at_own_centre(self):
        a = 0.6 + 0.2j
        v, d = eval_with_derivative(MobiusAtom(a), a)
        assert v == pytest.approx(0.0, abs=1e-15)
        assert d == pytest.approx(-1.0 / (1.0 - abs(a) ** 2), abs=1e-13)

    def test_constant(self):
        v, d = eval_with_derivative(Constant(5), 0.3 - 0.1j)
        assert v == 5.0
        assert d == 0.0

    def test_cube(self):
        v, d = eval_with_derivative(Monomial(3), 0.5)
        assert v == pytest.approx(0.125)
        assert d == pytest.approx(0.75)

    def test_second_derivative_of_square(self):
        out = second_derivative_values(Monomial(2), np.array([0.1j, 0.5]))
        assert np.allclose(out, 2.0)

    def test_rejects_points_outside_disc(self):
        with pytest.raises(DomainError):
            value_at(Monomial(1), 1.0)
        with pytest.raises(DomainError):
            value_at(Monomial(1), 1.2j)

    def test_rejects_parameters_past_cap(self):
        with pytest.raises(DomainError):
            MobiusAtom(0.9995)
        with pytest.raises(DomainError):
            LogKernel(1.1)
        # an explicit cap widens the allowed band
        assert abs(LogKernel(0.9995, cap=1 - 2.0 ** -14).a) == 0.9995

    def test_primitive_has_no_pointwise_value(self):
        f = Primitive(Monomial(0))
        with pytest.raises(DomainError):
            value_at(f, 0.2)
        # but its derivative channel is the integrand, exactly
        assert derivative_values(f, np.array([0.3 + 0j]))[0] == 1.0


# ---------------------------------------------------------------------------
# exact Maclaurin truncations
# ---------------------------------------------------------------------------

class TestTaylor:
    def test_log_kernel_coefficients(self):
        got = taylor(LogKernel(0.5), 3).coeffs
        want = [0.0, 0.5, 0.125, 0.5 ** 3 / 3.0]
        assert np.allclose(got, want, atol=1e-15)

    def test_gap_series_occupies_dyadic_slots(self):
        f = make_atom("fp", p=3, depth=2)
        got = taylor(f, 4).coeffs
        want = np.zeros(5, dtype=complex)
        want[2] = 2.0 ** (-1.0 / 3.0)
        want[4] = 2.0 ** -0.5 * 2.0 ** (-2.0 / 3.0)
        assert np.allclose(got, want, atol=1e-15)

    def test_automorphism_first_order(self):
        a = 0.3 + 0.4j
        got = taylor(MobiusAtom(a), 1).coeffs
        assert got[0] == pytest.approx(a)
        assert got[1] == pytest.approx(abs(a) ** 2 - 1.0)

    @pytest.mark.parametrize("f", [
        LogKernel(0.7 + 0.1j, scale=2.0, offset=2.0),
        PowerKernel(0.6j, q=1.5),
        MobiusAtom(-0.4 + 0.3j),
        BlaschkeProduct((0.5, -0.3j, 0.0)),
        make_atom("fp", p=3, depth=4),
        ComposeMobius(PowerKernel(0.5, q=2.0), 0.3),
        Primitive(LogKernel(0.8)),
    ], ids=lambda f: type(f).__name__)
    def test_truncation_matches_eval_on_circle(self, f):
        r = 0.5
        n = suggest_truncation(f, r, tol=1e-12)
        series = taylor(f, n)
        z = r * np.exp(2j * np.pi * np.arange(64) / 64)
        if isinstance(f, Primitive):
            # compare the derivative channel instead of the missing value
            got = CoefficientSeries(series.coeffs).derivative().eval(z)
            want = derivative_values(f, z)
        else:
            got = series.eval(z)
            want = f._eval(z, 0)[0]
        assert np.max(np.abs(got - want)) < 1e-9

    def test_tail_bound_bounds_the_tail(self):
        f = PowerKernel(0.8, q=2.0)
        r = 0.9
        full = taylor(f, 4096).coeffs
        for n in (8, 32, 128):
            m = np.arange(n + 1, len(full))
            tail = float(np.sum(np.abs(full[n + 1:]) * r ** m))
            assert f._tail_bound(r, n) >= tail

    def test_degree_hints(self):
        assert Monomial(7).degree_hint() == 7
        assert make_atom("fp", p=3, depth=5).degree_hint() == 32
        assert LogKernel(0.5).degree_hint() is None
        prod = ProductExpr((Monomial(2), Monomial(3)))
        assert prod.degree_hint() == 5
        assert suggest_truncation(prod, 0.5) == 5


# ---------------------------------------------------------------------------
# series algebra
# ---------------------------------------------------------------------------

class TestSeriesOps:
    def test_difference_of_squares(self):
        u = CoefficientSeries([1.0, 1.0])
        v = CoefficientSeries([1.0, -1.0])
        got = series_multiply(u, v, 2).coeffs
        assert np.allclose(got, [1.0, 0.0, -1.0], atol=1e-16)

    def test_multiplicative_identity(self):
        u = CoefficientSeries([2.0, -1.0, 0.5j])
        got = series_multiply(u, CoefficientSeries([1.0]), u.degree)
        assert np.array_equal(got.coeffs, u.coeffs)

    @given(st.integers(0, 2 ** 32 - 1))
    def test_product_matches_pointwise(self, seed):
        rng = np.random.default_rng(seed)
        u = CoefficientSeries(rng.standard_normal(9) + 1j * rng.standard_normal(9))
        v = CoefficientSeries(rng.standard_normal(9) + 1j * rng.standard_normal(9))
        prod = series_multiply(u, v, 16)
        z = 0.8 * np.exp(2j * np.pi * np.arange(16) / 16)
        assert np.max(np.abs(prod.eval(z) - u.eval(z) * v.eval(z))) < 1e-12

    def test_antiderivative_examples(self):
        got = series_antiderivative(CoefficientSeries([1.0]))
        assert np.allclose(got.coeffs, [0.0, 1.0], atol=1e-16)
        got = series_antiderivative(CoefficientSeries([0.0, 2.0]), 3.0)
        assert np.allclose(got.coeffs, [3.0, 0.0, 1.0], atol=1e-16)

    @given(st.integers(0, 2 ** 32 - 1))
    def test_antiderivative_roundtrip(self, seed):
        rng = np.random.default_rng(seed)
        u = CoefficientSeries(rng.standard_normal(33)
                              + 1j * rng.standard_normal(33))
        back = series_antiderivative(u, 1.0).derivative()
        assert np.max(np.abs(back.coeffs[:33] - u.coeffs)) < 1e-15

    def test_truncation_degree_must_be_nonnegative(self):
        u = CoefficientSeries([1.0])
        with pytest.raises(ValueError):
            series_multiply(u, u, -1)


# ---------------------------------------------------------------------------
# named atoms
# ---------------------------------------------------------------------------

class TestMakeAtom:
    def test_normalised_log_kernel_value_at_its_aperture(self):
        f = make_atom("fa", a=0.9, p=2)
        want = math.log(1.0 / (1.0 - 0.81)) ** 0.5
        assert value_at(f, 0.9) == pytest.approx(want, abs=1e-12)
        assert want == pytest.approx(1.2887, abs=5e-4)

    def test_offset_kernel_at_origin_is_constant(self):
        f = make_atom("ha", a=0)
        z = 0.5 * np.exp(2j * np.pi * np.arange(8) / 8)
        assert np.allclose(f._eval(z, 0)[0], math.log(2.0), atol=1e-15)

    def test_gap_family_amplitudes(self):
        f = make_atom("fp", p=4, depth=3)
        want = [2.0 ** -0.25, 2.0 ** -0.5 / math.sqrt(2.0),
                2.0 ** -0.75 / math.sqrt(3.0)]
        assert np.allclose(f.coeffs.amps, want, atol=1e-15)
        assert np.array_equal(f.coeffs.exponents(), [2.0, 4.0, 8.0])

    def test_parameter_validation(self):
        with pytest.raises(DomainError):
            make_atom("fa", a=0, p=2)
        with pytest.raises(DomainError):
            make_atom("fa", a=0.5, p=1.0)
        with pytest.raises(DomainError):
            make_atom("fp", p=0.0, depth=3)
        with pytest.raises(DomainError):
            make_atom("nope", a=0.5)


# ---------------------------------------------------------------------------
# structural properties
# ---------------------------------------------------------------------------

class TestProperties:
    @given(st.integers(0, 2 ** 32 - 1))
    def test_product_rule(self, seed):
        u = poly_from_seed(seed)
        v = poly_from_seed(seed + 1)
        uv = ProductExpr((u, v))
        left = CoefficientSeries(uv._taylor(32)).derivative().padded(31)
        right = (series_multiply(taylor(u, 31).derivative(), taylor(v, 31), 31)
                 + series_multiply(taylor(u, 31), taylor(v, 31).derivative(), 31))
        assert np.max(np.abs(left - right.padded(31))) < 1e-13

    @given(params, inner_points)
    def test_automorphism_is_an_involution(self, a, z):
        phi = MobiusAtom(a)
        w = value_at(phi, z)
        assert abs(w) < 1.0
        assert abs(value_at(phi, w) - z) < 1e-12

    @given(params, inner_points)
    def test_conformal_weight_identity(self, a, z):
        w = value_at(MobiusAtom(a), z)
        lhs = 1.0 - abs(w) ** 2
        rhs = ((1.0 - abs(a) ** 2) * (1.0 - abs(z) ** 2)
               / abs(1.0 - np.conj(a) * z) ** 2)
        assert abs(lhs - rhs) < 1e-13

    @given(st.integers(0, 2 ** 32 - 1))
    @settings(max_examples=20)
    def test_sum_and_product_eval_agree_with_parts(self, seed):
        u = poly_from_seed(seed, degree=6)
        v = LogKernel(0.4 - 0.2j)
        z = np.array([0.3 + 0.2j, -0.5j, 0.75])
        s = SumExpr((u, v))._eval(z, 1)
        p = ProductExpr((u, v))._eval(z, 1)
        uv, ud = u._eval(z, 1)
        vv, vd = v._eval(z, 1)
        assert np.allclose(s[0], uv + vv, atol=1e-14)
        assert np.allclose(s[1], ud + vd, atol=1e-14)
        assert np.allclose(p[0], uv * vv, atol=1e-14)
        assert np.allclose(p[1], ud * vv + uv * vd, atol=1e-14)

    def test_composition_chain_rule(self):
        f = PowerKernel(0.5, q=2.0)
        b = 0.4 + 0.1j
        g = ComposeMobius(f, b)
        z = np.array([0.2 - 0.3j, 0.6])
        phi_v, phi_d = MobiusAtom(b)._eval(z, 1)
        fv, fd = f._eval(phi_v, 1)
        gv, gd = g._eval(z, 1)
        assert np.allclose(gv, fv, atol=1e-14)
        assert np.allclose(gd, fd * phi_d, atol=1e-14)

    def test_gap_series_sparse_eval_matches_dense(self):
        f = make_atom("fp", p=3, depth=8)
        z = np.array([0.5 + 0.3j, -0.7j, 0.9])
        dense = taylor(f, 256)
        assert np.max(np.abs(f._eval(z, 0)[0] - dense.eval(z))) < 1e-13
        d1 = CoefficientSeries(dense.coeffs).derivative()
        assert np.max(np.abs(f._eval(z, 1)[1] - d1.eval(z))) < 1e-12

    def test_deep_gap_series_evaluates_without_overflow(self):
        amps = np.full(80, 1.0)
        f = GapSeries(LacunaryCoefficients(amps))
        v = value_at(f, 0.5)
        # past the first few terms 0.5^(2^k) is negligible
        want = sum(0.5 ** (2.0 ** k) for k in range(1, 12))
        assert v == pytest.approx(want, abs=1e-15)


# ---------------------------------------------------------------------------
# expression mini-language
# ---------------------------------------------------------------------------

class TestParse:
    def test_atom_forms(self):
        assert isinstance(parse_expr("poly:[1,0,2]"), Polynomial)
        assert isinstance(parse_expr("fa:a=0.9,p=2"), LogKernel)
        assert isinstance(parse_expr("ha:a=0.5"), LogKernel)
        assert isinstance(parse_expr("fp:p=3,depth=4"), GapSeries)
        assert isinstance(parse_expr("log:a=0.5,scale=2,offset=2"), LogKernel)
        assert isinstance(parse_expr("cauchy:a=0.5,q=2"), PowerKernel)
        assert isinstance(parse_expr("mobius:a=0.5+0.25i"), MobiusAtom)
        assert isinstance(parse_expr("blaschke:[0.5,-0.3i]"), BlaschkeProduct)
        assert isinstance(parse_expr("gap:[1,0.5]"), GapSeries)
        assert isinstance(parse_expr("monomial:n=3"), Monomial)
        assert isinstance(parse_expr("constant:c=2"), Constant)

    def test_complex_literals(self):
        f = parse_expr("mobius:a=0.5+0.25i")
        assert f.a == 0.5 + 0.25j
        assert parse_expr("constant:c=-0.3i").c == -0.3j
        assert parse_expr("constant:c=1e-2").c == 0.01

    def test_product_binds_tighter_than_sum(self):
        f = parse_expr("monomial:n=1 * monomial:n=2 + constant:c=1")
        assert isinstance(f, SumExpr)
        assert value_at(f, 0.5) == pytest.approx(0.5 ** 3 + 1.0)

    def test_parse_matches_direct_construction(self):
        f = parse_expr("fa:a=0.9,p=2 * poly:[1,1] + mobius:a=0.1")
        g = SumExpr((ProductExpr((make_atom("fa", a=0.9, p=2),
                                  make_atom("poly", coeffs=[1, 1]))),
                     make_atom("mobius", a=0.1)))
        z = np.array([0.2 + 0.1j, -0.6j])
        assert np.allclose(f._eval(z, 1), g._eval(z, 1), atol=1e-15)

    @pytest.mark.parametrize("bad", [
        "", "poly:[1] +", "+ poly:[1]", "poly:[]", "poly:[1] poly:[2]",
        "nope:a=1", "mobius:a=zz", "fa:a=0.9", "monomial:3",
    ])
    def test_rejects_malformed_text(self, bad):
        with pytest.raises(ParseError):
            parse_expr(bad)

    def test_errors_carry_position_and_token(self):
        with pytest.raises(ParseError) as info:
            parse_expr("poly:[1] + nope:a=1")
        assert info.value.position == 11
        assert "nope" in info.value.token
