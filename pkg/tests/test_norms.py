"""Seminorm engine: closed forms, invariances, and the certified-report contract."""

import math

import numpy as np
import pytest

from cisl.funcs import (
    DEEPEST_PARAM_MODULUS,
    BlaschkeProduct,
    CoefficientSeries,
    Constant,
    DomainError,
    Monomial,
    Polynomial,
    compose_mobius,
    make_atom,
)
from cisl.norms import (
    ConstantReport,
    MobiusGrid,
    SpaceSpec,
    growth_margin,
    log_q_constant,
    norm_value,
    parse_space,
    qs_integral_direct,
    seminorm,
)


def _poly8():
    rng = np.random.default_rng(7)
    coeffs = tuple((rng.standard_normal(9) / (1 + np.arange(9))).tolist())
    return Polynomial(CoefficientSeries(coeffs))


class TestClosedForms:
    """Hand-derivable values for the identity map and constants."""

    def test_bloch_of_identity(self):
        rep = seminorm(SpaceSpec("bloch"), Monomial(1))
        assert rep.value == pytest.approx(1.0, abs=1e-12)
        assert abs(rep.witness) < 1e-6

    def test_bloch_of_constant_is_zero(self):
        rep = seminorm(SpaceSpec("bloch"), Constant(3 + 4j))
        assert rep.value == 0.0

    @pytest.mark.parametrize("p", [1.5, 2.0, 3.0])
    def test_besov_of_identity(self, p):
        # seminorm^p = (p-1) * int (1-|z|)^(p-2) dA = 2(p-1) * B(2, p-1) = 2/p
        rep = seminorm(SpaceSpec("besov", p=p), Monomial(1))
        assert rep.value == pytest.approx((2.0 / p) ** (1.0 / p), rel=1e-4)

    def test_besov_one_uses_second_derivative(self):
        # p=1 integrates |f''| with no weight: for z^2 that is 2 * area = 2
        assert norm_value(SpaceSpec("besov", p=1.0), Monomial(2))[0] == pytest.approx(
            2.0, abs=1e-6)
        # ... so the identity map has vanishing p=1 seminorm
        assert seminorm(SpaceSpec("besov", p=1.0), Monomial(1)).value == pytest.approx(
            0.0, abs=1e-12)

    @pytest.mark.parametrize("s", [0.25, 1.0, 2.0])
    def test_dirichlet_of_identity(self, s):
        rep = seminorm(SpaceSpec("dirichlet", s=s), Monomial(1))
        assert rep.value == pytest.approx(math.sqrt(1.0 / (s + 1.0)), abs=1e-6)

    def test_qs_of_identity(self):
        # sup over centres of int (1-|phi_a|^2) dA peaks at a=0 with value 1/2
        rep = seminorm(SpaceSpec("qs", s=1.0), Monomial(1))
        assert rep.value == pytest.approx(math.sqrt(0.5), rel=1e-6)
        assert abs(rep.witness) < 1e-9

    def test_qs_of_constant_is_zero(self):
        rep = seminorm(SpaceSpec("qs", s=0.5), Constant(2.0))
        assert rep.value == 0.0

    def test_blochlog_of_identity(self):
        # maximise (1-r^2) log(2/(1-r^2)): maximum 2/e at 1-r^2 = 2/e
        rep = seminorm(SpaceSpec("blochlog", alpha=1.0), Monomial(1))
        assert rep.value == pytest.approx(2.0 / math.e, rel=1e-6)
        assert abs(rep.witness) == pytest.approx(math.sqrt(1.0 - 2.0 / math.e),
                                                 abs=1e-6)

    def test_bmoastar_of_identity(self):
        # garsia-style std of z over the sampling circle r = 1 - 2^-7 is r
        rep = seminorm(SpaceSpec("bmoastar"), Monomial(1))
        assert rep.value == pytest.approx(1.0, abs=1e-2)
        assert abs(rep.witness) < 1e-9

    def test_norm_value_adds_origin_modulus(self):
        val, rep = norm_value(SpaceSpec("bloch"), Constant(3 + 4j))
        assert val == pytest.approx(5.0, abs=1e-12)
        assert rep.value == 0.0


class TestInvariances:
    """Structural identities the sweep must respect."""

    def test_qs_monotone_in_s(self):
        f = _poly8()
        vals = [seminorm(SpaceSpec("qs", s=s), f).value for s in (0.3, 0.7, 1.2)]
        assert vals[0] >= vals[1] - 1e-9
        assert vals[1] >= vals[2] - 1e-9

    def test_qs_conformal_invariance(self):
        f = _poly8()
        base = seminorm(SpaceSpec("qs", s=0.5), f).value
        comp = seminorm(SpaceSpec("qs", s=0.5), compose_mobius(f, 0.5)).value
        assert abs(base - comp) / base <= 5e-2

    def test_bloch_conformal_invariance(self):
        f = _poly8()
        base = seminorm(SpaceSpec("bloch"), f).value
        comp = seminorm(SpaceSpec("bloch"), compose_mobius(f, 0.5)).value
        assert abs(base - comp) / base <= 1e-2

    @pytest.mark.parametrize("s", [0.5, 1.0])
    def test_green_weight_comparable_to_standard(self, s):
        corpus = [_poly8(), make_atom("log", a=0.5),
                  BlaschkeProduct((0.3, -0.4j, 0.5 + 0.2j))]
        for f in corpus:
            q = seminorm(SpaceSpec("qs", s=s), f).value
            g = seminorm(SpaceSpec("qsgreen", s=s), f).value
            assert 0.5 <= g / q <= 2.0

    @pytest.mark.parametrize("p,s", [(2.0, 0.5), (3.0, 0.5)])
    def test_inclusion_chain_ratios_bounded(self, p, s):
        # p <= 2 embeds everywhere; p > 2 needs s > 1 - 2/p (0.5 > 1/3 here)
        corpus = [_poly8(), make_atom("log", a=0.5),
                  BlaschkeProduct((0.3, -0.4j, 0.5 + 0.2j)), Monomial(4)]
        for f in corpus:
            bp = norm_value(SpaceSpec("besov", p=p), f)[0]
            q = seminorm(SpaceSpec("qs", s=s), f).value
            assert q / bp <= 4.0

    def test_sweep_agrees_with_direct_integral_at_witness(self):
        f = _poly8()
        rep = seminorm(SpaceSpec("qs", s=0.7), f)
        direct = qs_integral_direct(f, rep.witness, 0.7)
        assert rep.value**2 == pytest.approx(direct, rel=1e-9)

    def test_witness_dominates_other_centres(self):
        # the sup is certified from below: it dominates every centre the
        # sweep actually visited exactly, and off-grid centres up to the
        # grid granularity
        f = _poly8()
        rep = seminorm(SpaceSpec("qs", s=0.7), f)
        sup_sq = rep.value**2
        for n, r, m in MobiusGrid(n_max=8).levels():
            for k in range(0, m, max(1, m // 16)):
                a = r * complex(math.cos(2 * math.pi * k / m),
                                math.sin(2 * math.pi * k / m))
                assert qs_integral_direct(f, a, 0.7) <= sup_sq * (1 + 1e-9)
        rng = np.random.default_rng(11)
        for _ in range(8):
            a = rng.uniform(0, 0.95) * np.exp(2j * np.pi * rng.uniform())
            assert qs_integral_direct(f, complex(a), 0.7) <= sup_sq * 1.05


class TestConstantReport:
    def test_trace_is_nondecreasing_and_final(self):
        rep = seminorm(SpaceSpec("qs", s=0.5), _poly8())
        vals = [v for _, v in rep.refinement_trace]
        assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))
        assert rep.value == pytest.approx(vals[-1], rel=1e-12)

    def test_trace_entries_are_labelled(self):
        rep = seminorm(SpaceSpec("bloch"), _poly8())
        assert len(rep.refinement_trace) >= 2
        assert all(isinstance(k, str) and k for k, _ in rep.refinement_trace)

    def test_report_coerces_trace_types(self):
        rep = ConstantReport(1.0, None, True, [(3, np.float64(1.0))])
        assert rep.refinement_trace == (("3", 1.0),)


class TestLogQConstant:
    def test_identity_map_value_and_convergence(self):
        # centre a=0 contributes (log 2)^2 * 1/1.5; the sup sits deeper in
        rep = log_q_constant(Monomial(1), 0.5, 1.0)
        assert rep.converged
        assert rep.value >= (math.log(2.0) ** 2) / 1.5 - 1e-9
        assert math.isfinite(rep.value)

    def test_constant_symbol_is_zero(self):
        rep = log_q_constant(Constant(2.0), 0.5, 1.0)
        assert rep.value == 0.0

    def test_boundary_symbol_grows_through_shallow_scans(self):
        # a depth scan walking n_max upward must keep moving the value and
        # flag non-convergence until the grid resolves the aperture
        h = make_atom("ha", a=0.999)
        vals = []
        for n_max in (6, 8, 10):
            rep = log_q_constant(h, 0.5, 1.0, grid=MobiusGrid(n_max=n_max))
            assert not rep.converged
            vals.append(rep.value)
        assert vals[0] < vals[1] < vals[2]

    def test_pseudo_variant_comparable_to_standard(self):
        f = _poly8()
        std = log_q_constant(f, 0.5, 1.0, variant="standard").value
        pii = log_q_constant(f, 0.5, 1.0, variant="pseudo_ii").value
        assert std > 0 and pii > 0
        assert 1e-2 <= pii / std <= 1e2

    def test_variant_name_validated(self):
        with pytest.raises(DomainError):
            log_q_constant(Monomial(1), 0.5, 1.0, variant="nope")


class TestGrowthMargin:
    def test_identity_map_at_deep_point(self):
        m = growth_margin(Monomial(1), 2.0, [0.9])
        assert m == pytest.approx(0.9 / math.sqrt(math.log(2.0 / 0.19)), rel=1e-2)

    def test_constant_has_zero_margin(self):
        assert growth_margin(Constant(5.0), 2.0, [0.5, 0.9]) == 0.0

    def test_normalised_log_family_margins_stay_bounded(self):
        pts = [1 - 2.0**-k for k in (1, 3, 5)]
        for n in (2, 6, 10, 16):
            f = make_atom("fa", a=1 - 2.0**-n, p=2.0, cap=DEEPEST_PARAM_MODULUS)
            assert growth_margin(f, 2.0, pts) <= 4.0

    def test_requires_p_above_one(self):
        with pytest.raises(DomainError):
            growth_margin(Monomial(1), 1.0, [0.5])

    def test_points_must_lie_inside_disc(self):
        with pytest.raises(DomainError):
            growth_margin(Monomial(1), 2.0, [1.0])


class TestSpecsAndParsing:
    def test_parse_space_forms(self):
        assert parse_space("bloch") == SpaceSpec("bloch")
        assert parse_space("besov:p=2") == SpaceSpec("besov", p=2.0)
        assert parse_space("qs:s=0.5") == SpaceSpec("qs", s=0.5)
        assert parse_space("qslog:s=0.5,alpha=1") == SpaceSpec(
            "qslog", s=0.5, alpha=1.0)
        assert parse_space("blochlog:alpha=2") == SpaceSpec("blochlog", alpha=2.0)

    def test_parse_space_rejects_garbage(self):
        for text in ("B2", "qs", "qs:s=-1", "besov:p=0.5", "martian:x=1"):
            with pytest.raises(DomainError):
                parse_space(text)

    def test_spacespec_validation(self):
        with pytest.raises(DomainError):
            SpaceSpec("besov", p=0.5)
        with pytest.raises(DomainError):
            SpaceSpec("qs", s=-1.0)
        with pytest.raises(DomainError):
            SpaceSpec("blochlog", alpha=-1.0)
        with pytest.raises(DomainError):
            SpaceSpec("qs")

    def test_label_round_trip(self):
        for text in ("bloch", "besov:p=2", "qs:s=0.5", "bmoastar"):
            assert parse_space(parse_space(text).label()) == parse_space(text)

    def test_mobius_grid_levels(self):
        grid = MobiusGrid(n_max=3, angle_factor=4, angcap=16)
        levels = grid.levels()
        assert levels[0] == (0, 0.0, 1)
        assert [m for _, _, m in levels[1:]] == [8, 16, 16]
        assert [r for _, r, _ in levels[1:]] == [0.5, 0.75, 0.875]

    def test_mobius_grid_validation(self):
        with pytest.raises(DomainError):
            MobiusGrid(n_max=-1)
        with pytest.raises(DomainError):
            MobiusGrid(angle_factor=3)
        with pytest.raises(DomainError):
            MobiusGrid(angcap=0)
