import math

import numpy as np
import pytest

from lpbohr.mappings import CoeffTable
from lpbohr.radii import landau_radii
from lpbohr.spectral import (
    CircleGrid,
    ExponentialBoundary,
    ExtremalBoundary,
    TrigPolyBoundary,
    lp_norm,
)
from lpbohr.verify import (
    Verdict,
    VerifyConfig,
    adversarial_table,
    bohr_margin,
    check_bohr,
    check_coeff_bounds,
    check_fd_derivatives,
    check_schlicht,
    check_schwarz,
    check_univalence,
    coeff_bound_margins,
    drop_mean,
    gen_boundary,
    normalized_draw,
    run_suite,
    verdict_to_dict,
)

GRID = CircleGrid()
UNIT_NORM = math.pi / 4  # 2 C_1 norm = 1 at p = inf, since C_1 = 2/pi


@pytest.fixture(scope="module")
def default_suite():
    return run_suite(VerifyConfig())


class TestConfig:
    def test_rejects(self):
        with pytest.raises(ValueError):
            VerifyConfig(trials=0)
        with pytest.raises(ValueError):
            VerifyConfig(tolerance=1e-13)

    def test_rng_streams_are_independent(self):
        cfg = VerifyConfig(seed=7)
        a = cfg.rng(1, 0).standard_normal(4)
        assert np.array_equal(a, cfg.rng(1, 0).standard_normal(4))
        assert not np.array_equal(a, cfg.rng(1, 1).standard_normal(4))
        assert not np.array_equal(a, cfg.rng(2, 0).standard_normal(4))


class TestVerdict:
    def test_counts_and_worst(self):
        v = Verdict("x")
        v.record(True, 0.5, {"i": 0})
        v.record(False, 2.0, lambda: {"i": 1})
        v.record(True, 1.0, {"i": 2})
        assert (v.pass_count, v.fail_count, v.trials) == (2, 1, 3)
        assert v.worst_margin == 2.0 and v.witness == {"i": 1}

    def test_min_sense(self):
        v = Verdict("y", worst_margin=math.inf, sense="min")
        for m in (0.3, 0.1, 0.2):
            v.record(True, m, m)
        assert v.worst_margin == 0.1

    def test_dict_keys(self):
        d = verdict_to_dict(Verdict("z"))
        assert set(d) == {"property", "pass_count", "fail_count", "worst_margin", "details", "witness"}


class TestGenBoundary:
    def test_sup_normalized(self):
        spec = gen_boundary(np.random.default_rng(0), 1, math.inf, 1.0, GRID)
        assert np.max(np.abs(spec.sample(GRID))) == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("p", [1, 1.5, 2, 4])
    def test_target_norm(self, p):
        spec = gen_boundary(np.random.default_rng(1), 5, p, 2.5, GRID)
        assert lp_norm(spec, p, GRID, normalized=True) == pytest.approx(2.5, abs=1e-9)

    def test_deterministic(self):
        a = gen_boundary(VerifyConfig(seed=3).rng(1, 4), 6, 2)
        b = gen_boundary(VerifyConfig(seed=3).rng(1, 4), 6, 2)
        assert a == b

    def test_degree_zero(self):
        with pytest.raises(ValueError):
            gen_boundary(np.random.default_rng(0), 0, 2)

    def test_drop_mean(self):
        spec = drop_mean(TrigPolyBoundary({0: 5, 2: 1}))
        assert spec.coeffs == {2: 1}
        assert drop_mean(ExponentialBoundary(0)).coeffs == {}


class TestCoeffBounds:
    def test_extremal_attains(self):
        cfg = VerifyConfig(p_grid=(math.inf,))
        v = check_coeff_bounds(cfg, [ExtremalBoundary(1, 1.0)])
        assert 1 - 5e-3 <= v.worst_margin <= 1 + 1e-8
        assert v.fail_count == 0

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_extremal_all_exponents(self, n):
        v = check_coeff_bounds(VerifyConfig(), [ExtremalBoundary(n, 2.0, 1j, np.exp(0.4j))])
        assert 1 - 5e-3 <= v.worst_margin <= 1 + 1e-8

    def test_exponential_attains_a(self):
        ma, mb = coeff_bound_margins(ExponentialBoundary(1), math.inf, GRID, 16)
        assert ma == pytest.approx(1.0, abs=1e-12)
        assert mb == pytest.approx(math.pi / 4, abs=1e-12)

    def test_zero(self):
        assert coeff_bound_margins(TrigPolyBoundary({}), 2, GRID, 8) == (0.0, 0.0)
        v = check_coeff_bounds(VerifyConfig(), [TrigPolyBoundary({})])
        assert v.worst_margin == 0.0 and v.fail_count == 0


class TestBohr:
    def test_extremal_below_bound(self):
        m = bohr_margin(ExtremalBoundary(1), math.inf, GRID, 64)
        r = math.pi / (math.pi + 4)
        assert m == pytest.approx(4 / math.pi * math.atanh(r), abs=1e-9)
        assert m == pytest.approx(0.6011, abs=1e-4)

    def test_constant(self):
        assert bohr_margin(TrigPolyBoundary({0: 3}), 2, GRID, 8) == 0.0
        v = check_bohr(VerifyConfig(), [TrigPolyBoundary({0: 3})])
        assert v.pass_count == 1

    def test_sup_class(self):
        v = check_bohr(VerifyConfig(p_grid=(math.inf,), max_degree=16))
        assert (v.pass_count, v.fail_count) == (100, 0)


def test_schwarz_small():
    v = check_schwarz(VerifyConfig(trials=10))
    assert v.fail_count == 0 and 0 < v.worst_margin <= 1


def test_fd_small():
    v = check_fd_derivatives(VerifyConfig(trials=5))
    assert v.fail_count == 0 and v.worst_margin < 1


class TestLandau:
    def test_normalized_draw(self):
        table, rejected = normalized_draw(np.random.default_rng(5), 6, 1.0)
        assert rejected == 0
        assert table.a[0] == 0 and table.a[1] == 1 and table.b[1] == 0
        assert np.max(table.pair_sums()[2:]) == pytest.approx(1.0, abs=1e-14)

    def test_draw_degree(self):
        with pytest.raises(ValueError):
            normalized_draw(np.random.default_rng(0), 1, 1.0)

    def test_identity(self):
        ident = CoeffTable.from_coeffs(a={1: 1}, N=4)
        cfg = VerifyConfig()
        u = check_univalence(cfg, UNIT_NORM, math.inf, [ident])
        assert u.fail_count == 0 and u.worst_margin == pytest.approx(1.0, abs=1e-14)
        assert u.details["collisions"] == 0
        s = check_schlicht(cfg, UNIT_NORM, math.inf, [ident])
        r0, R0 = (x.value for x in landau_radii(1.0))
        assert s.worst_margin == pytest.approx(r0 - R0, abs=1e-14)

    def test_adversarial_saturates(self):
        cfg = VerifyConfig()
        table = adversarial_table(1.0, 400)
        r0, R0 = (x.value for x in landau_radii(1.0))
        s = check_schlicht(cfg, UNIT_NORM, math.inf, [table])
        assert s.fail_count == 0
        assert -1e-15 <= s.worst_margin <= r0 ** 401 / (1 - r0) + 1e-14
        u = check_univalence(cfg, UNIT_NORM, math.inf, [table])
        assert u.fail_count == 0
        assert 0 < u.worst_margin < 1e-4

    def test_random_draws(self):
        cfg = VerifyConfig(trials=20)
        assert check_univalence(cfg, UNIT_NORM, math.inf).fail_count == 0
        assert check_schlicht(cfg, UNIT_NORM, math.inf).fail_count == 0

    def test_larger_rate(self):
        cfg = VerifyConfig(trials=10)
        assert check_univalence(cfg, 5 * UNIT_NORM, math.inf).details["K"] == pytest.approx(5.0)
        assert check_univalence(cfg, 5 * UNIT_NORM, math.inf).fail_count == 0
        assert check_schlicht(cfg, 5 * UNIT_NORM, math.inf).fail_count == 0


class TestSuite:
    def test_zero_violations(self, default_suite):
        names = [v.property_name for v in default_suite]
        assert names == sorted(names)
        assert set(names) == {"bohr_lp", "coeff_bounds", "fd_cross_check", "schlicht", "schwarz_growth", "univalence"}
        for v in default_suite:
            assert (v.pass_count, v.fail_count) == (100, 0), v.property_name

    def test_deterministic(self, default_suite):
        again = run_suite(VerifyConfig())
        assert [verdict_to_dict(v) for v in again] == [verdict_to_dict(v) for v in default_suite]
