from fractions import Fraction as F

import pytest

from hallq import gflinalg
from hallq.measures import (
    CONVENTIONS,
    DEFAULT_CONVENTION,
    NegativeCylinderError,
    characteristic_cylinder_via_r,
    characteristic_measure,
    check_coherence,
    check_normalization,
    cylinder_prob,
    cylinder_prob_fast,
    expand_spec,
    fast_route_available,
    r_function_fast,
    unitriangular_type_counts,
)
from hallq.partitions import enumerate_partitions
from hallq.symfun import GroundParams, SpecEntry, ThomaSpec, r_function

HAAR = ThomaSpec(alphas=(SpecEntry(F(1)),))
BETA1 = ThomaSpec(betas=(SpecEntry(F(1)),))
MIXED = ThomaSpec(alphas=(SpecEntry(F(1, 2)),), betas=(SpecEntry(F(1, 2)),))

ALPHA_SPECS = [
    HAAR,
    ThomaSpec(alphas=(SpecEntry(F(2, 3)), SpecEntry(F(1, 3)))),
    ThomaSpec(alphas=(SpecEntry(F(1, 2)), SpecEntry(F(1, 3)), SpecEntry(F(1, 6)))),
    ThomaSpec(alphas=(SpecEntry(F(1, 2)), SpecEntry(F(1, 4)), SpecEntry(F(1, 8)), SpecEntry(F(1, 8)))),
    ThomaSpec(alphas=(SpecEntry(F(3, 5)), SpecEntry(F(1, 5)), SpecEntry(F(1, 5)))),
    ThomaSpec(alphas=(SpecEntry(F(9, 10)), SpecEntry(F(1, 10)))),
]


class TestHaar:
    @pytest.mark.parametrize("q", [2, 3])
    def test_recovery(self, q):
        meas = characteristic_measure(HAAR, GroundParams(q))
        for n in range(0, 7):
            for rho in enumerate_partitions(n):
                assert cylinder_prob(meas, rho) == F(1, q ** (n * (n - 1) // 2))

    def test_level_three_cylinder(self):
        meas = characteristic_measure(HAAR, GroundParams(2))
        assert cylinder_prob(meas, (2, 1)) == F(1, 8)
        assert cylinder_prob(meas, (2,)) == F(1, 2) == cylinder_prob(meas, (1, 1))

    def test_level_one_is_everything(self):
        for spec in ALPHA_SPECS:
            meas = characteristic_measure(spec, GroundParams(2))
            assert cylinder_prob(meas, (1,)) == 1


class TestTwoRoutes:
    @pytest.mark.parametrize("q", [2, 3])
    def test_equality_alpha_specs(self, q):
        g = GroundParams(q)
        for spec in ALPHA_SPECS:
            meas = characteristic_measure(spec, g)
            for n in range(0, 6):
                for rho in enumerate_partitions(n):
                    assert cylinder_prob(meas, rho) == characteristic_cylinder_via_r(
                        spec, rho, g
                    )

    def test_equality_beta_spec_needs_beta_expansion(self):
        g = GroundParams(2)
        meas = characteristic_measure(BETA1, g, convention="expand-beta")
        for n in range(0, 6):
            for rho in enumerate_partitions(n):
                assert cylinder_prob(meas, rho) == characteristic_cylinder_via_r(BETA1, rho, g)

    def test_equality_mixed_spec_needs_both(self):
        g = GroundParams(2)
        meas = characteristic_measure(MIXED, g, convention="expand-both")
        for n in range(0, 6):
            for rho in enumerate_partitions(n):
                assert cylinder_prob(meas, rho) == characteristic_cylinder_via_r(MIXED, rho, g)

    def test_via_r_is_level_weighted_r(self):
        g = GroundParams(2)
        for rho in enumerate_partitions(4):
            assert characteristic_cylinder_via_r(HAAR, rho, g) == F(1, 2**6) * r_function(
                rho, HAAR, g.t
            )


class TestBetaMeasure:
    def test_concentrated_on_one_column_types(self):
        meas = characteristic_measure(BETA1, GroundParams(2), convention="expand-beta")
        for n in range(0, 6):
            for rho in enumerate_partitions(n):
                want = F(1) if rho == tuple([1] * n) else F(0)
                assert cylinder_prob(meas, rho) == want

    def test_wrong_convention_is_diagnosed(self):
        meas = characteristic_measure(BETA1, GroundParams(2), convention="expand-alpha")
        with pytest.raises(NegativeCylinderError):
            cylinder_prob(meas, (2,))


class TestCoherence:
    @pytest.mark.parametrize("q,n_max", [(2, 6), (3, 4)])
    def test_alpha_specs(self, q, n_max):
        g = GroundParams(q)
        for spec in ALPHA_SPECS[:4]:
            meas = characteristic_measure(spec, g)
            report = check_coherence(meas, n_max)
            assert report.ok, report.violations[:3]

    def test_beta_measure_coherent(self):
        meas = characteristic_measure(BETA1, GroundParams(2), convention="expand-beta")
        assert check_coherence(meas, 5).ok

    def test_negative_control(self):
        meas = characteristic_measure(HAAR, GroundParams(2))
        cylinder_prob(meas, (2,))
        meas.memo[(2,)] += F(1, 64)
        report = check_coherence(meas, 2)
        assert not report.ok
        assert report.violations[0].rho == (1,)

    def test_closed_counts_agree(self):
        meas = characteristic_measure(ALPHA_SPECS[1], GroundParams(2))
        assert check_coherence(meas, 5, counts="closed").ok


class TestNormalization:
    @pytest.mark.parametrize("q,n", [(2, 4), (2, 5), (3, 4)])
    def test_exact_one(self, q, n):
        g = GroundParams(q)
        for spec in ALPHA_SPECS[:3]:
            meas = characteristic_measure(spec, g)
            report = check_normalization(meas, n)
            assert report.ok and report.total == 1

    def test_level_one(self):
        meas = characteristic_measure(ALPHA_SPECS[2], GroundParams(2))
        assert check_normalization(meas, 1).total == 1

    def test_census_recursion_matches_brute(self):
        for q, n in ((2, 4), (2, 5), (3, 4)):
            assert unitriangular_type_counts(n, q, "recursion") == unitriangular_type_counts(
                n, q, "brute"
            )

    def test_full_invariant_range(self):
        # exact normalization for shipped-style specs at n <= 7 (q=2) and
        # n <= 5 (q=3); counts beyond the brute range come from the recursion
        for q, n_top in ((2, 7), (3, 5)):
            g = GroundParams(q)
            for spec in ALPHA_SPECS:
                meas = characteristic_measure(spec, g)
                for n in (n_top - 1, n_top):
                    assert check_normalization(meas, n).ok


class TestMonotonicityAndDistinctness:
    def test_unit_interval(self):
        g = GroundParams(2)
        for spec in ALPHA_SPECS:
            meas = characteristic_measure(spec, g)
            for n in range(0, 7):
                for rho in enumerate_partitions(n):
                    v = cylinder_prob(meas, rho)
                    assert 0 <= v <= 1

    def test_pairwise_distinct_at_small_level(self):
        g = GroundParams(2)
        measures_ = [characteristic_measure(s, g) for s in ALPHA_SPECS]
        for i in range(len(measures_)):
            for j in range(i + 1, len(measures_)):
                differs = any(
                    cylinder_prob(measures_[i], rho) != cylinder_prob(measures_[j], rho)
                    for n in range(1, 7)
                    for rho in enumerate_partitions(n)
                )
                assert differs, (i, j)


class TestConventions:
    def test_expand_spec(self):
        spec = ThomaSpec(alphas=(SpecEntry(F(1, 2)),), betas=(SpecEntry(F(1, 2)),))
        assert all(e.geometric for e in expand_spec(spec, "expand-alpha").alphas)
        assert not any(e.geometric for e in expand_spec(spec, "expand-alpha").betas)
        assert all(e.geometric for e in expand_spec(spec, "expand-beta").betas)
        assert expand_spec(spec, "expand-none") == spec
        both = expand_spec(spec, "expand-both")
        assert all(e.geometric for e in both.alphas + both.betas)
        with pytest.raises(ValueError):
            expand_spec(spec, "nonsense")

    def test_default_is_adjudicated_winner(self):
        assert DEFAULT_CONVENTION == "expand-alpha"
        assert DEFAULT_CONVENTION in CONVENTIONS

    def test_adjudication_unique_winner(self):
        """Of the three source conventions, exactly one passes Haar recovery,
        coherence and two-route equality on the beta-free corpus."""
        passing = []
        for convention in ("expand-alpha", "expand-beta", "expand-none"):
            ok = True
            for q in (2, 3):
                g = GroundParams(q)
                for spec in (HAAR, ALPHA_SPECS[1]):
                    meas = characteristic_measure(spec, g, convention)
                    try:
                        for n in range(0, 5):
                            for rho in enumerate_partitions(n):
                                v = cylinder_prob(meas, rho)
                                if spec == HAAR and v != F(1, q ** (n * (n - 1) // 2)):
                                    ok = False
                                if v != characteristic_cylinder_via_r(spec, rho, g):
                                    ok = False
                        if not check_coherence(meas, 4).ok:
                            ok = False
                    except NegativeCylinderError:
                        ok = False
            if ok:
                passing.append(convention)
        assert passing == ["expand-alpha"]


class TestFastRoute:
    def test_availability(self):
        assert fast_route_available(HAAR)
        assert fast_route_available(ALPHA_SPECS[1])
        assert fast_route_available(BETA1)
        assert not fast_route_available(ALPHA_SPECS[2])  # three atoms
        assert not fast_route_available(MIXED)

    @pytest.mark.parametrize("q", [2, 3])
    def test_matches_exact_route(self, q):
        g = GroundParams(q)
        for spec in (HAAR, ALPHA_SPECS[1], ALPHA_SPECS[5]):
            exact = characteristic_measure(spec, g)
            fast = characteristic_measure(spec, g)
            for n in range(0, 7):
                for rho in enumerate_partitions(n):
                    assert cylinder_prob(exact, rho) == cylinder_prob_fast(fast, rho)

    def test_beta_fast(self):
        g = GroundParams(2)
        for n in range(0, 6):
            for rho in enumerate_partitions(n):
                assert r_function_fast(rho, BETA1, g.q) == r_function(rho, BETA1, g.t)

    def test_fast_beyond_symfun_cap_consistent_with_counts(self):
        # coherence of the fast route alone, checked with closed counts at n = 12
        g = GroundParams(2)
        meas = characteristic_measure(ALPHA_SPECS[1], g)
        rho = (6, 3, 2, 1)
        lhs = cylinder_prob_fast(meas, rho)
        rhs = sum(
            (
                F(c) * cylinder_prob_fast(meas, sigma)
                for sigma, c in gflinalg.extension_counts_closed(rho, 2).items()
            ),
            F(0),
        )
        assert lhs == rhs
