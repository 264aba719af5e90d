import math
from math import comb, floor, sqrt

import pytest

from nsenum.bounds import (
    bound_report,
    facet_vertex_bound,
    fibonacci,
    hass_bound,
    max_mcmullen,
    mcmullen,
    mcmullen_growth_base,
    theorem_bound,
    worst_case_sigma,
)


class TestFibonacci:
    def test_base_cases(self):
        assert fibonacci(0) == 0
        assert fibonacci(1) == 1
        assert fibonacci(2) == 1
        assert fibonacci(10) == 55

    def test_matches_closed_form(self):
        phi = (1 + sqrt(5)) / 2
        for k in range(71):
            assert fibonacci(k) == floor(phi**k / sqrt(5) + 0.5)

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            fibonacci(-1)


class TestFacetVertexBound:
    def test_triangle(self):
        assert facet_vertex_bound(3) == 3  # F_4

    def test_four_facets(self):
        assert facet_vertex_bound(4) == 5

    def test_requires_three_facets(self):
        with pytest.raises(ValueError):
            facet_vertex_bound(2)

    def test_dominates_mcmullen_exhaustively(self):
        for k in range(4, 21):
            for d in range(3, k):
                assert mcmullen(k, d) <= facet_vertex_bound(k)


class TestMcmullen:
    def test_three_dimensional_case_is_2k_minus_4(self):
        for k in range(4, 13):
            assert mcmullen(k, 3) == 2 * k - 4

    def test_specific_value(self):
        assert mcmullen(6, 3) == 8

    def test_range_checks(self):
        with pytest.raises(ValueError):
            mcmullen(5, 5)
        with pytest.raises(ValueError):
            mcmullen(5, 2)

    def test_growth_base(self):
        base = mcmullen_growth_base()
        assert abs(base - 1.613) <= 0.01


class TestTheoremBound:
    def test_smallest(self):
        assert theorem_bound(1) == fibonacci(8) == 21

    def test_dominates_census_maxima(self):
        # the observed maxima at small sizes sit far below the bound
        maxima = {1: 3, 2: 7, 3: 11, 4: 18, 9: 584}
        for n, top in maxima.items():
            assert top <= theorem_bound(n)

    def test_below_128_power(self):
        for n in range(1, 41):
            assert theorem_bound(n) < hass_bound(n)


class TestWorstCase:
    def test_undefined_sizes(self):
        for n in (1, 2, 3, 5):
            assert worst_case_sigma(n) is None

    def test_block_chain_sizes(self):
        assert worst_case_sigma(4) == 18
        assert worst_case_sigma(8) == 291
        assert worst_case_sigma(12) == 17**3 + 3 == 4916

    def test_other_residues(self):
        assert worst_case_sigma(6) == 70
        assert worst_case_sigma(7) == 144
        assert worst_case_sigma(9) == 584

    def test_below_fibonacci_bound(self):
        for n in range(4, 41):
            value = worst_case_sigma(n)
            if value is not None:
                assert value <= theorem_bound(n)


class TestHassBound:
    def test_values(self):
        assert hass_bound(1) == 128
        assert hass_bound(2) == 16384


class TestLemmaClaims:
    def test_binomial_below_fibonacci(self):
        # the inductive claim behind the facet bound
        for k in range(1, 61):
            for a in range(0, k + 1):
                if k - a >= a >= 0:
                    assert comb(k - a, a) <= fibonacci(k)

    def test_max_mcmullen_monotone_sample(self):
        assert max_mcmullen(10) <= max_mcmullen(11)


class TestBoundReport:
    def test_fields(self):
        report = bound_report(1)
        assert report.fib_bound == 21
        assert report.hass_bound == 128
        assert report.worst_case is None
        report = bound_report(8)
        assert report.worst_case == 291

    def test_ordering_invariant(self):
        for n in range(4, 41):
            report = bound_report(n)
            if report.worst_case is not None:
                assert report.worst_case <= report.fib_bound <= report.hass_bound

    def test_display_mentions_all_values(self):
        text = bound_report(4).display()
        assert "21" not in text  # n=4 report shows F_29, not F_8
        assert str(theorem_bound(4)) in text
        assert str(128**4) in text
