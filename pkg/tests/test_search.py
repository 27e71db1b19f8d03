# tests/test_search.py
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from src.core.oracle import linear_scan
from src.core.search import (
    Bracket,
    SearchConfig,
    SortedList,
    Strategy,
    Variant,
    bracket_update,
    choose_probe,
    interpolation_point,
    midpoint,
    minmax_bound,
    minmax_radius,
    project,
    reference_depth,
    round_toward_midpoint,
    search,
    successful_iterations,
    truncate,
)
from src.utils.exceptions import ConfigError, SearchDomainError

ALL_CONFIGS = [
    SearchConfig.binary(),
    SearchConfig.interpolation(),
    SearchConfig.itp(Variant.STRICT),
    SearchConfig.itp(Variant.RELAXED),
    SearchConfig.itp(Variant.LOCAL),
]

interior_keys = st.lists(
    st.floats(min_value=0.0, max_value=1.0, exclude_min=True, exclude_max=True),
    unique=True, max_size=80,
)


@pytest.fixture
def three_keys():
    return SortedList([0.0, 0.4, 1.0])


@pytest.fixture
def dyadic_keys():
    return SortedList(np.arange(1025) / 1024)


class TestSortedList:
    def test_accepts_non_decreasing_keys(self):
        keys = SortedList([0.0, 0.5, 0.5, 1.0])
        assert keys.n == 3
        assert len(keys) == 4
        assert not keys.is_distinct
        assert keys[1] == 0.5

    def test_values_are_read_only(self, three_keys):
        with pytest.raises(ValueError):
            three_keys.values[1] = 0.2

    @pytest.mark.parametrize("values", [[1.0], [], [0.0, 2.0, 1.0], [0.0, math.nan], [[0.0, 1.0], [2.0, 3.0]]])
    def test_rejects_invalid_lists(self, values):
        with pytest.raises(SearchDomainError):
            SortedList(values)


class TestSearchConfig:
    def test_defaults_match_recommended_settings(self):
        config = SearchConfig()
        assert config.strategy is Strategy.ITP
        assert config.variant is Variant.RELAXED
        assert (config.kappa1, config.kappa2, config.n_max_extra, config.cap) == (0.01, 0.83, 0.99, 1000)

    def test_strings_are_coerced(self):
        config = SearchConfig(strategy="itp", variant="local")
        assert config.variant is Variant.LOCAL

    @pytest.mark.parametrize("kwargs", [
        {"kappa1": 0.0},
        {"kappa2": 0.5},
        {"kappa2": 1.0},
        {"n_max_extra": -0.1},
        {"cap": 0},
        {"variant": "loose"},
        {"strategy": "ternary"},
    ])
    def test_rejects_invalid_parameters(self, kwargs):
        with pytest.raises(ConfigError):
            SearchConfig(**kwargs)

    def test_labels(self):
        assert SearchConfig.binary().label == "binary"
        assert SearchConfig.binary().variant_label == ""
        assert SearchConfig.itp(Variant.STRICT).variant_label == "strict"
        assert SearchConfig.itp(Variant.RELAXED).variant_label == "relaxed+0.99"
        assert SearchConfig.itp(Variant.RELAXED, n_max=12).variant_label == "relaxed=12"


class TestProbeSteps:
    def test_minmax_bound(self):
        assert minmax_bound(1) == 0
        assert minmax_bound(2) == 1
        assert minmax_bound(17) == 5
        assert minmax_bound(1024) == 10
        assert minmax_bound(200000) == 18

    def test_minmax_bound_rejects_zero(self):
        with pytest.raises(SearchDomainError):
            minmax_bound(0)

    @pytest.mark.parametrize("a,b,expected", [(0, 16, 8.0), (3, 4, 3.5), (0, 17, 8.5)])
    def test_midpoint(self, a, b, expected):
        assert midpoint(Bracket(a, b, 0.0, 1.0)) == expected

    @pytest.mark.parametrize("bracket,z,expected", [
        (Bracket(0, 10, 0.0, 1.0), 0.3, 3.0),
        (Bracket(2, 6, 0.2, 0.6), 0.5, 5.0),
        (Bracket(4, 9, 0.5, 0.5), 0.5, 6.5),
    ])
    def test_interpolation_point(self, bracket, z, expected):
        assert interpolation_point(bracket, z) == pytest.approx(expected)

    def test_truncate_moves_toward_midpoint(self):
        x_t, sigma = truncate(3.0, 8.0, 16, 0.01, 0.83)
        assert x_t == pytest.approx(3.0 + 0.01 * 16 ** 0.83)
        assert x_t == pytest.approx(3.0998, abs=1e-3)
        assert sigma == 1

    def test_truncate_stops_at_midpoint(self):
        assert truncate(7.9, 8.0, 16, 0.5, 0.83) == (8.0, 1)
        assert truncate(8.0, 8.0, 16, 0.01, 0.83) == (8.0, 0)

    def test_minmax_radius(self):
        assert minmax_radius(0, 17, Variant.STRICT, n_ref=5) == 7.5
        assert minmax_radius(0, 16, Variant.STRICT, n_ref=4) == 0.0
        assert minmax_radius(0, 16, Variant.RELAXED, n_ref=5) == 8.0
        assert minmax_radius(0, 17, Variant.LOCAL) == 7.5

    def test_minmax_radius_clamps_negative_values(self):
        assert minmax_radius(2, 10, Variant.STRICT, n_ref=3) == 0.0

    def test_minmax_radius_needs_reference_depth(self):
        with pytest.raises(ConfigError):
            minmax_radius(0, 16, Variant.STRICT)

    @pytest.mark.parametrize("x_t,x_half,r,sigma,expected", [
        (7.5, 8.0, 2.0, 1, 7.5),
        (3.1, 8.0, 2.0, 1, 6.0),
        (8.0, 8.0, 0.0, 0, 8.0),
    ])
    def test_project(self, x_t, x_half, r, sigma, expected):
        assert project(x_t, x_half, r, sigma) == expected

    @pytest.mark.parametrize("x,x_half,a,b,expected", [
        (3.2, 8.0, 0, 16, 4),
        (3.2, 2.0, 1, 5, 3),
        (0.4, 8.0, 0, 16, 1),
        (3.0, 8.0, 0, 16, 3),
        (4.5, 4.5, 0, 9, 4),
        (0.0, 5.0, 0, 10, 1),
        (10.0, 5.0, 0, 10, 9),
    ])
    def test_round_toward_midpoint(self, x, x_half, a, b, expected):
        assert round_toward_midpoint(x, x_half, a, b) == expected

    def test_bracket_update(self):
        bracket = Bracket(0, 10, 0.0, 1.0)
        below = bracket_update(bracket, 4, 0.2, 0.5)
        above = bracket_update(bracket, 4, 0.8, 0.5)
        equal = bracket_update(bracket, 4, 0.5, 0.5)
        assert (below.a, below.b, below.va, below.j) == (4, 10, 0.2, 1)
        assert (above.a, above.b, above.vb, above.j) == (0, 4, 0.8, 1)
        assert (equal.a, equal.b, equal.delta) == (4, 5, 1)

    def test_bracket_update_rejects_endpoint_probe(self):
        with pytest.raises(SearchDomainError):
            bracket_update(Bracket(0, 10, 0.0, 1.0), 10, 1.0, 0.5)

    def test_reference_depth(self):
        assert reference_depth(SearchConfig.itp(Variant.STRICT), 17) == 5
        assert reference_depth(SearchConfig.itp(Variant.RELAXED), 17) == pytest.approx(5.99)
        assert reference_depth(SearchConfig.itp(Variant.RELAXED, n_max=6), 17) == 6

    def test_reference_depth_rejects_small_n_max(self):
        with pytest.raises(ConfigError, match="below"):
            reference_depth(SearchConfig.itp(Variant.RELAXED, n_max=3), 17)

    def test_choose_probe_stays_inside_bracket(self):
        bracket = Bracket(0, 10, 0.0, 1.0)
        for config in ALL_CONFIGS:
            assert 0 < choose_probe(bracket, 0.999, config, n_ref=4.99) < 10


class TestSearch:
    @pytest.mark.parametrize("config", ALL_CONFIGS, ids=lambda c: f"{c.label}-{c.variant_label}")
    def test_two_cells_need_one_probe(self, three_keys, config):
        outcome = search(three_keys, 0.7, config)
        assert outcome.k_star == 1
        assert outcome.queries == 1
        assert outcome.trace == (1,)

    def test_target_at_left_end_is_free(self, three_keys):
        outcome = search(three_keys, 0.0, SearchConfig())
        assert outcome.k_star == 0
        assert outcome.queries == 0

    def test_single_cell_needs_no_probe(self):
        outcome = search(SortedList([0.0, 1.0]), 0.3, SearchConfig.binary())
        assert (outcome.k_star, outcome.queries) == (0, 0)

    @pytest.mark.parametrize("z", [-0.1, 1.5, math.nan])
    def test_rejects_target_outside_range(self, three_keys, z):
        with pytest.raises(SearchDomainError):
            search(three_keys, z, SearchConfig())

    def test_interpolation_trace_on_dyadic_keys(self, dyadic_keys):
        outcome = search(dyadic_keys, 0.51, SearchConfig.interpolation())
        assert outcome.k_star == 522
        assert outcome.trace == (522, 523)
        assert outcome.widths == (502, 1)

    def test_equality_stops_at_once(self, dyadic_keys):
        outcome = search(dyadic_keys, 0.5, SearchConfig.binary())
        assert outcome.k_star == 512
        assert outcome.trace == (512,)

    def test_right_end_resolves_to_last_cell(self, dyadic_keys):
        assert search(dyadic_keys, 1.0, SearchConfig.binary()).k_star == 1023

    def test_cap_marks_outcome(self, dyadic_keys):
        outcome = search(dyadic_keys, 0.123, SearchConfig.binary(cap=3))
        assert outcome.capped
        assert outcome.queries == 3
        assert dyadic_keys[outcome.k_star] <= 0.123

    def test_successful_iterations_of_binary_search(self, dyadic_keys):
        outcome = search(dyadic_keys, 0.123, SearchConfig.binary())
        assert outcome.queries == 10
        assert successful_iterations(outcome, dyadic_keys.n) == 10

    def test_strict_itp_on_random_lists_of_seventeen(self):
        rng = np.random.default_rng(17)
        config = SearchConfig.itp(Variant.STRICT)
        for _ in range(200):
            keys = SortedList(np.concatenate(([0.0], np.sort(rng.random(16)), [1.0])))
            outcome = search(keys, rng.random(), config)
            assert outcome.queries <= 5

    @settings(max_examples=300, deadline=None)
    @given(interior=interior_keys, z=st.floats(min_value=0.0, max_value=1.0, exclude_max=True))
    def test_every_strategy_matches_linear_scan(self, interior, z):
        keys = SortedList([0.0] + sorted(interior) + [1.0])
        expected = linear_scan(keys, z)
        for config in ALL_CONFIGS:
            assert search(keys, z, config).k_star == expected

    @settings(max_examples=300, deadline=None)
    @given(interior=interior_keys, z=st.floats(min_value=0.0, max_value=1.0))
    def test_itp_worst_case_bounds(self, interior, z):
        keys = SortedList([0.0] + sorted(interior) + [1.0])
        bound = minmax_bound(keys.n)
        assert search(keys, z, SearchConfig.itp(Variant.STRICT)).queries <= bound
        assert search(keys, z, SearchConfig.itp(Variant.RELAXED)).queries <= bound + 1

    @settings(max_examples=300, deadline=None)
    @given(interior=interior_keys, power=st.sampled_from([1, 3, 9]),
           z=st.floats(min_value=0.0, max_value=1.0, exclude_max=True))
    def test_each_step_keeps_probe_and_bracket_invariants(self, interior, power, z):
        keys = SortedList([0.0] + sorted(x ** power for x in interior) + [1.0])
        for variant in (Variant.STRICT, Variant.LOCAL, Variant.RELAXED):
            config = SearchConfig.itp(variant)
            n_ref = reference_depth(config, keys.n)
            bracket = Bracket(a=0, b=keys.n, va=keys[0], vb=keys[keys.n])
            steps = 0
            while bracket.delta > 1:
                k = choose_probe(bracket, z, config, n_ref)
                assert bracket.a < k < bracket.b
                # a fractional N_max can leave the relaxed radius under 1/2 on odd widths
                if variant is not Variant.RELAXED:
                    assert abs(k - midpoint(bracket)) <= minmax_radius(bracket.j, bracket.delta, variant, n_ref)
                updated = bracket_update(bracket, k, keys[k], z)
                assert updated.delta < bracket.delta
                assert updated.va <= z
                assert z < updated.vb or updated.va == updated.vb == z
                bracket = updated
                steps += 1
            assert steps <= math.ceil(n_ref)
