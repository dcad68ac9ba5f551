import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import all_bichromatic_runs
from rainbowlab.coloring import Coloring
from rainbowlab.prefix import (
    PrefixColoring,
    coprime_pair,
    coprime_pair_in_class,
    density_experiment,
    density_profile,
    density_threshold,
    dominant_colors,
    find_rainbow_prefix,
    lift,
    longest_monochromatic_ap,
    meets_density_target,
    small_gap,
    string_decomposition,
    string_shift_check,
)
from rainbowlab.search import enumerate_rainbow_free_3colorings

R, G, B = 0, 1, 2
Z11_RF = Coloring.from_classes(11, [[0], [1, 10], list(range(2, 10))])
Z7_RF = Coloring.from_classes(7, [[0], [1, 6], [2, 3, 4, 5]])
RAINBOW_EXAMPLE = PrefixColoring.of([R, B, G, R, R, R, R, R, R, R])


def brute_prefix_rainbows(colors, k):
    N = len(colors)
    return [
        (x, y, z)
        for z in range(1, N + 1)
        for y in range(1, N + 1)
        for x in range(1, N + 1)
        if x - y == z**k and len({colors[x - 1], colors[y - 1], colors[z - 1]}) == 3
    ]


def test_lift_examples():
    pc = lift(Z11_RF, 33)
    assert pc.N == 33 and pc.colors[:11] == Z11_RF.colors[1:] + Z11_RF.colors[:1]
    assert find_rainbow_prefix(pc, 2) is None
    assert lift(Z7_RF, 1).colors == (Z7_RF.colors[1],)
    assert density_profile(lift(Z7_RF, 21), 2).min_final_density == Fraction(1, 7)


def test_find_rainbow_prefix_examples():
    assert find_rainbow_prefix(RAINBOW_EXAMPLE, 2) == (3, 2, 1)
    assert find_rainbow_prefix(PrefixColoring.of([G] * 30), 2) is None
    assert find_rainbow_prefix(lift(Z11_RF, 100), 2) is None


@given(st.lists(st.integers(0, 2), min_size=1, max_size=40), st.sampled_from([2, 3]))
def test_find_rainbow_prefix_matches_brute(colors, k):
    hit = find_rainbow_prefix(PrefixColoring.of(colors), k)
    oracle = brute_prefix_rainbows(colors, k)
    assert (hit is None) == (not oracle)
    if hit:
        assert hit in oracle


def test_dominant_examples():
    assert dominant_colors(PrefixColoring.of([R, B, R, G, R, B])) == {R}
    assert dominant_colors(PrefixColoring.of([R, R, R])) == {R}
    assert dominant_colors(PrefixColoring.of([B, G])) == {B, G}


@given(st.lists(st.integers(0, 2), min_size=1, max_size=12))
def test_dominant_matches_run_oracle(colors):
    runs = list(all_bichromatic_runs(colors))
    expected = {x for x in set(colors) if all(x in run for run in runs)}
    assert dominant_colors(PrefixColoring.of(colors)) == expected


def test_first_color_dominant_on_rainbow_free_prefixes():
    for k in (2, 3):
        for cols in itertools.product(range(3), repeat=9):
            pc = PrefixColoring(cols)
            if len(set(cols)) < 2 or find_rainbow_prefix(pc, k) is not None:
                continue
            assert cols[0] in dominant_colors(pc)


def test_string_decomposition():
    assert string_decomposition(PrefixColoring.of([R, R, B, G, G])) == [(1, 2, R), (3, 1, B), (4, 2, G)]
    assert string_decomposition(PrefixColoring.of([R])) == [(1, 1, R)]
    runs = string_decomposition(lift(Z11_RF, 22))
    period = [(1, 1, 1), (2, 8, 2), (10, 1, 1), (11, 1, 0)]
    assert runs == period + [(pos + 11, length, c) for pos, length, c in period]


def test_string_shift_examples():
    assert string_shift_check(lift(Z11_RF, 200), 2, Z11_RF.colors[1]) == []
    assert string_shift_check(RAINBOW_EXAMPLE, 2, R) != []
    assert string_shift_check(PrefixColoring.of([R, B, R, B, R, R, B]), 2, R) == []


def test_string_shift_empty_on_rainbow_free_prefixes():
    for k in (2, 3):
        for cols in itertools.product(range(3), repeat=10):
            pc = PrefixColoring(cols)
            if find_rainbow_prefix(pc, k) is not None:
                continue
            dom = dominant_colors(pc)
            if len(dom) == 1:
                assert string_shift_check(pc, k, next(iter(dom))) == []


def test_small_gap():
    assert small_gap([1, 3, 5, 9, 10], 4, 0) == (1, 2)
    assert small_gap([5, 105, 205], 4) is None
    assert small_gap([7, 8], 2, 0) == (7, 1)
    assert small_gap([1, 3, 5, 9, 10], 4, 5) == (9, 1)


def test_coprime_pairs():
    assert coprime_pair([4, 9]) == (4, 9)
    assert coprime_pair(range(2, 51, 2)) is None
    assert coprime_pair([6, 10, 15]) is None
    pc = PrefixColoring.of([R, G, R, B, R, G, R, R, B])
    assert coprime_pair_in_class(pc, B) == (4, 9)
    assert coprime_pair_in_class(pc, G) is None  # {2, 6}


def test_lifted_rainbow_free_colorings_have_coprime_nondominant_pairs():
    # p prime: a class with two residues differing by d < p lifts to a coprime pair
    for c in enumerate_rainbow_free_3colorings(13, 2):
        pc = lift(c, 200)
        for color in range(3):
            members = pc.positions(color)
            if len(set(m % 13 for m in members)) >= 2:
                assert coprime_pair_in_class(pc, color) is not None


@pytest.mark.parametrize("k, value", [(2, Fraction(1, 4)), (3, Fraction(1, 4)), (4, Fraction(5, 16)), (5, Fraction(5, 16)), (6, Fraction(21, 64))])
def test_threshold(k, value):
    assert density_threshold(k) == value


def test_threshold_closed_form():
    for k in range(2, 13):
        s = k // 2
        assert density_threshold(k) == Fraction(4**s - 1, 3 * 4**s)


@given(st.lists(st.integers(0, 2), min_size=1, max_size=60))
def test_profile_counts_sum(colors):
    prof = density_profile(PrefixColoring.of(colors), 2)
    assert list(prof.counts.sum(axis=1)) == list(range(1, len(colors) + 1))
    assert prof.final_densities == [Fraction(colors.count(c), len(colors)) for c in range(3)]


def test_monochromatic_profile():
    prof = density_profile(PrefixColoring.of([G] * 10), 2)
    assert prof.min_final_density == 0
    assert prof.csv_rows()[-1] == (10, 0, 10, 0)


def test_density_experiment_small():
    rep = density_experiment(2, 200, 50, seed=3)
    assert rep.feasible and rep.with_rainbow == 50 and rep.without_rainbow == 0
    again = density_experiment(2, 200, 50, seed=3)
    assert again.to_json() == rep.to_json()


def test_density_experiment_zero_trials():
    rep = density_experiment(2, 200, 0, seed=1)
    assert rep.with_rainbow == 0 and rep.exceptions == []


def test_density_experiment_infeasible_target():
    rep = density_experiment(4, 200, 10, seed=1)  # 5/16 + 0.02 > 1/3 - 1/200
    assert not rep.feasible and rep.with_rainbow == 0


def test_lifted_rainbow_free_coloring_excluded_by_target():
    pc = lift(Z11_RF, 200)
    assert density_profile(pc, 2).min_final_density < Fraction(1, 4)
    assert not meets_density_target(pc, 2, 0.02)


def test_longest_ap():
    pc = lift(Z11_RF, 110)
    assert longest_monochromatic_ap(pc, 11, Z11_RF.colors[0]) == (11, 10)
    assert longest_monochromatic_ap(PrefixColoring.of([R, G, R, G, G]), 2, G) == (2, 2)
