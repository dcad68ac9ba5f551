import pytest

from oracles import all_bichromatic_runs, rainbow_free_exact
from rainbowlab.arith import DomainError
from rainbowlab.classify import (
    COMPONENTS_MONOCHROMATIC,
    ZERO_SINGLETON,
    ak_sequence,
    check_ak_dominance,
    color_units,
    generate_rainbow_free,
    generic_monochromatic_check,
    structural_check,
)
from rainbowlab.coloring import Coloring
from rainbowlab.digraph import build, power_table
from rainbowlab.search import enumerate_rainbow_free_3colorings
from rainbowlab.verify import all_canonical_colorings

Z11_RF = Coloring.from_classes(11, [[0], [1, 10], list(range(2, 10))])
Z7_BAD = Coloring.from_classes(7, [[0], [1], [2, 3, 4, 5, 6]])


def test_structural_z11_rainbow_free():
    assert structural_check(Z11_RF, build(11, 2)).overall


def test_structural_zero_not_alone():
    c = Coloring.from_classes(11, [[0, 1], [10], list(range(2, 10))])
    rep = structural_check(c, build(11, 2))
    assert not rep.zero_singleton and not rep.overall
    assert (ZERO_SINGLETON, [1]) in rep.counterexamples


def test_structural_component_split():
    rep = structural_check(Z7_BAD, build(7, 2))
    assert not rep.components_monochromatic
    assert (COMPONENTS_MONOCHROMATIC, [1, 6]) in rep.counterexamples


def test_structural_rejects_composite():
    with pytest.raises(DomainError):
        structural_check(Coloring.of([0, 1, 2, 2, 2, 2, 2, 2, 1]), build(9, 2))


def test_structural_report_json():
    doc = structural_check(Z7_BAD, build(7, 2)).to_json()
    assert doc["overall"] is False and doc["zero_singleton"] is True


def test_generate_examples():
    assert generate_rainbow_free(11, 2) == [Z11_RF]
    assert generate_rainbow_free(5, 2) == []
    assert generate_rainbow_free(11, 5) == []


def test_units_for_z11_k5():
    # three components, but 1 and -1 must share a color
    assert build(11, 5).component_count == 3
    assert color_units(build(11, 5)) == [[0], list(range(1, 11))]


@pytest.mark.parametrize("p", [3, 5, 7])
@pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
def test_classification_against_full_oracle(p, k):
    """All three descriptions agree with an unrestricted 3**p enumeration."""
    oracle = rainbow_free_exact(p, k, 3)
    g = build(p, k)
    structural = {cols for cols in all_canonical_colorings(p, 3) if structural_check(Coloring(cols, 3), g).overall}
    generated = {c.colors for c in generate_rainbow_free(p, k)}
    searched = {c.colors for c in enumerate_rainbow_free_3colorings(p, k)}
    assert oracle == structural == generated == searched


@pytest.mark.parametrize("p", [11, 13])
@pytest.mark.parametrize("k", [2, 3, 4, 5, 6])
def test_classification_larger_primes(p, k):
    g = build(p, k)
    structural = {cols for cols in all_canonical_colorings(p, 3) if structural_check(Coloring(cols, 3), g).overall}
    searched = {c.colors for c in enumerate_rainbow_free_3colorings(p, k)}
    assert structural == searched == {c.colors for c in generate_rainbow_free(p, k)}


def test_ak_dominance_examples():
    assert check_ak_dominance(Z11_RF, 1, 2)
    assert all(check_ak_dominance(Z11_RF, a, 2) for a in range(1, 11))
    assert not all(check_ak_dominance(Z7_BAD, a, 2) for a in range(1, 7))


def test_ak_dominance_rejects_zero():
    with pytest.raises(DomainError):
        check_ak_dominance(Z11_RF, 11, 2)


def test_ak_dominance_matches_run_oracle():
    for cols in list(all_canonical_colorings(7, 3))[:200]:
        c = Coloring(cols, 3)
        for a in range(1, 7):
            seq = [cols[v] for v in ak_sequence(7, a, 3)]
            expected = all(cols[a] in run for run in all_bichromatic_runs(seq))
            assert check_ak_dominance(c, a, 3) == expected


def test_lemmas_on_every_rainbow_free_coloring():
    for p in (5, 7, 11, 13):
        for k in (2, 3, 4, 5):
            for c in enumerate_rainbow_free_3colorings(p, k):
                col = c.colors
                assert all(col[a] == col[p - a] for a in range(1, p))
                assert col.count(col[0]) == 1
                assert all(check_ak_dominance(c, a, k) for a in range(1, p))
                assert generic_monochromatic_check(c, power_table(p, k))


def test_generic_monochromatic_examples():
    assert generic_monochromatic_check(Z11_RF, power_table(11, 2))
    assert generic_monochromatic_check(Z7_BAD, list(range(7)))
    assert not generic_monochromatic_check(Z7_BAD, power_table(7, 2))


def test_generic_check_is_necessary_for_other_maps():
    # For f(x) = x^2 + 1 on Z_7: rainbow-free for x - y = f(z) implies the predicate.
    p = 7
    f = [(x * x + 1) % p for x in range(p)]
    for cols in all_canonical_colorings(p, 3):
        rainbow = any(
            len({cols[x], cols[y], cols[z]}) == 3 for z in range(p) for y in range(p) for x in [(y + f[z]) % p]
        )
        if not rainbow:
            assert generic_monochromatic_check(Coloring(cols, 3), f)
