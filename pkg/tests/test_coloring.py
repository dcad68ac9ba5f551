import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import rainbow_triples
from rainbowlab.coloring import (
    Coloring,
    RainbowCertificate,
    canonical_form,
    certificate_is_valid,
    find_rainbow_mod,
    incremental_rainbow_check,
    is_exact,
    is_rainbow_free,
)

Z7_RF = Coloring.from_classes(7, [[0], [1, 6], [2, 3, 4, 5]])


@pytest.mark.parametrize("colors, r, exact", [([0, 1, 2], 3, True), ([0, 0, 1], 3, False), ([0, 1, 0, 1, 0], 2, True)])
def test_is_exact(colors, r, exact):
    assert is_exact(Coloring.of(colors, r)) is exact


def test_color_range_enforced():
    with pytest.raises(ValueError):
        Coloring((0, 3), 3)


def test_z7_rainbow_free_example():
    assert find_rainbow_mod(Z7_RF, 2) is None
    assert is_rainbow_free(Z7_RF, 2)


def test_z7_rainbow_example():
    c = Coloring.of([0, 1, 2, 0, 0, 0, 0])
    cert = find_rainbow_mod(c, 2)
    # first hit in (z, y) order, found by the triple-loop oracle
    assert cert == RainbowCertificate(3, 2, 1)
    assert certificate_is_valid(c, 2, cert)
    assert not is_rainbow_free(c, 2)


def test_monochromatic_has_no_rainbow():
    assert find_rainbow_mod(Coloring.of([0] * 5), 2) is None


colorings = st.integers(min_value=3, max_value=12).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.integers(0, 3), min_size=n, max_size=n))
)


@settings(max_examples=400)
@given(colorings, st.sampled_from([2, 3, 5]))
def test_agrees_with_triple_loop(nc, k):
    n, cols = nc
    c = Coloring.of(cols, 4)
    oracle = rainbow_triples(cols, k)
    cert = find_rainbow_mod(c, k)
    assert (cert is None) == (not oracle)
    if cert is not None:
        assert (cert.x, cert.y, cert.z) in oracle


@settings(max_examples=200)
@given(colorings, st.sampled_from([2, 3, 5]), st.permutations(range(4)))
def test_label_permutation_invariance(nc, k, perm):
    n, cols = nc
    relabeled = [perm[c] for c in cols]
    assert is_rainbow_free(Coloring.of(cols, 4), k) == is_rainbow_free(Coloring.of(relabeled, 4), k)


@settings(max_examples=200)
@given(colorings, st.sampled_from([2, 3, 5]))
def test_two_colors_never_rainbow(nc, k):
    n, cols = nc
    two = [c % 2 for c in cols]
    assert find_rainbow_mod(Coloring.of(two, 2), k) is None


def test_incremental_examples():
    cols = [0, 1, 2, 0, 0, 0, 0]
    assert incremental_rainbow_check(cols, 7, 2, 2) is False  # (2,1,1) repeats residue 1
    assert incremental_rainbow_check(cols, 7, 2, 3) is True
    assert incremental_rainbow_check([1, 1, 1, 1, 0, 0, 0], 7, 2, 3) is False
    assert incremental_rainbow_check([2, 0, 0, 0, 0, 0, 0], 7, 2, 0) is False


@pytest.mark.parametrize("k", [2, 3])
def test_incremental_flags_first_rainbow_prefix(k):
    n = 7
    for cols in itertools.product(range(3), repeat=n):
        first_inc = next((m for m in range(n) if incremental_rainbow_check(cols, n, k, m)), None)
        # a prefix 0..m holds a rainbow iff some rainbow triple lives inside it
        triples = rainbow_triples(cols, k)
        first_scan = min((max(t) for t in triples), default=None)
        assert first_inc == first_scan


def test_incremental_random_larger_moduli():
    rng = random.Random(7)
    for _ in range(200):
        n = rng.randint(3, 15)
        k = rng.choice([2, 3, 4, 5])
        cols = [rng.randrange(3) for _ in range(n)]
        triples = rainbow_triples(cols, k)
        for m in range(n):
            expected = any(max(t) == m for t in triples)
            assert incremental_rainbow_check(cols, n, k, m) == expected


def test_canonical_form():
    assert canonical_form([2, 2, 0, 1, 0]) == (0, 0, 1, 2, 1)
    assert Coloring.of([1, 0, 2]).canonical().colors == (0, 1, 2)


def test_json_roundtrip():
    c = Coloring.of([0, 1, 2, 1, 0])
    assert c.to_json(2) == {"n": 5, "k": 2, "colors": [0, 1, 2, 1, 0]}
    assert Coloring.from_json(c.to_json()) == c
    assert RainbowCertificate(3, 2, 1).to_json() == {"x": 3, "y": 2, "z": 1}
