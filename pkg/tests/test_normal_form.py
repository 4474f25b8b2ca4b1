import math
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from braidcrypt.braid import BandWord, BraidParseError, BraidWord, PermutationBraid, band_to_artin, delta_word, random_rewrite
from braidcrypt.normal_form import (
    LENGTH_FUNCTIONS,
    GarsideNormalForm,
    band_complement,
    band_meet,
    bkl_normal_form,
    delta_nf,
    enumerate_canonical_factors,
    from_factors,
    garside_length,
    identity_nf,
    is_canonical_factor,
    is_left_weighted,
    left_normal_form,
    local_sliding,
    parse_normal_form,
    reduced_garside_length,
    right_normal_form,
)

from conftest import rng, word_pairs, words


def _cycles(p):
    seen, count = set(), 0
    for i in range(len(p)):
        if i not in seen:
            count += 1
            while i not in seen:
                seen.add(i)
                i = p[i]
    return count


def _below_delta(p):
    # absolute-order interval [1, delta]: reflection lengths add up
    n = len(p)
    delta = tuple((i + 1) % n for i in range(n))
    inv = [0] * n
    for i, x in enumerate(p):
        inv[x] = i
    rest = tuple(delta[inv[i]] for i in range(n))  # p^-1 then delta
    return (n - _cycles(p)) + (n - _cycles(rest)) == n - 1


def test_worked_example():
    nf = left_normal_form(BraidWord(4, (1, -3, 2)))
    assert nf.delta_power == -1
    assert nf.serial == "B4: D^-1 | 3 4 2 1 | 3 1 2 4"
    assert garside_length(nf) == 13
    assert reduced_garside_length(nf) == 3


@given(words(max_len=14))
def test_serial_round_trip(w):
    nf = left_normal_form(w)
    assert parse_normal_form(nf.serial) == nf
    assert left_normal_form(nf.to_word()) == nf


@pytest.mark.parametrize(
    "text",
    ["B4: 1 2", "B4: D^0 | 1 2 3", "B4: D^0 | 1 1 2 3", "B4: D^0 | 1 2 3 4", "B4: D^0 | 4 3 2 1", "B3: D^0 | 3 2 1"],
)
def test_parse_rejects(text):
    with pytest.raises(BraidParseError):
        parse_normal_form(text)


def test_parse_rejects_non_left_weighted():
    # s1 * s2 is a single simple, so two factors is not normal
    with pytest.raises(BraidParseError):
        parse_normal_form("B3: D^0 | 2 1 3 | 1 3 2")


@given(words(max_len=14))
def test_factors_left_weighted_and_proper(w):
    nf = left_normal_form(w)
    n = nf.n
    for p in nf.factors:
        assert p != tuple(range(n)) and p != tuple(range(n - 1, -1, -1))
    for a, b in zip(nf.simples, nf.simples[1:]):
        assert is_left_weighted(a, b)


@given(word_pairs())
def test_product_and_inverse(pair):
    u, v = pair
    a, b = left_normal_form(u), left_normal_form(v)
    assert a * b == left_normal_form(u * v)
    assert a.inverse() == left_normal_form(u.inverse())
    assert (a * a.inverse()).is_identity()


@given(words(max_len=12), st.integers(0, 10**6))
def test_invariant_under_relations(w, seed):
    if w.n < 3:
        return
    assert left_normal_form(random_rewrite(w, rng(seed), 25)) == left_normal_form(w)


def test_delta_center():
    for n in range(2, 7):
        d2 = left_normal_form(delta_word(n) ** 2)
        assert d2 == delta_nf(n, 2)
        for i in range(1, n):
            s = left_normal_form(BraidWord(n, (i,)))
            assert d2 * s == s * d2
            # Delta conjugates s_i to s_(n-i)
            assert delta_nf(n).inverse() * s * delta_nf(n) == left_normal_form(BraidWord(n, (n - i,)))


@given(words(max_len=12))
def test_tau_matches_delta_conjugation(w):
    nf = left_normal_form(w)
    d = delta_nf(w.n)
    assert nf.tau() == d.inverse() * nf * d


def test_local_sliding():
    u = PermutationBraid((1, 0, 2))
    v = PermutationBraid((0, 2, 1))
    a, b = local_sliding(u, v)
    assert (a.perm, b.perm) == ((2, 0, 1), (0, 1, 2))  # s1 s2, nothing left


@given(words(max_len=14))
def test_right_normal_form(w):
    r = right_normal_form(w)
    nf = left_normal_form(w)
    assert left_normal_form(r.to_word()) == nf
    assert r.delta_power == nf.sup - len(r.factors) and len(r.factors) == nf.canonical_length


class TestBandGenerators:
    def test_catalan_counts(self):
        for n in range(2, 7):
            assert len(enumerate_canonical_factors(n)) == math.comb(2 * n, n) // (n + 1)

    @pytest.mark.parametrize("n", [3, 4, 5, 6])
    def test_matches_absolute_order_oracle(self, n):
        oracle = sorted(tuple(p) for p in permutations(range(n)) if _below_delta(p))
        assert enumerate_canonical_factors(n) == oracle
        assert all(is_canonical_factor(p) for p in oracle)
        assert sum(map(is_canonical_factor, permutations(range(n)))) == len(oracle)

    def test_lattice(self):
        facs = enumerate_canonical_factors(5)
        below = {(a, b) for a in facs for b in facs if band_meet(a, b) == a}
        for a in facs:
            for b in facs:
                m = band_meet(a, b)
                assert m in facs and (m, a) in below and (m, b) in below
                assert all((c, m) in below for c in facs if (c, a) in below and (c, b) in below)
            assert band_complement(a) in facs

    @given(words(min_n=3, max_len=12))
    def test_round_trip_through_bkl(self, w):
        band = BandWord(w.n, tuple((abs(x) + 1, abs(x), 1 if x > 0 else -1) for x in w.letters))
        bkl = bkl_normal_form(band)
        assert left_normal_form(band_to_artin(bkl.to_band_word())) == left_normal_form(w)
        ident = tuple(range(w.n))
        for a, b in zip(bkl.factors, bkl.factors[1:]):
            assert band_meet(band_complement(a), b) == ident
        assert bkl_normal_form(bkl.to_band_word()) == bkl

    def test_band_relation(self):
        nf = lambda *ls: bkl_normal_form(BandWord(4, tuple((t, s, 1) for t, s in ls)))
        assert nf((3, 2), (2, 1)) == nf((3, 1), (3, 2)) == nf((2, 1), (3, 1))


@given(words(min_n=3, max_len=10), st.integers(0, 10**6))
def test_lengths_are_class_functions_of_the_element(w, seed):
    w2 = random_rewrite(w, rng(seed), 20)
    for fn in LENGTH_FUNCTIONS.values():
        assert fn(w) == fn(w2) >= 0


def test_lengths_of_identity_and_delta():
    for fn in LENGTH_FUNCTIONS.values():
        assert fn(identity_nf(5)) == 0
    assert garside_length(delta_nf(5, -2)) == 20
    assert reduced_garside_length(delta_nf(5, -2)) == 20


def test_from_factors_absorbs_delta():
    top = (3, 2, 1, 0)
    assert from_factors(4, 0, [top, top, (1, 0, 2, 3)]) == GarsideNormalForm(4, 2, ((1, 0, 2, 3),))
