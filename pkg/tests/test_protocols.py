import hashlib
import random
from collections import Counter

import pytest
from hypothesis import given, strategies as st

from braidcrypt.braid import BraidWord, random_word
from braidcrypt.normal_form import left_normal_form
from braidcrypt.protocols import (
    KeyDistribution,
    aag_keygen,
    aag_shared,
    allowed_indices,
    braid_hash,
    dehornoy_auth,
    draw_key,
    draw_letters,
    evaluate_subgroup_word,
    hash_stream,
    infinite_equal,
    ko_decrypt,
    ko_encrypt,
    ko_keygen,
    ko_publish,
    ko_shared,
    KoInstance,
    sdg_authenticate,
    sdg_honest_prover,
    sdg_setup,
    shift,
    shifted_setup,
    shifted_star,
)

from conftest import words


def test_distribution_parsing():
    assert KeyDistribution.parse("uniform") == KeyDistribution()
    assert KeyDistribution.parse("markov:2.5").beta == 2.5
    for bad in ("gauss", "markov:-1", "markov:x"):
        with pytest.raises(ValueError):
            KeyDistribution.parse(bad)


def test_constraints_commute():
    n = 8
    lb, ub = allowed_indices(n, "LB"), allowed_indices(n, "UB")
    assert lb == [1, 2, 3] and ub == [5, 6, 7]
    for i in lb:
        for j in ub:
            assert left_normal_form(BraidWord(n, (i, j))) == left_normal_form(BraidWord(n, (j, i)))
    with pytest.raises(ValueError):
        allowed_indices(3, "LB")


def test_markov_neighbour_weight():
    beta = 4.0
    dist = KeyDistribution("markov", 200_000, beta)
    letters = draw_letters(range(1, 8), dist, random.Random(3))
    after3 = Counter(abs(b) for a, b in zip(letters, letters[1:]) if abs(a) == 3)
    # two signed letters per index; neighbours 2 and 4 carry weight beta
    neighbour = (after3[2] + after3[4]) / 4
    other = sum(after3[i] for i in (1, 3, 5, 6, 7)) / 10
    assert neighbour / other == pytest.approx(beta, rel=0.05)


def test_uniform_marginals():
    letters = draw_letters(range(1, 5), KeyDistribution("uniform", 80_000), random.Random(1))
    counts = Counter(letters)
    assert len(counts) == 8
    assert max(counts.values()) / min(counts.values()) < 1.1


def test_hash_stream_oracle():
    x = left_normal_form(BraidWord(4, (1, -3, 2)))
    data = b"B4: D^-1 | 3 4 2 1 | 3 1 2 4"
    expected = hashlib.sha256(bytes(8) + data).digest() + hashlib.sha256((1).to_bytes(8, "big") + data).digest()
    assert hash_stream(x, 64) == expected
    assert braid_hash(x) == expected[:32]
    assert hash_stream(x, 5) == expected[:5]


@pytest.mark.parametrize("seed", range(25))
def test_aag_agreement(seed):
    rng = random.Random(seed)
    inst = aag_keygen(rng, dist=KeyDistribution.parse("markov:2"))
    k = aag_shared("alice", inst)
    assert k == aag_shared("bob", inst)
    a = left_normal_form(inst.alice_secret)
    b = left_normal_form(inst.bob_secret)
    assert k == a * b * a.inverse() * b.inverse()


def test_aag_bad_generator():
    with pytest.raises(ValueError):
        evaluate_subgroup_word((3,), [BraidWord(4, (1,))])
    with pytest.raises(ValueError):
        aag_shared("eve", aag_keygen(random.Random(0)))


@pytest.mark.parametrize("seed", range(25))
def test_ko_agreement_and_encryption(seed):
    rng = random.Random(seed)
    inst = ko_keygen(rng)
    assert ko_shared("alice", inst) == ko_shared("bob", inst)
    msg = bytes(range(40))
    ct = ko_encrypt(msg, inst.p, inst.p_alice, rng)
    assert ct.body != msg
    assert ko_decrypt(inst.s, ct) == msg


def test_ko_rejects_out_of_range_keys():
    with pytest.raises(ValueError):
        ko_publish(KoInstance(8, BraidWord(8, (1,)), BraidWord(8, (5,)), BraidWord(8, (6,))))
    with pytest.raises(ValueError):
        ko_keygen(random.Random(0), n=7)


@pytest.mark.parametrize("seed", range(25))
def test_sdg(seed):
    rng = random.Random(seed)
    b, b_pub, s = sdg_setup(rng)
    assert sdg_authenticate(b, b_pub, rng, sdg_honest_prover(s)).accepted
    wrong = draw_key(8, KeyDistribution(), rng, "LB")
    if left_normal_form(wrong) != left_normal_form(s):
        assert not sdg_authenticate(b, b_pub, rng, sdg_honest_prover(wrong)).accepted
    with pytest.raises(ValueError):
        sdg_authenticate(b, b_pub, rng, lambda x: b"short")


@given(words(max_len=8), words(max_len=8), words(max_len=8))
def test_left_self_distributivity(r, s, p):
    lhs = shifted_star(r, shifted_star(s, p))
    rhs = shifted_star(shifted_star(r, s), shifted_star(r, p))
    assert infinite_equal(lhs, rhs)


def test_shift_and_infinite_equality():
    assert shift(BraidWord(3, (1, -2))).letters == (2, -3)
    assert infinite_equal(BraidWord(3, (1,)), BraidWord(9, (1,)))
    assert not infinite_equal(BraidWord(3, (1,)), BraidWord(9, (2,)))


@pytest.mark.parametrize("seed", range(40))
def test_shifted_auth(seed):
    rng = random.Random(seed)
    keys = shifted_setup(rng)
    assert dehornoy_auth(keys, rng).accepted
    assert not dehornoy_auth(keys, rng, prover=lambda r, c: random_word(6, 10, rng)).accepted
