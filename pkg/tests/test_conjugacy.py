import random

import pytest
from hypothesis import given, settings, strategies as st

from braidcrypt.braid import BraidWord, random_word
from braidcrypt.conjugacy import (
    Membership,
    compute_summit_graph,
    conjugacy_decide,
    conjugacy_search,
    conjugate,
    conjugate_by_simple,
    cycle,
    cyclic_sliding,
    decycle,
    initial_factor,
    is_rigid,
    minimal_conjugators,
    send_to_rsss,
    send_to_sc,
    send_to_sss,
    send_to_uss,
)
from braidcrypt.errors import BudgetExceeded
from braidcrypt.normal_form import delta_nf, left_normal_form, simple_nf

from conftest import words

X = BraidWord(4, (1, 3, 2, 1, 1, 2, 2, 1, 3))


def _brute_sss_bounds(x, depth=3):
    """inf/sup extremes over conjugates by products of up to ``depth`` simples (B3/B4 only)."""
    from itertools import permutations

    simples = [simple_nf(p) for p in permutations(range(x.n))]
    seen = {x}
    frontier = {x}
    for _ in range(depth):
        nxt = set()
        for y in frontier:
            for s in simples:
                z = conjugate(y, s)
                if z not in seen:
                    seen.add(z)
                    nxt.add(z)
        frontier = nxt
    return max(y.inf for y in seen), min(y.sup for y in seen)


@given(words(min_n=3, max_n=5, max_len=10))
def test_cycling_and_decycling_are_conjugations(w):
    x = left_normal_form(w)
    if not x.factors:
        return
    assert cycle(x) == conjugate_by_simple(x, initial_factor(x))
    assert cycle(x).inf >= x.inf
    assert decycle(x).sup <= x.sup
    assert cyclic_sliding(x).inf >= x.inf


@given(words(min_n=3, max_n=5, max_len=12))
def test_send_witnesses_verify(w):
    x = left_normal_form(w)
    for send in (send_to_sss, send_to_uss, send_to_sc, send_to_rsss):
        wit = send(x)
        assert wit.verify(x)
        assert conjugate(x, left_normal_form(wit.conjugator_word)) == wit.element


@settings(max_examples=25)
@given(words(min_n=3, max_n=4, max_len=8))
def test_sss_is_extremal(w):
    x = left_normal_form(w)
    y = send_to_sss(x).element
    best_inf, best_sup = _brute_sss_bounds(x, depth=2)
    assert y.inf >= best_inf and y.sup <= best_sup


def test_example_graph():
    uss = compute_summit_graph(X, "uss")
    sss = compute_summit_graph(X, "sss")
    assert (len(uss), len(uss.edges)) == (6, 12)
    assert len(sss) == 22
    assert set(uss.vertices) <= set(sss.vertices)
    for y, wit in uss.vertices.items():
        assert wit.verify(X) and is_rigid(y)
    for a, s, b in uss.edges:
        assert conjugate_by_simple(a, s.perm) == b


def test_nested_sets():
    rng = random.Random(11)
    for _ in range(15):
        x = random_word(4, 10, rng)
        sss = set(compute_summit_graph(x, "sss").vertices)
        uss = set(compute_summit_graph(x, "uss").vertices)
        rsss = set(compute_summit_graph(x, "rsss").vertices)
        sc = set(compute_summit_graph(x, "sc").vertices)
        assert sc <= uss <= sss and rsss <= uss
        assert sc and rsss


def test_sss_of_delta_times_square():
    g = compute_summit_graph(left_normal_form(BraidWord(4, (1, 2, 3, 1, 2, 1, 1, 1))), "sss")
    assert [v.serial for v in g.vertices] == ["B4: D^1 | 2 1 4 3"]


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_uss_of_generator(n):
    g = compute_summit_graph(BraidWord(n, (1,)), "uss")
    assert set(g.vertices) == {left_normal_form(BraidWord(n, (i,))) for i in range(1, n)}


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_sliding_circuits_of_delta_small(n):
    assert len(compute_summit_graph(BraidWord(n, tuple(range(n - 1, 0, -1))), "sc")) == 2 ** (n - 2) - 2


@pytest.mark.parametrize("kind", ["sss", "uss", "sc", "rsss"])
def test_fast_equals_brute_on_random(kind):
    rng = random.Random(kind)
    for _ in range(6):
        x = random_word(4, rng.randint(3, 12), rng)
        fast = compute_summit_graph(x, kind, "fast")
        brute = compute_summit_graph(x, kind, "brute")
        assert set(fast.vertices) == set(brute.vertices)
        key = lambda e: (e[0].serial, e[1].perm)
        assert sorted(map(key, fast.edges)) == sorted(map(key, brute.edges))


def test_minimal_conjugators_are_antichain():
    g = compute_summit_graph(X, "sss")
    member = Membership("sss", next(iter(g.vertices)).inf, next(iter(g.vertices)).sup)
    from braidcrypt.braid import is_prefix_perm

    for y in g.vertices:
        mins = [s.perm for s in minimal_conjugators(y, "sss", "fast", member)]
        for a in mins:
            assert member(conjugate_by_simple(y, a))
            assert not any(a != b and is_prefix_perm(b, a) for b in mins)


def test_minimal_conjugators_require_membership():
    with pytest.raises(ValueError):
        minimal_conjugators(left_normal_form(BraidWord(4, (1, -2))), "uss", member=Membership("uss", 5, 6))


def test_vertex_budget():
    with pytest.raises(BudgetExceeded) as exc:
        compute_summit_graph(X, "sss", vertex_budget=3)
    assert exc.value.partial is not None and len(exc.value.partial) == 3


@given(words(n=5, max_len=8), words(n=5, max_len=8))
@settings(max_examples=30)
def test_search_finds_constructed_conjugators(w, v):
    x = left_normal_form(w)
    y = conjugate(x, left_normal_form(v))
    c = conjugacy_search(x, y)
    assert c is not None and conjugate(x, c) == y


def test_decide_negative_cases():
    assert not conjugacy_decide(BraidWord(4, (1,)), BraidWord(4, (1, 1)))
    # same exponent sum and permutation class, different conjugacy class
    assert not conjugacy_decide(BraidWord(3, (1, 1, 2, 2)), BraidWord(3, (1, 1, 1, 1)))
    assert conjugacy_decide(BraidWord(4, (1,)), BraidWord(4, (3,)))


def test_delta_powers():
    for k in (-2, -1, 1, 2):
        d = delta_nf(4, k)
        assert compute_summit_graph(d, "uss").vertices.keys() == {d}
        assert is_rigid(d)
