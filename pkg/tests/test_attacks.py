import csv
import io
import random

import pytest

from braidcrypt.attacks import (
    CSV_FIELDS,
    AttackConfig,
    AttackInstance,
    AttackReport,
    InstanceParams,
    bench_rows,
    build_instance,
    candidates_from_words,
    hs_attack,
    lba_basic,
    lba_lookahead,
    lba_memory,
    letter_candidates,
    make_instance,
    peak_candidates,
    peak_extend,
    random_guess_rate,
    rows_to_csv,
    seeded_rng,
    success_rates,
)
from braidcrypt.braid import BraidWord
from braidcrypt.conjugacy import compute_summit_graph, conjugate_by_simple
from braidcrypt.normal_form import left_normal_form

PARAMS = InstanceParams(n=6, m=3, secret_length=6, u_length=8)


def _instance(secret, us, n=6):
    v = left_normal_form(BraidWord(n, secret))
    us = tuple(left_normal_form(BraidWord(n, u)) for u in us)
    return AttackInstance("test", n, us, tuple(v.inverse() * u * v for u in us), "all", BraidWord(n, secret))


def test_report_refuses_unverified_success():
    with pytest.raises(AssertionError):
        AttackReport(True, 1, ())


def test_basic_recovers_single_letter():
    inst = _instance((3,), [(1, 2, -4, 5), (2, 2, -1, 3), (5, -4, 1)])
    rep = lba_basic(inst)
    assert rep.success and rep.verified
    assert inst.verify(rep.conjugator)
    assert rep.trace and rep.trace[-1].startswith("1 ")


@pytest.mark.parametrize("seed", range(8))
def test_depth_one_and_memory_one_match_basic(seed):
    inst = build_instance(PARAMS, "t", seed)
    base = lba_basic(inst)
    assert lba_lookahead(inst, depth=1).trace == base.trace
    assert lba_memory(inst, memory=1).trace == base.trace
    assert lba_memory(inst, memory=1).success == base.success


@pytest.mark.parametrize("seed", range(8))
def test_every_success_verifies(seed):
    inst = build_instance(PARAMS, "t", seed)
    for rep in (lba_basic(inst), lba_lookahead(inst, depth=2), lba_memory(inst, memory=8, dedup=True)):
        if rep.success:
            assert inst.verify(rep.conjugator)


def test_bad_parameters():
    inst = build_instance(PARAMS, "t", 0)
    with pytest.raises(ValueError):
        lba_lookahead(inst, depth=0)
    with pytest.raises(ValueError):
        lba_memory(inst, memory=0)
    with pytest.raises(ValueError):
        AttackConfig("nope").run(inst)


def test_candidate_order():
    cands = letter_candidates(5, [3, 1])
    assert [c.label for c in cands] == ["1", "1^-1", "3", "3^-1"]
    words = candidates_from_words([BraidWord(4, (1, 2))])
    assert words[1].nf == words[0].nf.inverse()


def test_peak_extend_contents():
    gens = [BraidWord(4, (1,)), BraidWord(4, (2,)), BraidWord(4, (3,))]
    out = peak_extend(gens)
    nfs = [left_normal_form(w) for w in out]
    assert len(set(nfs)) == len(nfs)
    assert not any(x.is_identity() for x in nfs)
    # s1 and s3 commute, so their conjugates and commutator collapse
    assert left_normal_form(BraidWord(4, (-1, -2, 1, 2))) in nfs
    assert left_normal_form(BraidWord(4, (-1, -3, 1, 3))) not in nfs


def test_peak_extend_large_index_example():
    a1 = BraidWord(75, (-39, 12, 7, -3, -1, 70, 25, -24))
    a2 = BraidWord(75, (42, -56, 8, -18, 19, 73, -33, -22))
    target = left_normal_form(BraidWord(75, (7, -8)))
    assert any(left_normal_form(w) == target for w in peak_extend([a1, a2]))


def test_peaks_flag_uses_extended_candidates():
    inst = build_instance(PARAMS, "t", 1)
    assert len(peak_candidates(inst)) > len(letter_candidates(6, range(1, 6)))
    assert AttackConfig("lba", peaks=True).run(inst).steps >= 0


def test_hs_attack_one_hop():
    x = BraidWord(4, (1, 3, 2, 1, 1, 2, 2, 1, 3))
    g = compute_summit_graph(x, "uss")
    y, s, z = g.edges[0]
    inst = AttackInstance("test", 4, (y,), (z,), "all", s.word())
    rep = hs_attack(inst)
    assert rep.success and conjugate_by_simple(y, s.perm) == z
    with pytest.raises(ValueError):
        hs_attack(build_instance(InstanceParams(n=10), "t", 0))


def test_bench_csv_shape():
    assert rows_to_csv(bench_rows(PARAMS, [AttackConfig()], [])) == ",".join(CSV_FIELDS) + "\n"
    configs = [AttackConfig("lba"), AttackConfig("lba-mem", memory=4)]
    text = rows_to_csv(bench_rows(PARAMS, configs, range(3), master=7))
    assert text == rows_to_csv(bench_rows(PARAMS, configs, range(3), master=7))
    rows = list(csv.DictReader(io.StringIO(text)))
    assert len(rows) == 6 and all(r["seconds"] == "" for r in rows)
    assert '"' not in text and "\r" not in text
    rates = success_rates(rows)
    assert set(rates) == {("lba", "1", "1", "0"), ("lba-mem", "4", "1", "0")}


def test_bench_timings_and_jobs():
    rows = bench_rows(PARAMS, [AttackConfig()], range(2), timings=True)
    assert all(float(r["seconds"]) >= 0 for r in rows)
    serial = bench_rows(PARAMS, [AttackConfig()], range(3))
    parallel = bench_rows(PARAMS, [AttackConfig()], range(3), jobs=2)
    assert serial == parallel


def test_ko_instances():
    inst = build_instance(InstanceParams(scheme="ko"), "t", 0)
    assert inst.constraint == "LB" and inst.verify(inst.secret)


def test_seeded_streams():
    assert seeded_rng(1, "keygen", 3).random() == seeded_rng(1, "keygen", 3).random()
    assert seeded_rng(1, "keygen", 3).random() != seeded_rng(1, "attack", 3).random()


def test_random_guessing_is_poor():
    rate = random_guess_rate(lambda s: build_instance(PARAMS, "g", s), range(20), lambda s, k: seeded_rng("g", k, s))
    assert 0.0 <= rate <= 0.2


def test_make_instance_constraint():
    inst = make_instance(random.Random(2), n=8, constraint="UB")
    assert all(abs(x) >= 5 for x in inst.secret.letters)
    assert inst.verify(inst.secret)
