"""The twelve acceptance checks, shared by ``braidcrypt selftest`` and pytest.

Each check returns a ``CheckResult``; the wall-clock limit is part of the
verdict.
"""

from __future__ import annotations

import csv
import io
import random
import time
from dataclasses import dataclass
from itertools import permutations
from typing import Callable

from .attacks import (
    AttackConfig,
    InstanceParams,
    bench_rows,
    build_instance,
    lba_basic,
    lba_lookahead,
    lba_memory,
    peak_extend,
    rows_to_csv,
    success_rates,
)
from .braid import (
    BandWord,
    BraidWord,
    band_to_artin,
    delta_word,
    enumerate_simples,
    finishing_set,
    inversions,
    is_prefix_perm,
    perm_of,
    random_word,
    simple_meet,
    starting_set,
    PermutationBraid,
)
from .conjugacy import (
    Membership,
    compute_summit_graph,
    conjugacy_search,
    conjugate,
    cycle,
    minimal_conjugators,
)
from .normal_form import GarsideNormalForm, enumerate_canonical_factors, left_normal_form
from .protocols import (
    aag_keygen,
    aag_shared,
    dehornoy_auth,
    infinite_equal,
    ko_decrypt,
    ko_encrypt,
    ko_keygen,
    ko_shared,
    sdg_authenticate,
    sdg_honest_prover,
    sdg_setup,
    shifted_setup,
    shifted_star,
)
from .word_problem import colored_burau_eval, handle_reduce, mat_mul_mod, reduced_burau


@dataclass
class CheckResult:
    number: int
    title: str
    ok: bool
    seconds: float
    limit: float
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.ok and self.seconds < self.limit

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        extra = f" {self.detail}" if self.detail else ""
        return f"[{tag}] criterion {self.number:>2}: {self.title} ({_fmt(self.seconds)} / limit {_fmt(self.limit)}){extra}"


def _fmt(s: float) -> str:
    return f"{s * 1000:.3f} ms" if s < 1 else f"{s:.2f} s"


def _nf_of_factors(n: int, delta: int, factor_words) -> GarsideNormalForm:
    return GarsideNormalForm(n, delta, tuple(perm_of(BraidWord(n, tuple(f))) for f in factor_words))


def _cyc_orbit(y: GarsideNormalForm) -> frozenset:
    orbit = [y]
    z = cycle(y)
    while z != y:
        orbit.append(z)
        z = cycle(z)
    return frozenset(orbit)


# ---------------------------------------------------------------------------


def check_1():
    w = BraidWord(4, (1, -3, 2))
    expected = _nf_of_factors(4, -1, [(2, 1, 3, 2, 1), (1, 2)])
    t0 = time.perf_counter()
    nf = left_normal_form(w)
    dt = time.perf_counter() - t0
    ok = nf == expected and nf.serial == "B4: D^-1 | 3 4 2 1 | 3 1 2 4"
    return ok, dt, nf.serial


ORBIT_1 = [
    [(1, 3, 2, 1), (1, 2), (2, 1, 3)],
    [(1, 2), (2, 1, 3), (1, 3, 2, 1)],
    [(2, 1, 3), (1, 3, 2, 1), (1, 2)],
]
ORBIT_2 = [
    [(3, 1, 2, 3), (3, 2), (2, 3, 1)],
    [(3, 2), (2, 3, 1), (3, 1, 2, 3)],
    [(2, 3, 1), (3, 1, 2, 3), (3, 2)],
]


def check_2():
    x = BraidWord(4, (1, 3, 2, 1, 1, 2, 2, 1, 3))
    t0 = time.perf_counter()
    uss = compute_summit_graph(x, "uss")
    sss = compute_summit_graph(x, "sss")
    dt = time.perf_counter() - t0
    o1 = {_nf_of_factors(4, 0, e) for e in ORBIT_1}
    o2 = {_nf_of_factors(4, 0, e) for e in ORBIT_2}
    # the listed factorizations are already normal forms
    verbatim = all(
        left_normal_form(BraidWord(4, sum(e, ()))) == _nf_of_factors(4, 0, e) for e in ORBIT_1 + ORBIT_2
    )
    orbits = {_cyc_orbit(y) for y in uss.vertices}
    ok = (
        len(uss) == 6
        and len(sss) == 22
        and set(uss.vertices) == o1 | o2
        and orbits == {frozenset(o1), frozenset(o2)}
        and {y.tau() for y in o1} == o2
        and verbatim
    )
    return ok, dt, f"|USS|={len(uss)} |SSS|={len(sss)}"


def check_3():
    t0 = time.perf_counter()
    sizes = {}
    for n in range(4, 11):
        sizes[n] = len(compute_summit_graph(BraidWord(n, tuple(range(n - 1, 0, -1))), "sc"))
    dt = time.perf_counter() - t0
    ok = all(sizes[n] == 2 ** (n - 2) - 2 for n in sizes)
    return ok, dt, " ".join(f"n={n}:{s}" for n, s in sizes.items())


def check_4():
    x = delta_word(4) * BraidWord(4, (1, 1))
    t0 = time.perf_counter()
    g = compute_summit_graph(x, "sss")
    dt = time.perf_counter() - t0
    want = _nf_of_factors(4, 1, [(1, 3)])
    return set(g.vertices) == {want}, dt, " ".join(v.serial for v in g.vertices)


def check_5():
    t0 = time.perf_counter()
    ok = True
    for n in range(3, 9):
        g = compute_summit_graph(BraidWord(n, (1,)), "uss")
        want = {left_normal_form(BraidWord(n, (i,))) for i in range(1, n)}
        ok &= set(g.vertices) == want
    return ok, time.perf_counter() - t0, ""


def check_6():
    t0 = time.perf_counter()
    cat = [len(enumerate_canonical_factors(n)) for n in (3, 4, 5)]
    fact = [len({p.perm for p in enumerate_simples(n)}) for n in range(2, 7)]
    dt = time.perf_counter() - t0
    ok = cat == [5, 14, 42] and fact == [2, 6, 24, 120, 720]
    return ok, dt, f"catalan={cat} simples={fact}"


def check_7():
    t0 = time.perf_counter()
    first = handle_reduce(BraidWord(3, (1, 2, 1, -2, -1, -2)))
    a1 = BraidWord(75, (-39, 12, 7, -3, -1, 70, 25, -24))
    a2 = BraidWord(75, (42, -56, 8, -18, 19, 73, -33, -22))
    peak = handle_reduce(a2.inverse() * a1.inverse() * a2 * a1)
    literal = handle_reduce(a1.inverse() * a2.inverse() * a1 * a2)
    dt = time.perf_counter() - t0
    target = left_normal_form(BraidWord(75, (7, -8)))
    ok = (
        len(first) == 0
        and left_normal_form(peak) == target
        and left_normal_form(literal) == target.inverse()
    )
    return ok, dt, f"peak reduced to {len(peak)} letters"


def check_8():
    t0 = time.perf_counter()
    rng = random.Random("relations")
    failures = 0
    for n in range(3, 9):
        for i in range(1, n):
            for j in range(1, n):
                if abs(i - j) >= 2:
                    failures += left_normal_form(BraidWord(n, (i, j))) != left_normal_form(BraidWord(n, (j, i)))
                elif abs(i - j) == 1:
                    failures += left_normal_form(BraidWord(n, (i, j, i))) != left_normal_form(BraidWord(n, (j, i, j)))
    for n in range(3, 7):
        pairs = [(t, s) for t in range(2, n + 1) for s in range(1, t)]

        def nf(*letters):
            return left_normal_form(band_to_artin(BandWord(n, tuple((t, s, 1) for t, s in letters))))

        for t, s in pairs:
            for r, q in pairs:
                if (t - r) * (t - q) * (s - r) * (s - q) > 0:  # disjoint or nested
                    failures += nf((t, s), (r, q)) != nf((r, q), (t, s))
        for t in range(3, n + 1):
            for s in range(2, t):
                for r in range(1, s):
                    a, b, c = nf((t, s), (s, r)), nf((t, r), (t, s)), nf((s, r), (t, r))
                    failures += not (a == b == c)
    for n in range(3, 7):
        for i in range(1, n):
            for j in range(1, n):
                if abs(i - j) == 1:
                    failures += reduced_burau(BraidWord(n, (i, j, i))) != reduced_burau(BraidWord(n, (j, i, j)))
                elif abs(i - j) >= 2:
                    failures += reduced_burau(BraidWord(n, (i, j))) != reduced_burau(BraidWord(n, (j, i)))
        for _ in range(20):
            u = random_word(n, rng.randint(0, 10), rng)
            v = random_word(n, rng.randint(0, 10), rng)
            failures += reduced_burau(u * v) != reduced_burau(u) * reduced_burau(v)
    p = 1_000_000_007
    for _ in range(20):
        u = random_word(4, rng.randint(0, 12), rng)
        v = random_word(4, rng.randint(0, 12), rng)
        for _ in range(5):
            taus = [rng.randrange(1, p) for _ in range(4)]
            _, muv = colored_burau_eval(u * v, taus, p)
            pv, mv = colored_burau_eval(v, taus, p)
            _, mu = colored_burau_eval(u, [taus[pv[q]] for q in range(4)], p)
            failures += muv != mat_mul_mod(mu, mv, p)
    for _ in range(500):
        r, s, q = (random_word(6, rng.randint(0, 8), rng) for _ in range(3))
        failures += not infinite_equal(shifted_star(r, shifted_star(s, q)), shifted_star(shifted_star(r, s), shifted_star(r, q)))
    return failures == 0, time.perf_counter() - t0, f"{failures} failures"


def check_9(runs: int = 1000):
    t0 = time.perf_counter()
    bad = 0
    for seed in range(runs):
        rng = random.Random(f"aag/{seed}")
        inst = aag_keygen(rng, n=8, m=4, generator_length=5, secret_length=5)
        bad += aag_shared("alice", inst) != aag_shared("bob", inst)
        rng = random.Random(f"ko/{seed}")
        ko = ko_keygen(rng, n=8)
        bad += ko_shared("alice", ko) != ko_shared("bob", ko)
        msg = rng.getrandbits(256).to_bytes(32, "big")
        bad += ko_decrypt(ko.s, ko_encrypt(msg, ko.p, ko.p_alice, rng)) != msg
        rng = random.Random(f"sdg/{seed}")
        b, b_pub, s = sdg_setup(rng)
        bad += not sdg_authenticate(b, b_pub, rng, sdg_honest_prover(s)).accepted
        bad += sdg_authenticate(b, b_pub, rng, lambda x: rng.getrandbits(256).to_bytes(32, "big")).accepted
        rng = random.Random(f"shifted/{seed}")
        keys = shifted_setup(rng)
        bad += not dehornoy_auth(keys, rng).accepted
        bad += dehornoy_auth(keys, rng, prover=lambda r, c: random_word(6, 10, rng)).accepted
    return bad == 0, time.perf_counter() - t0, f"{bad} failures over {runs} runs per scheme"


def check_10(paired: int = 200, shared: int = 50):
    t0 = time.perf_counter()
    params = InstanceParams()
    same = True
    for seed in range(shared):
        inst = build_instance(params, "acceptance", seed)
        base = lba_basic(inst)
        same &= lba_lookahead(inst, depth=1).trace == base.trace
        same &= lba_memory(inst, memory=1).trace == base.trace
    configs = [AttackConfig("lba-mem", memory=m) for m in (4, 16, 64)]
    text = rows_to_csv(bench_rows(params, configs, range(paired), master="acceptance"))
    rates = success_rates(csv.DictReader(io.StringIO(text)), key=lambda r: int(r["memory"]))
    monotone = rates[4] <= rates[16] <= rates[64]
    a1 = BraidWord(75, (-39, 12, 7, -3, -1, 70, 25, -24))
    a2 = BraidWord(75, (42, -56, 8, -18, 19, 73, -33, -22))
    target = left_normal_form(BraidWord(75, (7, -8)))
    peaks = any(left_normal_form(w) == target for w in peak_extend([a1, a2]))
    # bench_rows re-verifies every success and raises otherwise
    ok = same and monotone and peaks
    detail = f"rates M4={rates[4]:.3f} M16={rates[16]:.3f} M64={rates[64]:.3f} traces_equal={same} peak={peaks}"
    return ok, time.perf_counter() - t0, detail


def _short_element(rng: random.Random, n: int, max_len: int) -> BraidWord:
    while True:
        w = random_word(n, rng.randint(1, 8), rng)
        if left_normal_form(w).canonical_length <= max_len:
            return w


def check_11(pairs: int = 200):
    t0 = time.perf_counter()
    rng = random.Random("conjugacy")
    bad = 0
    for _ in range(pairs):
        x = _short_element(rng, 5, 4)
        v = random_word(5, rng.randint(1, 10), rng)
        y = left_normal_form(v.inverse() * x * v)
        c = conjugacy_search(x, y)
        bad += c is None or conjugate(left_normal_form(x), c) != y
    for _ in range(pairs):
        x = _short_element(rng, 5, 4)
        while True:
            y = _short_element(rng, 5, 4)
            if _exp(x) != _exp(y):
                break
        bad += conjugacy_search(x, y) is not None
    return bad == 0, time.perf_counter() - t0, f"{bad} wrong answers"


def _exp(w: BraidWord) -> int:
    return sum(1 if a > 0 else -1 for a in w.letters)


def _gen(n: int, i: int):
    p = list(range(n))
    p[i - 1], p[i] = i, i - 1
    return tuple(p)


def _compose(p, q):
    return tuple(q[x] for x in p)


def check_12():
    t0 = time.perf_counter()
    ok = True
    for n in (4, 5):
        simples = [tuple(p) for p in permutations(range(n))]
        by_len = {p: inversions(p) for p in simples}
        for P in simples:
            pb = PermutationBraid(P)
            s_brute = {i for i in range(1, n) for Q in simples if by_len[Q] == by_len[P] - 1 and _compose(_gen(n, i), Q) == P}
            f_brute = {i for i in range(1, n) for Q in simples if by_len[Q] == by_len[P] - 1 and _compose(Q, _gen(n, i)) == P}
            ok &= starting_set(pb) == s_brute and finishing_set(pb) == f_brute
    simples4 = [tuple(p) for p in permutations(range(4))]
    for P in simples4:
        for Q in simples4:
            common = [R for R in simples4 if is_prefix_perm(R, P) and is_prefix_perm(R, Q)]
            top = max(common, key=inversions)
            ok &= all(is_prefix_perm(R, top) for R in common)
            ok &= simple_meet(PermutationBraid(P), PermutationBraid(Q)).perm == top
    seeds = [BraidWord(4, (1, 3, 2, 1, 1, 2, 2, 1, 3)), BraidWord(4, (1,)), BraidWord(4, (1, 2, 3, 2, 2, 1, 3, 1, 3))]
    rng = random.Random("minimal")
    seeds += [random_word(4, rng.randint(1, 10), rng) for _ in range(10)]
    compared = 0
    for x in seeds:
        for kind in ("sss", "uss", "sc"):
            g = compute_summit_graph(x, kind)
            any_y = next(iter(g.vertices))
            member = Membership(kind, any_y.inf, any_y.sup)
            for y in g.vertices:
                fast = {s.perm for s in minimal_conjugators(y, kind, "fast", member)}
                brute = {s.perm for s in minimal_conjugators(y, kind, "brute", member)}
                ok &= fast == brute
                compared += 1
    return ok, time.perf_counter() - t0, f"{compared} minimal-conjugator sets compared"


CHECKS: list[tuple[int, str, float, Callable]] = [
    (1, "left normal form of the worked example", 0.001, check_1),
    (2, "USS/SSS sizes and orbits of the B4 example", 10, check_2),
    (3, "sliding circuits of delta_n, n=4..10", 60, check_3),
    (4, "super summit set of Delta_4 s1^2", 1, check_4),
    (5, "ultra summit set of s1, n=3..8", 10, check_5),
    (6, "Catalan and factorial enumeration counts", 30, check_6),
    (7, "handle reduction examples", 1, check_7),
    (8, "relation and homomorphism suite", 60, check_8),
    (9, "protocol correctness", 300, check_9),
    (10, "attack suite", 900, check_10),
    (11, "conjugacy solver ground truth in B5", 300, check_11),
    (12, "oracle equivalences over all simples", 120, check_12),
]


def run_check(number: int) -> CheckResult:
    num, title, limit, fn = CHECKS[number - 1]
    try:
        ok, seconds, detail = fn()
    except Exception as exc:  # reported as a failure line, not a crash
        return CheckResult(num, title, False, 0.0, limit, f"error: {exc!r}")
    return CheckResult(num, title, bool(ok), seconds, limit, detail)


def run_all(numbers=None, echo: Callable[[str], None] | None = print) -> list[CheckResult]:
    out = []
    for num, *_ in CHECKS:
        if numbers and num not in numbers:
            continue
        res = run_check(num)
        if echo:
            echo(res.line())
        out.append(res)
    return out


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(0 if all(r.passed for r in run_all()) else 1)
