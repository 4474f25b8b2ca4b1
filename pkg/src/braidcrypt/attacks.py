"""Length-based attacks and the summit-set heuristic on conjugacy instances.

An instance hides ``v`` behind pairs ``w_i = v^-1 u_i v``.  Peeling a
candidate ``g`` off the end of ``v`` replaces every ``w_i`` by
``g w_i g^-1``; the attacks look for a sequence of peels that lands exactly
on the ``u`` tuple.  Every claimed success is re-verified by conjugation.
"""

from __future__ import annotations

import csv
import io
import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from . import kernels
from .braid import BraidWord, free_reduce, identity_perm
from .conjugacy import conjugate_by_simple, send_to_sss
from .normal_form import LENGTH_FUNCTIONS, GarsideNormalForm, left_normal_form, simple_nf
from .protocols import KeyDistribution, allowed_indices, draw_key

LengthFn = Callable[[GarsideNormalForm], int]


@dataclass(frozen=True)
class Candidate:
    label: str
    word: BraidWord
    nf: GarsideNormalForm
    nf_inv: GarsideNormalForm


def candidates_from_words(words: Sequence[BraidWord], labels: Sequence[str] | None = None) -> list[Candidate]:
    """Each word and its inverse, in the given order (word first)."""
    out = []
    for k, w in enumerate(words):
        name = labels[k] if labels else f"g{k + 1}"
        nf = left_normal_form(w)
        inv = nf.inverse()
        out.append(Candidate(name, w, nf, inv))
        out.append(Candidate(name + "^-1", w.inverse(), inv, nf))
    return out


def letter_candidates(n: int, indices: Iterable[int]) -> list[Candidate]:
    """Artin letters ordered by absolute index, positive first."""
    words = [BraidWord(n, (i,)) for i in sorted(indices)]
    return candidates_from_words(words, [str(i) for i in sorted(indices)])


@dataclass
class AttackInstance:
    kind: str
    n: int
    us: tuple[GarsideNormalForm, ...]
    ws: tuple[GarsideNormalForm, ...]
    constraint: str = "all"
    secret: BraidWord | None = None  # scoring only

    def verify(self, v: BraidWord) -> bool:
        vn = left_normal_form(v)
        vi = vn.inverse()
        return all(vi * u * vn == w for u, w in zip(self.us, self.ws))


def make_instance(
    rng: random.Random,
    n: int = 8,
    m: int = 4,
    secret_length: int = 10,
    u_length: int = 10,
    constraint: str = "all",
    dist: KeyDistribution | None = None,
) -> AttackInstance:
    """``m`` random ``u_i`` and a secret ``v`` drawn from the constraint."""
    dist = (dist or KeyDistribution()).with_length(secret_length)
    us_words = [draw_key(n, KeyDistribution("uniform", u_length), rng) for _ in range(m)]
    v = draw_key(n, dist, rng, constraint)
    vn = left_normal_form(v)
    vi = vn.inverse()
    us = tuple(left_normal_form(u) for u in us_words)
    ws = tuple(vi * u * vn for u in us)
    kind = "single-conjugacy" if m == 1 else "multiple-simultaneous"
    return AttackInstance(kind, n, us, ws, constraint, v)


def ko_instance(rng: random.Random, n: int = 8, p_length: int = 20, secret_length: int = 10, dist=None) -> AttackInstance:
    """``p' = s p s^-1`` seen as ``v^-1 p v`` with ``v = s^-1`` in LB."""
    dist = (dist or KeyDistribution()).with_length(secret_length)
    p = draw_key(n, KeyDistribution("uniform", p_length), rng)
    s = draw_key(n, dist, rng, "LB")
    sn = left_normal_form(s)
    pn = left_normal_form(p)
    return AttackInstance("ko-derived", n, (pn,), (sn * pn * sn.inverse(),), "LB", s.inverse())


@dataclass
class AttackReport:
    success: bool
    steps: int
    trace: tuple[str, ...]
    conjugator: BraidWord | None = None
    seconds: float = 0.0
    verified: bool = False

    def __post_init__(self) -> None:
        if self.success and not self.verified:
            raise AssertionError("success flag without verification")


def _resolve_length(length_fn) -> LengthFn:
    if callable(length_fn):
        return length_fn
    return LENGTH_FUNCTIONS[length_fn]


def _peel(ws: tuple[GarsideNormalForm, ...], c: Candidate) -> tuple[GarsideNormalForm, ...]:
    return tuple(c.nf * w * c.nf_inv for w in ws)


def _tuple_length(ws, length: LengthFn) -> int:
    return sum(length(w) for w in ws)


def _assemble(path: Sequence[Candidate], n: int) -> BraidWord:
    """Peeled candidates rebuild ``v`` right to left."""
    letters: list[int] = []
    for c in reversed(path):
        letters.extend(c.word.letters)
    return free_reduce(BraidWord(n, tuple(letters)))


def _finish(inst: AttackInstance, path, steps, trace, t0) -> AttackReport:
    v = _assemble(path, inst.n)
    ok = inst.verify(v)
    return AttackReport(ok, steps, tuple(trace), v, time.perf_counter() - t0, ok)


def _default_candidates(inst: AttackInstance) -> list[Candidate]:
    return letter_candidates(inst.n, allowed_indices(inst.n, inst.constraint))


def lba_basic(inst: AttackInstance, length_fn="redgar", candidates=None, max_steps: int | None = None) -> AttackReport:
    return lba_lookahead(inst, length_fn, 1, candidates, max_steps)


def lba_lookahead(
    inst: AttackInstance,
    length_fn="redgar",
    depth: int = 1,
    candidates: Sequence[Candidate] | None = None,
    max_steps: int | None = None,
) -> AttackReport:
    """Greedy descent scoring each first peel by the best sequence of up to ``depth`` peels."""
    if depth < 1:
        raise ValueError("depth must be >= 1")
    t0 = time.perf_counter()
    length = _resolve_length(length_fn)
    cands = list(candidates) if candidates is not None else _default_candidates(inst)
    max_steps = max_steps or 20 * max(1, len(inst.secret or ())) + 20
    cur = inst.ws
    cur_len = _tuple_length(cur, length)
    path: list[Candidate] = []
    trace = []
    steps = 0
    while cur != inst.us and steps < max_steps:
        best = None
        for c in cands:
            first = _peel(cur, c)
            score = _best_score(first, cands, depth - 1, length)
            if best is None or score < best[0]:
                best = (score, c, first)
        if best is None or best[0] >= cur_len:
            break
        _, c, cur = best
        cur_len = _tuple_length(cur, length)
        path.append(c)
        steps += 1
        trace.append(f"{steps} {c.label} {cur_len}")
    return _finish(inst, path, steps, trace, t0)


def _best_score(ws, cands, depth: int, length: LengthFn) -> int:
    score = _tuple_length(ws, length)
    if depth <= 0:
        return score
    for c in cands:
        score = min(score, _best_score(_peel(ws, c), cands, depth - 1, length))
    return score


def lba_memory(
    inst: AttackInstance,
    length_fn="redgar",
    memory: int = 4,
    dedup: bool = False,
    candidates: Sequence[Candidate] | None = None,
    patience: int = 1,
    max_steps: int | None = None,
) -> AttackReport:
    """Beam search keeping the ``memory`` shortest conjugated tuples.

    The search stops once the best length in the beam has failed to improve
    for ``patience`` consecutive rounds.
    """
    if memory < 1:
        raise ValueError("memory must be >= 1")
    t0 = time.perf_counter()
    length = _resolve_length(length_fn)
    cands = list(candidates) if candidates is not None else _default_candidates(inst)
    max_steps = max_steps or 20 * max(1, len(inst.secret or ())) + 20
    beam = [(_tuple_length(inst.ws, length), inst.ws, ())]
    best_len = beam[0][0]
    seen = {inst.ws} if dedup else None
    trace = []
    stale = 0
    steps = 0
    for _ in range(max_steps):
        for _, ws, path in beam:
            if ws == inst.us:
                return _finish(inst, path, steps, trace, t0)
        children = []
        order = 0
        for _, ws, path in beam:
            for c in cands:
                nxt = _peel(ws, c)
                if seen is not None:
                    if nxt in seen:
                        continue
                    seen.add(nxt)
                children.append((_tuple_length(nxt, length), order, nxt, path + (c,)))
                order += 1
        if not children:
            break
        children.sort(key=lambda t: (t[0], t[1]))
        top = children[0]
        if top[0] >= best_len:
            stale += 1
            if stale >= patience:
                break
        else:
            stale = 0
            best_len = top[0]
        beam = [(L, ws, path) for L, _, ws, path in children[:memory]]
        steps += 1
        trace.append(f"{steps} {top[3][-1].label} {top[0]}")
    else:
        for _, ws, path in beam:
            if ws == inst.us:
                return _finish(inst, path, steps, trace, t0)
    return _finish(inst, beam[0][2], steps, trace, t0)


def peak_extend(generators: Sequence[BraidWord]) -> list[BraidWord]:
    """Add pairwise conjugates ``g_j^-1 g_i g_j`` and commutators ``[g_i, g_j]``.

    Entries are deduplicated by normal form and the identity is dropped.
    """
    out: list[BraidWord] = []
    seen = set()

    def add(w: BraidWord) -> None:
        key = left_normal_form(w)
        if key.is_identity() or key in seen:
            return
        seen.add(key)
        out.append(free_reduce(w))

    for g in generators:
        add(g)
    for gi, gj in itertools.permutations(generators, 2):
        add(gj.inverse() * gi * gj)
    for gi, gj in itertools.permutations(generators, 2):
        add(gi.inverse() * gj.inverse() * gi * gj)
    return out


def peak_candidates(inst: AttackInstance) -> list[Candidate]:
    idx = allowed_indices(inst.n, inst.constraint)
    words = peak_extend([BraidWord(inst.n, (i,)) for i in idx])
    return candidates_from_words(words, [" ".join(map(str, w.letters)) for w in words])


def hs_attack(inst: AttackInstance, cap: int = 8) -> AttackReport:
    """Send both sides of the first pair to super summit sets and look for one simple hop."""
    t0 = time.perf_counter()
    n = inst.n
    if n > cap:
        raise ValueError(f"simple-element search needs n <= {cap}")
    a = send_to_sss(inst.us[0])
    b = send_to_sss(inst.ws[0])
    target = b.element
    perm_t = _perm_of_nf(target)
    perm_u = _perm_of_nf(a.element)
    steps = a.steps + b.steps
    for q in itertools.permutations(range(n)):
        # cheap filter: q^-1 perm_u q must equal perm_t
        if kernels.compose(kernels.compose(kernels.inverse(q), perm_u), q) != perm_t:
            continue
        steps += 1
        if conjugate_by_simple(a.element, q) != target:
            continue
        v_nf = a.conjugator * simple_nf(q) * b.conjugator.inverse()
        v = v_nf.to_word()
        if inst.verify(v):
            return AttackReport(True, steps, (f"hop {' '.join(str(x + 1) for x in q)}",), v, time.perf_counter() - t0, True)
    return AttackReport(False, steps, (), None, time.perf_counter() - t0, False)


def _perm_of_nf(x: GarsideNormalForm):
    p = identity_perm(x.n)
    if x.delta_power % 2:
        p = tuple(range(x.n - 1, -1, -1))
    for f in x.factors:
        p = kernels.compose(p, f)
    return p


def random_guess_rate(inst_factory, seeds: Iterable[int], rng_for) -> float:
    """Success rate of guessing a random word of the secret's length."""
    seeds = list(seeds)
    hits = 0
    for seed in seeds:
        inst = inst_factory(seed)
        rng = rng_for(seed, "guess")
        guess = draw_key(inst.n, KeyDistribution("uniform", len(inst.secret)), rng, inst.constraint)
        hits += inst.verify(guess)
    return hits / len(seeds) if seeds else 0.0


# ---------------------------------------------------------------------------
# Benchmark harness


@dataclass(frozen=True)
class AttackConfig:
    attack: str = "lba"
    length: str = "redgar"
    memory: int = 1
    depth: int = 1
    dedup: bool = False
    peaks: bool = False

    def run(self, inst: AttackInstance) -> AttackReport:
        cands = peak_candidates(inst) if self.peaks else None
        if self.attack == "lba":
            return lba_basic(inst, self.length, cands)
        if self.attack == "lba-look":
            return lba_lookahead(inst, self.length, self.depth, cands)
        if self.attack == "lba-mem":
            return lba_memory(inst, self.length, self.memory, self.dedup, cands)
        if self.attack == "hs":
            return hs_attack(inst)
        raise ValueError(f"unknown attack {self.attack!r}")


@dataclass(frozen=True)
class InstanceParams:
    scheme: str = "csp"  # csp | ko
    n: int = 8
    m: int = 4
    secret_length: int = 10
    u_length: int = 10
    constraint: str = "all"
    dist: KeyDistribution = field(default_factory=KeyDistribution)


def seeded_rng(master: int | str, stream: str, seed: int) -> random.Random:
    return random.Random(f"{master}/{stream}/{seed}")


def build_instance(params: InstanceParams, master, seed: int) -> AttackInstance:
    rng = seeded_rng(master, "keygen", seed)
    if params.scheme == "ko":
        return ko_instance(rng, params.n, 2 * params.u_length, params.secret_length, params.dist)
    return make_instance(rng, params.n, params.m, params.secret_length, params.u_length, params.constraint, params.dist)


CSV_FIELDS = ("seed", "attack", "length", "memory", "depth", "dedup", "peaks", "success", "steps", "seconds")


def bench_rows(params: InstanceParams, configs: Sequence[AttackConfig], seeds: Iterable[int], master=0, timings: bool = False, jobs: int = 1):
    """One row per (seed, config); deterministic unless ``timings`` is set."""
    tasks = [(seed, cfg) for seed in seeds for cfg in configs]

    def one(task):
        seed, cfg = task
        inst = build_instance(params, master, seed)
        rep = cfg.run(inst)
        if rep.success and not inst.verify(rep.conjugator):
            raise AssertionError("unverified success")
        return {
            "seed": seed,
            "attack": cfg.attack,
            "length": cfg.length,
            "memory": cfg.memory,
            "depth": cfg.depth,
            "dedup": int(cfg.dedup),
            "peaks": int(cfg.peaks),
            "success": int(rep.success),
            "steps": rep.steps,
            "seconds": f"{rep.seconds:.4f}" if timings else "",
        }

    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(jobs) as ex:
            return list(ex.map(_run_task, [(params, master, s, c, timings) for s, c in tasks]))
    return [one(t) for t in tasks]


def _run_task(args):
    params, master, seed, cfg, timings = args
    return bench_rows(params, [cfg], [seed], master, timings)[0]


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def success_rates(rows, key=lambda r: (r["attack"], r["memory"], r["depth"], r["dedup"])) -> dict:
    acc: dict = {}
    for r in rows:
        k = key(r)
        tot, hit = acc.get(k, (0, 0))
        acc[k] = (tot + 1, hit + int(r["success"]))
    return {k: hit / tot for k, (tot, hit) in acc.items()}
