"""Cycling, decycling and cyclic sliding; summit sets and conjugacy search.

Conjugation is written ``y = c^-1 x c`` throughout, and conjugators are
accumulated on the right: if ``y = a^-1 x a`` and ``z = b^-1 y b`` then
``z = (ab)^-1 x (ab)``.

Minimal conjugators come from one of two routes.  ``brute`` filters all
``n!`` simple elements.  ``fast`` computes, for each generator ``s_i``, the
smallest simple ``c >= s_i`` whose conjugate stays in the set, climbing the
lattice of super-summit-preserving simples in order of length.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from itertools import permutations
from typing import Callable, Iterable

from . import kernels
from .braid import (
    BraidWord,
    Perm,
    PermutationBraid,
    identity_perm,
    inversions,
    is_prefix_perm,
    join_perm,
    right_complement_perm,
    top_perm,
)
from .errors import BudgetExceeded
from .normal_form import GarsideNormalForm, from_factors, identity_nf, left_normal_form, simple_nf

KINDS = ("sss", "uss", "rsss", "sc")
DEFAULT_BRUTE_CAP = 8
DEFAULT_VERTEX_BUDGET = 100_000
DEFAULT_ORBIT_BUDGET = 1_000_000


def _nf(x) -> GarsideNormalForm:
    return x if isinstance(x, GarsideNormalForm) else left_normal_form(x)


def _tau_pow(p: Perm, k: int) -> Perm:
    return kernels.tau(p) if k % 2 else p


# ---------------------------------------------------------------------------
# Basic operators


def initial_factor(x: GarsideNormalForm) -> Perm:
    if not x.factors:
        return identity_perm(x.n)
    return _tau_pow(x.factors[0], x.delta_power)


def final_factor(x: GarsideNormalForm) -> Perm:
    if not x.factors:
        return top_perm(x.n)
    return x.factors[-1]


def conjugate_by_simple(x: GarsideNormalForm, s: Perm) -> GarsideNormalForm:
    """``s^-1 x s`` for a simple ``s``."""
    # s^-1 = Delta^-1 * tau(right_complement(s))
    p = x.delta_power
    head = _tau_pow(right_complement_perm(s), p + 1)
    return from_factors(x.n, p - 1, [head, *x.factors, s])


def conjugate(x: GarsideNormalForm, v: GarsideNormalForm) -> GarsideNormalForm:
    return v.inverse() * x * v


def cycle(x: GarsideNormalForm) -> GarsideNormalForm:
    if not x.factors:
        return x
    p = x.delta_power
    return from_factors(x.n, p, [*x.factors[1:], _tau_pow(x.factors[0], p)])


def decycle(x: GarsideNormalForm) -> GarsideNormalForm:
    if not x.factors:
        return x
    p = x.delta_power
    return from_factors(x.n, p, [_tau_pow(x.factors[-1], p), *x.factors[:-1]])


def preferred_prefix(x: GarsideNormalForm) -> Perm:
    return kernels.meet(initial_factor(x.inverse()), initial_factor(x))


def cyclic_sliding(x: GarsideNormalForm) -> GarsideNormalForm:
    return conjugate_by_simple(x, preferred_prefix(x))


def is_rigid(x: GarsideNormalForm) -> bool:
    """Whether the pair (final factor, initial factor) is left-weighted.

    Powers of Delta count as rigid.
    """
    if not x.factors:
        return True
    return kernels.meet(right_complement_perm(final_factor(x)), initial_factor(x)) == identity_perm(x.n)


# ---------------------------------------------------------------------------
# Witnesses and sending to summit sets


@dataclass(frozen=True)
class ConjugacyWitness:
    """``element == conjugator^-1 * seed * conjugator``."""

    element: GarsideNormalForm
    conjugator: GarsideNormalForm
    steps: int = 0

    @property
    def conjugator_word(self) -> BraidWord:
        return self.conjugator.to_word()

    def verify(self, seed) -> bool:
        return conjugate(_nf(seed), self.conjugator) == self.element


def _default_cap(x: GarsideNormalForm) -> int:
    d = x.n * (x.n - 1) // 2
    return (len(x.factors) + 2) * (d + 2) * 2 + 16


def send_to_sss(x, cap: int | None = None) -> ConjugacyWitness:
    """Cycle until inf is maximal, then decycle until sup is minimal."""
    cur = _nf(x)
    conj = identity_nf(cur.n)
    cap = _default_cap(cur) if cap is None else cap
    patience = cur.n * (cur.n - 1) // 2
    steps = 0
    for op, better in ((_cycle_step, lambda a, b: a.inf > b.inf), (_decycle_step, lambda a, b: a.sup < b.sup)):
        best = cur
        seen = {cur}
        since = 0
        while cur.factors:
            steps += 1
            if steps > cap:
                raise BudgetExceeded(f"send_to_sss exceeded {cap} iterations")
            cur, c = op(cur)
            conj = conj * c
            if better(cur, best):
                best = cur
                seen = {cur}
                since = 0
                continue
            since += 1
            if cur in seen or since >= patience:
                break
            seen.add(cur)
    return ConjugacyWitness(cur, conj, steps)


def _cycle_step(x: GarsideNormalForm) -> tuple[GarsideNormalForm, GarsideNormalForm]:
    return cycle(x), simple_nf(initial_factor(x))


def _decycle_step(x: GarsideNormalForm) -> tuple[GarsideNormalForm, GarsideNormalForm]:
    return decycle(x), simple_nf(final_factor(x)).inverse()


def _slide_step(x: GarsideNormalForm) -> tuple[GarsideNormalForm, GarsideNormalForm]:
    s = preferred_prefix(x)
    return conjugate_by_simple(x, s), simple_nf(s)


def _run_to_period(w: ConjugacyWitness, step, cap: int) -> ConjugacyWitness:
    """Iterate ``step`` until the trajectory repeats; return the first repeated element."""
    cur = w.element
    trajectory = {cur: 0}
    conjs = [w.conjugator]
    for i in range(1, cap + 1):
        cur, c = step(cur)
        if cur in trajectory:
            j = trajectory[cur]
            return ConjugacyWitness(cur, conjs[j], w.steps + i)
        trajectory[cur] = i
        conjs.append(conjs[-1] * c)
    raise BudgetExceeded(f"no period found within {cap} iterations")


def send_to_uss(x, cap: int | None = None) -> ConjugacyWitness:
    w = send_to_sss(x, cap)
    return _run_to_period(w, _cycle_step, DEFAULT_ORBIT_BUDGET if cap is None else cap)


def send_to_sc(x, cap: int | None = None) -> ConjugacyWitness:
    w = send_to_sss(x, cap)
    return _run_to_period(w, _slide_step, DEFAULT_ORBIT_BUDGET if cap is None else cap)


def send_to_rsss(x, cap: int | None = None) -> ConjugacyWitness:
    """An element periodic under both cycling and decycling.

    Sliding circuits are contained in this set, so the sliding period is used.
    """
    return send_to_sc(x, cap)


SEND = {"sss": send_to_sss, "uss": send_to_uss, "rsss": send_to_rsss, "sc": send_to_sc}


# ---------------------------------------------------------------------------
# Membership


def _is_periodic(y: GarsideNormalForm, f: Callable, budget: int) -> bool:
    seen = {y}
    cur = y
    for _ in range(budget):
        cur = f(cur)
        if cur == y:
            return True
        if cur in seen:
            return False
        seen.add(cur)
    raise BudgetExceeded(f"orbit exceeded {budget} steps")


class Membership:
    """Cached membership probe for one summit set of a fixed conjugacy class."""

    def __init__(self, kind: str, inf: int, sup: int, budget: int = DEFAULT_ORBIT_BUDGET):
        if kind not in KINDS:
            raise ValueError(f"unknown kind {kind!r}")
        self.kind = kind
        self.inf = inf
        self.sup = sup
        self.budget = budget
        self._cache: dict[GarsideNormalForm, bool] = {}

    def __call__(self, y: GarsideNormalForm) -> bool:
        hit = self._cache.get(y)
        if hit is not None:
            return hit
        ok = y.inf == self.inf and y.sup == self.sup
        if ok and self.kind in ("uss", "rsss"):
            ok = _is_periodic(y, cycle, self.budget)
        if ok and self.kind == "rsss":
            ok = _is_periodic(y, decycle, self.budget)
        if ok and self.kind == "sc":
            ok = _is_periodic(y, cyclic_sliding, self.budget)
        self._cache[y] = ok
        return ok


# ---------------------------------------------------------------------------
# Minimal conjugators


def _generator(n: int, i: int) -> Perm:
    p = list(range(n))
    p[i - 1], p[i] = i, i - 1
    return tuple(p)


def _inf_remainder(y: GarsideNormalForm, s: Perm) -> Perm:
    """Smallest ``c`` with: ``tau^p(s) <= y_1...y_k * z`` iff ``c <= z`` (z positive)."""
    c = _tau_pow(s, y.delta_power)
    for a in y.factors:
        j = join_perm(c, a)
        c = kernels.compose(kernels.inverse(a), j)
    return c


def sss_closure(y: GarsideNormalForm, yinv: GarsideNormalForm, s: Perm) -> Perm:
    """Smallest simple ``c >= s`` whose conjugate keeps both inf and sup of ``y``."""
    while True:
        before = s
        for z in (y, yinv):
            s = join_perm(s, _inf_remainder(z, s))
        if s == before:
            return s


def _minimal_elements(cands: Iterable[Perm]) -> list[Perm]:
    cs = sorted(set(cands), key=lambda p: (inversions(p), p))
    out: list[Perm] = []
    for c in cs:
        if not any(is_prefix_perm(m, c) for m in out):
            out.append(c)
    return out


def minimal_conjugators_brute(y: GarsideNormalForm, member: Membership, cap: int = DEFAULT_BRUTE_CAP) -> list[Perm]:
    n = y.n
    if n > cap:
        raise BudgetExceeded(f"brute-force minimal conjugators need n <= {cap} ({math.factorial(n)} simples at n={n})")
    ident = identity_perm(n)
    good = [p for p in permutations(range(n)) if p != ident and member(conjugate_by_simple(y, p))]
    return _minimal_elements(good)


def minimal_conjugators_fast(y: GarsideNormalForm, member: Membership) -> list[Perm]:
    n = y.n
    yinv = y.inverse()
    found = []
    for i in range(1, n):
        found.append(_least_good_above(y, yinv, _generator(n, i), member))
    return _minimal_elements(found)


def _least_good_above(y: GarsideNormalForm, yinv: GarsideNormalForm, s: Perm, member: Membership) -> Perm:
    start = sss_closure(y, yinv, s)
    if member.kind == "sss":
        return start
    heap = [(inversions(start), start)]
    seen = {start}
    while heap:
        _, c = heapq.heappop(heap)
        if member(conjugate_by_simple(y, c)):
            return c
        rest = right_complement_perm(c)
        for j in range(len(rest) - 1):
            if rest[j] > rest[j + 1]:
                nxt = sss_closure(y, yinv, kernels.compose(c, _generator(len(c), j + 1)))
                if nxt not in seen:
                    seen.add(nxt)
                    heapq.heappush(heap, (inversions(nxt), nxt))
    raise AssertionError("Delta always conjugates inside a summit set")


def minimal_conjugators(
    y,
    kind: str = "sss",
    method: str = "fast",
    member: Membership | None = None,
    cap: int = DEFAULT_BRUTE_CAP,
) -> list[PermutationBraid]:
    """All prefix-minimal nontrivial simples ``s`` with ``s^-1 y s`` in the set."""
    y = _nf(y)
    if member is None:
        member = Membership(kind, y.inf, y.sup)
    if not member(y):
        raise ValueError(f"element is not in its {kind.upper()}")
    if method == "brute" or kind == "rsss":
        perms = minimal_conjugators_brute(y, member, cap)
    elif method == "fast":
        perms = minimal_conjugators_fast(y, member)
    else:
        raise ValueError(f"unknown method {method!r}")
    return [PermutationBraid(p) for p in perms]


# ---------------------------------------------------------------------------
# Summit graphs


@dataclass
class SummitGraph:
    kind: str
    seed: GarsideNormalForm
    vertices: dict[GarsideNormalForm, ConjugacyWitness] = field(default_factory=dict)
    edges: list[tuple[GarsideNormalForm, PermutationBraid, GarsideNormalForm]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, y) -> bool:
        return _nf(y) in self.vertices

    def out_degree(self, y: GarsideNormalForm) -> int:
        return sum(1 for a, _, _ in self.edges if a == y)

    def edge_lines(self) -> list[str]:
        return [f"{a.serial}\t{s.one_line()}\t{b.serial}" for a, s, b in self.edges]


def compute_summit_graph(
    x,
    kind: str = "uss",
    method: str = "fast",
    vertex_budget: int = DEFAULT_VERTEX_BUDGET,
    cap: int = DEFAULT_BRUTE_CAP,
) -> SummitGraph:
    kind = kind.lower()
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    seed = _nf(x)
    if kind == "rsss":
        return _rsss_graph(seed, method, vertex_budget, cap)
    start = SEND[kind](seed)
    member = Membership(kind, start.element.inf, start.element.sup)
    graph = SummitGraph(kind, seed)
    _explore(graph, [start], member, method, vertex_budget, cap)
    return graph


def _explore(graph: SummitGraph, starts, member, method, vertex_budget, cap, allowed=None) -> None:
    queue = []
    for w in starts:
        if w.element not in graph.vertices:
            graph.vertices[w.element] = w
            queue.append(w.element)
    head = 0
    while head < len(queue):
        y = queue[head]
        head += 1
        wy = graph.vertices[y]
        if allowed is None:
            mins = minimal_conjugators(y, graph.kind, method, member, cap)
        else:
            good = [p for p in permutations(range(y.n)) if p != identity_perm(y.n) and conjugate_by_simple(y, p) in allowed]
            mins = [PermutationBraid(p) for p in _minimal_elements(good)]
        for s in mins:
            z = conjugate_by_simple(y, s.perm)
            graph.edges.append((y, s, z))
            if z not in graph.vertices:
                if len(graph.vertices) >= vertex_budget:
                    raise BudgetExceeded(f"summit graph exceeded {vertex_budget} vertices", partial=graph)
                graph.vertices[z] = ConjugacyWitness(z, wy.conjugator * simple_nf(s.perm), wy.steps + 1)
                queue.append(z)


def _rsss_graph(seed, method, vertex_budget, cap) -> SummitGraph:
    """Elements of the USS that are also periodic under decycling."""
    uss = compute_summit_graph(seed, "uss", method, vertex_budget, cap)
    any_y = next(iter(uss.vertices))
    member = Membership("rsss", any_y.inf, any_y.sup)
    keep = {y: w for y, w in uss.vertices.items() if member(y)}
    graph = SummitGraph("rsss", seed)
    if seed.n > cap:
        graph.vertices = keep
        return graph
    _explore(graph, list(keep.values()), member, method, vertex_budget, cap, allowed=keep)
    return graph


# ---------------------------------------------------------------------------
# Decision and search


def exponent_sum(w: BraidWord) -> int:
    return sum(1 if x > 0 else -1 for x in w.letters)


def _nf_exponent_sum(x: GarsideNormalForm) -> int:
    return x.delta_power * x.n * (x.n - 1) // 2 + sum(inversions(p) for p in x.factors)


def conjugacy_search(x, y, kind: str = "uss", method: str = "fast", vertex_budget: int = DEFAULT_VERTEX_BUDGET):
    """A conjugator ``v`` (as a normal form) with ``v^-1 x v == y``, or None."""
    xn, yn = _nf(x), _nf(y)
    if xn.n != yn.n:
        raise ValueError("strand counts differ")
    if _nf_exponent_sum(xn) != _nf_exponent_sum(yn):
        return None
    if sorted(_cycle_type(xn)) != sorted(_cycle_type(yn)):
        return None
    wy = SEND["sc" if kind == "rsss" else kind](yn)
    wx = SEND["sc" if kind == "rsss" else kind](xn)
    if (wx.element.inf, wx.element.sup) != (wy.element.inf, wy.element.sup):
        return None
    graph = compute_summit_graph(wx.element, kind, method, vertex_budget)
    hit = graph.vertices.get(wy.element)
    if hit is None:
        return None
    # hit.element = c^-1 wx.element c, with wx.element = a^-1 x a and wy.element = b^-1 y b
    return wx.conjugator * hit.conjugator * wy.conjugator.inverse()


def conjugacy_decide(x, y, kind: str = "uss", method: str = "fast", vertex_budget: int = DEFAULT_VERTEX_BUDGET) -> bool:
    return conjugacy_search(x, y, kind, method, vertex_budget) is not None


def _cycle_type(x: GarsideNormalForm) -> list[int]:
    p = identity_perm(x.n)
    if x.delta_power % 2:
        p = top_perm(x.n)
    for f in x.factors:
        p = kernels.compose(p, f)
    seen = [False] * x.n
    out = []
    for i in range(x.n):
        if not seen[i]:
            k = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = p[j]
                k += 1
            out.append(k)
    return out


__all__ = [
    "KINDS",
    "ConjugacyWitness",
    "Membership",
    "SummitGraph",
    "compute_summit_graph",
    "conjugacy_decide",
    "conjugacy_search",
    "conjugate",
    "conjugate_by_simple",
    "cycle",
    "cyclic_sliding",
    "decycle",
    "final_factor",
    "initial_factor",
    "is_rigid",
    "minimal_conjugators",
    "preferred_prefix",
    "send_to_rsss",
    "send_to_sc",
    "send_to_sss",
    "send_to_uss",
    "sss_closure",
]
