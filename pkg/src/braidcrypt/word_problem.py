"""Equality of braid words.

Three routes: comparing normal forms, Dehornoy handle reduction, and a
one-sided fingerprint from the reduced Burau matrix evaluated mod a prime.
The Burau and colored Burau representations are also exposed on their own.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .braid import BraidWord, Perm, perm_of
from .errors import BudgetExceeded
from .normal_form import left_normal_form

DEFAULT_HANDLE_BUDGET = 10**7
FINGERPRINT_PRIME = 4611686018427387847  # largest prime below 2**62


# ---------------------------------------------------------------------------
# Handle reduction


@dataclass
class HandleStats:
    reductions: int = 0


def handle_reduce(w: BraidWord, budget: int = DEFAULT_HANDLE_BUDGET, stats: HandleStats | None = None) -> BraidWord:
    """Reduce the leftmost handle repeatedly until none is left.

    A handle ``s_i^e ... s_i^-e`` has no letter of index ``<= i`` inside.
    Scanning right, the first letter that closes one picks a handle whose
    ``s_(i+1)`` letters all share one sign, so it can be reduced directly.
    """
    word = list(w.letters)
    steps = 0
    j = 0
    while j < len(word):
        x = word[j]
        i = abs(x)
        k = j - 1
        while k >= 0 and abs(word[k]) > i:
            k -= 1
        if k < 0 or word[k] != -x:
            j += 1
            continue
        steps += 1
        if steps > budget:
            raise BudgetExceeded(f"handle reduction exceeded {budget} reductions")
        e = 1 if word[k] > 0 else -1
        inner: list[int] = []
        for y in word[k + 1 : j]:
            if abs(y) == i + 1:
                d = 1 if y > 0 else -1
                inner.extend((-e * (i + 1), d * i, e * (i + 1)))
            else:
                inner.append(y)
        word[k : j + 1] = inner
        j = k
    if stats is not None:
        stats.reductions += steps
    return BraidWord(w.n, tuple(word))


# ---------------------------------------------------------------------------
# Laurent polynomials and matrices


class LaurentPoly:
    """Finitely supported map exponent -> nonzero integer coefficient."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[int, int] | None = None):
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, c: int) -> LaurentPoly:
        return cls({0: c})

    @classmethod
    def mono(cls, c: int, e: int) -> LaurentPoly:
        return cls({e: c})

    def __add__(self, other: LaurentPoly) -> LaurentPoly:
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: LaurentPoly) -> LaurentPoly:
        return self + (-other)

    def __mul__(self, other: LaurentPoly) -> LaurentPoly:
        out: dict[int, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def evaluate(self, t: int, p: int) -> int:
        tinv = pow(t, -1, p)
        return sum(c * pow(t if e >= 0 else tinv, abs(e), p) for e, c in self.terms.items()) % p

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*t^{e}" for e, c in sorted(self.terms.items()))


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)


@dataclass(frozen=True)
class LaurentMatrix:
    rows: tuple[tuple[LaurentPoly, ...], ...]

    @property
    def size(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, m: int) -> LaurentMatrix:
        return cls(tuple(tuple(ONE if i == j else ZERO for j in range(m)) for i in range(m)))

    def __mul__(self, other: LaurentMatrix) -> LaurentMatrix:
        m = self.size
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = ZERO
                for a, b in zip(r, c):
                    if a.terms and b.terms:
                        acc = acc + a * b
                row.append(acc)
            out.append(tuple(row))
        return LaurentMatrix(tuple(out)) if m else self

    def evaluate(self, t: int, p: int) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(x.evaluate(t, p) for x in r) for r in self.rows)

    def determinant(self) -> LaurentPoly:
        return _det([list(r) for r in self.rows])


def _det(rows: list[list[LaurentPoly]]) -> LaurentPoly:
    # Laplace expansion; only used on small matrices in tests
    if not rows:
        return ONE
    if len(rows) == 1:
        return rows[0][0]
    total = ZERO
    for j, a in enumerate(rows[0]):
        if a.is_zero():
            continue
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        term = a * _det(minor)
        total = total + (term if j % 2 == 0 else -term)
    return total


def _apply_generator_cols(cols: list, i: int, sign: int, t, tinv, add, mul, neg) -> None:
    """Right-multiply a matrix (given by columns) by ``C_i(t)**sign``, 0-based row ``i``."""
    m = len(cols)
    ci = cols[i]
    if sign > 0:
        if i > 0:
            cols[i - 1] = [add(a, mul(t, b)) for a, b in zip(cols[i - 1], ci)]
        if i + 1 < m:
            cols[i + 1] = [add(a, b) for a, b in zip(cols[i + 1], ci)]
        cols[i] = [neg(mul(t, b)) for b in ci]
    else:
        if i > 0:
            cols[i - 1] = [add(a, b) for a, b in zip(cols[i - 1], ci)]
        if i + 1 < m:
            cols[i + 1] = [add(a, mul(tinv, b)) for a, b in zip(cols[i + 1], ci)]
        cols[i] = [neg(mul(tinv, b)) for b in ci]


def reduced_burau(w: BraidWord) -> LaurentMatrix:
    """Exact reduced Burau image, a square matrix of size ``n - 1``."""
    m = w.n - 1
    cols = [[ONE if r == c else ZERO for r in range(m)] for c in range(m)]
    t = LaurentPoly.mono(1, 1)
    tinv = LaurentPoly.mono(1, -1)
    for x in w.letters:
        _apply_generator_cols(cols, abs(x) - 1, x, t, tinv, LaurentPoly.__add__, LaurentPoly.__mul__, LaurentPoly.__neg__)
    return LaurentMatrix(tuple(tuple(cols[c][r] for c in range(m)) for r in range(m)))


def burau_mod(w: BraidWord, t: int, p: int) -> tuple[tuple[int, ...], ...]:
    """Reduced Burau image evaluated at ``t`` modulo ``p``."""
    m = w.n - 1
    cols = [[1 if r == c else 0 for r in range(m)] for c in range(m)]
    tinv = pow(t, -1, p)

    def add(a, b):
        return (a + b) % p

    def mul(a, b):
        return a * b % p

    def neg(a):
        return -a % p

    for x in w.letters:
        _apply_generator_cols(cols, abs(x) - 1, x, t, tinv, add, mul, neg)
    return tuple(tuple(cols[c][r] for c in range(m)) for r in range(m))


def colored_burau_eval(w: BraidWord, taus: Sequence[int], p: int) -> tuple[Perm, tuple[tuple[int, ...], ...]]:
    """``(pi_w, M_w(taus) mod p)``.

    Label ``taus[j]`` rides the strand ending at position ``j``.  A positive
    crossing ``s_i`` takes the label of the strand leaving it at position
    ``i + 1``, a negative one the strand leaving at position ``i``.
    """
    n = w.n
    if len(taus) != n:
        raise ValueError(f"need {n} evaluation points, got {len(taus)}")
    taus = [t % p for t in taus]
    if any(t == 0 for t in taus):
        raise ValueError("evaluation points must be invertible mod p")
    m = n - 1
    # rows, built right to left by left multiplication
    rows = [[1 if r == c else 0 for c in range(m)] for r in range(m)]
    label = list(range(n))
    for x in reversed(w.letters):
        i = abs(x) - 1
        t = taus[label[i + 1] if x > 0 else label[i]]
        tinv = pow(t, -1, p)
        ri = rows[i]
        prev = rows[i - 1] if i > 0 else None
        nxt = rows[i + 1] if i + 1 < m else None
        if x > 0:
            new = [(-t * a) % p for a in ri]
            if prev is not None:
                new = [(a + t * b) % p for a, b in zip(new, prev)]
            if nxt is not None:
                new = [(a + b) % p for a, b in zip(new, nxt)]
        else:
            new = [(-tinv * a) % p for a in ri]
            if prev is not None:
                new = [(a + b) % p for a, b in zip(new, prev)]
            if nxt is not None:
                new = [(a + tinv * b) % p for a, b in zip(new, nxt)]
        rows[i] = new
        label[i], label[i + 1] = label[i + 1], label[i]
    return perm_of(w), tuple(tuple(r) for r in rows)


def mat_mul_mod(a, b, p: int):
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(r, c)) % p for c in cols) for r in a)


# ---------------------------------------------------------------------------
# Equality


@dataclass(frozen=True)
class Verdict:
    equal: bool
    exact: bool
    detail: str = ""

    def __bool__(self) -> bool:
        return self.equal


METHODS = ("normal_form", "handle", "fingerprint")


def equal(
    w: BraidWord,
    w2: BraidWord,
    method: str = "normal_form",
    *,
    budget: int = DEFAULT_HANDLE_BUDGET,
    points: int = 2,
    rng: random.Random | None = None,
) -> Verdict:
    if w.n != w2.n:
        raise ValueError(f"strand counts differ: B{w.n} vs B{w2.n}")
    if method in ("normal_form", "nf"):
        return Verdict(left_normal_form(w) == left_normal_form(w2), True)
    if method == "handle":
        red = handle_reduce(w * w2.inverse(), budget=budget)
        return Verdict(len(red) == 0, True)
    if method in ("fingerprint", "burau"):
        rng = rng or random.Random("fingerprint")
        p = FINGERPRINT_PRIME
        for _ in range(points):
            t = rng.randrange(2, p - 1)
            if burau_mod(w, t, p) != burau_mod(w2, t, p):
                return Verdict(False, True, "Burau images differ")
        return Verdict(True, False, f"probably equal (Burau mod {p}, {points} points)")
    raise ValueError(f"unknown method {method!r}")
