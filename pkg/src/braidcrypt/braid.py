"""Braid words, band words and permutation braids.

Conventions
-----------
A braid word on ``n`` strands is a tuple of nonzero integers; ``k > 0`` is
``sigma_k`` and ``k < 0`` is ``sigma_|k|^-1``.  Words are read left to right.

A permutation is a tuple ``p`` of 0-based images: the strand that starts at
position ``i`` ends at position ``p[i]``.  Composition is written in reading
order, so ``perm_of(u*v) == compose(perm_of(u), perm_of(v))`` where
``compose(p, q)[i] == q[p[i]]``.  The text formats use 1-based images.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import permutations as _all_perms
from typing import Iterable, Iterator, Sequence

from . import kernels
from .kernels import compose, inverse, meet as _meet

Perm = tuple[int, ...]


class BraidParseError(ValueError):
    """Malformed braid text or an out-of-range generator index."""


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def top_perm(n: int) -> Perm:
    """Permutation of the half twist Delta_n (order reversing)."""
    return tuple(range(n - 1, -1, -1))


def inversions(p: Sequence[int]) -> int:
    return kernels.inversions(p)


@dataclass(frozen=True)
class BraidWord:
    """A word in the signed Artin generators of ``B_n``."""

    n: int
    letters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"strand count must be >= 2, got {self.n}")
        letters = tuple(int(x) for x in self.letters)
        for x in letters:
            if x == 0 or abs(x) >= self.n:
                raise ValueError(f"letter {x} out of range for B{self.n}")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def infinite(cls, letters: Iterable[int]) -> BraidWord:
        """A word of ``B_inf``; the strand count is (max index) + 2."""
        letters = tuple(letters)
        top = max((abs(x) for x in letters), default=0)
        return cls(top + 2, letters)

    @classmethod
    def parse(cls, text: str) -> BraidWord:
        return parse_word(text)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __mul__(self, other: BraidWord) -> BraidWord:
        return BraidWord(max(self.n, other.n), self.letters + other.letters)

    def __pow__(self, k: int) -> BraidWord:
        if k < 0:
            return self.inverse() ** (-k)
        return BraidWord(self.n, self.letters * k)

    def inverse(self) -> BraidWord:
        return BraidWord(self.n, tuple(-x for x in reversed(self.letters)))

    def widen(self, n: int) -> BraidWord:
        """Same word viewed in ``B_n`` for ``n >= self.n``."""
        if n < self.n:
            raise ValueError(f"cannot narrow B{self.n} to B{n}")
        return BraidWord(n, self.letters)

    def conjugate(self, v: BraidWord) -> BraidWord:
        """The word ``v^-1 * self * v``."""
        return v.inverse() * self * v

    def __str__(self) -> str:
        body = " ".join(str(x) for x in self.letters)
        return f"B{self.n}:" + (f" {body}" if body else "")


@dataclass(frozen=True)
class BandWord:
    """A word in the Birman-Ko-Lee band generators.

    Each letter is ``(t, s, e)`` with ``1 <= s < t <= n`` and ``e = +-1``.
    """

    n: int
    letters: tuple[tuple[int, int, int], ...] = ()

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"strand count must be >= 2, got {self.n}")
        clean = []
        for t, s, e in self.letters:
            if not (1 <= s < t <= self.n) or e not in (1, -1):
                raise ValueError(f"band letter {(t, s, e)} invalid for B{self.n}")
            clean.append((int(t), int(s), int(e)))
        object.__setattr__(self, "letters", tuple(clean))

    @classmethod
    def parse(cls, text: str) -> BandWord:
        return parse_band_word(text)

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: BandWord) -> BandWord:
        return BandWord(max(self.n, other.n), self.letters + other.letters)

    def inverse(self) -> BandWord:
        return BandWord(self.n, tuple((t, s, -e) for t, s, e in reversed(self.letters)))

    def __str__(self) -> str:
        toks = [("" if e > 0 else "-") + f"({t},{s})" for t, s, e in self.letters]
        return f"B{self.n} band:" + ("".join(" " + x for x in toks))


def delta_band(n: int) -> BandWord:
    """``delta_n = a_{n,n-1} ... a_{2,1}``."""
    return BandWord(n, tuple((t, t - 1, 1) for t in range(n, 1, -1)))


_HEAD = re.compile(r"^\s*B(\d+)\s*(band)?\s*:(.*)$")
_BAND_TOKEN = re.compile(r"^([+-]?)\((\d+),(\d+)\)$")


def parse_word(text: str) -> BraidWord:
    """Parse ``"B4: 1 -3 2"``."""
    m = _HEAD.match(text)
    if not m or m.group(2):
        raise BraidParseError(f"expected 'Bn: ...', got {text!r}")
    n = int(m.group(1))
    try:
        letters = tuple(int(tok) for tok in m.group(3).split())
    except ValueError as exc:
        raise BraidParseError(f"bad letter in {text!r}") from exc
    try:
        return BraidWord(n, letters)
    except ValueError as exc:
        raise BraidParseError(str(exc)) from exc


def parse_band_word(text: str) -> BandWord:
    """Parse ``"B4 band: (3,1) -(2,1)"``."""
    m = _HEAD.match(text)
    if not m or not m.group(2):
        raise BraidParseError(f"expected 'Bn band: ...', got {text!r}")
    n = int(m.group(1))
    letters = []
    for tok in m.group(3).replace(", ", ",").split():
        tm = _BAND_TOKEN.match(tok)
        if not tm:
            raise BraidParseError(f"bad band token {tok!r}")
        e = -1 if tm.group(1) == "-" else 1
        letters.append((int(tm.group(2)), int(tm.group(3)), e))
    try:
        return BandWord(n, tuple(letters))
    except ValueError as exc:
        raise BraidParseError(str(exc)) from exc


def free_reduce(w: BraidWord) -> BraidWord:
    out: list[int] = []
    for x in w.letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return BraidWord(w.n, tuple(out))


def inverse_word(w: BraidWord) -> BraidWord:
    return w.inverse()


def shift_tau(w: BraidWord) -> BraidWord:
    """Image under conjugation by the half twist: ``sigma_i -> sigma_{n-i}``."""
    n = w.n
    return BraidWord(n, tuple((n - x) if x > 0 else -(n + x) for x in w.letters))


def perm_of(w: BraidWord) -> Perm:
    """Induced permutation of a braid word (signs are ignored)."""
    pos = list(range(w.n))  # pos[j]: which strand currently sits at position j
    for x in w.letters:
        k = abs(x) - 1
        pos[k], pos[k + 1] = pos[k + 1], pos[k]
    out = [0] * w.n
    for j, strand in enumerate(pos):
        out[strand] = j
    return tuple(out)


@dataclass(frozen=True)
class PermutationBraid:
    """A simple element, stored by its permutation (0-based images)."""

    perm: Perm

    def __post_init__(self) -> None:
        perm = tuple(self.perm)
        if sorted(perm) != list(range(len(perm))):
            raise ValueError(f"{perm} is not a permutation")
        object.__setattr__(self, "perm", perm)

    @classmethod
    def identity(cls, n: int) -> PermutationBraid:
        return cls(identity_perm(n))

    @classmethod
    def delta(cls, n: int) -> PermutationBraid:
        return cls(top_perm(n))

    @classmethod
    def generator(cls, n: int, i: int) -> PermutationBraid:
        p = list(range(n))
        p[i - 1], p[i] = i, i - 1
        return cls(tuple(p))

    @property
    def n(self) -> int:
        return len(self.perm)

    def __len__(self) -> int:
        return inversions(self.perm)

    def is_identity(self) -> bool:
        return self.perm == identity_perm(self.n)

    def is_delta(self) -> bool:
        return self.perm == top_perm(self.n)

    def word(self) -> BraidWord:
        return word_of_simple(self)

    def one_line(self) -> str:
        return " ".join(str(x + 1) for x in self.perm)

    def __mul__(self, other: PermutationBraid) -> PermutationBraid:
        """Product, valid only when the result is again simple."""
        q = compose(self.perm, other.perm)
        if inversions(q) != len(self) + len(other):
            raise ValueError("product of simple elements is not simple")
        return PermutationBraid(q)


def simple_from_perm(p: Sequence[int]) -> PermutationBraid:
    return PermutationBraid(tuple(p))


def word_letters_of_perm(p: Sequence[int]) -> tuple[int, ...]:
    """Positive word realising ``p`` with every inversion crossed once."""
    q = list(p)
    out = []
    i = 0
    n = len(q)
    while i < n - 1:
        if q[i] > q[i + 1]:
            out.append(i + 1)
            q[i], q[i + 1] = q[i + 1], q[i]
            i = max(i - 1, 0)
        else:
            i += 1
    return tuple(out)


def word_of_simple(P: PermutationBraid) -> BraidWord:
    return BraidWord(max(P.n, 2), word_letters_of_perm(P.perm))


def starting_set(P: PermutationBraid) -> frozenset[int]:
    p = P.perm
    return frozenset(i + 1 for i in range(len(p) - 1) if p[i] > p[i + 1])


def finishing_set(P: PermutationBraid) -> frozenset[int]:
    q = inverse(P.perm)
    return frozenset(i + 1 for i in range(len(q) - 1) if q[i] > q[i + 1])


def right_complement_perm(p: Perm) -> Perm:
    """``p^-1 * Delta``."""
    m = len(p) - 1
    inv = inverse(p)
    return tuple([m - x for x in inv])


def left_complement_perm(p: Perm) -> Perm:
    """``Delta * p^-1``: the simple ``x`` with ``x * p == Delta``."""
    m = len(p) - 1
    inv = inverse(p)
    return tuple([inv[m - i] for i in range(m + 1)])


def right_complement(P: PermutationBraid) -> PermutationBraid:
    return PermutationBraid(right_complement_perm(P.perm))


def left_complement(P: PermutationBraid) -> PermutationBraid:
    return PermutationBraid(left_complement_perm(P.perm))


def meet_perm(a: Perm, b: Perm) -> Perm:
    return _meet(a, b)


def join_perm(a: Perm, b: Perm) -> Perm:
    """Least common multiple in the prefix order."""
    # a <= c iff the complement of c is a suffix of the complement of a
    ra = inverse(right_complement_perm(a))
    rb = inverse(right_complement_perm(b))
    suffix = inverse(_meet(ra, rb))
    return left_complement_perm(suffix)


def simple_meet(P: PermutationBraid, Q: PermutationBraid) -> PermutationBraid:
    return PermutationBraid(_meet(P.perm, Q.perm))


def simple_join(P: PermutationBraid, Q: PermutationBraid) -> PermutationBraid:
    return PermutationBraid(join_perm(P.perm, Q.perm))


def is_prefix_perm(a: Perm, b: Perm) -> bool:
    """``a <= b`` in the prefix order: ``a^-1 b`` is again simple."""
    rest = compose(inverse(a), b)
    return inversions(a) + inversions(rest) == inversions(b)


def is_prefix(P: PermutationBraid, Q: PermutationBraid) -> bool:
    return is_prefix_perm(P.perm, Q.perm)


def tau_perm(p: Perm, k: int = 1) -> Perm:
    return kernels.tau(p) if k % 2 else p


def enumerate_simples(n: int, cap: int = 7) -> list[PermutationBraid]:
    """All ``n!`` permutation braids of ``B_n``."""
    if n > cap:
        import math

        raise ValueError(f"refusing to enumerate {math.factorial(n)} simples for n={n} (cap {cap})")
    return [PermutationBraid(p) for p in _all_perms(range(n))]


def delta_word(n: int) -> BraidWord:
    """``(s1 ... s_{n-1})(s1 ... s_{n-2}) ... s1``."""
    letters: list[int] = []
    for top in range(n - 1, 0, -1):
        letters.extend(range(1, top + 1))
    return BraidWord(n, tuple(letters))


def band_letter_to_artin(t: int, s: int, e: int) -> tuple[int, ...]:
    """``a_ts = (s_{t-1} ... s_{s+1}) s_s (s_{s+1}^-1 ... s_{t-1}^-1)``."""
    up = tuple(range(t - 1, s, -1))
    body = up + (s,) + tuple(-x for x in reversed(up))
    if e > 0:
        return body
    return tuple(-x for x in reversed(body))


def band_to_artin(b: BandWord) -> BraidWord:
    letters: list[int] = []
    for t, s, e in b.letters:
        letters.extend(band_letter_to_artin(t, s, e))
    return BraidWord(b.n, tuple(letters))


def random_word(n: int, length: int, rng) -> BraidWord:
    """Uniform i.i.d. signed letters."""
    return BraidWord(n, tuple(rng.choice((1, -1)) * rng.randint(1, n - 1) for _ in range(length)))


def random_rewrite(w: BraidWord, rng, steps: int = 20) -> BraidWord:
    """Apply random defining relations to ``w``; the braid is unchanged."""
    n = w.n
    letters = list(w.letters)
    for _ in range(steps):
        move = rng.randrange(4)
        if move == 0:
            i = rng.randint(1, n - 1) * rng.choice((1, -1))
            pos = rng.randint(0, len(letters))
            letters[pos:pos] = [i, -i]
        elif len(letters) >= 2 and move == 1:
            pos = rng.randrange(len(letters) - 1)
            a, b = letters[pos], letters[pos + 1]
            if abs(abs(a) - abs(b)) >= 2:
                letters[pos], letters[pos + 1] = b, a
            elif a == -b:
                del letters[pos : pos + 2]
        elif len(letters) >= 3 and move == 2:
            pos = rng.randrange(len(letters) - 2)
            a, b, c = letters[pos : pos + 3]
            if a == c and abs(abs(a) - abs(b)) == 1 and (a > 0) == (b > 0):
                letters[pos : pos + 3] = [b, a, b]
        elif move == 3 and n >= 3:
            # relator s_i s_j s_i s_j^-1 s_i^-1 s_j^-1 for adjacent i, j
            pos = rng.randint(0, len(letters))
            i = rng.randint(1, n - 2)
            j = i + 1
            if rng.random() < 0.5:
                i, j = j, i
            letters[pos:pos] = [i, j, i, -j, -i, -j]
    return BraidWord(n, tuple(letters))
