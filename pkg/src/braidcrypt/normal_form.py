"""Garside left/right normal forms, BKL canonical forms and length functions."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from . import kernels
from .braid import (
    BandWord,
    BraidParseError,
    BraidWord,
    Perm,
    PermutationBraid,
    delta_word,
    identity_perm,
    inversions,
    left_complement_perm,
    right_complement_perm,
    top_perm,
    word_letters_of_perm,
)

def _tau_pow(p: Perm, k: int) -> Perm:
    return kernels.tau(p) if k % 2 else p


@dataclass(frozen=True)
class GarsideNormalForm:
    """``Delta**delta_power * P_1 ... P_k`` with each ``P_i`` a raw permutation."""

    n: int
    delta_power: int
    factors: tuple[Perm, ...] = ()

    @property
    def inf(self) -> int:
        return self.delta_power

    @property
    def sup(self) -> int:
        return self.delta_power + len(self.factors)

    @property
    def canonical_length(self) -> int:
        return len(self.factors)

    @property
    def simples(self) -> tuple[PermutationBraid, ...]:
        return tuple(PermutationBraid(p) for p in self.factors)

    def is_identity(self) -> bool:
        return self.delta_power == 0 and not self.factors

    @cached_property
    def serial(self) -> str:
        parts = [f"B{self.n}: D^{self.delta_power}"]
        parts.extend(" ".join(str(x + 1) for x in p) for p in self.factors)
        return " | ".join(parts)

    def __str__(self) -> str:
        return self.serial

    def to_word(self) -> BraidWord:
        d = delta_word(self.n).letters
        if self.delta_power < 0:
            d = tuple(-x for x in reversed(d))
        letters = list(d * abs(self.delta_power))
        for p in self.factors:
            letters.extend(word_letters_of_perm(p))
        return BraidWord(self.n, tuple(letters))

    def __mul__(self, other: GarsideNormalForm) -> GarsideNormalForm:
        if other.n != self.n:
            raise ValueError("strand counts differ")
        q = other.delta_power
        moved = [_tau_pow(p, q) for p in self.factors]
        return from_factors(self.n, self.delta_power + q, moved + list(other.factors))

    def inverse(self) -> GarsideNormalForm:
        k = len(self.factors)
        p = self.delta_power
        out = []
        for j in range(k, 0, -1):
            out.append(_tau_pow(right_complement_perm(self.factors[j - 1]), j + p))
        return from_factors(self.n, -p - k, out)

    def conjugate(self, v: GarsideNormalForm) -> GarsideNormalForm:
        """``v^-1 * self * v``."""
        return v.inverse() * self * v

    def tau(self) -> GarsideNormalForm:
        return GarsideNormalForm(self.n, self.delta_power, tuple(kernels.tau(p) for p in self.factors))


def from_factors(n: int, delta_power: int, factors: Iterable[Sequence[int]]) -> GarsideNormalForm:
    """Normal form of ``Delta**delta_power`` times a product of simples."""
    fs = [tuple(p) for p in factors]
    if not fs:
        return GarsideNormalForm(n, delta_power, ())
    d, out = kernels.normalize(fs)
    return GarsideNormalForm(n, delta_power + d, out)


def left_normal_form(w: BraidWord) -> GarsideNormalForm:
    r, out = kernels.left_normal_form(w.n, w.letters)
    return GarsideNormalForm(w.n, r, out)


def simple_nf(p: Sequence[int]) -> GarsideNormalForm:
    """Normal form of a single simple element."""
    return from_factors(len(p), 0, [tuple(p)])


def delta_nf(n: int, k: int = 1) -> GarsideNormalForm:
    return GarsideNormalForm(n, k, ())


def identity_nf(n: int) -> GarsideNormalForm:
    return GarsideNormalForm(n, 0, ())


_SERIAL = re.compile(r"^B(\d+): D\^(-?\d+)((?: \| [0-9 ]+)*)$")


def parse_normal_form(text: str) -> GarsideNormalForm:
    """Inverse of ``GarsideNormalForm.serial``; validates left-weightedness."""
    m = _SERIAL.match(text.strip())
    if not m:
        raise BraidParseError(f"not a normal-form serialization: {text!r}")
    n = int(m.group(1))
    factors = []
    for chunk in m.group(3).split(" | ")[1:]:
        p = tuple(int(x) - 1 for x in chunk.split())
        if sorted(p) != list(range(n)):
            raise BraidParseError(f"bad factor {chunk!r}")
        factors.append(p)
    nf = GarsideNormalForm(n, int(m.group(2)), tuple(factors))
    if from_factors(n, nf.delta_power, factors) != nf:
        raise BraidParseError(f"factors are not in normal form: {text!r}")
    return nf


def is_left_weighted(u: PermutationBraid, v: PermutationBraid) -> bool:
    return kernels.meet(right_complement_perm(u.perm), v.perm) == identity_perm(u.n)


def local_sliding(u: PermutationBraid, v: PermutationBraid) -> tuple[PermutationBraid, PermutationBraid]:
    """Move the prefix ``right_complement(u) & v`` from ``v`` onto ``u``."""
    s = kernels.meet(right_complement_perm(u.perm), v.perm)
    a = kernels.compose(u.perm, s)
    b = kernels.compose(kernels.inverse(s), v.perm)
    return PermutationBraid(a), PermutationBraid(b)


@dataclass(frozen=True)
class RightNormalForm:
    """``P_k ... P_1 * Delta**delta_power``; ``factors`` are listed left to right."""

    n: int
    delta_power: int
    factors: tuple[Perm, ...] = ()

    def to_word(self) -> BraidWord:
        letters: list[int] = []
        for p in self.factors:
            letters.extend(word_letters_of_perm(p))
        d = delta_word(self.n).letters
        if self.delta_power < 0:
            d = tuple(-x for x in reversed(d))
        letters.extend(d * abs(self.delta_power))
        return BraidWord(self.n, tuple(letters))


def right_normal_form(w: BraidWord) -> RightNormalForm:
    # The reversed word has the reversed normal form; reversing a simple inverts its permutation.
    r, out = kernels.left_normal_form(w.n, tuple(reversed(w.letters)))
    return RightNormalForm(w.n, r, tuple(kernels.inverse(p) for p in reversed(out)))


def enumerate_simples(n: int, cap: int = 7) -> list[PermutationBraid]:
    from .braid import enumerate_simples as _simples

    return _simples(n, cap)


# ---------------------------------------------------------------------------
# Band generators.  A canonical factor is a non-crossing partition of the
# strands; as a permutation each block b1 < ... < bk is the cycle
# b1 -> b2 -> ... -> bk -> b1.


def _partition_to_perm(n: int, blocks: Iterable[Iterable[int]]) -> Perm:
    p = list(range(n))
    for block in blocks:
        b = sorted(block)
        for i, x in enumerate(b):
            p[x] = b[(i + 1) % len(b)]
    return tuple(p)


def _perm_blocks(p: Perm) -> list[tuple[int, ...]]:
    seen = [False] * len(p)
    blocks = []
    for i in range(len(p)):
        if not seen[i]:
            cyc = []
            j = i
            while not seen[j]:
                seen[j] = True
                cyc.append(j)
                j = p[j]
            blocks.append(tuple(sorted(cyc)))
    return blocks


def _crossing(a: Sequence[int], b: Sequence[int]) -> bool:
    for x1, x2 in combinations(a, 2):
        for y1, y2 in combinations(b, 2):
            if x1 < y1 < x2 < y2 or y1 < x1 < y2 < x2:
                return True
    return False


def is_canonical_factor(p: Perm) -> bool:
    """Whether ``p`` is the permutation of a BKL canonical factor."""
    blocks = _perm_blocks(p)
    if _partition_to_perm(len(p), blocks) != tuple(p):
        return False
    return not any(_crossing(a, b) for a, b in combinations(blocks, 2))


def _noncrossing_partitions(points: tuple[int, ...]) -> Iterable[list[tuple[int, ...]]]:
    if not points:
        yield []
        return
    first, rest = points[0], points[1:]
    # the block of ``first`` splits the remaining points into independent gaps
    for k in range(len(rest) + 1):
        for others in combinations(range(len(rest)), k):
            block = (first,) + tuple(rest[i] for i in others)
            cuts = [i for i in others] + [len(rest)]
            gaps = []
            prev = 0
            for c in cuts:
                gaps.append(rest[prev:c])
                prev = c + 1
            yield from _combine_gaps(block, gaps)


def _combine_gaps(block, gaps):
    if not gaps:
        yield [block]
        return
    for part in _noncrossing_partitions(gaps[0]):
        for tail in _combine_gaps(block, gaps[1:]):
            yield part + tail


def enumerate_canonical_factors(n: int, cap: int = 7) -> list[Perm]:
    """Permutations of all canonical factors for ``n`` strands."""
    if n > cap:
        catalan = math.comb(2 * n, n) // (n + 1)
        raise ValueError(f"refusing to enumerate {catalan} canonical factors for n={n} (cap {cap})")
    out = {_partition_to_perm(n, blocks) for blocks in _noncrossing_partitions(tuple(range(n)))}
    return sorted(out)


def delta_perm(n: int) -> Perm:
    """Permutation of ``delta_n``: strand j goes to j+1, the last to the first."""
    return tuple((i + 1) % n for i in range(n))


def _delta_conj(p: Perm, c: int) -> Perm:
    """``delta**c * p * delta**-c``."""
    n = len(p)
    return tuple((p[(i + c) % n] - c) % n for i in range(n))


def band_meet(a: Perm, b: Perm) -> Perm:
    """Common refinement of two non-crossing partitions."""
    ba = {x: blk for blk in _perm_blocks(a) for x in blk}
    bb = {x: blk for blk in _perm_blocks(b) for x in blk}
    blocks = {tuple(sorted(set(ba[x]) & set(bb[x]))) for x in range(len(a))}
    return _partition_to_perm(len(a), blocks)


def band_complement(a: Perm) -> Perm:
    """``a^-1 * delta``."""
    return kernels.compose(kernels.inverse(a), delta_perm(len(a)))


def band_factor_length(p: Perm) -> int:
    return len(p) - len(_perm_blocks(p))


def _band_slide(a: Perm, b: Perm) -> tuple[Perm, Perm]:
    s = band_meet(band_complement(a), b)
    return kernels.compose(a, s), kernels.compose(kernels.inverse(s), b)


def _band_normalize(factors: list[Perm]) -> tuple[int, tuple[Perm, ...]]:
    if not factors:
        return 0, ()
    n = len(factors[0])
    ident = identity_perm(n)
    top = delta_perm(n)
    out: list[Perm] = []
    for s in factors:
        if s == ident:
            continue
        out.append(s)
        j = len(out) - 2
        while j >= 0:
            a, b = _band_slide(out[j], out[j + 1])
            if a == out[j]:
                break
            out[j], out[j + 1] = a, b
            j -= 1
        if out[-1] == ident:
            out.pop()
    d = 0
    while d < len(out) and out[d] == top:
        d += 1
    return d, tuple(out[d:])


@dataclass(frozen=True)
class BklNormalForm:
    """``delta**delta_power * A_1 ... A_k`` with canonical-factor permutations."""

    n: int
    delta_power: int
    factors: tuple[Perm, ...] = ()

    @property
    def blocks(self) -> tuple[list[tuple[int, ...]], ...]:
        return tuple(_perm_blocks(p) for p in self.factors)

    def to_band_word(self) -> BandWord:
        d = [(t, t - 1, 1) for t in range(self.n, 1, -1)]
        if self.delta_power < 0:
            d = [(t, s, -1) for t, s, _ in reversed(d)]
        letters = d * abs(self.delta_power)
        for p in self.factors:
            letters.extend(_factor_band_letters(p))
        return BandWord(self.n, tuple(letters))


def _factor_band_letters(p: Perm) -> list[tuple[int, int, int]]:
    # block b1 < ... < bk equals a_{bk,bk-1} ... a_{b2,b1}
    out = []
    for blk in _perm_blocks(p):
        b = [x + 1 for x in blk]
        for i in range(len(b) - 1, 0, -1):
            out.append((b[i], b[i - 1], 1))
    return out


def bkl_normal_form(w: BandWord) -> BklNormalForm:
    n = w.n
    dp = delta_perm(n)
    raw: list[tuple[Perm, bool]] = []
    for t, s, e in w.letters:
        tr = list(range(n))
        tr[s - 1], tr[t - 1] = t - 1, s - 1
        if e > 0:
            raw.append((tuple(tr), False))
        else:
            # a^-1 = delta^-1 * (delta a^-1)
            raw.append((kernels.compose(dp, tuple(tr)), True))
    factors: list[Perm] = []
    shift = 0
    for p, neg in reversed(raw):
        factors.append(_delta_conj(p, shift))
        if neg:
            shift += 1
    factors.reverse()
    d, out = _band_normalize(factors)
    return BklNormalForm(n, d - shift, out)


# ---------------------------------------------------------------------------
# Length functions.  Each accepts a braid word or an already computed form.


def _as_nf(w) -> GarsideNormalForm:
    return w if isinstance(w, GarsideNormalForm) else left_normal_form(w)


def _as_bkl(w) -> BklNormalForm:
    if isinstance(w, BklNormalForm):
        return w
    if isinstance(w, BandWord):
        return bkl_normal_form(w)
    if isinstance(w, GarsideNormalForm):
        w = w.to_word()
    return bkl_normal_form(_artin_to_band(w))


def _artin_to_band(w: BraidWord) -> BandWord:
    return BandWord(w.n, tuple((abs(x) + 1, abs(x), 1 if x > 0 else -1) for x in w.letters))


def garside_length(w) -> int:
    x = _as_nf(w)
    n = x.n
    return abs(x.delta_power) * (n * (n - 1) // 2) + sum(inversions(p) for p in x.factors)


def reduced_garside_length(w) -> int:
    x = _as_nf(w)
    total = garside_length(x)
    if x.delta_power < 0:
        k = min(-x.delta_power, len(x.factors))
        total -= 2 * sum(inversions(p) for p in x.factors[:k])
    return total


def bkl_length(w) -> int:
    x = _as_bkl(w)
    return abs(x.delta_power) * (x.n - 1) + sum(band_factor_length(p) for p in x.factors)


def reduced_bkl_length(w) -> int:
    x = _as_bkl(w)
    total = bkl_length(x)
    if x.delta_power < 0:
        k = min(-x.delta_power, len(x.factors))
        total -= 2 * sum(band_factor_length(p) for p in x.factors[:k])
    return total


LENGTH_FUNCTIONS = {
    "gar": garside_length,
    "redgar": reduced_garside_length,
    "bkl": bkl_length,
    "redbkl": reduced_bkl_length,
}

