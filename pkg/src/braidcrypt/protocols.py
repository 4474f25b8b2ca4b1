"""Braid key exchange, hash-XOR encryption and authentication schemes.

Every scheme is a small state machine driven by a ``random.Random``.  Keys
are compared and hashed through the canonical normal-form serialization, so
equal braids always give equal keys and equal hash streams.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field
from typing import Sequence

from .braid import BraidWord
from .normal_form import GarsideNormalForm, left_normal_form

# ---------------------------------------------------------------------------
# Key distributions


@dataclass(frozen=True)
class KeyDistribution:
    """How secret words are drawn.

    In ``markov`` mode the letter after ``+-i`` is ``+-(i-1)`` or ``+-(i+1)``
    with weight ``beta`` each and any other allowed letter with weight 1.
    """

    mode: str = "uniform"
    length: int = 10
    beta: float = 1.0

    def __post_init__(self) -> None:
        if self.mode not in ("uniform", "markov"):
            raise ValueError(f"unknown distribution mode {self.mode!r}")
        if self.length < 0:
            raise ValueError("length must be nonnegative")
        if self.beta <= 0:
            raise ValueError("beta must be positive")

    @classmethod
    def parse(cls, text: str, length: int = 10) -> KeyDistribution:
        """``uniform`` or ``markov:BETA``."""
        if text == "uniform":
            return cls("uniform", length)
        if text.startswith("markov:"):
            return cls("markov", length, float(text.split(":", 1)[1]))
        raise ValueError(f"bad distribution {text!r}")

    def with_length(self, length: int) -> KeyDistribution:
        return KeyDistribution(self.mode, length, self.beta)


def allowed_indices(n: int, constraint: str) -> list[int]:
    if constraint == "all":
        idx = list(range(1, n))
    elif constraint == "LB":
        idx = list(range(1, n // 2))
    elif constraint == "UB":
        idx = list(range(n // 2 + 1, n))
    else:
        raise ValueError(f"unknown constraint {constraint!r}")
    if not idx:
        raise ValueError(f"constraint {constraint} is empty for n={n}")
    return idx


def draw_letters(indices: Sequence[int], dist: KeyDistribution, rng: random.Random) -> list[int]:
    letters = [s * i for i in indices for s in (1, -1)]
    out: list[int] = []
    for _ in range(dist.length):
        if dist.mode == "uniform" or not out:
            out.append(rng.choice(letters))
            continue
        cur = abs(out[-1])
        weights = [dist.beta if abs(abs(x) - cur) == 1 else 1.0 for x in letters]
        out.append(rng.choices(letters, weights)[0])
    return out


def draw_key(n: int, dist: KeyDistribution, rng: random.Random, constraint: str = "all") -> BraidWord:
    return BraidWord(n, tuple(draw_letters(allowed_indices(n, constraint), dist, rng)))


def draw_subgroup_word(m: int, dist: KeyDistribution, rng: random.Random) -> tuple[int, ...]:
    """A word over abstract generators ``g_1..g_m`` (signed 1-based indices)."""
    return tuple(draw_letters(list(range(1, m + 1)), dist, rng))


def evaluate_subgroup_word(word: Sequence[int], gens: Sequence[BraidWord]) -> BraidWord:
    n = gens[0].n
    letters: list[int] = []
    for g in word:
        if g == 0 or abs(g) > len(gens):
            raise ValueError(f"secret references unknown generator {g}")
        w = gens[abs(g) - 1]
        letters.extend(w.letters if g > 0 else w.inverse().letters)
    return BraidWord(n, tuple(letters))


# ---------------------------------------------------------------------------
# Hash stream over normal forms


def hash_stream(x: GarsideNormalForm, nbytes: int) -> bytes:
    """SHA-256 in counter mode over the canonical serialization."""
    data = x.serial.encode("ascii")
    out = bytearray()
    counter = 0
    while len(out) < nbytes:
        out += hashlib.sha256(counter.to_bytes(8, "big") + data).digest()
        counter += 1
    return bytes(out[:nbytes])


def braid_hash(x: GarsideNormalForm) -> bytes:
    return hash_stream(x, 32)


def _xor(a: bytes, b: bytes) -> bytes:
    return bytes(x ^ y for x, y in zip(a, b))


def _conj_inv(a: GarsideNormalForm, x: GarsideNormalForm) -> GarsideNormalForm:
    """``a x a^-1``."""
    return a * x * a.inverse()


# ---------------------------------------------------------------------------
# Commutator key exchange


@dataclass
class AagInstance:
    n: int
    generators: tuple[BraidWord, ...]
    alice_word: tuple[int, ...]
    bob_word: tuple[int, ...]
    alice_transcript: tuple[GarsideNormalForm, ...] = ()
    bob_transcript: tuple[GarsideNormalForm, ...] = ()

    @property
    def alice_secret(self) -> BraidWord:
        return evaluate_subgroup_word(self.alice_word, self.generators)

    @property
    def bob_secret(self) -> BraidWord:
        return evaluate_subgroup_word(self.bob_word, self.generators)


def aag_keygen(
    rng: random.Random,
    n: int = 8,
    m: int = 4,
    generator_length: int = 5,
    secret_length: int = 5,
    dist: KeyDistribution | None = None,
    generators: Sequence[BraidWord] | None = None,
) -> AagInstance:
    dist = dist or KeyDistribution()
    if generators is None:
        gdist = KeyDistribution("uniform", generator_length)
        generators = tuple(draw_key(n, gdist, rng) for _ in range(m))
    generators = tuple(generators)
    if not generators:
        raise ValueError("need at least one public generator")
    sdist = dist.with_length(secret_length)
    a = draw_subgroup_word(len(generators), sdist, rng)
    b = draw_subgroup_word(len(generators), sdist, rng)
    return aag_publish(AagInstance(generators[0].n, generators, a, b))


def aag_publish(inst: AagInstance) -> AagInstance:
    """Fill in the transcripts ``a g_i a^-1`` and ``b g_i b^-1``."""
    a = left_normal_form(inst.alice_secret)
    b = left_normal_form(inst.bob_secret)
    gs = [left_normal_form(g) for g in inst.generators]
    inst.alice_transcript = tuple(_conj_inv(a, g) for g in gs)
    inst.bob_transcript = tuple(_conj_inv(b, g) for g in gs)
    return inst


def _rebuild(word: Sequence[int], images: Sequence[GarsideNormalForm], n: int) -> GarsideNormalForm:
    out = GarsideNormalForm(n, 0, ())
    for g in word:
        img = images[abs(g) - 1]
        out = out * (img if g > 0 else img.inverse())
    return out


def aag_shared(side: str, inst: AagInstance) -> GarsideNormalForm:
    """``K = a b a^-1 b^-1`` from one side's secret and the other's transcript."""
    n = inst.n
    if side == "alice":
        a = left_normal_form(inst.alice_secret)
        # b a^-1 b^-1 = product of (b g b^-1)^-1 over a's letters, reversed
        inv_word = tuple(-g for g in reversed(inst.alice_word))
        return a * _rebuild(inv_word, inst.bob_transcript, n)
    if side == "bob":
        b = left_normal_form(inst.bob_secret)
        return _rebuild(inst.bob_word, inst.alice_transcript, n) * b.inverse()
    raise ValueError(f"unknown side {side!r}")


# ---------------------------------------------------------------------------
# Diffie-Hellman-type key exchange on commuting subgroups


@dataclass
class KoInstance:
    n: int
    p: BraidWord
    s: BraidWord
    r: BraidWord
    p_alice: GarsideNormalForm | None = None
    p_bob: GarsideNormalForm | None = None


def _check_range(w: BraidWord, constraint: str) -> None:
    ok = set(allowed_indices(w.n, constraint))
    for x in w.letters:
        if abs(x) not in ok:
            raise ValueError(f"letter {x} is outside {constraint}_{w.n}")


def ko_keygen(
    rng: random.Random,
    n: int = 8,
    p_length: int = 20,
    secret_length: int = 10,
    dist: KeyDistribution | None = None,
    p: BraidWord | None = None,
) -> KoInstance:
    if n % 2:
        raise ValueError("n must be even")
    dist = (dist or KeyDistribution()).with_length(secret_length)
    if p is None:
        p = draw_key(n, KeyDistribution("uniform", p_length), rng)
    s = draw_key(n, dist, rng, "LB")
    r = draw_key(n, dist, rng, "UB")
    return ko_publish(KoInstance(n, p, s, r))


def ko_publish(inst: KoInstance) -> KoInstance:
    _check_range(inst.s, "LB")
    _check_range(inst.r, "UB")
    p = left_normal_form(inst.p)
    inst.p_alice = _conj_inv(left_normal_form(inst.s), p)
    inst.p_bob = _conj_inv(left_normal_form(inst.r), p)
    return inst


def ko_shared(side: str, inst: KoInstance) -> GarsideNormalForm:
    if side == "alice":
        return _conj_inv(left_normal_form(inst.s), inst.p_bob)
    if side == "bob":
        return _conj_inv(left_normal_form(inst.r), inst.p_alice)
    raise ValueError(f"unknown side {side!r}")


@dataclass(frozen=True)
class Ciphertext:
    p_bob: GarsideNormalForm
    body: bytes


def ko_encrypt(
    message: bytes,
    p: BraidWord,
    p_alice: GarsideNormalForm,
    rng: random.Random,
    secret_length: int = 10,
    dist: KeyDistribution | None = None,
) -> Ciphertext:
    """Bob's side: draw ``r`` in UB and mask the message with ``h(r p' r^-1)``."""
    dist = (dist or KeyDistribution()).with_length(secret_length)
    r = left_normal_form(draw_key(p.n, dist, rng, "UB"))
    p_bob = _conj_inv(r, left_normal_form(p))
    pad = hash_stream(_conj_inv(r, p_alice), len(message))
    return Ciphertext(p_bob, _xor(message, pad))


def ko_decrypt(s: BraidWord, ct: Ciphertext) -> bytes:
    pad = hash_stream(_conj_inv(left_normal_form(s), ct.p_bob), len(ct.body))
    if len(pad) != len(ct.body):
        raise ValueError("hash stream shorter than ciphertext")
    return _xor(ct.body, pad)


# ---------------------------------------------------------------------------
# Challenge-response authentication on commuting subgroups


@dataclass
class AuthTranscript:
    challenge: object
    response: object
    accepted: bool
    detail: dict = field(default_factory=dict)


def sdg_setup(rng: random.Random, n: int = 8, b_length: int = 20, secret_length: int = 10, dist=None):
    """Public ``(b, b' = s b s^-1)`` and Alice's secret ``s`` in LB."""
    dist = (dist or KeyDistribution()).with_length(secret_length)
    b = draw_key(n, KeyDistribution("uniform", b_length), rng)
    s = draw_key(n, dist, rng, "LB")
    b_pub = _conj_inv(left_normal_form(s), left_normal_form(b))
    return b, b_pub, s


def sdg_authenticate(
    b: BraidWord,
    b_pub: GarsideNormalForm,
    rng: random.Random,
    prover=None,
    secret_length: int = 10,
    dist=None,
) -> AuthTranscript:
    """Bob challenges with ``x = r b r^-1``; the prover must answer ``H(s x s^-1)``.

    ``prover`` maps the challenge normal form to a 32-byte response.
    """
    dist = (dist or KeyDistribution()).with_length(secret_length)
    r = left_normal_form(draw_key(b.n, dist, rng, "UB"))
    x = _conj_inv(r, left_normal_form(b))
    y = prover(x)
    if not isinstance(y, (bytes, bytearray)) or len(y) != 32:
        raise ValueError("malformed response")
    expected = braid_hash(_conj_inv(r, b_pub))
    return AuthTranscript(x, bytes(y), bytes(y) == expected)


def sdg_honest_prover(s: BraidWord):
    s_nf = left_normal_form(s)
    return lambda x: braid_hash(_conj_inv(s_nf, x))


# ---------------------------------------------------------------------------
# Shifted conjugacy on B_infinity


def shift(w: BraidWord) -> BraidWord:
    """``s_i -> s_(i+1)``."""
    return BraidWord.infinite(tuple(x + 1 if x > 0 else x - 1 for x in w.letters))


def shifted_star(x: BraidWord, y: BraidWord) -> BraidWord:
    """``x * d(y) * s_1 * d(x)^-1`` on one more strand than needed."""
    letters = x.letters + shift(y).letters + (1,) + shift(x).inverse().letters
    top = max((abs(v) for v in letters), default=0)
    n = max(top + 2, x.n, y.n + 1)
    return BraidWord(n, letters)


def infinite_equal(u: BraidWord, v: BraidWord) -> bool:
    n = max(u.n, v.n)
    return left_normal_form(u.widen(n)) == left_normal_form(v.widen(n))


@dataclass
class ShiftedKeys:
    p: BraidWord
    p_pub: BraidWord
    s: BraidWord


def shifted_setup(rng: random.Random, n: int = 6, length: int = 10, dist=None) -> ShiftedKeys:
    dist = (dist or KeyDistribution()).with_length(length)
    p = draw_key(n, dist, rng)
    s = draw_key(n, dist, rng)
    return ShiftedKeys(p, shifted_star(s, p), s)


def dehornoy_auth(keys: ShiftedKeys, rng: random.Random, prover=None, n: int = 6, length: int = 10, dist=None) -> AuthTranscript:
    """One Fiat-Shamir round with the shifted-conjugacy operation.

    ``prover(r, c)`` returns the response word for challenge bit ``c``; the
    default is the honest prover holding ``keys.s``.
    """
    dist = (dist or KeyDistribution()).with_length(length)
    r = draw_key(n, dist, rng)
    x = shifted_star(r, keys.p)
    x_pub = shifted_star(r, keys.p_pub)
    c = rng.randrange(2)
    if prover is None:
        y = r if c == 0 else shifted_star(r, keys.s)
    else:
        y = prover(r, c)
    if c == 0:
        ok = infinite_equal(x, shifted_star(y, keys.p)) and infinite_equal(x_pub, shifted_star(y, keys.p_pub))
    else:
        ok = infinite_equal(x_pub, shifted_star(y, x))
    return AuthTranscript(c, y, ok)
