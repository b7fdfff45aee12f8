"""Parameterized xorshift core with plus / star / none output scramblers.

The state is ``r`` words of ``w`` bits plus a pointer ``p`` to the most
recently written word.  One step reads ``s0 = words[p]``, advances ``p``,
reads ``s1 = words[p]`` and writes

    t = s1 ^ (s1 << a)
    words[p] = t ^ s0 ^ (t >> b) ^ (s0 >> c)

with all shifts logical inside ``w`` bits.  For ``r = 2`` this is the
two-word generator with the roles of the words swapped on every call;
the two-variable layout ``(s[0], s[1])`` is ``(words[p ^ 1], words[p])``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Iterator

import numpy as np

from .gf2poly import Gf2Poly, berlekamp_massey_full

MASK64 = (1 << 64) - 1

SCRAMBLERS = ("plus", "star", "none")
UPDATES = ("xorshift", "xsadd")
WORD_COUNTS = (2, 4, 8, 16)

# splitmix64 constants
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB

CHARPOLY_SEED = 1


class ZeroStateError(ValueError):
    """The all-zero state is a fixed point of every linear transition."""


class DegenerateCharpolyError(ValueError):
    """Recovered recurrence is shorter than the state: not full period."""

    def __init__(self, msg: str, partial: Gf2Poly, complexity: int):
        super().__init__(msg)
        self.partial = partial
        self.complexity = complexity


@dataclass(frozen=True, order=True)
class ShiftTriple:
    a: int
    b: int
    c: int

    @classmethod
    def parse(cls, text: str) -> ShiftTriple:
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 3:
            raise ValueError(f"expected a,b,c, got {text!r}")
        return cls(*(int(p) for p in parts))

    def __iter__(self):
        return iter((self.a, self.b, self.c))

    def __str__(self) -> str:
        return f"{self.a},{self.b},{self.c}"


@dataclass(frozen=True)
class GeneratorConfig:
    triple: ShiftTriple
    word_bits: int = 64
    word_count: int = 2
    scrambler: str = "plus"
    multiplier: int | None = None
    update: str = "xorshift"

    def __post_init__(self):
        if isinstance(self.triple, tuple):
            object.__setattr__(self, "triple", ShiftTriple(*self.triple))
        w = self.word_bits
        if not 3 <= w <= 64:
            raise ValueError(f"word_bits must be in 3..64, got {w}")
        if self.word_count not in WORD_COUNTS:
            raise ValueError(f"word_count must be one of {WORD_COUNTS}")
        if any(not 1 <= s < w for s in self.triple):
            raise ValueError(f"shifts {self.triple} invalid for {w}-bit words")
        if self.scrambler not in SCRAMBLERS:
            raise ValueError(f"unknown scrambler {self.scrambler!r}")
        if self.update not in UPDATES:
            raise ValueError(f"unknown update kind {self.update!r}")
        if self.scrambler == "star":
            m = self.multiplier
            if m is None or not 0 < m < (1 << w) or m % 2 == 0:
                raise ValueError("star scrambler needs an odd multiplier below 2^w")
        elif self.multiplier is not None:
            raise ValueError("multiplier only applies to the star scrambler")

    @property
    def n(self) -> int:
        return self.word_bits * self.word_count

    @property
    def mask(self) -> int:
        return (1 << self.word_bits) - 1

    @property
    def fingerprint(self) -> str:
        """Identity of the state transition (scrambler excluded)."""
        return f"{self.update}:w{self.word_bits}:r{self.word_count}:{self.triple}"

    def unscrambled(self) -> GeneratorConfig:
        return replace(self, scrambler="none", multiplier=None)

    def with_triple(self, triple) -> GeneratorConfig:
        return replace(self, triple=ShiftTriple(*triple))


M8 = 1181783497276652981

PRESETS: dict[str, GeneratorConfig] = {
    "xorshift128plus": GeneratorConfig(ShiftTriple(23, 18, 5)),
    "xorshift1024plus": GeneratorConfig(ShiftTriple(31, 11, 30), word_count=16),
    "xorshift128star": GeneratorConfig(ShiftTriple(49, 5, 26), scrambler="star", multiplier=M8),
    "xorshift1024star": GeneratorConfig(
        ShiftTriple(31, 11, 30), word_count=16, scrambler="star", multiplier=M8
    ),
    "xorshift6plus": GeneratorConfig(ShiftTriple(1, 2, 1), word_bits=3),
}


def config_for_bits(n: int, triple, scrambler: str = "plus", word_bits: int = 64,
                    multiplier: int | None = None) -> GeneratorConfig:
    if n % word_bits:
        raise ValueError(f"{n} state bits is not a multiple of {word_bits}-bit words")
    return GeneratorConfig(ShiftTriple(*triple), word_bits, n // word_bits, scrambler, multiplier)


@dataclass
class GeneratorState:
    words: list[int]
    ptr: int = 0

    def __post_init__(self):
        self.words = list(self.words)
        if not 0 <= self.ptr < len(self.words):
            raise ValueError("pointer out of range")
        if not any(self.words):
            raise ZeroStateError("the all-zero state is a fixed point")

    def copy(self) -> GeneratorState:
        return GeneratorState(list(self.words), self.ptr)

    def logical(self) -> tuple[int, ...]:
        """Words ordered oldest to newest, independent of the pointer."""
        r = len(self.words)
        return tuple(self.words[(self.ptr + 1 + j) % r] for j in range(r))

    @classmethod
    def from_logical(cls, words, ptr: int = 0) -> GeneratorState:
        r = len(words)
        phys = [0] * r
        for j, v in enumerate(words):
            phys[(ptr + 1 + j) % r] = v
        return cls(phys, ptr)

    def as_int(self, w: int) -> int:
        """Logical state packed as one integer, oldest word lowest."""
        v = 0
        for j, x in enumerate(self.logical()):
            v |= x << (w * j)
        return v

    @classmethod
    def from_int(cls, v: int, cfg: GeneratorConfig, ptr: int = 0) -> GeneratorState:
        m = cfg.mask
        return cls.from_logical([(v >> (cfg.word_bits * j)) & m for j in range(cfg.word_count)], ptr)

    def check(self, cfg: GeneratorConfig) -> None:
        if len(self.words) != cfg.word_count:
            raise ValueError(f"state has {len(self.words)} words, config wants {cfg.word_count}")
        if any(not 0 <= x <= cfg.mask for x in self.words):
            raise ValueError(f"state word exceeds {cfg.word_bits} bits")
        if not any(self.words):
            raise ZeroStateError("the all-zero state is a fixed point")


def _step(cfg: GeneratorConfig, st: GeneratorState) -> int:
    words = st.words
    mask = cfg.mask
    a, b, c = cfg.triple.a, cfg.triple.b, cfg.triple.c
    s0 = words[st.ptr]
    p = (st.ptr + 1) % cfg.word_count
    s1 = words[p]
    t = (s1 ^ (s1 << a)) & mask
    if cfg.update == "xorshift":
        new = t ^ s0 ^ (t >> b) ^ (s0 >> c)
    else:
        # alternative bottom-right block (I + L^c)
        new = t ^ (t >> b) ^ s0 ^ ((s0 << c) & mask)
    words[p] = new
    st.ptr = p
    if cfg.scrambler == "plus":
        return (new + s0) & mask
    if cfg.scrambler == "star":
        return (new * cfg.multiplier) & mask
    return new


def next_output(state: GeneratorState, cfg: GeneratorConfig) -> int:
    """Advance ``state`` in place by one step and return the output word."""
    if not any(state.words):
        raise ZeroStateError("the all-zero state is a fixed point")
    return _step(cfg, state)


def step_state(cfg: GeneratorConfig, state: GeneratorState) -> GeneratorState:
    st = state.copy()
    _step(cfg, st)
    return st


def seed_from_u64(seed: int, cfg: GeneratorConfig) -> GeneratorState:
    """Expand a 64-bit seed into a nonzero state with splitmix64.

    Word i is the low ``w`` bits of the (i+1)-th splitmix64 output started
    at ``seed``; an all-zero expansion becomes ``words[0] = 1``.
    """
    x = seed & MASK64
    words = []
    for _ in range(cfg.word_count):
        x = (x + GOLDEN_GAMMA) & MASK64
        z = x
        z = ((z ^ (z >> 30)) * MIX1) & MASK64
        z = ((z ^ (z >> 27)) * MIX2) & MASK64
        z ^= z >> 31
        words.append(z & cfg.mask)
    if not any(words):
        words[0] = 1
    return GeneratorState(words, 0)


def reverse_output(x: int, w: int) -> int:
    """Bit reversal within a ``w``-bit word."""
    return int(format(x, f"0{w}b")[::-1], 2)


def lowest_bit_stream(cfg: GeneratorConfig, state: GeneratorState, length: int,
                      bit: int = 0) -> list[int]:
    """Bit ``bit`` (default the lowest) of ``length`` successive outputs."""
    if length < 1:
        raise ValueError("length must be positive")
    state.check(cfg)
    st = state.copy()
    return [(_step(cfg, st) >> bit) & 1 for _ in range(length)]


@lru_cache(maxsize=4096)
def _charpoly(cfg: GeneratorConfig) -> tuple[Gf2Poly, int, Gf2Poly]:
    n = cfg.n
    bits = lowest_bit_stream(cfg, seed_from_u64(CHARPOLY_SEED, cfg), 2 * n + 64)
    conn, L = berlekamp_massey_full(bits)
    return conn.reciprocal(L), L, conn


def charpoly(cfg: GeneratorConfig) -> Gf2Poly:
    """Characteristic polynomial of the state transition.

    Recovered by Berlekamp-Massey on the unscrambled lowest output bit.
    The connection polynomial C(x) is reflected, so the result P(x)
    satisfies P(M) = 0 for the transition M.  Raises
    DegenerateCharpolyError when the recurrence is shorter than ``n``.
    """
    p, L, _ = _charpoly(cfg.unscrambled())
    if L != cfg.n:
        raise DegenerateCharpolyError(
            f"lowest-bit recurrence has degree {L} < {cfg.n} for {cfg.fingerprint}", p, L
        )
    return p


class Xorshift:
    """A generator instance: a config plus an exclusively owned state."""

    def __init__(self, cfg: GeneratorConfig, state: GeneratorState | None = None,
                 seed: int | None = None, reverse: bool = False):
        if state is None:
            state = seed_from_u64(0 if seed is None else seed, cfg)
        state.check(cfg)
        self.cfg = cfg
        self.state = state
        self.reverse = reverse

    def next(self) -> int:
        out = _step(self.cfg, self.state)
        if self.reverse:
            return reverse_output(out, self.cfg.word_bits)
        return out

    __next__ = next

    def __iter__(self) -> Iterator[int]:
        return self

    def outputs(self, count: int) -> list[int]:
        return [self.next() for _ in range(count)]

    def jump(self, j: int) -> None:
        from .jump import apply_jump, jump_poly

        self.state = apply_jump(self.state, jump_poly(self.cfg, j), self.cfg)


# --- vectorized batch generation -----------------------------------------

def _u64(v: int):
    return np.uint64(v)


def batch_outputs(cfg: GeneratorConfig, words: np.ndarray, count: int,
                  ptr: int = 0) -> np.ndarray:
    """Run many states in lockstep.

    ``words`` is an (S, r) uint64 array of physical words, all with the
    same pointer; it is advanced in place.  Returns an (S, count) array.
    """
    words = np.asarray(words)
    if words.dtype != np.uint64 or words.ndim != 2 or words.shape[1] != cfg.word_count:
        raise ValueError("words must be an (S, r) uint64 array")
    a, b, c = (_u64(s) for s in cfg.triple)
    full = cfg.word_bits == 64
    mask = _u64(cfg.mask)
    mult = _u64(cfg.multiplier) if cfg.scrambler == "star" else None
    out = np.empty((words.shape[0], count), dtype=np.uint64)
    r = cfg.word_count
    p = ptr
    for i in range(count):
        s0 = words[:, p]
        p = (p + 1) % r
        s1 = words[:, p]
        t = s1 ^ (s1 << a)
        if not full:
            t &= mask
        if cfg.update == "xorshift":
            new = t ^ s0 ^ (t >> b) ^ (s0 >> c)
        else:
            sc = s0 << c
            if not full:
                sc &= mask
            new = t ^ (t >> b) ^ s0 ^ sc
        words[:, p] = new
        if cfg.scrambler == "plus":
            o = new + s0
        elif cfg.scrambler == "star":
            o = new * mult
        else:
            o = new
        if not full:
            o = o & mask
        out[:, i] = o
    return out


_REV8 = np.array([int(f"{i:08b}"[::-1], 2) for i in range(256)], dtype=np.uint8)


def reverse_outputs(x: np.ndarray, w: int) -> np.ndarray:
    """Vectorized ``reverse_output`` for a uint64 array."""
    x = np.ascontiguousarray(x, dtype=np.uint64)
    by = x.view(np.uint8).reshape(x.shape + (8,))
    rev = _REV8[by][..., ::-1].copy().view(np.uint64).reshape(x.shape)
    return rev >> np.uint64(64 - w) if w < 64 else rev


def states_array(states: list[GeneratorState]) -> np.ndarray:
    return np.array([s.words for s in states], dtype=np.uint64)
