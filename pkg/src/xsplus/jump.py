"""Jump-ahead by a polynomial in the transition.

For a full-period transition M with characteristic polynomial P,
M^j = Q(M) where Q(x) = x^j mod P(x).  Writing Q = sum alpha_i x^i, the
state j steps ahead is the xor of the states i steps ahead over the
indices with alpha_i = 1, so a jump costs n plain steps.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .engine import GeneratorConfig, GeneratorState, _step, charpoly
from .gf2poly import FactorTable, Gf2Poly, is_primitive, poly_powmod, shipped_factor_table

MASK64 = (1 << 64) - 1


class JumpError(ValueError):
    pass


@dataclass(frozen=True)
class JumpMask:
    """alpha_{64i+b} is bit b of words[i]."""

    words: tuple[int, ...]
    j: int
    fingerprint: str

    @property
    def poly(self) -> Gf2Poly:
        v = 0
        for i, w in enumerate(self.words):
            v |= w << (64 * i)
        return Gf2Poly(v)

    def raw(self) -> str:
        return ", ".join(f"0x{w:016x}" for w in self.words)

    def dumps(self) -> str:
        return f"j={self.j};cfg={self.fingerprint};words={self.raw().replace(' ', '')}"

    @classmethod
    def loads(cls, text: str) -> JumpMask:
        m = re.fullmatch(r"\s*j=(\d+);cfg=([^;]+);words=([0-9a-fx,]+)\s*", text)
        if not m:
            raise ValueError(f"malformed jump mask: {text!r}")
        words = tuple(int(w, 16) for w in m.group(3).split(","))
        return cls(words, int(m.group(1)), m.group(2))


def parse_jump(text: str) -> int:
    """Decimal big integer or ``2^k``."""
    text = text.strip()
    m = re.fullmatch(r"2\s*\^\s*(\d+)", text)
    if m:
        return 1 << int(m.group(1))
    if not text.isdigit():
        raise ValueError(f"jump length must be decimal or 2^k, got {text!r}")
    return int(text)


@lru_cache(maxsize=256)
def _certified(cfg: GeneratorConfig, factors: FactorTable) -> Gf2Poly:
    p = charpoly(cfg)
    if not is_primitive(p, factors):
        raise JumpError(f"{cfg.fingerprint} is not full period")
    return p


def full_period_charpoly(cfg: GeneratorConfig, factors: FactorTable | None = None) -> Gf2Poly:
    if factors is None:
        factors = shipped_factor_table(cfg.n)
    return _certified(cfg.unscrambled(), factors)


def jump_poly(cfg: GeneratorConfig, j: int, factors: FactorTable | None = None) -> JumpMask:
    if j < 0:
        raise ValueError("jump length must be nonnegative")
    try:
        p = full_period_charpoly(cfg, factors)
    except ValueError as e:
        raise JumpError(str(e)) from e
    q = poly_powmod(Gf2Poly.x(), j, p).bits
    nwords = (cfg.n + 63) // 64
    return JumpMask(tuple((q >> (64 * i)) & MASK64 for i in range(nwords)), j, cfg.fingerprint)


def apply_jump(state: GeneratorState, mask: JumpMask, cfg: GeneratorConfig) -> GeneratorState:
    """State ``mask.j`` steps after ``state``; the argument is left untouched.

    Accumulation is over words in age order, which for two words is the
    ``s[0], s[1]`` order of the reference jump loop.  The pointer of the
    result is the one j sequential steps would leave.
    """
    if mask.fingerprint != cfg.fingerprint:
        raise JumpError(f"mask for {mask.fingerprint} applied to {cfg.fingerprint}")
    state.check(cfg)
    r = cfg.word_count
    n = cfg.n
    st = state.copy()
    acc = [0] * r
    for i in range(n):
        if mask.words[i >> 6] >> (i & 63) & 1:
            base = st.ptr + 1
            words = st.words
            for k in range(r):
                acc[k] ^= words[(base + k) % r]
        _step(cfg, st)
    return GeneratorState.from_logical(acc, (state.ptr + mask.j) % r)
