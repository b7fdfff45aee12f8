"""Polynomials over GF(2).

A polynomial is stored as a nonnegative integer whose bit i is the
coefficient of x^i, so addition is xor and the zero polynomial is 0.
Reduction modulo a fixed polynomial goes through a cached byte table,
which keeps degree-1024 exponentiations usable from pure Python.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

import gmpy2

MR_ROUNDS = 40


class InvalidModulusError(ValueError):
    pass


class FactorTableError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Gf2Poly:
    """Dense polynomial over Z/2Z; ``bits`` holds coefficient i in bit i."""

    bits: int = 0

    def __post_init__(self):
        if self.bits < 0:
            raise ValueError("coefficient bits must be nonnegative")

    @classmethod
    def from_exponents(cls, exps: Iterable[int]) -> Gf2Poly:
        v = 0
        for e in exps:
            v ^= 1 << e
        return cls(v)

    @classmethod
    def x(cls) -> Gf2Poly:
        return cls(2)

    @classmethod
    def one(cls) -> Gf2Poly:
        return cls(1)

    @property
    def degree(self) -> int | None:
        """Degree, or None for the zero polynomial."""
        return self.bits.bit_length() - 1 if self.bits else None

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def coeff(self, i: int) -> int:
        return (self.bits >> i) & 1

    def exponents(self) -> list[int]:
        return [i for i in range(self.bits.bit_length()) if self.bits >> i & 1]

    def reciprocal(self, length: int | None = None) -> Gf2Poly:
        """x^length * p(1/x); ``length`` defaults to the degree."""
        if length is None:
            if not self.bits:
                return self
            length = self.degree
        if self.bits.bit_length() > length + 1:
            raise ValueError("length below degree")
        s = format(self.bits, "b").zfill(length + 1)
        return Gf2Poly(int(s[::-1], 2))

    def __add__(self, other: Gf2Poly) -> Gf2Poly:
        return Gf2Poly(self.bits ^ other.bits)

    __xor__ = __add__
    __sub__ = __add__

    def __mul__(self, other: Gf2Poly) -> Gf2Poly:
        return Gf2Poly(clmul(self.bits, other.bits))

    def __mod__(self, other: Gf2Poly) -> Gf2Poly:
        if not other.bits:
            raise ZeroDivisionError("division by zero polynomial")
        return Gf2Poly(_longdiv(self.bits, other.bits)[1])

    def __bool__(self) -> bool:
        return bool(self.bits)

    def to_hex(self) -> str:
        """``deg=<d>;<hex>``, most significant coefficient first."""
        if not self.bits:
            return "deg=-1;0"
        d = self.degree
        return f"deg={d};{self.bits:0{(d + 4) // 4}x}"

    @classmethod
    def from_hex(cls, text: str) -> Gf2Poly:
        m = re.fullmatch(r"\s*deg=(-?\d+);([0-9a-fA-F]+)\s*", text)
        if not m:
            raise ValueError(f"malformed polynomial literal: {text!r}")
        d, v = int(m.group(1)), int(m.group(2), 16)
        if v.bit_length() - 1 != d:
            raise ValueError(f"degree header {d} disagrees with coefficients")
        return cls(v)

    def __str__(self) -> str:
        if not self.bits:
            return "0"
        terms = []
        for e in reversed(self.exponents()):
            terms.append("1" if e == 0 else "x" if e == 1 else f"x^{e}")
        return " + ".join(terms)


# --- raw integer kernels -------------------------------------------------

def _spread_byte(b: int) -> int:
    r = 0
    for i in range(8):
        if b >> i & 1:
            r |= 1 << (2 * i)
    return r


_SPREAD = [_spread_byte(b).to_bytes(2, "little") for b in range(256)]


def clsquare(a: int) -> int:
    """Square of a polynomial: interleave its coefficients with zeros."""
    if not a:
        return 0
    data = a.to_bytes((a.bit_length() + 7) // 8, "little")
    return int.from_bytes(b"".join([_SPREAD[b] for b in data]), "little")


def clmul(a: int, b: int) -> int:
    """Carry-less product, 4-bit windowed."""
    if a.bit_length() < b.bit_length():
        a, b = b, a
    if b < 16:
        r = 0
        while b:
            if b & 1:
                r ^= a
            a <<= 1
            b >>= 1
        return r
    a2 = a << 1
    a4 = a << 2
    a8 = a << 3
    tab = [0] * 16
    tab[1], tab[2], tab[4], tab[8] = a, a2, a4, a8
    for k in (3, 5, 6, 7, 9, 10, 11, 12, 13, 14, 15):
        low = k & -k
        tab[k] = tab[low] ^ tab[k ^ low]
    r = 0
    for shift in range((b.bit_length() - 1) & ~3, -1, -4):
        r = (r << 4) ^ tab[(b >> shift) & 15]
    return r


def _longdiv(a: int, m: int) -> tuple[int, int]:
    dm = m.bit_length() - 1
    q = 0
    while a.bit_length() - 1 >= dm:
        s = a.bit_length() - 1 - dm
        q ^= 1 << s
        a ^= m << s
    return q, a


class _Modulus:
    """Reduction context for a fixed modulus of degree >= 1."""

    def __init__(self, m: int):
        self.m = m
        self.deg = d = m.bit_length() - 1
        # table[t] = t * x^d mod m
        xd = m ^ (1 << d)
        tab = [0] * 256
        step = xd
        for i in range(8):
            bit = 1 << i
            for t in range(bit):
                tab[bit | t] = tab[t] ^ step
            step <<= 1
            if step >> d & 1:
                step ^= m
        self.table = tab

    def reduce(self, a: int) -> int:
        d = self.deg
        tab = self.table
        n = a.bit_length()
        while n > d:
            off = n - d - 8
            if off < 0:
                off = 0
            top = a >> (d + off)
            a ^= (top << (d + off)) ^ (tab[top] << off)
            n = a.bit_length()
        return a

    def mul(self, a: int, b: int) -> int:
        return self.reduce(clmul(a, b))

    def sqr(self, a: int) -> int:
        return self.reduce(clsquare(a))

    def pow(self, base: int, e: int) -> int:
        base = self.reduce(base)
        if e == 0:
            return 1 if self.deg > 0 else 0
        r = base
        if base == 2 and self.deg > 1:
            # multiplying by x is a shift plus one conditional xor
            top = 1 << self.deg
            m = self.m
            for i in range(e.bit_length() - 2, -1, -1):
                r = self.sqr(r)
                if e >> i & 1:
                    r <<= 1
                    if r & top:
                        r ^= m
            return r
        for i in range(e.bit_length() - 2, -1, -1):
            r = self.sqr(r)
            if e >> i & 1:
                r = self.mul(r, base)
        return r


@lru_cache(maxsize=256)
def _modulus(m: int) -> _Modulus:
    return _Modulus(m)


def _check_modulus(m: Gf2Poly) -> _Modulus:
    if m.bits < 2:
        raise InvalidModulusError("modulus must have degree >= 1")
    return _modulus(m.bits)


def poly_mulmod(a: Gf2Poly, b: Gf2Poly, m: Gf2Poly) -> Gf2Poly:
    """(a*b) mod m."""
    ctx = _check_modulus(m)
    return Gf2Poly(ctx.mul(ctx.reduce(a.bits), ctx.reduce(b.bits)))


def poly_powmod(base: Gf2Poly, e: int, m: Gf2Poly) -> Gf2Poly:
    """base^e mod m by square-and-multiply; e may be arbitrarily large."""
    if e < 0:
        raise ValueError("exponent must be nonnegative")
    ctx = _check_modulus(m)
    return Gf2Poly(ctx.pow(base.bits, e))


def weight(p: Gf2Poly) -> int:
    return p.bits.bit_count()


# --- Berlekamp-Massey ----------------------------------------------------

def berlekamp_massey_full(bits: Iterable[int]) -> tuple[Gf2Poly, int]:
    """Connection polynomial C(x) and linear complexity L of ``bits``.

    C(0) = 1 and s_t = sum_{i=1..L} c_i s_{t-i} for every t >= L.  The
    degree of C can be below L; the recurrence's characteristic
    polynomial is ``C.reciprocal(L)``.
    """
    c, b = 1, 1
    L, shift = 0, 1
    window = 0  # bit i holds s_{t-i}
    n = 0
    for t, s in enumerate(bits):
        n += 1
        window = (window << 1) | (s & 1)
        if (c & window).bit_count() & 1:
            prev = c
            c ^= b << shift
            if 2 * L <= t:
                L = t + 1 - L
                b = prev
                shift = 1
            else:
                shift += 1
        else:
            shift += 1
    if n == 0:
        raise ValueError("berlekamp_massey needs a nonempty sequence")
    return Gf2Poly(c), L


def berlekamp_massey(bits: Iterable[int]) -> Gf2Poly:
    """Minimal connection polynomial C(x) (with C(0) = 1) of a bit sequence."""
    return berlekamp_massey_full(bits)[0]


def replays(conn: Gf2Poly, length: int, bits: Sequence[int]) -> bool:
    """True when the recurrence of ``conn`` with length ``length`` predicts
    every bit of ``bits`` from index ``length`` on."""
    taps = [i for i in conn.exponents() if i > 0]
    for t in range(length, len(bits)):
        acc = 0
        for i in taps:
            acc ^= bits[t - i]
        if acc != bits[t]:
            return False
    return True


# --- factor tables and primitivity ---------------------------------------

@dataclass(frozen=True)
class FactorTable:
    n: int
    factors: tuple[tuple[int, int], ...]  # (prime, multiplicity)

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    @property
    def order(self) -> int:
        return (1 << self.n) - 1


@dataclass
class FactorTableReport:
    n: int
    product_ok: bool
    composite: list[int]  # indices of entries failing the primality test
    duplicate: list[int]

    @property
    def valid(self) -> bool:
        return self.product_ok and not self.composite and not self.duplicate

    def describe(self) -> str:
        if self.valid:
            return f"n={self.n}: valid"
        bits = []
        if not self.product_ok:
            bits.append(f"product differs from 2^{self.n}-1")
        if self.composite:
            bits.append("composite entries at " + ", ".join(map(str, self.composite)))
        if self.duplicate:
            bits.append("repeated entries at " + ", ".join(map(str, self.duplicate)))
        return f"n={self.n}: invalid ({'; '.join(bits)})"


def validate_factor_table(t: FactorTable) -> FactorTableReport:
    product = 1
    composite, duplicate, seen = [], [], set()
    for i, (p, k) in enumerate(t.factors):
        product *= p**k
        if p < 2 or k < 1 or not gmpy2.is_prime(p, MR_ROUNDS):
            composite.append(i)
        if p in seen:
            duplicate.append(i)
        seen.add(p)
    return FactorTableReport(t.n, product == t.order, composite, duplicate)


def parse_factor_table(text: str) -> FactorTable:
    n = None
    factors = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if n is None:
            m = re.fullmatch(r"n\s*=\s*(\d+)", line)
            if not m:
                raise FactorTableError(f"line {lineno}: expected 'n=<decimal>' header")
            n = int(m.group(1))
            continue
        m = re.fullmatch(r"(\d+)(?:\s*\^\s*(\d+))?", line)
        if not m:
            raise FactorTableError(f"line {lineno}: malformed factor {line!r}")
        factors.append((int(m.group(1)), int(m.group(2) or 1)))
    if n is None or n < 1:
        raise FactorTableError("missing 'n=' header")
    return FactorTable(n, tuple(factors))


def load_factor_table(source: str | Path | None = None, n: int | None = None) -> FactorTable:
    """Read and validate a factor table, either from ``source`` or from the
    tables shipped with the package (selected by ``n``)."""
    if source is not None:
        text = Path(source).read_text()
    else:
        if n is None:
            raise ValueError("need a file or a state size")
        text = _shipped_table_text(n)
    t = parse_factor_table(text)
    if n is not None and t.n != n:
        raise FactorTableError(f"table is for n={t.n}, wanted n={n}")
    report = validate_factor_table(t)
    if not report.valid:
        raise FactorTableError(report.describe())
    return t


@lru_cache(maxsize=None)
def _shipped_table_text(n: int) -> str:
    res = resources.files("xsplus") / "data" / f"factors_{n}.txt"
    if not res.is_file():
        raise FactorTableError(f"no shipped factor table for n={n}")
    return res.read_text()


@lru_cache(maxsize=None)
def shipped_factor_table(n: int) -> FactorTable:
    return load_factor_table(n=n)


def is_primitive(p: Gf2Poly, t: FactorTable) -> bool:
    """Order test: x^(2^n-1) = 1 and x^((2^n-1)/q) != 1 for each prime q."""
    if p.degree != t.n:
        raise FactorTableError(f"polynomial degree {p.degree} but table is for n={t.n}")
    if t.n == 1:
        return p.bits == 0b11
    ctx = _modulus(p.bits)
    order = t.order
    if ctx.pow(2, order) != 1:
        return False
    return all(ctx.pow(2, order // q) != 1 for q in t.primes)

