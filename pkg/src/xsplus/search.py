"""Enumeration and certification of full-period shift triples."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .engine import DegenerateCharpolyError, GeneratorConfig, ShiftTriple, charpoly, config_for_bits
from .gf2poly import FactorTable, Gf2Poly, _modulus, is_primitive, shipped_factor_table


@dataclass(frozen=True)
class SearchDomain:
    """Candidate triples: a, b >= 1, a + b <= max_ab, c in [c_min, c_max].

    ``coprime`` requires gcd(a, b) = 1.
    """

    max_ab: int = 64
    c_min: int = 1
    c_max: int = 63
    coprime: bool = True
    a_max: int = 63
    b_max: int = 63

    def candidates(self, word_bits: int = 64):
        for a in range(1, min(self.a_max, word_bits - 1) + 1):
            for b in range(1, min(self.b_max, word_bits - 1) + 1):
                if a + b > self.max_ab:
                    continue
                if self.coprime and math.gcd(a, b) != 1:
                    continue
                for c in range(self.c_min, min(self.c_max, word_bits - 1) + 1):
                    yield ShiftTriple(a, b, c)


@dataclass
class Certificate:
    triple: ShiftTriple
    n: int
    primitive: bool
    weight: int | None
    poly: Gf2Poly | None
    reason: str = ""

    def as_dict(self) -> dict:
        return {
            "triple": str(self.triple),
            "n": self.n,
            "primitive": self.primitive,
            "weight": self.weight,
            "poly": self.poly.to_hex() if self.poly is not None else None,
            "reason": self.reason,
        }


def certify_config(cfg: GeneratorConfig, factors: FactorTable | None = None) -> Certificate:
    """Degree check via Berlekamp-Massey first, then the order tests."""
    if factors is None:
        factors = shipped_factor_table(cfg.n)
    if factors.n != cfg.n:
        raise ValueError(f"factor table is for n={factors.n}, config has n={cfg.n}")
    try:
        p = charpoly(cfg)
    except DegenerateCharpolyError as e:
        return Certificate(cfg.triple, cfg.n, False, e.partial.weight, e.partial,
                           f"recurrence degree {e.complexity} < {cfg.n}")
    # x^(2^n) = x is necessary for irreducibility and much cheaper than the
    # full order test, so it screens most reducible polynomials.
    ctx = _modulus(p.bits)
    r = 2
    for _ in range(cfg.n):
        r = ctx.sqr(r)
    if r != 2 or not is_primitive(p, factors):
        return Certificate(cfg.triple, cfg.n, False, p.weight, p, "order test failed")
    return Certificate(cfg.triple, cfg.n, True, p.weight, p)


def certify_triple(n: int, triple, factors: FactorTable | None = None,
                   word_bits: int = 64) -> Certificate:
    return certify_config(config_for_bits(n, triple, "none", word_bits), factors)


def enumerate_full_period_triples(n: int, domain: SearchDomain | None = None,
                                  factors: FactorTable | None = None, word_bits: int = 64,
                                  progress=None) -> list[tuple[ShiftTriple, int]]:
    """All full-period triples of ``domain`` for ``n`` state bits, sorted."""
    domain = domain or SearchDomain()
    if factors is None:
        factors = shipped_factor_table(n)
    found = []
    for i, triple in enumerate(domain.candidates(word_bits)):
        cert = certify_config(config_for_bits(n, triple, "none", word_bits), factors)
        if cert.primitive:
            found.append((triple, cert.weight))
        if progress is not None:
            progress(i, triple, cert)
    found.sort()
    return found


def count_by_domain(triples: list[tuple[ShiftTriple, int]], domains: dict[str, SearchDomain]) -> dict[str, int]:
    """Counts of an already enumerated superset restricted to each domain."""
    out = {}
    for name, d in domains.items():
        allowed = set(d.candidates())
        out[name] = sum(1 for t, _ in triples if t in allowed)
    return out
