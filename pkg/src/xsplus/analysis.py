"""Desk-scale structural and statistical analyses.

Exhaustive equidistribution censuses and bit periods for toy generators,
escape-from-zeroland curves, linear-complexity probes and a small smoke
battery (monobit, byte chi-square, low-bit linear complexity), each run
on a generator and on its bit-reversed twin.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy import stats

from .engine import (
    GeneratorConfig,
    GeneratorState,
    _step,
    batch_outputs,
    reverse_outputs,
    seed_from_u64,
    states_array,
)
from .gf2poly import berlekamp_massey_full

MAX_CENSUS_BITS = 24
P_LOW, P_HIGH = 0.001, 0.999


class AnalysisError(ValueError):
    pass


# --- full-period walks ---------------------------------------------------

def _logical_period(cfg: GeneratorConfig) -> int:
    st = GeneratorState.from_int(1, cfg)
    start = st.logical()
    for i in range(1, 1 << cfg.n):
        _step(cfg, st)
        if st.logical() == start:
            return i
    raise AnalysisError("no cycle found")  # pragma: no cover


def full_period_outputs(cfg: GeneratorConfig) -> list[int]:
    """Outputs over one whole cycle starting from the state with value 1.

    Raises AnalysisError unless the cycle has length 2^n - 1.
    """
    n = cfg.n
    if n > MAX_CENSUS_BITS:
        raise AnalysisError(f"n={n} too large for exhaustive enumeration (max {MAX_CENSUS_BITS})")
    period = (1 << n) - 1
    if _logical_period(cfg) != period:
        raise AnalysisError(f"{cfg.fingerprint} is not full period")
    st = GeneratorState.from_int(1, cfg)
    return [_step(cfg, st) for _ in range(period)]


@dataclass
class EquidistCensus:
    k: int
    counts: Counter
    verdict: int
    period: int
    output_bits: int

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def count(self, *tup: int) -> int:
        return self.counts.get(tuple(tup), 0)


def _windows(outs: list[int], k: int) -> Counter:
    N = len(outs)
    ext = outs + outs[: k - 1]
    return Counter(tuple(ext[i:i + k]) for i in range(N))


def is_equidistributed(counts: Counter, k: int, t: int, n: int) -> bool:
    """Every k-tuple appears 2^(n-tk) times, the zero tuple once fewer."""
    if t * k > n:
        return False
    each = 1 << (n - t * k)
    zero = (0,) * k
    if len(counts) != (1 << (t * k)) - (1 if each == 1 else 0):
        return False
    return all(v == (each - 1 if key == zero else each) for key, v in counts.items())


def equidist_census(cfg: GeneratorConfig, k: int) -> EquidistCensus:
    if k < 1:
        raise ValueError("k must be positive")
    outs = full_period_outputs(cfg)
    t, n = cfg.word_bits, cfg.n
    verdict = 0
    for kk in range(1, k + 1):
        if not is_equidistributed(_windows(outs, kk), kk, t, n):
            break
        verdict = kk
    return EquidistCensus(k, _windows(outs, k), verdict, len(outs), t)


def least_period(bits: list[int]) -> int:
    """Least period of a cyclic bit sequence."""
    N = len(bits)
    if N == 0 or not any(bits):
        raise AnalysisError("constant-zero sequence has no meaningful period")
    for d in range(1, N + 1):
        if N % d == 0 and all(bits[i] == bits[(i + d) % N] for i in range(N)):
            return d
    return N  # pragma: no cover


def bit_period(cfg: GeneratorConfig, bit: int) -> int:
    if not 0 <= bit < cfg.word_bits:
        raise ValueError(f"bit {bit} outside a {cfg.word_bits}-bit word")
    return least_period([(o >> bit) & 1 for o in full_period_outputs(cfg)])


# --- escape from zeroland ------------------------------------------------

@dataclass
class ZerolandReport:
    curve: np.ndarray
    mean: float
    stddev: float
    window: int
    outputs: int

    def csv(self) -> str:
        lines = ["position,mean_ones_fraction"]
        lines += [f"{i},{v:.6f}" for i, v in enumerate(self.curve)]
        return "\n".join(lines) + "\n"


def single_bit_states(cfg: GeneratorConfig) -> np.ndarray:
    """(n, r) array: state s has only bit s % w of word s // w set."""
    w = cfg.word_bits
    arr = np.zeros((cfg.n, cfg.word_count), dtype=np.uint64)
    for s in range(cfg.n):
        arr[s, s // w] = np.uint64(1) << np.uint64(s % w)
    return arr


def zeroland_curve(cfg: GeneratorConfig, outputs: int = 1000, window: int = 4) -> ZerolandReport:
    """Ones density over a sliding window, averaged over one-bit seeds."""
    words = single_bit_states(cfg)
    outs = batch_outputs(cfg, words, outputs)
    ones = np.bitwise_count(outs).astype(np.int64)
    csum = np.concatenate([np.zeros((ones.shape[0], 1), np.int64), np.cumsum(ones, axis=1)], axis=1)
    per_seed = (csum[:, window:] - csum[:, :-window]) / (window * cfg.word_bits)
    curve = per_seed.mean(axis=0)
    return ZerolandReport(curve, float(curve.mean()), float(curve.std()), window, outputs)


# --- linear complexity ---------------------------------------------------

def linear_complexity(bits: list[int]) -> int:
    if len(bits) < 64:
        raise ValueError("linear complexity probe needs at least 64 bits")
    return berlekamp_massey_full(bits)[1]


@lru_cache(maxsize=64)
def _lc_cdf(N: int) -> list[float]:
    # number of length-N sequences with linear complexity L
    counts = [1] + [1 << min(2 * L - 1, 2 * N - 2 * L) for L in range(1, N + 1)]
    total = 1 << N
    acc, cdf = 0, []
    for c in counts:
        acc += c
        cdf.append(float(Fraction(acc, total)))
    return cdf


def linear_complexity_pvalue(L: int, N: int) -> float:
    """P(complexity <= L) for N uniformly random bits."""
    return _lc_cdf(N)[L]


# --- seeds ----------------------------------------------------------------

def equispaced_seeds(count: int) -> list[int]:
    """1 + i * floor(2^64 / count) for 0 <= i < count."""
    if count < 1:
        raise ValueError("count must be positive")
    step = (1 << 64) // count
    return [1 + i * step for i in range(count)]


def equispaced_states(cfg: GeneratorConfig, count: int) -> list[GeneratorState]:
    """64-bit states take the seeds verbatim; wider ones go through
    ``seed_from_u64``."""
    seeds = equispaced_seeds(count)
    if cfg.n == 64:
        return [GeneratorState.from_int(s, cfg) for s in seeds]
    return [seed_from_u64(s, cfg) for s in seeds]


# --- smoke battery --------------------------------------------------------

def monobit_pvalue(outs: np.ndarray, w: int) -> float:
    nbits = outs.size * w
    ones = int(np.bitwise_count(outs).sum())
    s = 2 * ones - nbits
    return math.erfc(abs(s) / math.sqrt(2 * nbits))


def byte_chi2_pvalue(outs: np.ndarray, w: int) -> float:
    if w >= 8:
        nb = w // 8
        by = outs.astype("<u8").view(np.uint8).reshape(-1, 8)[:, :nb].ravel()
        bins = 256
    else:
        by = outs.astype(np.int64)
        bins = 1 << w
    counts = np.bincount(by, minlength=bins)
    exp = by.size / bins
    chi = float(((counts - exp) ** 2 / exp).sum())
    return float(stats.chi2.sf(chi, bins - 1))


CHECKS = ("monobit", "byte_chi2", "lincomp_bit0")


@dataclass
class SmokeReport:
    fingerprint: str
    scrambler: str
    seeds: int
    outputs: int
    lc_bits: int
    # (direction, check) -> per-seed p-values
    pvalues: dict = field(default_factory=dict)

    def failures(self, direction: str, check: str) -> int:
        return sum(not P_LOW <= p <= P_HIGH for p in self.pvalues[direction, check])

    def systematic(self) -> list[tuple[str, str]]:
        return [key for key in self.pvalues if self.failures(*key) == self.seeds]

    def as_dict(self) -> dict:
        return {
            "config": self.fingerprint,
            "scrambler": self.scrambler,
            "seeds": self.seeds,
            "outputs": self.outputs,
            "lc_bits": self.lc_bits,
            "failures": {f"{d}/{c}": self.failures(d, c) for d, c in self.pvalues},
            "systematic": [f"{d}/{c}" for d, c in self.systematic()],
        }

    def lines(self) -> list[str]:
        out = [f"smoke {self.fingerprint} scrambler={self.scrambler} seeds={self.seeds} "
               f"outputs={self.outputs} lc_bits={self.lc_bits}"]
        for d, c in self.pvalues:
            f = self.failures(d, c)
            tag = "SYSTEMATIC" if f == self.seeds else "ok"
            out.append(f"{d:8s} {c:13s} failures={f:3d}/{self.seeds} {tag}")
        return out


def smoke_battery(cfg: GeneratorConfig, seeds: int = 100, outputs: int = 10000,
                  lc_bits: int | None = None) -> SmokeReport:
    """A check fails for a seed when its p-value leaves [0.001, 0.999];
    a failure is systematic when it happens for every seed."""
    if lc_bits is None:
        lc_bits = max(512, 2 * cfg.n + 64)
    count = max(outputs, lc_bits)
    words = states_array(equispaced_states(cfg, seeds))
    outs = batch_outputs(cfg, words, count)
    w = cfg.word_bits
    report = SmokeReport(cfg.fingerprint, cfg.scrambler, seeds, outputs, lc_bits)
    for direction, data in (("forward", outs), ("reverse", reverse_outputs(outs, w))):
        mono, chi, lc = [], [], []
        for row in data:
            sample = row[:outputs]
            mono.append(monobit_pvalue(sample, w))
            chi.append(byte_chi2_pvalue(sample, w))
            bits = [int(v) & 1 for v in row[:lc_bits]]
            lc.append(linear_complexity_pvalue(linear_complexity(bits), lc_bits))
        report.pvalues[direction, "monobit"] = mono
        report.pvalues[direction, "byte_chi2"] = chi
        report.pvalues[direction, "lincomp_bit0"] = lc
    return report
