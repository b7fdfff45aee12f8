import itertools
from collections import Counter

import numpy as np
import pytest

from xsplus.analysis import (
    AnalysisError,
    bit_period,
    equidist_census,
    equispaced_seeds,
    equispaced_states,
    full_period_outputs,
    is_equidistributed,
    least_period,
    linear_complexity,
    linear_complexity_pvalue,
    smoke_battery,
    zeroland_curve,
)
from xsplus.engine import PRESETS, GeneratorConfig, GeneratorState, ShiftTriple, Xorshift, config_for_bits
from xsplus.gf2poly import berlekamp_massey_full

from oracles import toy_cycle

TOY = PRESETS["xorshift6plus"]
X128 = PRESETS["xorshift128plus"]


def toy_configs():
    """Every full-period 6-bit (w=3, r=2) transition, with scrambler none."""
    out = []
    for t in itertools.product(range(1, 3), repeat=3):
        cfg = config_for_bits(6, t, "none", word_bits=3)
        try:
            full_period_outputs(cfg)
        except AnalysisError:
            continue
        out.append(cfg)
    return out


# --- census -----------------------------------------------------------------

def test_census_unscrambled_two_dim():
    c = equidist_census(TOY.unscrambled(), 2)
    assert c.verdict == 2 and c.total == 63
    assert c.count(0, 0) == 0
    assert all(v == 1 for v in c.counts.values())


def test_census_plus_pair_zero_twice():
    c = equidist_census(TOY, 2)
    assert c.count(0, 0) == 2
    assert c.verdict == 1
    assert c.total == 63


def test_census_plus_one_dim_counts():
    c = equidist_census(TOY, 1)
    assert c.counts[(0,)] == 7
    assert all(c.counts[(v,)] == 8 for v in range(1, 8))


def test_census_against_brute_force_cycle():
    # plus outputs recomputed from the independent stepper
    cyc = toy_cycle()
    outs = [(s[1] + s[0]) & 7 for s in cyc[1:] + cyc[:1]]
    pairs = Counter((outs[i], outs[(i + 1) % 63]) for i in range(63))
    assert equidist_census(TOY, 2).counts == pairs


def test_scrambling_loses_at_most_one_dimension_on_toy_family():
    cfgs = toy_configs()
    assert cfgs
    for cfg in cfgs:
        k_none = equidist_census(cfg, 2).verdict
        plus = GeneratorConfig(cfg.triple, 3, 2, "plus")
        assert equidist_census(plus, 2).verdict >= k_none - 1


def test_census_rejects_large_or_degenerate():
    with pytest.raises(AnalysisError):
        equidist_census(X128, 1)
    with pytest.raises(AnalysisError):
        equidist_census(config_for_bits(6, (1, 1, 1), word_bits=3), 1)


def test_is_equidistributed_formula():
    # 2^(n - t k) per tuple: n=6, t=3, k=1 -> 8 each, zero 7
    counts = Counter({(v,): 8 for v in range(1, 8)})
    counts[(0,)] = 7
    assert is_equidistributed(counts, 1, 3, 6)
    counts[(0,)] = 8
    assert not is_equidistributed(counts, 1, 3, 6)
    assert not is_equidistributed(counts, 3, 3, 6)


# --- bit periods --------------------------------------------------------------

@pytest.mark.parametrize("bit", [0, 1, 2])
def test_bit_period_toy(bit):
    assert bit_period(TOY, bit) == 63


def test_least_period():
    assert least_period([0, 1, 1] * 5) == 3
    assert least_period([1] + [0] * 62) == 63
    with pytest.raises(AnalysisError):
        least_period([0] * 63)


# --- linear complexity --------------------------------------------------------

def test_linear_complexity_examples():
    assert linear_complexity([0, 1] * 32) == 2
    g = Xorshift(X128, seed=1)
    outs = g.outputs(512)
    assert linear_complexity([o & 1 for o in outs]) == 128
    assert linear_complexity([o >> 63 & 1 for o in outs]) >= 200
    with pytest.raises(ValueError):
        linear_complexity([1] * 10)


def test_linear_complexity_distribution():
    # exact counts sum to 2^N; tiny N checked by enumeration
    N = 10
    counts = Counter(berlekamp_massey_full(bits)[1] for bits in itertools.product((0, 1), repeat=N))
    cdf = 0.0
    for L in range(N + 1):
        cdf += counts[L] / 2**N
        assert linear_complexity_pvalue(L, N) == pytest.approx(cdf)
    assert linear_complexity_pvalue(N, N) == 1.0


# --- seeds --------------------------------------------------------------------

def test_equispaced_seeds():
    s = equispaced_seeds(100)
    assert s[0] == 1
    assert s[1] == 1 + 2**64 // 100
    assert len(s) == 100 and s[-1] < 2**64
    assert equispaced_seeds(1) == [1]


def test_equispaced_states_64_bit_verbatim():
    cfg = GeneratorConfig(ShiftTriple(13, 7, 17), 32, 2)
    states = equispaced_states(cfg, 4)
    assert [st.as_int(32) for st in states] == equispaced_seeds(4)


# --- zeroland -----------------------------------------------------------------

def test_zeroland_shape_and_bounds():
    rep = zeroland_curve(X128)
    assert len(rep.curve) == 997
    assert np.all((rep.curve >= 0) & (rep.curve <= 1))
    assert rep.csv().splitlines()[0] == "position,mean_ones_fraction"
    assert len(rep.csv().splitlines()) == 998


def test_zeroland_first_window_by_hand():
    # average over the n one-bit seeds of the ones in outputs 0..3
    rep = zeroland_curve(X128, outputs=10)
    tot = 0.0
    for s in range(128):
        words = [0, 0]
        words[s // 64] = 1 << (s % 64)
        outs = Xorshift(X128, GeneratorState(words, 0)).outputs(4)
        tot += sum(bin(o).count("1") for o in outs) / 256
    assert rep.curve[0] == pytest.approx(tot / 128)


@pytest.mark.parametrize("name", ["xorshift128plus", "xorshift128star", "xorshift1024star"])
def test_zeroland_converges(name):
    tail = zeroland_curve(PRESETS[name]).curve[-100:]
    assert np.all((tail > 0.45) & (tail < 0.55))


def test_zeroland_deterministic():
    a, b = zeroland_curve(X128), zeroland_curve(X128)
    assert a.csv() == b.csv()


# --- smoke battery ------------------------------------------------------------

def test_smoke_plus_no_systematic_distribution_failures():
    rep = smoke_battery(X128, seeds=100, outputs=10000)
    sys_ = rep.systematic()
    for d in ("forward", "reverse"):
        assert (d, "monobit") not in sys_
        assert (d, "byte_chi2") not in sys_
    # the lowest bit is linear; the reversed stream's bit 0 is the top bit
    assert ("forward", "lincomp_bit0") in sys_
    assert ("reverse", "lincomp_bit0") not in sys_


def test_smoke_none_linear_probe():
    rep = smoke_battery(X128.unscrambled(), seeds=20, outputs=2000)
    assert ("forward", "lincomp_bit0") in rep.systematic()
    # after reversal bit 0 comes from bit 63, still linear without a scrambler
    assert ("reverse", "lincomp_bit0") in rep.systematic()


def test_smoke_report_serializable():
    import json

    rep = smoke_battery(X128, seeds=3, outputs=500)
    d = json.loads(json.dumps(rep.as_dict()))
    assert d["seeds"] == 3 and "forward/monobit" in d["failures"]
