"""Command-line front end: ``xsplus <subcommand> ...``.

Exit status is 0 on success, 1 on a domain error (bad state, generator
not full period, invalid factor table, ...) and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import analysis, engine, jump, search
from .engine import GeneratorConfig, ShiftTriple, PRESETS
from .gf2poly import FactorTable, load_factor_table, shipped_factor_table

ALGOS = sorted(PRESETS) + ["xsaddlike"]


def _config(args) -> GeneratorConfig:
    triple = ShiftTriple.parse(args.triple) if args.triple else None
    if args.algo == "xsaddlike":
        if triple is None:
            raise ValueError("xsaddlike has no built-in shifts; pass --triple")
        cfg = GeneratorConfig(triple, 32, 4, "plus", update="xsadd")
    elif args.algo:
        cfg = PRESETS[args.algo]
        if triple is not None:
            cfg = cfg.with_triple(triple)
    else:
        if triple is None:
            raise ValueError("pass --algo or --triple")
        bits = args.bits or 128
        cfg = engine.config_for_bits(bits, triple, "plus", args.word_bits)
    if args.bits and args.bits != cfg.n:
        raise ValueError(f"--bits {args.bits} disagrees with {cfg.n}-bit configuration")
    if args.scrambler or args.multiplier is not None:
        scr = args.scrambler or cfg.scrambler
        mult = args.multiplier if scr == "star" else None
        if scr == "star" and mult is None:
            mult = cfg.multiplier if cfg.scrambler == "star" else engine.M8
        cfg = GeneratorConfig(cfg.triple, cfg.word_bits, cfg.word_count, scr, mult, cfg.update)
    return cfg


def _factors(args, n: int) -> FactorTable:
    if args.factors:
        return load_factor_table(args.factors, n)
    return shipped_factor_table(n)


def _emit_json(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def _hex_width(w: int) -> int:
    return (w + 3) // 4


# --- subcommands ----------------------------------------------------------

def cmd_gen(args) -> int:
    cfg = _config(args)
    g = engine.Xorshift(cfg, seed=args.seed, reverse=args.reverse)
    if args.j:
        g.state = jump.apply_jump(g.state, jump.jump_poly(cfg, jump.parse_jump(args.j)), cfg)
    w = cfg.word_bits
    if args.hex:
        hw = _hex_width(w)
        for _ in range(args.count):
            print(f"{g.next():0{hw}x}")
    else:
        nbytes = (w + 7) // 8
        out = sys.stdout.buffer
        chunk = bytearray()
        for i in range(args.count):
            chunk += g.next().to_bytes(nbytes, "little")
            if len(chunk) >= 1 << 16:
                out.write(chunk)
                chunk.clear()
        out.write(chunk)
        out.flush()
    return 0


def cmd_charpoly(args) -> int:
    cfg = _config(args)
    p = engine.charpoly(cfg)
    if args.json:
        _emit_json({"config": cfg.fingerprint, "poly": p.to_hex(), "degree": p.degree, "weight": p.weight})
    else:
        print(p.to_hex())
        print(f"weight={p.weight}")
    return 0


def cmd_certify(args) -> int:
    cfg = _config(args)
    cert = search.certify_config(cfg, _factors(args, cfg.n))
    if args.json:
        _emit_json(cert.as_dict())
    else:
        print(f"triple={cert.triple} n={cert.n}")
        print(f"primitive={'true' if cert.primitive else 'false'}")
        print(f"weight={cert.weight}")
        if cert.poly is not None:
            print(cert.poly.to_hex())
        if cert.reason:
            print(f"reason={cert.reason}")
    return 0


def cmd_search(args) -> int:
    domain = search.SearchDomain(max_ab=args.max_ab, c_min=args.c_min, c_max=args.c_max,
                                 coprime=not args.no_coprime)
    found = search.enumerate_full_period_triples(args.bits, domain, _factors(args, args.bits),
                                                 args.word_bits)
    print("a,b,c,weight")
    for t, wgt in found:
        print(f"{t.a},{t.b},{t.c},{wgt}")
    print(f"# {len(found)} full-period triples", file=sys.stderr)
    return 0


def cmd_jump_poly(args) -> int:
    cfg = _config(args)
    mask = jump.jump_poly(cfg, jump.parse_jump(args.j), _factors(args, cfg.n))
    if args.json:
        _emit_json({"j": str(mask.j), "config": mask.fingerprint,
                    "words": [f"0x{w:016x}" for w in mask.words]})
    elif args.raw:
        print(mask.raw())
    else:
        print(mask.dumps())
    return 0


def cmd_jump(args) -> int:
    cfg = _config(args)
    state = engine.seed_from_u64(args.seed, cfg)
    mask = jump.jump_poly(cfg, jump.parse_jump(args.j), _factors(args, cfg.n))
    state = jump.apply_jump(state, mask, cfg)
    hw = _hex_width(cfg.word_bits)
    print(f"ptr={state.ptr}")
    print("words=" + ",".join(f"{x:0{hw}x}" for x in state.words))
    g = engine.Xorshift(cfg, state)
    for _ in range(args.count):
        print(f"{g.next():0{hw}x}")
    return 0


def cmd_zeroland(args) -> int:
    cfg = _config(args)
    rep = analysis.zeroland_curve(cfg, args.outputs, args.window)
    if args.out == "csv":
        sys.stdout.write(rep.csv())
    elif args.json:
        _emit_json({"config": cfg.fingerprint, "scrambler": cfg.scrambler,
                    "mean": round(rep.mean, 6), "stddev": round(rep.stddev, 6),
                    "points": len(rep.curve)})
    else:
        print(f"zeroland {cfg.fingerprint} scrambler={cfg.scrambler}")
        print(f"mean={rep.mean:.4f} stddev={rep.stddev:.4f} points={len(rep.curve)}")
    return 0


def cmd_eqdist(args) -> int:
    cfg = _config(args)
    census = analysis.equidist_census(cfg, args.k)
    t = census.output_bits
    if args.json:
        _emit_json({"config": cfg.fingerprint, "scrambler": cfg.scrambler, "k": census.k,
                    "period": census.period, "verdict": census.verdict,
                    "counts": {",".join(f"{v:0{t}b}" for v in key): c
                               for key, c in sorted(census.counts.items())}})
    else:
        print(f"eqdist {cfg.fingerprint} scrambler={cfg.scrambler} k={census.k} period={census.period}")
        hist: dict[int, int] = {}
        for c in census.counts.values():
            hist[c] = hist.get(c, 0) + 1
        for c in sorted(hist):
            print(f"  {hist[c]} tuples appear {c} times")
        missing = (1 << (t * census.k)) - len(census.counts)
        if missing:
            print(f"  {missing} tuples never appear")
        print(f"  zero tuple appears {census.count(*(0,) * census.k)} times")
        print(f"verdict: {census.verdict}-dimensionally equidistributed")
    return 0


def cmd_lincomp(args) -> int:
    cfg = _config(args)
    if not 0 <= args.bit < cfg.word_bits:
        raise ValueError(f"bit {args.bit} outside a {cfg.word_bits}-bit word")
    g = engine.Xorshift(cfg, seed=args.seed, reverse=args.reverse)
    bits = [(g.next() >> args.bit) & 1 for _ in range(args.length)]
    L = analysis.linear_complexity(bits)
    p = analysis.linear_complexity_pvalue(L, args.length)
    if args.json:
        _emit_json({"config": cfg.fingerprint, "bit": args.bit, "length": args.length,
                    "reverse": args.reverse, "complexity": L, "p_value": p})
    else:
        print(f"lincomp {cfg.fingerprint} bit={args.bit} length={args.length}"
              f"{' reversed' if args.reverse else ''}")
        print(f"complexity={L} p={p:.4g}")
    return 0


def cmd_smoke(args) -> int:
    cfg = _config(args)
    rep = analysis.smoke_battery(cfg, args.seeds, args.outputs, args.lc_bits)
    if args.json:
        _emit_json(rep.as_dict())
    else:
        print("\n".join(rep.lines()))
    return 0


def cmd_bench(args) -> int:
    cfg = _config(args)
    g = engine.Xorshift(cfg, seed=args.seed)
    per64 = max(1, 64 // cfg.word_bits)
    calls = args.count * per64
    sink = 0
    nxt = g.next
    t0 = time.perf_counter_ns()
    for _ in range(calls):
        sink ^= nxt()
    dt = time.perf_counter_ns() - t0
    print(f"bench (informational) {cfg.fingerprint} scrambler={cfg.scrambler}")
    print(f"{dt / args.count:.1f} ns/64b over {args.count} x 64 bits (sink={sink & 0xff:02x})")
    return 0


# --- parser ---------------------------------------------------------------

def _add_config(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("generator")
    g.add_argument("--algo", choices=ALGOS)
    g.add_argument("--bits", type=int, help="state bits n")
    g.add_argument("--word-bits", type=int, default=64)
    g.add_argument("--triple", help="shift triple a,b,c")
    g.add_argument("--scrambler", choices=engine.SCRAMBLERS)
    g.add_argument("--multiplier", type=lambda s: int(s, 0), help="odd star multiplier")
    g.add_argument("--factors", help="factor table file for 2^n - 1")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="xsplus", description="xorshift+ engineering toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    def cmd(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=fn)
        _add_config(p)
        return p

    p = cmd("gen", cmd_gen, "emit outputs (raw little-endian bytes or hex lines)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=16)
    p.add_argument("--hex", action="store_true")
    p.add_argument("--reverse", action="store_true")
    p.add_argument("--j", help="jump ahead before emitting (decimal or 2^k)")

    p = cmd("charpoly", cmd_charpoly, "characteristic polynomial and weight")
    p.add_argument("--json", action="store_true")

    p = cmd("certify", cmd_certify, "full-period certificate for one triple")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("search", help="enumerate full-period triples as CSV")
    p.set_defaults(func=cmd_search)
    p.add_argument("--bits", type=int, default=128)
    p.add_argument("--word-bits", type=int, default=64)
    p.add_argument("--max-ab", type=int, default=64)
    p.add_argument("--c-min", type=int, default=1)
    p.add_argument("--c-max", type=int, default=63)
    p.add_argument("--no-coprime", action="store_true")
    p.add_argument("--factors")

    p = cmd("jump-poly", cmd_jump_poly, "jump mask x^j mod P(x)")
    p.add_argument("--j", required=True)
    p.add_argument("--raw", action="store_true")
    p.add_argument("--json", action="store_true")

    p = cmd("jump", cmd_jump, "seed, jump, then emit outputs")
    p.add_argument("--j", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=4)

    p = cmd("zeroland", cmd_zeroland, "escape-from-zeroland curve")
    p.add_argument("--out", choices=["csv", "summary"], default="summary")
    p.add_argument("--outputs", type=int, default=1000)
    p.add_argument("--window", type=int, default=4)
    p.add_argument("--json", action="store_true")

    p = cmd("eqdist", cmd_eqdist, "exhaustive equidistribution census (n <= 24)")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--json", action="store_true")

    p = cmd("lincomp", cmd_lincomp, "linear complexity of one output bit")
    p.add_argument("--bit", type=int, default=0)
    p.add_argument("--length", type=int, default=512)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--reverse", action="store_true")
    p.add_argument("--json", action="store_true")

    p = cmd("smoke", cmd_smoke, "monobit / byte chi-square / low-bit linear complexity")
    p.add_argument("--seeds", type=int, default=100)
    p.add_argument("--outputs", type=int, default=10000)
    p.add_argument("--lc-bits", type=int)
    p.add_argument("--json", action="store_true")

    p = cmd("bench", cmd_bench, "informational speed measurement")
    p.add_argument("--count", type=int, default=200000)
    p.add_argument("--seed", type=int, default=0)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
