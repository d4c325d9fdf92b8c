"""Command line surface.

    tmi gen       -n N -t T -b B1,..,BN        transversal generators
    tmi build     -n N -t T -b ... [--closed]  build the complex
    tmi resolve   -n N -t T -b ...             Betti table from the complex
    tmi oracle    -n N -t T -b ...             Betti table from the ideal
    tmi verify    -n N -t T -b ...             certification report
    tmi depolarize MONO -m M -t T              Nagel-Reiner bijection
    tmi veronese-check -m M -t T               ball/subdivision conditions
    tmi export    -n N -t T -b ... --off PATH  mesh / JSON export

Exit codes: 0 success / all checks pass, 1 a check failed (a JSON failure
report goes to stdout), 2 parameter or size-cap error.  Output is
byte-deterministic for fixed flags.
"""

from __future__ import annotations

import argparse
import json
import sys

from tmi import export as export_mod
from tmi.complexes import complex_to_dict
from tmi.gamma import gamma, gamma_closed
from tmi.gf import DEFAULT_PRIME
from tmi.monomials import (
    BlockConfig,
    ParameterError,
    SizeCapError,
    format_ideal,
    format_monomial,
    parse_monomial,
    transversal_generators,
)
from tmi.oracle import betti_oracle
from tmi.resolution import betti_table, cellular_complex, check_acyclic, check_d2, check_minimal, hilbert_numerator_check
from tmi.veronese import depolarize, veronese_checks


def _add_config_args(p: argparse.ArgumentParser):
    p.add_argument("-n", type=int, required=True, help="number of blocks")
    p.add_argument("-t", type=int, required=True, help="transversal degree")
    p.add_argument("-b", type=str, required=True, help="comma-separated block sizes")


def _config(args) -> BlockConfig:
    b = tuple(int(x) for x in args.b.split(","))
    cfg = BlockConfig(args.n, args.t, b)
    if not cfg.monotone:
        print("warning: b is not weakly increasing (accepted; block order is respected)", file=sys.stderr)
    return cfg


def _build(cfg: BlockConfig, closed: bool):
    return gamma_closed(cfg) if closed else gamma(cfg)


def cmd_gen(args) -> int:
    cfg = _config(args)
    ideal = transversal_generators(cfg)
    print(format_ideal(ideal, cfg))
    if args.json:
        payload = {
            "config": cfg.to_dict(),
            "generators": [format_monomial(g, cfg) for g in ideal.gens],
        }
        with open(args.json, "w") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return 0


def cmd_build(args) -> int:
    cfg = _config(args)
    x = _build(cfg, args.closed)
    print(f"cells: {len(x)}  f-vector: {x.f_vector()}  arity: {x.arity}")
    if args.seed_check:
        other = gamma(cfg) if args.closed else gamma_closed(cfg)
        if other.cells != x.cells:
            only_a = sorted(str(c) for c in x.cells - other.cells)[:5]
            only_b = sorted(str(c) for c in other.cells - x.cells)[:5]
            print(json.dumps({"status": "fail", "check": "seed-check", "only_recursive_or_closed": [only_a, only_b]}))
            return 1
        print("seed-check: PASS (recursive and closed builders agree cell-for-cell)")
    if args.json:
        export_mod.write_json(x, args.json)
    return 0


def cmd_resolve(args) -> int:
    cfg = _config(args)
    x = _build(cfg, args.closed)
    table = betti_table(x)
    print(table.render())
    if args.json:
        with open(args.json, "w") as fh:
            json.dump({"config": cfg.to_dict(), "betti": table.to_dict()}, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return 0


def cmd_oracle(args) -> int:
    cfg = _config(args)
    ideal = transversal_generators(cfg)
    table = betti_oracle(ideal, p=args.prime, rational=args.rational)
    print(table.render())
    if args.json:
        with open(args.json, "w") as fh:
            json.dump({"config": cfg.to_dict(), "betti": table.to_dict()}, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return 0


def cmd_verify(args) -> int:
    cfg = _config(args)
    x = _build(cfg, args.closed)
    ideal = transversal_generators(cfg)
    chain = cellular_complex(x)
    reports = [
        check_d2(chain),
        check_minimal(x),
        check_acyclic(x, p=args.prime, rational=args.rational),
    ]
    if len(ideal.gens) <= 20:
        reports.append(hilbert_numerator_check(x, ideal))
    for r in reports:
        print(r.summary())
    if all(r.ok for r in reports):
        return 0
    print(json.dumps({
        "status": "fail",
        "checks": {r.name: {"ok": r.ok, "detail": r.detail} for r in reports},
    }, sort_keys=True))
    return 1


def cmd_depolarize(args) -> int:
    cfg = BlockConfig(args.m, args.t, (1,) * args.m)
    mono = parse_monomial(args.monomial, cfg)
    out = depolarize(mono)
    print(format_monomial(out, letter="y"))
    return 0


def cmd_veronese_check(args) -> int:
    rep = veronese_checks(args.m, args.t, p=args.prime)
    print(rep.summary())
    if rep.ok:
        return 0
    print(json.dumps({
        "status": "fail",
        "checks": {name: {"ok": ok, "detail": detail} for name, (ok, detail) in rep.checks.items()},
    }, sort_keys=True))
    return 1


def cmd_export(args) -> int:
    cfg = _config(args)
    x = _build(cfg, args.closed)
    if not args.off and not args.json:
        print("nothing to export: pass --off and/or --json", file=sys.stderr)
        return 2
    if args.off:
        export_mod.write_off(x, args.off)
        print(f"wrote {args.off}")
    if args.json:
        export_mod.write_json(x, args.json)
        print(f"wrote {args.json}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tmi", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("gen", help="print the transversal generators")
    _add_config_args(sp)
    sp.add_argument("--json", type=str, default=None)
    sp.set_defaults(fn=cmd_gen)

    sp = sub.add_parser("build", help="build the complex")
    _add_config_args(sp)
    sp.add_argument("--closed", action="store_true", help="use the closed-form builder")
    sp.add_argument("--seed-check", action="store_true", help="diff recursive vs closed-form builders")
    sp.add_argument("--json", type=str, default=None)
    sp.set_defaults(fn=cmd_build)

    sp = sub.add_parser("resolve", help="Betti table read off the complex")
    _add_config_args(sp)
    sp.add_argument("--closed", action="store_true")
    sp.add_argument("--json", type=str, default=None)
    sp.set_defaults(fn=cmd_resolve)

    sp = sub.add_parser("oracle", help="Betti table from the ideal alone")
    _add_config_args(sp)
    sp.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    sp.add_argument("--rational", action="store_true", help="exact rational ranks (slow)")
    sp.add_argument("--json", type=str, default=None)
    sp.set_defaults(fn=cmd_oracle)

    sp = sub.add_parser("verify", help="certify d2, minimality, acyclicity")
    _add_config_args(sp)
    sp.add_argument("--closed", action="store_true")
    sp.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    sp.add_argument("--rational", action="store_true", help="exact rational ranks (slow)")
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("depolarize", help="apply the depolarization bijection")
    sp.add_argument("monomial", type=str, help="e.g. x[1]*x[3]*x[4]")
    sp.add_argument("-m", type=int, required=True)
    sp.add_argument("-t", type=int, required=True)
    sp.set_defaults(fn=cmd_depolarize)

    sp = sub.add_parser("veronese-check", help="subdivision/ball necessary conditions")
    sp.add_argument("-m", type=int, required=True)
    sp.add_argument("-t", type=int, required=True)
    sp.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    sp.set_defaults(fn=cmd_veronese_check)

    sp = sub.add_parser("export", help="write OFF / JSON files")
    _add_config_args(sp)
    sp.add_argument("--closed", action="store_true")
    sp.add_argument("--off", type=str, default=None)
    sp.add_argument("--json", type=str, default=None)
    sp.set_defaults(fn=cmd_export)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ParameterError, SizeCapError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
