"""``virw`` command line.  Exit codes: 0 all checks pass, 1 a check failed, 2 bad input."""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import List, Optional

from . import __version__
from .catalog import SpecError, make_algebra, spec_from_config, witt
from .config import SUITES, ConfigError, RunConfig, load_config
from .cover import CoverError, cover_weight_rank
from .enveloping import UEnv
from .graded import bracket, format_element, parse_element, parse_words, verify_axioms
from .modules import (ModuleError, check_module_axioms, cyclic_span_rank,
                      format_vector, min_annihilating_order, module_from_config, parse_vector)
from .report import INFO, Report, format_table
from .rings import RingError
from .suites import run_suites

_INPUT_ERRORS = (ConfigError, SpecError, ModuleError, RingError, CoverError, ValueError, KeyError)


class UsageError(Exception):
    pass


def _load(args) -> RunConfig:
    cfg = load_config(args.config)
    if args.seed is not None:
        cfg.seed = args.seed
    return cfg


def _algebra(args, cfg: RunConfig):
    if getattr(args, "family", None):
        block = {"family": args.family}
        if args.beta is not None:
            block["beta"] = args.beta
        try:
            return make_algebra(spec_from_config(block))
        except (SpecError, KeyError) as e:
            raise ConfigError("--family", str(e)) from None
    return make_algebra(cfg.algebra if cfg.algebra is not None else witt())


def _module(args, cfg: RunConfig):
    if not cfg.modules:
        raise ConfigError("modules", "the command needs at least one module block")
    if not 0 <= args.module < len(cfg.modules):
        raise ConfigError(f"modules[{args.module}]", "no such module")
    alg = make_algebra(cfg.algebra) if cfg.algebra is not None else None
    try:
        return module_from_config(alg, cfg.modules[args.module])
    except (ModuleError, SpecError, TypeError, ValueError) as e:
        raise ConfigError(f"modules[{args.module}]", str(e)) from None


def _expand_powers(text: str) -> str:
    """d0^k is shorthand for the k-fold product d0*...*d0."""
    return re.sub(r"\bd0\^(\d+)", lambda m: "*".join(["d0"] * int(m.group(1))) if int(m.group(1)) else "1", text)


def _emit(reports: List[Report], args, verbose: bool = True) -> int:
    print(format_table(reports, verbose=verbose))
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            for rep in reports:
                fh.write(rep.to_jsonl())
    return 0 if all(r.passed for r in reports) else 1


# ---------------------------------------------------------------------------
# subcommands


def cmd_verify(args) -> int:
    cfg = _load(args)
    print(json.dumps(cfg.echo(), sort_keys=True, indent=2, ensure_ascii=False))
    alg = _algebra(args, cfg)
    rep = Report("verify")
    r = verify_axioms(alg, args.window or cfg.window)
    rep.add(f"super-Lie axioms {alg.name}", r.passed, {"window": r.window}, "pass", r.summary())
    for n in range(len(cfg.modules)):
        mod = _module(argparse.Namespace(module=n), cfg)
        chk = check_module_axioms(mod, min(cfg.window, 3))
        rep.add(f"module axioms {mod.label}", chk.passed, {"module": n}, "pass", chk.summary())
    return _emit([rep], args)


def cmd_bracket(args) -> int:
    cfg = _load(args)
    alg = _algebra(args, cfg)
    a = parse_element(args.a, alg)
    b = parse_element(args.b, alg)
    c = bracket(alg, a, b)
    text = format_element(c, alg)
    print(text)
    if args.json:
        rep = Report("bracket")
        rep.add(f"[{args.a}, {args.b}]", INFO, {"algebra": alg.name}, None, text)
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(rep.to_jsonl())
    return 0


def cmd_nf(args) -> int:
    cfg = _load(args)
    alg = _algebra(args, cfg)
    env = UEnv(alg, args.mode, args.degree_bound or cfg.degree_bound)
    if args.order_dump:
        print("order: " + " < ".join(env.order_dump(args.dump_window)))
        if env.ubar:
            print("prefix: t^a d0^b (A[d0] part) precedes every ordered monomial")
    if args.expr is None:
        if not args.order_dump:
            raise UsageError("nf needs an expression (or --order-dump)")
        return 0
    u = env.from_words(parse_words(_expand_powers(args.expr), env.alg))
    text = env.format(u)
    print(text)
    if args.json:
        rep = Report("nf")
        rep.add(args.expr, INFO, {"algebra": env.alg.name, "mode": args.mode}, None, text)
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(rep.to_jsonl())
    return 0


def cmd_act(args) -> int:
    cfg = _load(args)
    mod = _module(args, cfg)
    words = parse_words(_expand_powers(args.expr), mod.alg)
    v = parse_vector(args.vector)
    out = mod.act_words(words, v)
    text = format_vector(out)
    print(text)
    if args.json:
        rep = Report("act")
        rep.add(f"{args.expr} . {args.vector}", INFO, {"module": mod.label}, None, text)
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(rep.to_jsonl())
    return 0


def cmd_min_order(args) -> int:
    cfg = _load(args)
    mod = _module(args, cfg)
    r = min_annihilating_order(mod, args.variant, args.max_m, args.window)
    rep = Report("min-order")
    got = {"order": r.order, "witnesses": {str(k): w for k, w in sorted(r.witnesses.items())}}
    ok = r.order is not None if args.expect is None else r.order == args.expect
    rep.add(f"{args.variant} order on {mod.label}", ok,
            {"module": mod.label, "variant": args.variant, "max_m": args.max_m, "window": args.window},
            args.expect, got)
    return _emit([rep], args)


def cmd_span_rank(args) -> int:
    cfg = _load(args)
    mod = _module(args, cfg)
    v = parse_vector(args.vector)
    sr = cyclic_span_rank(mod, v, args.window)
    rep = Report("span-rank")
    rep.add(f"cyclic span of {args.vector} in {mod.label}", INFO, {"window": args.window},
            {str(j): d for j, d in sorted(sr.dims.items())},
            {"ranks": {str(j): r for j, r in sorted(sr.ranks.items())}, "full": sr.full,
             "missing": sr.missing()})
    return _emit([rep], args)


def cmd_cover_rank(args) -> int:
    cfg = _load(args)
    mod = _module(args, cfg)
    cr = cover_weight_rank(mod, args.weight, args.order, args.window)
    rep = Report("cover-rank")
    rep.add(f"cover weight space p={args.weight} of {mod.label}", cr.rank <= cr.bound,
            {"p": args.weight, "m": args.order, "window": args.window, "kind": cr.kind},
            {"rank_at_most": cr.bound},
            {"rank": cr.rank, "stabilized": cr.stabilized, "generators": cr.generators})
    return _emit([rep], args)


def cmd_suite(args) -> int:
    cfg = _load(args)
    names = args.names
    if "all" in names:
        if len(names) > 1:
            raise UsageError("'all' cannot be combined with other suite names")
        cfg.suites = list(SUITES)
    elif names:
        unknown = [n for n in names if n not in SUITES]
        if unknown:
            raise ConfigError("suite", f"unknown suite {unknown[0]!r}; choose from {', '.join(SUITES)}")
        cfg.suites = list(names)
    reports = run_suites(cfg, args.jobs)
    return _emit(reports, args, verbose=args.verbose)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="YAML or JSON run configuration")
    common.add_argument("--seed", type=int, help="override the configured seed")
    common.add_argument("--json", metavar="OUT", help="write JSON-lines records to OUT")
    alg = argparse.ArgumentParser(add_help=False)
    alg.add_argument("--family", help="algebra family (overrides the config algebra)")
    alg.add_argument("--beta", help="beta parameter for Vir0Beta and WH")
    mod = argparse.ArgumentParser(add_help=False)
    mod.add_argument("--module", type=int, default=0, help="index into the config's module list")

    p = argparse.ArgumentParser(prog="virw", description="Exact computations in Witt-type Lie superalgebras.")
    p.add_argument("--version", action="version", version=f"virw {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", parents=[common, alg], help="validate a config and check its axioms")
    s.add_argument("--window", type=int)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("bracket", parents=[common, alg], help="bracket of two elements")
    s.add_argument("a")
    s.add_argument("b")
    s.set_defaults(func=cmd_bracket)

    s = sub.add_parser("nf", parents=[common, alg], help="PBW normal form in U or Ubar")
    s.add_argument("expr", nargs="?")
    s.add_argument("--mode", choices=("U", "Ubar"), default="U")
    s.add_argument("--order-dump", action="store_true", help="print the symbol order in force")
    s.add_argument("--dump-window", type=int, default=2)
    s.add_argument("--degree-bound", type=int)
    s.set_defaults(func=cmd_nf)

    s = sub.add_parser("act", parents=[common, mod], help="act with a word sum on a module vector")
    s.add_argument("expr")
    s.add_argument("vector", help="e.g. '1*e(0,0) + 1/2*e(1,0)'")
    s.set_defaults(func=cmd_act)

    s = sub.add_parser("min-order", parents=[common, mod], help="least annihilating differentiator order")
    s.add_argument("--variant", choices=("Omega", "OmegaBar"), default="Omega")
    s.add_argument("--max-m", type=int, default=6)
    s.add_argument("--window", type=int, default=3)
    s.add_argument("--expect", type=int, help="fail unless the order equals this value")
    s.set_defaults(func=cmd_min_order)

    s = sub.add_parser("span-rank", parents=[common, mod], help="per-weight ranks of a cyclic span")
    s.add_argument("vector")
    s.add_argument("--window", type=int, default=3)
    s.set_defaults(func=cmd_span_rank)

    s = sub.add_parser("cover-rank", parents=[common, mod], help="rank of a weight space of the A-cover")
    s.add_argument("--weight", type=int, required=True)
    s.add_argument("--order", type=int, required=True)
    s.add_argument("--window", type=int, required=True)
    s.set_defaults(func=cmd_cover_rank)

    s = sub.add_parser("suite", parents=[common], help="run verification suites")
    s.add_argument("names", nargs="*", help=f"suite names or 'all' (default: the configured list): {', '.join(SUITES)}")
    s.add_argument("--jobs", type=int, default=1, help="worker processes")
    s.add_argument("--verbose", action="store_true", help="list passing records too")
    s.set_defaults(func=cmd_suite)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0) if e.code in (0, None) else 2
    try:
        return args.func(args)
    except UsageError as e:
        print(f"virw: {e}", file=sys.stderr)
        return 2
    except _INPUT_ERRORS as e:
        msg = str(e) if isinstance(e, ConfigError) else f"invalid input: {e}"
        print(f"virw: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
