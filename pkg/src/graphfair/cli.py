"""Command-line front end.

Exit codes: ``check`` 0 holds / 1 fails; ``solve`` 0 found / 1 none exists;
boolean ``oracle`` queries 0 yes / 1 no; anything else 0 on success.  Parse,
validation and capacity errors exit 2.  Reports are ``key: value`` lines.
"""

from __future__ import annotations

import argparse
import sys

from . import binary, fileio, fpt, oracle, reductions
from .core import (
    CapacityError,
    InputError,
    PreconditionError,
    check_allocation,
    is_efx,
    is_envy_free,
    is_non_wasteful,
    is_orientation,
    welfare,
)
from .generators import gen_random, gen_star

WELFARE_NAMES = {"util": "util", "egal": "egal", "nash": "nash"}


def _bool(x: bool) -> str:
    return "true" if x else "false"


def _oracle_config(args) -> oracle.OracleConfig:
    return oracle.OracleConfig(budget=args.budget, workers=args.workers)


def _cmd_check(args) -> int:
    inst = fileio.read_instance(args.input)
    alloc = fileio.read_allocation(args.allocation)
    check_allocation(inst, alloc)
    predicate = {
        "ef": is_envy_free,
        "efx": is_efx,
        "orientation": is_orientation,
        "nonwasteful": is_non_wasteful,
    }[args.property]
    holds = predicate(inst, alloc)
    print(f"property: {args.property}")
    print(f"holds: {_bool(holds)}")
    return 0 if holds else 1


def _cmd_solve(args) -> int:
    inst = fileio.read_instance(args.input)
    cfg = _oracle_config(args)
    if args.algo == "binary-ef":
        alloc = binary.solve_ef_binary(inst)
    elif args.algo == "binary-efx":
        alloc = binary.solve_efx_binary(inst)
    elif args.algo == "fpt-ef":
        alloc = fpt.solve_ef_fpt(inst, max_distinct=args.max_distinct)
    elif args.algo == "oracle-ef":
        alloc = oracle.exists_fair(inst, "ef", args.space, cfg)
    else:
        alloc = oracle.max_welfare(inst, "util", "efx", "allocations", cfg).witness
    print(f"algo: {args.algo}")
    if alloc is None:
        print("status: none")
        return 1
    fileio.write_text(args.out, fileio.emit_allocation(alloc))
    w = welfare(inst, alloc)
    print("status: found")
    print(f"utilitarian: {w.utilitarian}")
    print(f"egalitarian: {w.egalitarian}")
    print(f"nash_product: {w.nash_product}")
    return 0


def _cmd_pof(args) -> int:
    inst = fileio.read_instance(args.input)
    cfg = _oracle_config(args)
    best = oracle.max_welfare(inst, args.welfare, None, "allocations", cfg)
    fair = oracle.max_welfare(inst, args.welfare, "efx", "allocations", cfg)
    ratio = oracle.PofRatio(best.value, fair.value)
    print(f"welfare: {args.welfare}")
    print(f"optimum: {best.value}")
    print(f"efx_optimum: {fair.value}")
    print(f"pof: {ratio}")
    return 0


def _cmd_gen(args) -> int:
    if args.family == "star":
        if args.d is None:
            raise InputError("--family star needs --d")
        inst = gen_star(args.d)
    else:
        missing = [f for f in ("agents", "prob", "values", "seed") if getattr(args, f) is None]
        if missing:
            raise InputError("--family random needs " + ", ".join("--" + m for m in missing))
        try:
            values = [int(v) for v in args.values.split(",")]
        except ValueError:
            raise InputError(f"--values must be comma-separated integers, got {args.values!r}") from None
        inst = gen_random(args.agents, args.prob, values, args.seed)
    fileio.write_text(args.out, fileio.emit_instance(inst))
    print(f"agents: {inst.n_agents}")
    print(f"items: {inst.n_items}")
    return 0


def _cmd_reduce(args) -> int:
    mcis = fileio.read_mcis(args.input)
    threshold = None
    if args.target == "ef":
        inst = reductions.reduce_mcis_to_ef(mcis)
    elif args.target == "um-efx":
        inst = reductions.reduce_mcis_to_um_efx(mcis, repaired=args.repaired)
    else:
        inst, threshold = reductions.reduce_mcis_to_em_efx(mcis)
    fileio.write_text(args.out, fileio.emit_instance(inst))
    print(f"target: {args.target}")
    print(f"agents: {inst.n_agents}")
    print(f"items: {inst.n_items}")
    if threshold is not None:
        print(f"threshold: {threshold}")
    return 0


def _witness_line(alloc) -> str:
    return " ".join(map(str, alloc.owner))


def _cmd_oracle(args) -> int:
    inst = fileio.read_instance(args.input)
    cfg = _oracle_config(args)
    q = args.query
    print(f"query: {q}")
    if q in ("exists-ef", "exists-efx"):
        alloc = oracle.exists_fair(inst, q.split("-")[1], args.space, cfg)
        print(f"space: {args.space}")
        print(f"exists: {_bool(alloc is not None)}")
        if alloc is not None:
            print(f"witness: {_witness_line(alloc)}")
        return 0 if alloc is not None else 1
    if q == "max-welfare":
        res = oracle.max_welfare(inst, args.welfare, args.constraint, args.space, cfg)
        print(f"welfare: {args.welfare}")
        print(f"constraint: {args.constraint}")
        print(f"space: {args.space}")
        print(f"feasible: {_bool(res.feasible)}")
        if not res.feasible:
            return 1
        print(f"value: {res.value}")
        print(f"witness: {_witness_line(res.witness)}")
        return 0
    if q == "um-plus-efx":
        ans = oracle.decide_um_plus_efx(inst, cfg)
        print(f"w_star: {sum(max(e.value_a, e.value_b) for e in inst.edges)}")
    else:
        if args.threshold is None:
            raise InputError("em-efx-threshold needs --threshold")
        ans = oracle.decide_em_efx_threshold(inst, args.threshold, cfg, args.space)
        print(f"threshold: {args.threshold}")
    print(f"answer: {_bool(ans)}")
    return 0 if ans else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="graphfair", description="EF/EFX allocation on graphical instances")
    sub = parser.add_subparsers(dest="command", required=True)

    def oracle_opts(p, space_default="allocations"):
        p.add_argument("--space", choices=oracle.SPACES, default=space_default)
        p.add_argument("--budget", type=int, default=oracle.DEFAULT_BUDGET)
        p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("check", help="test a property of an allocation")
    p.add_argument("--input", required=True)
    p.add_argument("--allocation", required=True)
    p.add_argument("--property", required=True, choices=["ef", "efx", "orientation", "nonwasteful"])
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("solve", help="compute an allocation")
    p.add_argument("--input", required=True)
    p.add_argument("--algo", required=True, choices=["binary-ef", "binary-efx", "fpt-ef", "oracle-ef", "oracle-efx-um"])
    p.add_argument("--out", required=True)
    p.add_argument("--max-distinct", type=int, default=fpt.DEFAULT_MAX_DISTINCT)
    oracle_opts(p, space_default="orientations")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("pof", help="price of EFX for one instance")
    p.add_argument("--input", required=True)
    p.add_argument("--welfare", required=True, choices=list(WELFARE_NAMES))
    oracle_opts(p)
    p.set_defaults(func=_cmd_pof)

    p = sub.add_parser("gen", help="generate an instance")
    p.add_argument("--family", required=True, choices=["star", "random"])
    p.add_argument("--d", type=int)
    p.add_argument("--agents", type=int)
    p.add_argument("--prob", type=float)
    p.add_argument("--values")
    p.add_argument("--seed", type=int)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("reduce", help="build a hardness gadget from an MCIS file")
    p.add_argument("--from", dest="source", required=True, choices=["mcis"])
    p.add_argument("--target", required=True, choices=["ef", "um-efx", "em-efx"])
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--repaired", action="store_true", help="um-efx only: middle path edge valued (d, d+1)")
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("oracle", help="exhaustive queries")
    p.add_argument("--input", required=True)
    p.add_argument(
        "--query", required=True, choices=["exists-ef", "exists-efx", "max-welfare", "um-plus-efx", "em-efx-threshold"]
    )
    p.add_argument("--threshold", type=int)
    p.add_argument("--welfare", choices=list(WELFARE_NAMES), default="util")
    p.add_argument("--constraint", choices=["none", "ef", "efx"], default="none")
    oracle_opts(p)
    p.set_defaults(func=_cmd_oracle)
    return parser


def run_cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (InputError, PreconditionError, CapacityError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_cli())
