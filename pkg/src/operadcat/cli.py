"""Command-line front end.

Verbs: ``iso``, ``enum``, ``axioms``, ``sig-check``, ``section``, ``equiv``,
``roundtrip``. Operads, signatures and monoidal structures are named builtins
or paths to JSON files in the formats the library emits. Exit codes: 0 pass,
1 fail, 2 not comparable (``iso`` only), 3 input error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from .categorify import categorify, check_equivalence, hom_exists
from .errors import (ArityMismatchError, CoverageError, LinearityError, OperadError,
                     OracleMismatchError, TermSyntaxError)
from .fincat import (check_smc_axioms, roundtrip_qalgebra, roundtrip_smc,
                     smc_from_json, smc_to_qalgebra)
from .fixtures import builtin_operad, builtin_signature, builtin_smc
from .operads import AxiomBudget, check_operad_axioms, operad_from_json
from .report import Report, merge_reports
from .signatures import (check_surjective_up_to, choose_section, signature_from_json,
                         standard_comm_signature)
from .terms import enumerate_terms, format_term, parse_term


@dataclass(frozen=True)
class RunConfig:
    command: str
    operad: str
    sig: str | None
    sig2: str | None
    smc: str | None
    arity_cap: int
    depth_cap: int
    seed: int
    output: str

    def __post_init__(self):
        if self.arity_cap < 0 or self.depth_cap < 0:
            raise OperadError("caps must be nonnegative")


def _load_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)


def _resolve_operad(spec: str):
    if os.path.exists(spec):
        return operad_from_json(_load_json(spec))
    return builtin_operad(spec)


def _resolve_signature(spec: str, operad, arity_cap: int):
    if os.path.exists(spec):
        return signature_from_json(_load_json(spec), operad)
    return builtin_signature(spec, operad, arity_cap)


def _resolve_smc(spec: str):
    if os.path.exists(spec):
        return smc_from_json(_load_json(spec))
    return builtin_smc(spec)


def _emit(report: Report, config: RunConfig) -> int:
    if config.output == "json":
        print(json.dumps(report.to_dict(), indent=2, default=str))
    else:
        print(report.summary())
    return 0 if report.passed else 1


def cmd_iso(args, config: RunConfig) -> int:
    operad = _resolve_operad(config.operad)
    sig = _resolve_signature(config.sig, operad, config.arity_cap)
    Q = categorify(sig)
    t1 = parse_term(args.term1, sig.symbols)
    t2 = parse_term(args.term2, sig.symbols)
    try:
        arrow = hom_exists(Q, t1, t2)
    except ArityMismatchError:
        print("not comparable: arities differ")
        return 2
    if arrow is None:
        print(f"no arrow: {format_term(t1)} and {format_term(t2)} evaluate differently")
        return 1
    print(f"canonical isomorphism exists: {format_term(t1)} <-> {format_term(t2)}")
    return 0


def cmd_enum(args, config: RunConfig) -> int:
    operad = _resolve_operad(config.operad)
    sig = _resolve_signature(config.sig, operad, config.arity_cap)
    terms = list(enumerate_terms(sig.symbols, args.arity, config.depth_cap))
    if config.output == "json":
        print(json.dumps({"arity": args.arity, "depth_cap": config.depth_cap,
                          "terms": [format_term(t) for t in terms]}))
    else:
        for t in terms:
            print(format_term(t))
    return 0


def cmd_axioms(args, config: RunConfig) -> int:
    operad = _resolve_operad(config.operad)
    budget = AxiomBudget(arity_cap=config.arity_cap, result_cap=args.result_cap,
                         random_cases=args.samples, seed=config.seed)
    return _emit(check_operad_axioms(operad, budget), config)


def cmd_sig_check(args, config: RunConfig) -> int:
    operad = _resolve_operad(config.operad)
    sig = _resolve_signature(config.sig, operad, config.arity_cap)
    coverage = check_surjective_up_to(sig, config.arity_cap, config.depth_cap)
    return _emit(coverage.to_report(), config)


def cmd_section(args, config: RunConfig) -> int:
    operad = _resolve_operad(config.operad)
    sig = _resolve_signature(config.sig, operad, config.arity_cap)
    try:
        section = choose_section(sig, config.arity_cap, config.depth_cap)
    except CoverageError as exc:
        print(f"coverage gap: {exc}")
        return 1
    rows = [{"arity": n, "element": str(p), "term": format_term(t)}
            for (n, p), t in sorted(section.table.items(), key=lambda kv: kv[0][0])]
    if config.output == "json":
        print(json.dumps({"signature": sig.name, "section": rows}, indent=2))
    else:
        for row in rows:
            print(f"arity {row['arity']}: {row['element']} <- {row['term']}")
    return 0


def cmd_equiv(args, config: RunConfig) -> int:
    if config.sig2 is None:
        raise OperadError("equiv needs --sig2")
    operad = _resolve_operad(config.operad)
    sig1 = _resolve_signature(config.sig, operad, config.arity_cap)
    sig2 = _resolve_signature(config.sig2, operad, config.arity_cap)
    report = check_equivalence(categorify(sig1), categorify(sig2),
                               config.arity_cap, config.depth_cap, seed=config.seed)
    return _emit(report, config)


def cmd_roundtrip(args, config: RunConfig) -> int:
    if config.smc is None:
        raise OperadError("roundtrip needs --smc")
    smc = _resolve_smc(config.smc)
    axioms = check_smc_axioms(smc, seed=config.seed)
    reports = [axioms]
    if axioms.passed:
        reports.append(roundtrip_smc(smc))
        sig = standard_comm_signature()
        sample = [t for n in range(config.arity_cap + 1)
                  for t in enumerate_terms(sig.symbols, n, config.depth_cap)]
        reports.append(roundtrip_qalgebra(smc_to_qalgebra(smc), sample,
                                          seed=config.seed))
    return _emit(merge_reports(f"round trips on {smc.name}", reports), config)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="operadcat",
        description="symbolic engine for symmetric operads and their categorifications")
    parser.add_argument("--operad", default="terminal",
                        help="builtin operad name or JSON path")
    parser.add_argument("--sig", default="std-comm",
                        help="builtin signature name or JSON path")
    parser.add_argument("--sig2", default=None, help="second signature for equiv")
    parser.add_argument("--smc", default=None,
                        help="builtin monoidal structure name or JSON path")
    parser.add_argument("--arity-cap", type=int, default=3)
    parser.add_argument("--depth-cap", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--format", choices=("text", "json"), default="text")

    sub = parser.add_subparsers(dest="command", required=True)

    p_iso = sub.add_parser("iso", help="is there a canonical isomorphism?")
    p_iso.add_argument("term1")
    p_iso.add_argument("term2")
    p_iso.set_defaults(fn=cmd_iso)

    p_enum = sub.add_parser("enum", help="enumerate linear terms")
    p_enum.add_argument("--arity", type=int, required=True)
    p_enum.set_defaults(fn=cmd_enum)

    p_axioms = sub.add_parser("axioms", help="check the operad laws")
    p_axioms.add_argument("--samples", type=int, default=0)
    p_axioms.add_argument("--result-cap", type=int, default=4)
    p_axioms.set_defaults(fn=cmd_axioms)

    p_cov = sub.add_parser("sig-check", help="coverage of the target operad")
    p_cov.set_defaults(fn=cmd_sig_check)

    p_sec = sub.add_parser("section", help="choose representing terms")
    p_sec.set_defaults(fn=cmd_section)

    p_eq = sub.add_parser("equiv", help="compare two categorifications")
    p_eq.set_defaults(fn=cmd_equiv)

    p_rt = sub.add_parser("roundtrip", help="monoidal axioms and both round trips")
    p_rt.set_defaults(fn=cmd_roundtrip)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = RunConfig(
        command=args.command,
        operad=args.operad,
        sig=args.sig,
        sig2=args.sig2,
        smc=args.smc,
        arity_cap=args.arity_cap,
        depth_cap=args.depth_cap,
        seed=args.seed,
        output=args.format,
    )
    try:
        return args.fn(args, config)
    except (TermSyntaxError, LinearityError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 3
    except OracleMismatchError as exc:
        print(f"incomparable: {exc}", file=sys.stderr)
        return 3
    except (OperadError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"input error: {exc!r}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
