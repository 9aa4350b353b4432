"""``statman`` command-line entry point."""

from __future__ import annotations

import argparse
import sys

from .dsl.commands import COMMANDS, Flags, parse_assign, parse_names, run_command
from .dsl.model import load
from .errors import ParseError, StatmanError
from .report import emit


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="statman", description="Exact curvature and soliton checks on frame presentations.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("target", nargs="?", help="built-in fixture name or path to a .sm document")
    p.add_argument("--connection", default="nabla")
    p.add_argument("--ricci-source", choices=("nabla", "nabla-star", "statistical"))
    p.add_argument("--sign", choices=("standard", "reversed"), default="standard")
    p.add_argument("--assign", help="parameter values, e.g. a=0,b=1/2")
    p.add_argument("--tangent", help="tangent frame names of a submanifold, e.g. e1,e3,xi")
    p.add_argument("--format", choices=("text", "machine"), default="text")
    p.add_argument("--structure", choices=("statistical", "almost-contact", "kenmotsu"))
    p.add_argument("--pair", help="two vector fields for sectional curvature, e.g. e1,xi")
    p.add_argument("--kind", help="ricci, eta-ricci, yamabe or quasi-yamabe")
    p.add_argument("--potential", help="potential field, e.g. xi or 0")
    p.add_argument("--section", help="audit only this section")
    p.add_argument("--points", type=int, default=10, help="oracle sample points")
    p.add_argument("--step", type=float, default=1e-4, help="oracle finite-difference step")
    p.add_argument("--tol", type=float, default=1e-5, help="oracle relative tolerance")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        flags = Flags(
            connection=args.connection,
            ricci_source=args.ricci_source,
            sign=args.sign,
            assign=parse_assign(args.assign),
            tangent=parse_names(args.tangent),
            structure=args.structure,
            pair=parse_names(args.pair),
            kind=args.kind,
            potential=args.potential,
            section=args.section,
            points=args.points,
            step=args.step,
            tol=args.tol,
        )
        if args.command == "fixtures":
            doc = None
        elif args.target is None:
            raise StatmanError(f"{args.command} needs a fixture name or a document path")
        else:
            doc = load(args.target)
        report = run_command(doc, args.command, flags)
    except ParseError as e:
        print(f"statman: parse error in {args.target}:\n{e}", file=sys.stderr)
        return 2
    except StatmanError as e:
        print(f"statman: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    sys.stdout.buffer.write(emit(report, args.format))
    sys.stdout.flush()
    return 0


if __name__ == "__main__":
    sys.exit(main())
