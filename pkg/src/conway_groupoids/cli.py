"""The ``cg`` command line front door.

Exit codes: 0 success, 2 validation failure, 3 scale error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import codes, groupoid, verify
from .design import (
    build_affine_design,
    build_boolean,
    build_p3,
    build_sp_design,
    dump_design,
    load_design,
    require_valid,
    validate,
)
from .errors import ScaleError, ValidationError
from .game import GameSession, seed_from_env

EXIT_VALIDATION = 2
EXIT_SCALE = 3
EXIT_IO = 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cg", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", help="construct a design and write it as JSON")
    p_build.add_argument("--family", required=True, choices=["p3", "boolean", "sp", "affine"])
    p_build.add_argument("--m", type=int, help="half-dimension for sp/affine families")
    p_build.add_argument("--eps", type=int, choices=[0, 1], help="type for the sp family")
    p_build.add_argument("--k", type=int, help="dimension for the boolean family")
    p_build.add_argument("-o", "--out", required=True)

    p_groupoid = sub.add_parser("groupoid", help="orders and structure of the groupoid")
    p_groupoid.add_argument("design_file")
    p_groupoid.add_argument("--hole", type=int, default=0)
    p_groupoid.add_argument("--json", action="store_true")

    p_code = sub.add_parser("code", help="incidence code of a design")
    p_code.add_argument("design_file")
    p_code.add_argument("--full", action="store_true", help="coset table and intersection array")
    p_code.add_argument("--coset-csv", help="write the syndrome/weight/leader table as CSV")

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument(
        "--suite", default="all", choices=list(verify.SUITE_NAMES) + ["all"]
    )
    p_verify.add_argument("--json", action="store_true")

    p_play = sub.add_parser("play", help="terminal game")
    p_play.add_argument("design_file")
    p_play.add_argument("--hole", type=int, default=0)

    p_serve = sub.add_parser("serve", help="serve the JSON API and the web board")
    p_serve.add_argument("design_file")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--hole", type=int, default=0)
    p_serve.add_argument(
        "--static",
        help="directory with the built web UI (default: ./frontend/dist when present)",
    )
    return parser


def cmd_build(args: argparse.Namespace) -> int:
    family = args.family
    if family == "p3":
        d = build_p3()
    elif family == "boolean":
        if args.k is None:
            print("boolean family needs --k", file=sys.stderr)
            return 2
        d = build_boolean(args.k)
    elif family == "sp":
        if args.m is None or args.eps is None:
            print("sp family needs --m and --eps", file=sys.stderr)
            return 2
        d = build_sp_design(args.m, args.eps)
    else:
        if args.m is None:
            print("affine family needs --m", file=sys.stderr)
            return 2
        d = build_affine_design(args.m)
    dump_design(d, args.out)
    print(f"n={d.n} lambda={d.lam} blocks={len(d.blocks)} -> {args.out}")
    return 0


def _load(path: str):
    d = load_design(path)
    report = validate(d)
    if not report.ok:
        raise ValidationError(f"invalid design in {path}: {report.witness}")
    return d


def cmd_groupoid(args: argparse.Namespace) -> int:
    d = _load(args.design_file)
    summary = groupoid.summarize(d, args.hole)
    if args.json:
        print(json.dumps(summary.to_json()))
    else:
        for key, value in summary.to_json().items():
            print(f"{key}: {value}")
    return 0


def cmd_code(args: argparse.Namespace) -> int:
    d = _load(args.design_file)
    code = codes.incidence_code(d)
    dist = codes.min_distance(code)
    print(f"[{code.n},{code.k},{dist if dist else '>8'}] code")
    if args.full or args.coset_csv:
        analysis = codes.coset_analysis(code)
        if args.full:
            print(f"covering_radius: {analysis.covering_radius}")
            print(f"coset_weights: {analysis.mu}")
            print(f"completely_regular: {analysis.completely_regular}")
            if analysis.array:
                b, c = analysis.array.as_tuple()
                print(f"intersection_array: ({', '.join(map(str, b))}; {', '.join(map(str, c))})")
        if args.coset_csv:
            with open(args.coset_csv, "w", encoding="utf-8") as fh:
                fh.write(analysis.table.to_csv())
            print(f"coset table -> {args.coset_csv}")
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    names = list(verify.SUITE_NAMES) if args.suite == "all" else [args.suite]
    reports = verify.run_suites(names)
    if args.json:
        print(json.dumps([r.to_json() for r in reports]))
    else:
        for r in reports:
            print(r.format_table())
    return 0 if all(r.passed for r in reports) else EXIT_VALIDATION


def cmd_play(args: argparse.Namespace) -> int:
    d = _load(args.design_file)
    return run_repl(d, args.hole, sys.stdin, sys.stdout)


def run_repl(design, hole, stdin, stdout) -> int:
    session = GameSession(design, start=hole, seed=seed_from_env())

    def show() -> None:
        state = session.state()
        stdout.write(
            f"hole={state['hole']} closed={state['closed']} "
            f"perm={session.perm.cycle_string()}\n"
        )
        if state["closed"] and state["in_hole_stabilizer"]:
            stdout.write("closed walk: permutation lies in the hole stabilizer\n")

    stdout.write(
        f"playing on {design.name} (n={design.n}); enter a point, "
        "'undo', 'reset', 'scramble N', or 'quit'\n"
    )
    show()
    for line in stdin:
        words = line.split()
        if not words:
            continue
        cmd = words[0].lower()
        try:
            if cmd == "quit":
                break
            elif cmd == "undo":
                session.undo()
            elif cmd == "reset":
                session.reset()
            elif cmd == "scramble":
                session.scramble(int(words[1]) if len(words) > 1 else 10)
            else:
                session.move(int(cmd))
        except (ValueError, IndexError) as exc:
            stdout.write(f"rejected: {exc}\n")
            continue
        show()
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import os

    from . import webapi

    d = _load(args.design_file)
    require_valid(d)
    static = args.static
    if static is None and os.path.isdir(os.path.join("frontend", "dist")):
        static = os.path.join("frontend", "dist")
    webapi.serve(
        d,
        args.port,
        host=args.host,
        default_hole=args.hole,
        seed=seed_from_env(),
        static_dir=static,
    )
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "build": cmd_build,
        "groupoid": cmd_groupoid,
        "code": cmd_code,
        "verify": cmd_verify,
        "play": cmd_play,
        "serve": cmd_serve,
    }
    try:
        return handlers[args.command](args)
    except ValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ScaleError as exc:
        print(f"scale error: {exc}", file=sys.stderr)
        return EXIT_SCALE
    except (OSError, json.JSONDecodeError) as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
