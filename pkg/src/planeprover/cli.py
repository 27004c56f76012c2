"""Command-line front end: ``planeprover list|prove|check|oracle``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__, dsl, kernel, theorems
from .errors import PlaneProverError, ScriptError

EXIT_OK, EXIT_REFUTED, EXIT_ERROR = 0, 1, 2
_GOOD = {"proved", "certificate"}


class _Parser(argparse.ArgumentParser):
    """argparse that raises instead of exiting, so ``main`` owns exit codes."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", help="emit a JSON run report")
    p.add_argument("--trace", action="store_true", help="print constructed objects")
    p.add_argument("--timeout", type=float, default=300.0, help="per-theorem budget in seconds")
    p.add_argument("--max-terms", type=int, default=None, help="kernel term-count guardrail")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="planeprover", description="Exact symbolic plane geometry prover.")
    parser.add_argument("--version", action="version", version=f"planeprover {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser, required=True)

    sub.add_parser("list", parents=[common], help="show the theorem catalog")

    pr = sub.add_parser("prove", parents=[common], help="prove catalog theorems")
    pr.add_argument("ids", nargs="*", metavar="ID")
    pr.add_argument("--all", action="store_true", help="prove every catalog entry")
    pr.add_argument("--parallel", action="store_true", help="run entries in worker processes")

    ch = sub.add_parser("check", parents=[common], help="check a .geo script")
    ch.add_argument("file", type=Path)
    ch.add_argument("--seed", type=int, default=0, help="seed for the numeric cross-check")

    orc = sub.add_parser("oracle", parents=[common], help="numeric spot check of one theorem")
    orc.add_argument("id")
    orc.add_argument("--seed", type=int, default=0)
    return parser


def exit_code(verdicts) -> int:
    verdicts = list(verdicts)
    if any(v not in _GOOD and v != "refuted" for v in verdicts):
        return EXIT_ERROR
    if any(v == "refuted" for v in verdicts):
        return EXIT_REFUTED
    return EXIT_OK


def _print_trace(trace, out) -> None:
    for name, text in trace:
        print(f"  {name} -> {text}", file=out)


def _cmd_list(args, out) -> int:
    rows = [(r.id, r.claim_kind, r.title) for r in theorems.catalog()]
    if args.json:
        print(json.dumps([dict(zip(("id", "claim_kind", "title"), r)) for r in rows], indent=2), file=out)
        return EXIT_OK
    w0 = max(len(r[0]) for r in rows)
    w1 = max(len(r[1]) for r in rows)
    for i, k, t in rows:
        print(f"{i:<{w0}}  {k:<{w1}}  {t}", file=out)
    return EXIT_OK


def _cmd_prove(args, out) -> int:
    if args.all == bool(args.ids):
        print("prove: give theorem ids or --all (not both)", file=sys.stderr)
        return EXIT_ERROR
    ids = [r.id for r in theorems.catalog()] if args.all else args.ids
    results: list[theorems.ProofResult] = []
    traces: list[tuple[str, list]] = []
    if args.trace:
        # tracing needs the objects in this process, so no worker processes
        for i in ids:
            tr: list = []
            try:
                results.append(theorems.prove(i, trace=tr))
            except PlaneProverError as exc:
                results.append(theorems.ProofResult(i, "error", 0.0, error=f"{type(exc).__name__}: {exc}"))
            traces.append((i, tr))
    else:
        known = [i for i in ids if _known(i)]
        done = dict(
            (r.id, r) for r in theorems.prove_all(parallel=args.parallel, timeout=args.timeout, ids=known)
        )
        for i in ids:
            results.append(done.get(i) or theorems.ProofResult(i, "error", 0.0, error=f"UnknownTheoremError: {i}"))
    if args.json:
        report = {
            "tool": "planeprover",
            "version": __version__,
            "input_digest": dsl.digest(" ".join(ids)),
            "results": [r.to_json() for r in results],
        }
        if args.trace:
            report["trace"] = {i: [list(t) for t in tr] for i, tr in traces}
        print(json.dumps(report, indent=2, sort_keys=True), file=out)
    else:
        trace_of = dict(traces)
        for r in results:
            line = f"{r.id}: {r.verdict}"
            if r.error:
                line += f" ({r.error})"
            print(line, file=out)
            if args.trace:
                _print_trace(trace_of.get(r.id, []), out)
    return exit_code(r.verdict for r in results)


def _known(theorem_id: str) -> bool:
    try:
        theorems.lookup(theorem_id)
    except PlaneProverError:
        return False
    return True


def _cmd_check(args, out) -> int:
    try:
        text = args.file.read_text(encoding="utf-8")
        script = dsl.parse_script(text)
    except OSError as exc:
        print(f"check: cannot read {args.file}: {exc.strerror}", file=sys.stderr)
        return EXIT_ERROR
    except ScriptError as exc:
        print(f"{args.file}:{exc}", file=sys.stderr)
        return EXIT_ERROR
    trace: list | None = [] if args.trace else None
    report = dsl.run_script(script, seed=args.seed, trace=trace)
    report.input_digest = dsl.digest(text)
    if args.json:
        print(report.dumps(), file=out)
    else:
        for e in report.results:
            line = f"{e.id}: {e.verdict}"
            if e.oracle is not None:
                line += f" [oracle {'agrees' if (e.oracle == (e.verdict == 'proved')) else 'DISAGREES'}]"
            if e.error:
                line += f" ({e.error})"
            print(line, file=out)
        if trace:
            _print_trace(trace, out)
    return exit_code(e.verdict for e in report.results)


def _cmd_oracle(args, out) -> int:
    try:
        holds = theorems.numeric_spot_check(args.id, args.seed)
    except PlaneProverError as exc:
        if args.json:
            print(json.dumps({"id": args.id, "seed": args.seed, "error": f"{type(exc).__name__}: {exc}"}), file=out)
        else:
            print(f"{args.id}: error ({type(exc).__name__}: {exc})", file=out)
        return EXIT_ERROR
    if args.json:
        print(json.dumps({"id": args.id, "seed": args.seed, "holds": holds}), file=out)
    else:
        print(f"{args.id} (seed {args.seed}): {'holds' if holds else 'fails'}", file=out)
    return EXIT_OK if holds else EXIT_REFUTED


_COMMANDS = {"list": _cmd_list, "prove": _cmd_prove, "check": _cmd_check, "oracle": _cmd_oracle}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError:
        return EXIT_ERROR
    except SystemExit as exc:  # --help / --version
        return EXIT_OK if not exc.code else EXIT_ERROR
    if args.max_terms is not None:
        if args.max_terms < 1:
            print("--max-terms must be positive", file=sys.stderr)
            return EXIT_ERROR
        kernel.set_max_terms(args.max_terms)
    if args.timeout is not None and args.timeout <= 0:
        print("--timeout must be positive", file=sys.stderr)
        return EXIT_ERROR
    return _COMMANDS[args.command](args, sys.stdout)


if __name__ == "__main__":
    sys.exit(main())
