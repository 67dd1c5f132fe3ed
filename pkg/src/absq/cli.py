"""Command-line surface: count / max / verify / lemma / falsify / sequence.

Machine output is JSONL (one record per line); ``--format text`` renders a
human summary and ``sequence`` defaults to CSV.  The run-info line carrying
the timestamp, worker count, and backend is suppressible with
``--no-timestamp`` so repeated runs compare byte-for-byte; everything that
affects results is echoed in the stable header record.

Exit codes: 0 ok/holds, 1 statement violated, 2 usage or parse error,
3 I/O error, 4 wall-clock budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from datetime import datetime, timezone

from . import _kernels
from .counting import count_distinct_fast
from .harness import check_lemma1, falsify_proof_steps, verify_conjecture
from .search import CheckpointError, max_distinct
from .words import Word

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_BUDGET = 4


def _dump(rec: dict) -> str:
    return json.dumps(rec, sort_keys=True, separators=(",", ":"))


class Writer:
    """Serialized output: chosen format on stdout, plus JSONL to --output."""

    def __init__(self, args, header_params: dict):
        self.fmt = args.format
        self.fh = None
        if getattr(args, "output", None):
            self.fh = open(args.output, "w", encoding="utf-8")
        if not args.no_timestamp:
            info = {
                "record": "run_info",
                "utc": datetime.now(timezone.utc).isoformat(timespec="seconds"),
                "workers": getattr(args, "workers", 1),
                "backend": _kernels.backend_name(),
            }
            self._line(_dump(info), text=f"# run: {info['utc']} workers={info['workers']} backend={info['backend']}")
        header = {"record": "header", "command": args.command, "params": header_params}
        params_text = " ".join(f"{k}={v}" for k, v in sorted(header_params.items()))
        self._line(_dump(header), text=f"# {args.command} {params_text}")

    def _line(self, jsonl: str, text: str | None = None) -> None:
        if self.fmt == "jsonl":
            print(jsonl)
        elif text is not None:
            print(text)
        if self.fh:
            self.fh.write(jsonl + "\n")
            self.fh.flush()

    def record(self, rec: dict, text: str | None = None) -> None:
        self._line(_dump(rec), text=text)

    def close(self) -> None:
        if self.fh:
            self.fh.close()


def _resolve_sigma(value: int | None, n: int) -> int:
    # default alphabet cap: min(n, 4), but at least 2 where the binary side matters
    return value if value is not None else max(2, min(n, 4))


def _workers_default() -> int:
    env = os.environ.get("ABSQ_WORKERS", "").strip()
    if env:
        try:
            val = int(env)
            if val >= 1:
                return val
        except ValueError:
            pass
    return os.cpu_count() or 1


def _iter_lengths(args) -> list[int]:
    if args.n is not None:
        return [args.n]
    return list(range(1, args.n_max + 1))


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_count(args) -> int:
    sources: list[tuple[str, str]] = []
    if not args.files or args.files == ["-"]:
        sources.append(("<stdin>", sys.stdin.read()))
    else:
        for path in args.files:
            if path == "-":
                sources.append(("<stdin>", sys.stdin.read()))
            else:
                with open(path, "r", encoding="utf-8") as fh:
                    sources.append((path, fh.read()))

    words: list[Word] = []
    for name, text in sources:
        for lineno, line in enumerate(text.splitlines(), start=1):
            line = line.rstrip("\r")
            try:
                words.append(Word.from_text(line, args.sigma))
            except ValueError as exc:
                print(f"absq count: {name}:{lineno}: {exc}", file=sys.stderr)
                return EXIT_USAGE

    writer = Writer(args, {"sigma": args.sigma if args.sigma is not None else "inferred"})
    try:
        for word in words:
            res = count_distinct_fast(word)
            occ = " ".join(f"({s},{l})" for s, l in res.occurrences)
            writer.record(
                res.to_record(),
                text=f"{word.text or '(empty)'}: k={res.k} coverage={res.coverage_string()} occurrences={occ or '-'}",
            )
    finally:
        writer.close()
    return EXIT_OK


def cmd_max(args) -> int:
    writer = Writer(args, {
        "n": args.n,
        "sigma": args.sigma,
        "constrained": args.constrained,
        "witness_cap": args.witness_cap,
        "depth": args.depth if args.depth is not None else "auto",
    })
    try:
        result = max_distinct(
            args.n,
            args.sigma,
            args.constrained,
            workers=args.workers,
            witness_cap=args.witness_cap,
            depth=args.depth,
            checkpoint_path=args.checkpoint,
        )
        wits = " ".join(w.text for w in result.witnesses)
        writer.record(
            result.to_record(),
            text=f"n={result.n} sigma={result.sigma} constrained={result.constrained} "
            f"max_k={result.max_k} enumerated={result.enumerated} witnesses: {wits or '-'}",
        )
    finally:
        writer.close()
    return EXIT_OK


def cmd_verify(args) -> int:
    lengths = _iter_lengths(args)
    writer = Writer(args, {
        "n": args.n if args.n is not None else f"1..{args.n_max}",
        "sigma_max": args.sigma_max if args.sigma_max is not None else "auto",
        "witness_cap": args.witness_cap,
    })
    all_hold = True
    try:
        for n in lengths:
            report = verify_conjecture(
                n, _resolve_sigma(args.sigma_max, n),
                workers=args.workers, witness_cap=args.witness_cap,
            )
            all_hold = all_hold and report.holds
            a_text = " ".join(f"A(n,{s})={v}" for s, v in sorted(report.A_values.items()))
            writer.record(
                report.to_record(),
                text=f"n={n}: B={report.B} {a_text} holds={report.holds} "
                f"witness_general={report.witness_general.text} witness_binary={report.witness_binary.text}",
            )
    finally:
        writer.close()
    return EXIT_OK if all_hold else EXIT_VIOLATION


def cmd_lemma(args) -> int:
    lengths = _iter_lengths(args)
    writer = Writer(args, {
        "n": args.n if args.n is not None else f"1..{args.n_max}",
        "sigma": args.sigma if args.sigma is not None else "auto",
    })
    all_hold = True
    try:
        for n in lengths:
            result = check_lemma1(n, _resolve_sigma(args.sigma, n), workers=args.workers)
            all_hold = all_hold and result.holds
            vio = " ".join(w.text for w in result.violators[:8])
            more = "" if len(result.violators) <= 8 else f" (+{len(result.violators) - 8} more)"
            writer.record(
                result.to_record(),
                text=f"n={n}: L_binary={result.L_binary} holds={result.holds}"
                + (f" violators: {vio}{more}" if result.violators else ""),
            )
    finally:
        writer.close()
    return EXIT_OK if all_hold else EXIT_VIOLATION


def cmd_falsify(args) -> int:
    sigma = _resolve_sigma(args.sigma, args.n_max)
    writer = Writer(args, {"n_max": args.n_max, "sigma": sigma})
    try:
        counterexamples = falsify_proof_steps(args.n_max, sigma)
        counts: dict[str, int] = {}
        for cx in counterexamples:
            counts[cx.claim_id] = counts.get(cx.claim_id, 0) + 1
            writer.record(cx.to_record(), text=f"{cx.claim_id}: {cx.details}")
        writer.record(
            {"record": "falsify-summary", "n_max": args.n_max, "sigma": sigma, "counts": counts},
            text="counts: " + (" ".join(f"{c}={v}" for c, v in sorted(counts.items())) or "none"),
        )
    finally:
        writer.close()
    return EXIT_OK


def cmd_sequence(args) -> int:
    sigma_max = args.sigma_max if args.sigma_max is not None else max(2, min(args.n_max, 4))
    writer = Writer(args, {
        "n_max": args.n_max,
        "sigma_max": sigma_max,
        "witness_cap": args.witness_cap,
    })
    columns = ["n", "B"] + [f"A{s}" for s in range(3, sigma_max + 1)] + ["witness_binary"]
    if args.format == "csv":
        print(",".join(columns))
    started = time.monotonic()
    try:
        for n in range(1, args.n_max + 1):
            if args.budget_seconds is not None and time.monotonic() - started > args.budget_seconds:
                marker = {"record": "truncated", "reason": "budget exceeded", "before_n": n}
                if args.format == "csv":
                    print(f"# truncated: budget exceeded before n={n}")
                    writer.record(marker)
                else:
                    writer.record(marker, text=f"# truncated: budget exceeded before n={n}")
                return EXIT_BUDGET
            by_sigma = {
                s: max_distinct(n, s, workers=args.workers, witness_cap=args.witness_cap)
                for s in range(2, sigma_max + 1)
            }
            rec = {
                "record": "sequence",
                "n": n,
                "B": by_sigma[2].max_k,
                "A": {str(s): by_sigma[s].max_k for s in range(3, sigma_max + 1)},
                "witness_binary": by_sigma[2].witnesses[0].text,
            }
            row = [str(n), str(rec["B"])] + [str(rec["A"][str(s)]) for s in range(3, sigma_max + 1)]
            row.append(rec["witness_binary"])
            if args.format == "csv":
                print(",".join(row))
                writer.record(rec)
            else:
                writer.record(rec, text=" ".join(f"{c}={v}" for c, v in zip(columns, row)))
    finally:
        writer.close()
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _add_common(sub, *, formats=("jsonl", "text"), default_format="jsonl", workers=True):
    sub.add_argument("--format", choices=formats, default=default_format,
                     help=f"output format (default {default_format})")
    sub.add_argument("--output", metavar="PATH", help="also write JSONL records to PATH")
    sub.add_argument("--no-timestamp", action="store_true",
                     help="suppress the run-info line for byte-stable output")
    if workers:
        sub.add_argument("--workers", type=int, default=_workers_default(),
                         help="worker processes (default: ABSQ_WORKERS or CPU count)")


def _add_length_choice(sub):
    group = sub.add_mutually_exclusive_group(required=True)
    group.add_argument("--n", type=int, help="single word length")
    group.add_argument("--n-max", type=int, help="check every length 1..N_MAX")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="absq",
        description="Count distinct abelian-square factors and verify extremal claims about them.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("count", help="count distinct abelian-square factors of input words")
    p.add_argument("files", nargs="*", help="word files, one word per line ('-' or none: stdin)")
    p.add_argument("--sigma", type=int, help="alphabet size override (default: inferred per word)")
    _add_common(p, workers=False)
    p.set_defaults(func=cmd_count, workers=1)

    p = commands.add_parser("max", help="exhaustive maximum count over canonical words")
    p.add_argument("--n", type=int, required=True, help="word length")
    p.add_argument("--sigma", type=int, required=True, help="alphabet cap")
    p.add_argument("--constrained", action="store_true",
                   help="restrict to words whose last symbol is in an abelian-square occurrence")
    p.add_argument("--witness-cap", type=int, default=8)
    p.add_argument("--depth", type=int, help="task partition prefix depth (default: min(n, 5))")
    p.add_argument("--checkpoint", metavar="PATH", help="append-only checkpoint file to write/resume")
    _add_common(p)
    p.set_defaults(func=cmd_max)

    p = commands.add_parser("verify", help="exhaustively verify the binary-maximality conjecture")
    _add_length_choice(p)
    p.add_argument("--sigma-max", type=int, help="general-alphabet cap (default: max(2, min(n, 4)))")
    p.add_argument("--witness-cap", type=int, default=8)
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = commands.add_parser("lemma", help="exhaustively check the covered-suffix lemma")
    _add_length_choice(p)
    p.add_argument("--sigma", type=int, help="general-alphabet cap (default: max(2, min(n, 4)))")
    _add_common(p)
    p.set_defaults(func=cmd_lemma)

    p = commands.add_parser("falsify", help="test the literal proof steps on all small words")
    p.add_argument("--n-max", type=int, required=True, help="test words of every length up to N_MAX")
    p.add_argument("--sigma", type=int, help="alphabet cap (default: max(2, min(n_max, 4)))")
    _add_common(p, workers=False)
    p.set_defaults(func=cmd_falsify, workers=1)

    p = commands.add_parser("sequence", help="table of extremal counts B(n) and A(n, sigma)")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--sigma-max", type=int, help="largest alphabet column (default: max(2, min(n_max, 4)))")
    p.add_argument("--witness-cap", type=int, default=8)
    p.add_argument("--budget-seconds", type=float, help="wall-clock cap; partial table on excess")
    _add_common(p, formats=("csv", "jsonl", "text"), default_format="csv")
    p.set_defaults(func=cmd_sequence)

    return parser


def _validate(args) -> str | None:
    n = getattr(args, "n", None)
    if n is not None and n < 0:
        return "--n must be >= 0"
    n_max = getattr(args, "n_max", None)
    if n_max is not None and n_max < 1:
        return "--n-max must be >= 1"
    if getattr(args, "workers", 1) < 1:
        return "--workers must be >= 1"
    if getattr(args, "witness_cap", 0) < 0:
        return "--witness-cap must be >= 0"
    sigma = getattr(args, "sigma", None)
    if args.command in ("lemma", "falsify") and sigma is not None and sigma < 2:
        return "--sigma must be >= 2"
    if args.command == "max":
        if sigma < 1:
            return "--sigma must be >= 1"
        if args.n is None or args.n < 0:
            return "--n must be >= 0"
    elif args.command == "count":
        if sigma is not None and sigma < 1:
            return "--sigma must be >= 1"
    if args.command in ("verify", "sequence"):
        sigma_max = getattr(args, "sigma_max", None)
        if sigma_max is not None and sigma_max < 2:
            return "--sigma-max must be >= 2"
    if args.command in ("verify", "lemma") and getattr(args, "n", None) is not None and args.n < 1:
        return "--n must be >= 1"
    return None


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    problem = _validate(args)
    if problem:
        print(f"absq {args.command}: {problem}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except CheckpointError as exc:
        print(f"absq {args.command}: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"absq {args.command}: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
