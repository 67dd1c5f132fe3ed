"""Exhaustive extremal search: max distinct abelian-square counts over canonical words.

The search space (restricted-growth strings of length n over at most sigma
symbols) is split into independent tasks by canonical prefix; workers share
nothing and a single reducer merges per-task results in prefix order, so the
outcome is identical for any worker count or schedule.  Completed tasks can
be checkpointed to an append-only file and resumed.
"""

from __future__ import annotations

import json
import multiprocessing
import os
from dataclasses import dataclass

from . import _kernels
from .counting import arr_stats
from .words import Word, iter_canonical_arrays

DEFAULT_WITNESS_CAP = 8
_CHECKPOINT_VERSION = 1


class CheckpointError(Exception):
    """Raised when a checkpoint file cannot be trusted for resuming."""


@dataclass(frozen=True)
class MaxSearchResult:
    """Extremal count over all canonical words of length n using <= sigma symbols.

    ``witnesses`` holds the lexicographically least words attaining max_k
    (truncated at the search's witness cap); ``enumerated`` counts every word
    examined, including ones a constrained search rejected.
    """

    n: int
    sigma: int
    constrained: bool
    max_k: int
    witnesses: tuple[Word, ...]
    enumerated: int

    def to_record(self) -> dict:
        return {
            "record": "max",
            "n": self.n,
            "sigma": self.sigma,
            "constrained": self.constrained,
            "max_k": self.max_k,
            "witnesses": [w.text for w in self.witnesses],
            "enumerated": self.enumerated,
        }

    @classmethod
    def from_record(cls, rec: dict) -> "MaxSearchResult":
        return cls(
            n=rec["n"],
            sigma=rec["sigma"],
            constrained=rec["constrained"],
            max_k=rec["max_k"],
            witnesses=tuple(Word.from_text(t) for t in rec["witnesses"]),
            enumerated=rec["enumerated"],
        )


@dataclass(frozen=True)
class SearchTask:
    """One shard of the search: all canonical words extending ``prefix``."""

    prefix: Word
    n: int
    sigma: int
    constrained: bool


def partition_space(n: int, sigma: int, depth: int, constrained: bool = False) -> list[SearchTask]:
    """Split the canonical word space by prefixes of length ``depth``.

    The tasks' extension sets partition the space exactly: every canonical
    word of length n extends exactly one canonical prefix of length depth.
    """
    if not 0 <= depth <= n:
        raise ValueError(f"depth must be in [0, {n}], got {depth}")
    return [
        SearchTask(Word(buf.copy()), n, sigma, constrained)
        for buf in iter_canonical_arrays(depth, sigma)
    ]


def run_task(task: SearchTask, witness_cap: int = DEFAULT_WITNESS_CAP) -> MaxSearchResult:
    """Exhaust one task's subtree and report its local maximum."""
    best_k = -1
    witnesses: list[Word] = []
    enumerated = 0
    for buf in iter_canonical_arrays(task.n, task.sigma, task.prefix.symbols):
        enumerated += 1
        k, covered = arr_stats(buf, max(int(buf.max()) + 1, 1) if buf.size else 1)
        if task.constrained and not covered:
            continue
        if k > best_k:
            best_k = k
            witnesses = [Word(buf.copy())]
        elif k == best_k and len(witnesses) < witness_cap:
            witnesses.append(Word(buf.copy()))
    if best_k < 0:
        # constrained search with no qualifying word in this subtree
        best_k = 0
        witnesses = []
    return MaxSearchResult(task.n, task.sigma, task.constrained, best_k, tuple(witnesses), enumerated)


def merge(results: list[MaxSearchResult], witness_cap: int = DEFAULT_WITNESS_CAP) -> MaxSearchResult:
    """Combine per-task results; associative and commutative up to the witness cap."""
    if not results:
        raise ValueError("merge requires at least one result")
    key = (results[0].n, results[0].sigma, results[0].constrained)
    for r in results:
        if (r.n, r.sigma, r.constrained) != key:
            raise ValueError(f"cannot merge results with mixed parameters: {key} vs {(r.n, r.sigma, r.constrained)}")
    max_k = max(r.max_k for r in results)
    witnesses = sorted(w for r in results if r.max_k == max_k for w in r.witnesses)
    return MaxSearchResult(
        key[0],
        key[1],
        key[2],
        max_k,
        tuple(witnesses[:witness_cap]),
        sum(r.enumerated for r in results),
    )


# ---------------------------------------------------------------------------
# Checkpointing
# ---------------------------------------------------------------------------

def _checkpoint_header(n: int, sigma: int, constrained: bool, depth: int, witness_cap: int) -> dict:
    return {
        "record": "checkpoint-header",
        "version": _CHECKPOINT_VERSION,
        "n": n,
        "sigma": sigma,
        "constrained": constrained,
        "depth": depth,
        "witness_cap": witness_cap,
    }


def checkpoint_write(path: str, header: dict, results: dict[str, MaxSearchResult]) -> None:
    """Write a fresh checkpoint: header plus one record per completed task prefix."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(header, sort_keys=True) + "\n")
        for prefix in sorted(results):
            fh.write(_task_line(prefix, results[prefix]))
        fh.flush()


def _task_line(prefix: str, result: MaxSearchResult) -> str:
    rec = {
        "record": "task",
        "prefix": prefix,
        "max_k": result.max_k,
        "witnesses": [w.text for w in result.witnesses],
        "enumerated": result.enumerated,
    }
    return json.dumps(rec, sort_keys=True) + "\n"


def checkpoint_append(path: str, prefix: str, result: MaxSearchResult) -> None:
    """Append one completed task to an existing checkpoint."""
    with open(path, "a", encoding="utf-8") as fh:
        fh.write(_task_line(prefix, result))
        fh.flush()
        os.fsync(fh.fileno())


def checkpoint_resume(path: str, header: dict) -> dict[str, MaxSearchResult]:
    """Load completed tasks from ``path``, validating it against ``header``.

    A final line torn mid-write (no terminating newline and unparseable) is
    treated as an interrupted append and ignored; any other malformed content
    raises CheckpointError rather than resuming from suspect state.
    """
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    lines = text.split("\n")
    has_torn_tail = bool(lines and lines[-1] != "")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise CheckpointError(f"{path}: empty checkpoint file")

    def parse(idx: int, line: str) -> dict | None:
        try:
            rec = json.loads(line)
        except json.JSONDecodeError as exc:
            if has_torn_tail and idx == len(lines) - 1:
                return None  # interrupted append; task simply not completed
            raise CheckpointError(f"{path}: line {idx + 1} is not valid JSON: {exc}") from None
        if not isinstance(rec, dict):
            raise CheckpointError(f"{path}: line {idx + 1} is not a JSON object")
        return rec

    head = parse(0, lines[0])
    if head is None or head.get("record") != "checkpoint-header":
        raise CheckpointError(f"{path}: missing checkpoint header")
    for field in ("version", "n", "sigma", "constrained", "depth", "witness_cap"):
        if head.get(field) != header[field]:
            raise CheckpointError(
                f"{path}: checkpoint is for "
                f"{ {k: head.get(k) for k in ('n', 'sigma', 'constrained', 'depth', 'witness_cap', 'version')} }, "
                f"requested { {k: header[k] for k in ('n', 'sigma', 'constrained', 'depth', 'witness_cap', 'version')} }"
            )
    done: dict[str, MaxSearchResult] = {}
    for idx in range(1, len(lines)):
        rec = parse(idx, lines[idx])
        if rec is None:
            continue
        if rec.get("record") != "task" or "prefix" not in rec:
            raise CheckpointError(f"{path}: line {idx + 1} is not a task record")
        try:
            done[rec["prefix"]] = MaxSearchResult(
                n=header["n"],
                sigma=header["sigma"],
                constrained=header["constrained"],
                max_k=rec["max_k"],
                witnesses=tuple(Word.from_text(t) for t in rec["witnesses"]),
                enumerated=rec["enumerated"],
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise CheckpointError(f"{path}: line {idx + 1} has a malformed task record: {exc}") from None
    return done


# ---------------------------------------------------------------------------
# Driver
# ---------------------------------------------------------------------------

def _pool_run_task(args) -> MaxSearchResult:
    prefix, n, sigma, constrained, witness_cap = args
    return run_task(SearchTask(Word(prefix), n, sigma, constrained), witness_cap)


def default_depth(n: int) -> int:
    return min(n, 5)


def max_distinct(
    n: int,
    sigma: int,
    constrained: bool = False,
    *,
    workers: int = 1,
    witness_cap: int = DEFAULT_WITNESS_CAP,
    depth: int | None = None,
    checkpoint_path: str | None = None,
) -> MaxSearchResult:
    """Exhaustive maximum of k over canonical words of length n using <= sigma symbols.

    With ``constrained`` the maximum is taken over words whose last symbol
    lies in an abelian-square occurrence.  The result is deterministic for
    any ``workers`` count; ``checkpoint_path`` makes the run resumable after
    interruption between tasks.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if sigma < 1:
        raise ValueError("sigma must be >= 1")
    if workers < 1:
        raise ValueError("workers must be >= 1")
    if witness_cap < 0:
        raise ValueError("witness_cap must be >= 0")
    depth = default_depth(n) if depth is None else depth
    tasks = partition_space(n, sigma, depth, constrained)
    task_prefixes = [t.prefix.text for t in tasks]

    done: dict[str, MaxSearchResult] = {}
    header = _checkpoint_header(n, sigma, constrained, depth, witness_cap)
    if checkpoint_path:
        if os.path.exists(checkpoint_path) and os.path.getsize(checkpoint_path) > 0:
            done = checkpoint_resume(checkpoint_path, header)
            unknown = set(done) - set(task_prefixes)
            if unknown:
                raise CheckpointError(
                    f"{checkpoint_path}: task prefixes {sorted(unknown)} do not belong to this search"
                )
        else:
            checkpoint_write(checkpoint_path, header, {})

    pending = [t for t in tasks if t.prefix.text not in done]
    if pending:
        if workers > 1 and len(pending) > 1:
            _kernels.warmup()  # compile before forking so children inherit the JIT state
            try:
                ctx = multiprocessing.get_context("fork")
            except ValueError:  # pragma: no cover - non-POSIX fallback
                ctx = multiprocessing.get_context()
            args = [(t.prefix.symbols.tolist(), n, sigma, constrained, witness_cap) for t in pending]
            with ctx.Pool(min(workers, len(pending))) as pool:
                for task, result in zip(pending, pool.imap(_pool_run_task, args)):
                    done[task.prefix.text] = result
                    if checkpoint_path:
                        checkpoint_append(checkpoint_path, task.prefix.text, result)
        else:
            for task in pending:
                result = run_task(task, witness_cap)
                done[task.prefix.text] = result
                if checkpoint_path:
                    checkpoint_append(checkpoint_path, task.prefix.text, result)

    ordered = [done[p] for p in task_prefixes]
    return merge(ordered, witness_cap=witness_cap)
