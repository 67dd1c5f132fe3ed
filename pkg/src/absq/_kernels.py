"""Hot inner loops for abelian-square scanning, with two interchangeable backends.

The numba backend JIT-compiles the per-word window scan and the exact
distinct-factor dedup; the fallback backend is pure numpy + Python sets.
Selection: numba is used when importable unless the environment variable
ABSQ_NO_NUMBA is set to 1/true/yes.  Both backends are always importable
directly (the benchmark times them side by side).

A window [s, s+2m) is an abelian square iff, in the cumulative Parikh table
P, the vector P[s+2m] - 2*P[s+m] + P[s] is zero: the second half's counts
equal the first half's.

Distinct-factor dedup in the numba backend fingerprints windows with a
64-bit wraparound polynomial hash (O(1) per window via prefix hashes) and
resolves every hash collision by authoritative symbol comparison, so counts
are exact for any hash base.
"""

from __future__ import annotations

import os

import numpy as np

HASH_BASE = 0x100000001B3  # odd multiplier for the wraparound polynomial hash


def _numba_disabled() -> bool:
    return os.environ.get("ABSQ_NO_NUMBA", "").strip().lower() in ("1", "true", "yes")


# ---------------------------------------------------------------------------
# numpy fallback backend
# ---------------------------------------------------------------------------

def _prefix_table_np(sym: np.ndarray, sigma: int) -> np.ndarray:
    n = sym.shape[0]
    table = np.zeros((n + 1, sigma), dtype=np.int64)
    if n:
        one_hot = np.zeros((n, sigma), dtype=np.int64)
        one_hot[np.arange(n), sym] = 1
        np.cumsum(one_hot, axis=0, out=table[1:])
    return table


def occurrences_numpy(sym: np.ndarray, sigma: int) -> tuple[np.ndarray, np.ndarray]:
    """All abelian-square windows of ``sym`` as (starts, lengths), length-major order."""
    n = sym.shape[0]
    pt = _prefix_table_np(sym, sigma)
    starts: list[np.ndarray] = []
    lengths: list[np.ndarray] = []
    for m in range(1, n // 2 + 1):
        diff = pt[2 * m :] - 2 * pt[m : n - m + 1] + pt[: n - 2 * m + 1]
        hits = np.nonzero(~diff.any(axis=1))[0]
        if hits.size:
            starts.append(hits)
            lengths.append(np.full(hits.size, 2 * m, dtype=np.int64))
    if not starts:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty
    return np.concatenate(starts), np.concatenate(lengths)


def stats_numpy(sym: np.ndarray, sigma: int) -> tuple[int, bool]:
    """(distinct abelian-square factor count, does any occurrence end at n)."""
    n = sym.shape[0]
    starts, lengths = occurrences_numpy(sym, sigma)
    seen: set[bytes] = set()
    covered_last = False
    raw = sym.tobytes()
    width = sym.itemsize
    for s, length in zip(starts.tolist(), lengths.tolist()):
        seen.add(raw[s * width : (s + length) * width])
        if s + length == n:
            covered_last = True
    return len(seen), covered_last


# ---------------------------------------------------------------------------
# numba backend
# ---------------------------------------------------------------------------

def _build_numba_kernels():
    from numba import njit

    @njit(cache=True)
    def _occurrences(sym, sigma):
        n = sym.shape[0]
        pt = np.zeros((n + 1, sigma), dtype=np.int64)
        for i in range(n):
            for c in range(sigma):
                pt[i + 1, c] = pt[i, c]
            pt[i + 1, sym[i]] += 1
        cap = 0
        for m in range(1, n // 2 + 1):
            cap += n - 2 * m + 1
        starts = np.empty(cap, dtype=np.int64)
        lengths = np.empty(cap, dtype=np.int64)
        cnt = 0
        for m in range(1, n // 2 + 1):
            length = 2 * m
            for s in range(n - length + 1):
                ok = True
                for c in range(sigma):
                    if pt[s + length, c] - 2 * pt[s + m, c] + pt[s, c] != 0:
                        ok = False
                        break
                if ok:
                    starts[cnt] = s
                    lengths[cnt] = length
                    cnt += 1
        return starts[:cnt].copy(), lengths[:cnt].copy()

    @njit(cache=True)
    def _stats(sym, sigma, hash_base):
        n = sym.shape[0]
        pt = np.zeros((n + 1, sigma), dtype=np.int64)
        for i in range(n):
            for c in range(sigma):
                pt[i + 1, c] = pt[i, c]
            pt[i + 1, sym[i]] += 1
        base = np.uint64(hash_base)
        hp = np.empty(n + 1, dtype=np.uint64)
        pw = np.empty(n + 1, dtype=np.uint64)
        hp[0] = np.uint64(0)
        pw[0] = np.uint64(1)
        for i in range(n):
            hp[i + 1] = hp[i] * base + np.uint64(sym[i] + 1)
            pw[i + 1] = pw[i] * base
        distinct = 0
        covered_last = False
        hbuf = np.empty(n + 1, dtype=np.uint64)
        sbuf = np.empty(n + 1, dtype=np.int64)
        for m in range(1, n // 2 + 1):
            length = 2 * m
            cnt = 0
            for s in range(n - length + 1):
                ok = True
                for c in range(sigma):
                    if pt[s + length, c] - 2 * pt[s + m, c] + pt[s, c] != 0:
                        ok = False
                        break
                if ok:
                    hbuf[cnt] = hp[s + length] - hp[s] * pw[length]
                    sbuf[cnt] = s
                    cnt += 1
                    if s + length == n:
                        covered_last = True
            if cnt == 0:
                continue
            order = np.argsort(hbuf[:cnt])
            i = 0
            while i < cnt:
                j = i
                while j < cnt and hbuf[order[j]] == hbuf[order[i]]:
                    j += 1
                # equal-hash run [i, j): verify collisions symbol by symbol
                for t in range(i, j):
                    st = sbuf[order[t]]
                    duplicate = False
                    for r in range(i, t):
                        sr = sbuf[order[r]]
                        same = True
                        for q in range(length):
                            if sym[st + q] != sym[sr + q]:
                                same = False
                                break
                        if same:
                            duplicate = True
                            break
                    if not duplicate:
                        distinct += 1
                i = j
        return distinct, covered_last

    return _occurrences, _stats


_HAVE_NUMBA = False
occurrences_numba = None
_stats_numba_raw = None

if not _numba_disabled():
    try:
        occurrences_numba, _stats_numba_raw = _build_numba_kernels()
        _HAVE_NUMBA = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        pass


def stats_numba(sym: np.ndarray, sigma: int, hash_base: int = HASH_BASE) -> tuple[int, bool]:
    k, covered = _stats_numba_raw(sym, sigma, hash_base)
    return int(k), bool(covered)


def backend_name() -> str:
    return "numba" if _HAVE_NUMBA else "numpy"


if _HAVE_NUMBA:
    def occurrences(sym: np.ndarray, sigma: int) -> tuple[np.ndarray, np.ndarray]:
        return occurrences_numba(sym, sigma)

    def stats(sym: np.ndarray, sigma: int) -> tuple[int, bool]:
        return stats_numba(sym, sigma)
else:
    occurrences = occurrences_numpy
    stats = stats_numpy


def warmup() -> None:
    """Force JIT compilation before forking worker processes."""
    probe = np.array([0, 0, 1, 0], dtype=np.int64)
    occurrences(probe, 2)
    stats(probe, 2)
