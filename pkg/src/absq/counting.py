"""Exact counting of distinct abelian-square factors.

Two independent routes with the same contract: a brute-force oracle that
materializes every even-length factor string, and a fast counter built on
cumulative Parikh tables (see _kernels).  "Distinct" means distinct as
factor strings, counted without multiplicity; the empty factor and
odd-length factors are never candidates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .words import FactorRef, Word


def coverage_to_string(mask: int, n: int) -> str:
    """Bit mask -> left-to-right bit string (leftmost char is position 0)."""
    return "".join("1" if (mask >> i) & 1 else "0" for i in range(n))


def coverage_from_string(bits: str) -> int:
    mask = 0
    for i, ch in enumerate(bits):
        if ch == "1":
            mask |= 1 << i
        elif ch != "0":
            raise ValueError(f"invalid coverage string {bits!r}")
    return mask


@dataclass(frozen=True)
class CountResult:
    """A word's distinct abelian-square factor count with full evidence.

    ``occurrences`` lists every (start, length) window that is an abelian
    square, in (start, length) lex order; ``coverage`` has bit i set iff
    position i lies inside at least one occurrence.
    """

    word: Word
    k: int
    occurrences: tuple[FactorRef, ...]
    coverage: int

    def coverage_string(self) -> str:
        return coverage_to_string(self.coverage, len(self.word))

    def to_record(self) -> dict:
        return {
            "record": "count",
            "word": self.word.text,
            "sigma": self.word.sigma,
            "k": self.k,
            "occurrences": [[s, l] for s, l in self.occurrences],
            "coverage": self.coverage_string(),
        }

    @classmethod
    def from_record(cls, rec: dict) -> "CountResult":
        return cls(
            word=Word.from_text(rec["word"], rec["sigma"]),
            k=rec["k"],
            occurrences=tuple(FactorRef(s, l) for s, l in rec["occurrences"]),
            coverage=coverage_from_string(rec["coverage"]),
        )


def _coverage_mask(occurrences) -> int:
    mask = 0
    for start, length in occurrences:
        mask |= ((1 << length) - 1) << start
    return mask


def count_distinct_oracle(word: Word) -> CountResult:
    """Brute-force reference counter.

    Materializes every even-length factor, tests the anagram condition by
    sorting the halves, and dedups by the factor string itself.  Shares no
    code with the fast route.
    """
    syms = word.symbols.tolist()
    n = len(syms)
    occurrences = []
    factors = set()
    for start in range(n):
        for length in range(2, n - start + 1, 2):
            half = length // 2
            if sorted(syms[start : start + half]) == sorted(syms[start + half : start + length]):
                occurrences.append(FactorRef(start, length))
                factors.add(tuple(syms[start : start + length]))
    return CountResult(word, len(factors), tuple(occurrences), _coverage_mask(occurrences))


def count_distinct_fast(word: Word) -> CountResult:
    """Prefix-table counter; observably identical to count_distinct_oracle."""
    starts, lengths = _kernels.occurrences(word.symbols, word.sigma)
    occurrences = tuple(
        FactorRef(s, l) for s, l in sorted(zip(starts.tolist(), lengths.tolist()))
    )
    k, _ = _kernels.stats(word.symbols, word.sigma)
    return CountResult(word, k, occurrences, _coverage_mask(occurrences))


def fast_stats(word: Word) -> tuple[int, bool]:
    """(k, last symbol covered) without materializing the occurrence list."""
    return _kernels.stats(word.symbols, word.sigma)


def coverage_mask(word: Word) -> int:
    """Bit mask of positions contained in at least one abelian-square occurrence."""
    starts, lengths = _kernels.occurrences(word.symbols, word.sigma)
    return _coverage_mask(zip(starts.tolist(), lengths.tolist()))


def last_symbol_covered(word: Word) -> bool:
    """Whether some abelian-square occurrence contains the last position.

    By contiguity this is equivalent to an occurrence ending exactly at n.
    """
    if len(word) == 0:
        raise ValueError("last_symbol_covered is undefined for the empty word")
    _, covered = _kernels.stats(word.symbols, word.sigma)
    return covered


def arr_stats(symbols: np.ndarray, sigma: int) -> tuple[int, bool]:
    """Raw-array variant of fast_stats for enumeration inner loops."""
    return _kernels.stats(symbols, sigma)
