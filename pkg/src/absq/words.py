"""Words over small integer alphabets: Parikh machinery and canonical enumeration.

Symbols are dense integers 0..sigma-1; human-facing I/O maps them to the
letters a, b, c, ...  All values here are immutable after construction and
safe to share between workers.
"""

from __future__ import annotations

import functools
from typing import Iterator, NamedTuple, Sequence

import numpy as np

_A = ord("a")


class FactorRef(NamedTuple):
    """A positioned factor: the window [start, start+length) of some word."""

    start: int
    length: int


@functools.total_ordering
class Word:
    """An immutable word over the alphabet {0, ..., sigma-1}.

    ``sigma`` is the size of the permitted alphabet, which may exceed the
    number of symbols actually used.  When omitted it is inferred as
    1 + max(symbol) (1 for the empty word).
    """

    __slots__ = ("symbols", "sigma")

    def __init__(self, symbols: Sequence[int], sigma: int | None = None):
        arr = np.asarray(symbols, dtype=np.int64)
        if arr.ndim != 1:
            raise ValueError("symbols must be a flat sequence")
        if sigma is None:
            sigma = int(arr.max()) + 1 if arr.size else 1
        if sigma < 1:
            raise ValueError(f"sigma must be >= 1, got {sigma}")
        if arr.size and (int(arr.min()) < 0 or int(arr.max()) >= sigma):
            raise ValueError(f"symbol out of range for sigma={sigma}: {arr.tolist()}")
        arr.setflags(write=False)
        object.__setattr__(self, "symbols", arr)
        object.__setattr__(self, "sigma", sigma)

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    @classmethod
    def from_text(cls, text: str, sigma: int | None = None) -> "Word":
        """Parse a word from letters a-z (a=0).  Raises ValueError on other input."""
        ids = []
        for ch in text:
            if not ("a" <= ch <= "z"):
                raise ValueError(f"invalid symbol {ch!r} (letters a-z only)")
            ids.append(ord(ch) - _A)
        return cls(ids, sigma)

    @property
    def text(self) -> str:
        return "".join(chr(_A + s) for s in self.symbols)

    def __len__(self) -> int:
        return int(self.symbols.size)

    def __iter__(self):
        return iter(self.symbols.tolist())

    def __getitem__(self, i: int) -> int:
        return int(self.symbols[i])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return self.sigma == other.sigma and np.array_equal(self.symbols, other.symbols)

    def __lt__(self, other) -> bool:
        # Lexicographic on symbols; matches letter-string order.
        if not isinstance(other, Word):
            return NotImplemented
        return self.symbols.tolist() < other.symbols.tolist()

    def __hash__(self) -> int:
        return hash((self.sigma, self.symbols.tobytes()))

    def __repr__(self) -> str:
        return f"Word({self.text!r}, sigma={self.sigma})"

    def __reduce__(self):
        return (Word, (self.symbols.tolist(), self.sigma))

    def append(self, symbol: int) -> "Word":
        """Return a new word with ``symbol`` appended (sigma widened if needed)."""
        if symbol < 0:
            raise ValueError("symbol must be non-negative")
        return Word(
            np.concatenate([self.symbols, [symbol]]),
            max(self.sigma, symbol + 1),
        )

    def reverse(self) -> "Word":
        return Word(self.symbols[::-1], self.sigma)

    def rename(self, perm: Sequence[int]) -> "Word":
        """Apply an alphabet permutation (perm[s] is the new id of symbol s)."""
        perm = np.asarray(perm, dtype=np.int64)
        if sorted(perm.tolist()) != list(range(self.sigma)):
            raise ValueError(f"not a permutation of 0..{self.sigma - 1}: {perm.tolist()}")
        return Word(perm[self.symbols] if len(self) else [], self.sigma)


def check_ref(word: Word, ref: FactorRef) -> None:
    """Validate that ``ref`` addresses a window inside ``word``."""
    start, length = ref
    if start < 0 or length < 0 or start + length > len(word):
        raise ValueError(f"factor ref {ref} out of range for word of length {len(word)}")


def prefix_table(word: Word) -> np.ndarray:
    """Cumulative Parikh table: row[i] holds symbol counts of the prefix of length i.

    Shape (n+1, sigma); row[0] is all zeros.  Lets any window's Parikh vector
    be read off as row[start+length] - row[start].
    """
    n = len(word)
    table = np.zeros((n + 1, word.sigma), dtype=np.int64)
    if n:
        one_hot = np.zeros((n, word.sigma), dtype=np.int64)
        one_hot[np.arange(n), word.symbols] = 1
        np.cumsum(one_hot, axis=0, out=table[1:])
    return table


def parikh(word: Word, ref: FactorRef, table: np.ndarray | None = None) -> np.ndarray:
    """Exact symbol counts of the referenced window, as a length-sigma vector."""
    check_ref(word, ref)
    start, length = ref
    if table is not None:
        return table[start + length] - table[start]
    counts = np.zeros(word.sigma, dtype=np.int64)
    for s in word.symbols[start : start + length]:
        counts[s] += 1
    return counts


def is_abelian_square(word: Word, ref: FactorRef, table: np.ndarray | None = None) -> bool:
    """Whether the referenced factor's first half is an anagram of its second half.

    Only even lengths >= 2 are candidates; anything else raises ValueError
    rather than returning False.
    """
    check_ref(word, ref)
    start, length = ref
    if length == 0 or length % 2:
        raise ValueError(f"not an abelian-square candidate: length {length} (need even >= 2)")
    half = length // 2
    first = parikh(word, FactorRef(start, half), table)
    second = parikh(word, FactorRef(start + half, half), table)
    return bool(np.array_equal(first, second))


def canonical_form(word: Word) -> Word:
    """Relabel symbols so first occurrences appear in increasing order.

    The result is the restricted-growth representative of the word's
    symbol-renaming class; sigma is re-inferred from the symbols used.
    Idempotent, and invariant for distinct-abelian-square counting.
    """
    relabel: dict[int, int] = {}
    out = np.empty(len(word), dtype=np.int64)
    for i, s in enumerate(word.symbols.tolist()):
        if s not in relabel:
            relabel[s] = len(relabel)
        out[i] = relabel[s]
    return Word(out)


def _first_completion(buf: np.ndarray, fixed: int) -> None:
    buf[fixed:] = 0


def _next_completion(buf: np.ndarray, fixed: int, sigma_max: int) -> bool:
    """Advance ``buf`` to the lexicographically next restricted-growth string
    sharing buf[:fixed]; returns False when the subtree is exhausted.
    """
    n = buf.shape[0]
    # prefix_max[i] = max symbol among buf[:i], or -1
    running = -1
    prefix_max = np.empty(n, dtype=np.int64)
    for i in range(n):
        prefix_max[i] = running
        if buf[i] > running:
            running = buf[i]
    for i in range(n - 1, fixed - 1, -1):
        cap = min(prefix_max[i] + 1, sigma_max - 1)
        if buf[i] < cap:
            buf[i] += 1
            buf[i + 1 :] = 0
            return True
    return False


def iter_canonical_arrays(
    n: int, sigma_max: int, prefix: Sequence[int] = ()
) -> Iterator[np.ndarray]:
    """Yield symbol arrays of all restricted-growth strings of length ``n`` using
    at most ``sigma_max`` symbols and starting with ``prefix``, in lex order.

    The same buffer is reused between yields; callers that retain a word must
    copy it.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if sigma_max < 1:
        raise ValueError("sigma_max must be >= 1")
    pref = np.asarray(prefix, dtype=np.int64)
    if pref.size > n:
        return
    running = -1
    for i, s in enumerate(pref.tolist()):
        if s > running + 1 or s >= sigma_max:
            raise ValueError(f"prefix {pref.tolist()} is not canonical under sigma_max={sigma_max}")
        running = max(running, s)
    buf = np.empty(n, dtype=np.int64)
    buf[: pref.size] = pref
    fixed = int(pref.size)
    _first_completion(buf, fixed)
    yield buf
    while _next_completion(buf, fixed, sigma_max):
        yield buf


def enumerate_canonical(n: int, sigma_max: int, prefix: Sequence[int] = ()) -> Iterator[Word]:
    """One representative Word per symbol-renaming class: every restricted-growth
    string of length ``n`` over at most ``sigma_max`` symbols, in lex order.
    """
    for buf in iter_canonical_arrays(n, sigma_max, prefix):
        yield Word(buf.copy())
