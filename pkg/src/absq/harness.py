"""Executable checks for the binary-maximality conjecture, the covered-suffix
lemma, and the literal inductive steps of their proofs.

The statement checks are exhaustive over canonical words at desk scale.  The
proof-step falsifier treats each inductive claim as a hypothesis and reports
violations as data; two of the four claims are theorems (append monotonicity
and the duplicate-append law) and genuinely must never fire.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping

import numpy as np

from .counting import arr_stats
from .search import MaxSearchResult, max_distinct
from .words import Word, iter_canonical_arrays

CLAIM_CONJECTURE_KPLUS1 = "conjecture-step-kplus1"
CLAIM_LEMMA_K_EQUALITY = "lemma-step-k-equality"
CLAIM_LEMMA_K_LOWERBOUND = "lemma-step-k-lowerbound"
CLAIM_LEMMA_COVERAGE = "lemma-step-coverage"

CLAIM_IDS = (
    CLAIM_CONJECTURE_KPLUS1,
    CLAIM_LEMMA_K_EQUALITY,
    CLAIM_LEMMA_K_LOWERBOUND,
    CLAIM_LEMMA_COVERAGE,
)


@dataclass(frozen=True)
class ConjectureReport:
    """Exhaustive verdict for one length: do binary words attain the general maximum?

    holds is equivalent to B = A(n, sigma_max): binary words are a subset of
    the general space, so B <= A always, and the conjecture at length n says
    the two are equal.
    """

    n: int
    sigma_max: int
    A_values: Mapping[int, int]
    B: int
    holds: bool
    witness_general: Word
    witness_binary: Word

    def to_record(self) -> dict:
        return {
            "record": "conjecture",
            "n": self.n,
            "sigma_max": self.sigma_max,
            "A": {str(s): v for s, v in sorted(self.A_values.items())},
            "B": self.B,
            "holds": self.holds,
            "witness_general": self.witness_general.text,
            "witness_binary": self.witness_binary.text,
        }

    @classmethod
    def from_record(cls, rec: dict) -> "ConjectureReport":
        return cls(
            n=rec["n"],
            sigma_max=rec["sigma_max"],
            A_values={int(s): v for s, v in rec["A"].items()},
            B=rec["B"],
            holds=rec["holds"],
            witness_general=Word.from_text(rec["witness_general"]),
            witness_binary=Word.from_text(rec["witness_binary"]),
        )


@dataclass(frozen=True)
class LemmaCheckResult:
    """Verdict for the covered-suffix lemma at one length.

    L_binary is the constrained binary maximum; violators are the canonical
    words over <= sigma symbols whose last symbol is covered yet whose count
    exceeds L_binary.
    """

    n: int
    sigma: int
    L_binary: int
    violators: tuple[Word, ...]
    holds: bool

    def to_record(self) -> dict:
        return {
            "record": "lemma",
            "n": self.n,
            "sigma": self.sigma,
            "L_binary": self.L_binary,
            "violators": [w.text for w in self.violators],
            "holds": self.holds,
        }

    @classmethod
    def from_record(cls, rec: dict) -> "LemmaCheckResult":
        return cls(
            n=rec["n"],
            sigma=rec["sigma"],
            L_binary=rec["L_binary"],
            violators=tuple(Word.from_text(t) for t in rec["violators"]),
            holds=rec["holds"],
        )


@dataclass(frozen=True)
class ProofStepCounterexample:
    """One word falsifying one literal proof claim about appending the last symbol."""

    claim_id: str
    w: Word
    x: int
    k_w: int
    k_wx: int
    details: str

    def to_record(self) -> dict:
        return {
            "record": "counterexample",
            "claim_id": self.claim_id,
            "w": self.w.text,
            "x": chr(ord("a") + self.x),
            "k_w": self.k_w,
            "k_wx": self.k_wx,
            "details": self.details,
        }

    @classmethod
    def from_record(cls, rec: dict) -> "ProofStepCounterexample":
        return cls(
            claim_id=rec["claim_id"],
            w=Word.from_text(rec["w"]),
            x=ord(rec["x"]) - ord("a"),
            k_w=rec["k_w"],
            k_wx=rec["k_wx"],
            details=rec["details"],
        )


def verify_conjecture(
    n: int, sigma_max: int, *, workers: int = 1, witness_cap: int = 8
) -> ConjectureReport:
    """Exhaustively compare the binary maximum B(n) against A(n, sigma) for
    sigma up to sigma_max.

    B(n) >= A(n, sigma_max) is exactly the statement that every word of
    length n over <= sigma_max symbols has a binary word matching its
    distinct abelian-square count.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if sigma_max < 2:
        raise ValueError("sigma_max must be >= 2")
    results: dict[int, MaxSearchResult] = {}
    for sigma in range(2, sigma_max + 1):
        results[sigma] = max_distinct(n, sigma, workers=workers, witness_cap=witness_cap)
    A_values = {sigma: r.max_k for sigma, r in results.items()}
    B = A_values[2]
    return ConjectureReport(
        n=n,
        sigma_max=sigma_max,
        A_values=A_values,
        B=B,
        holds=B >= A_values[sigma_max],
        witness_general=results[sigma_max].witnesses[0],
        witness_binary=results[2].witnesses[0],
    )


def _canonical_words_with_stats(n: int, sigma: int) -> Iterator[tuple[np.ndarray, int, bool]]:
    for buf in iter_canonical_arrays(n, sigma):
        used = int(buf.max()) + 1 if buf.size else 1
        k, covered = arr_stats(buf, used)
        yield buf, k, covered


def check_lemma1(n: int, sigma: int, *, workers: int = 1) -> LemmaCheckResult:
    """Exhaustively test the covered-suffix lemma at length n.

    Compares every canonical word over <= sigma symbols whose last symbol is
    in an abelian-square occurrence against the best covered binary word.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if sigma < 2:
        raise ValueError("sigma must be >= 2")
    L_binary = max_distinct(n, 2, constrained=True, workers=workers).max_k
    violators = [
        Word(buf.copy())
        for buf, k, covered in _canonical_words_with_stats(n, sigma)
        if covered and k > L_binary
    ]
    return LemmaCheckResult(n, sigma, L_binary, tuple(violators), holds=not violators)


def falsify_proof_steps(n_max: int, sigma: int) -> list[ProofStepCounterexample]:
    """Test the literal inductive claims on every canonical word w of length
    <= n_max over <= sigma symbols, with x the last symbol of w.

    Claims: (1) if w's last symbol is uncovered, appending x gains a factor;
    (2) if covered, the count stays equal; (3) the count never drops;
    (4) wx always has its last symbol covered.  Violations are returned in
    (length, word, claim) order; claims 3 and 4 are theorems.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if sigma < 1:
        raise ValueError("sigma must be >= 1")
    found: list[ProofStepCounterexample] = []
    for n in range(1, n_max + 1):
        wx = np.empty(n + 1, dtype=np.int64)
        for buf, k_w, cov_w in _canonical_words_with_stats(n, sigma):
            x = int(buf[-1])
            wx[:n] = buf
            wx[n] = x
            used = int(buf.max()) + 1
            k_wx, cov_wx = arr_stats(wx, used)
            letter = chr(ord("a") + x)
            violations = []
            if not cov_w and k_wx < k_w + 1:
                violations.append((
                    CLAIM_CONJECTURE_KPLUS1,
                    f"w={{w}} is not covered and k(w)={k_w}, but k(wx)={k_wx} < {k_w + 1} for x={letter}",
                ))
            if cov_w and k_wx != k_w:
                violations.append((
                    CLAIM_LEMMA_K_EQUALITY,
                    f"w={{w}} is covered and k(w)={k_w}, but k(wx)={k_wx} != {k_w} for x={letter}",
                ))
            if k_wx < k_w:
                violations.append((
                    CLAIM_LEMMA_K_LOWERBOUND,
                    f"k(wx)={k_wx} < k(w)={k_w} for w={{w}}, x={letter}",
                ))
            if not cov_wx:
                violations.append((
                    CLAIM_LEMMA_COVERAGE,
                    f"wx={{w}}{letter} does not have its last symbol covered",
                ))
            if violations:
                word = Word(buf.copy())
                for claim_id, details in violations:
                    found.append(ProofStepCounterexample(
                        claim_id, word, x, k_w, k_wx,
                        details.format(w=word.text),
                    ))
    order = {cid: i for i, cid in enumerate(CLAIM_IDS)}
    found.sort(key=lambda c: (len(c.w), c.w, order[c.claim_id]))
    return found


def binary_image_exists(
    n: int,
    k: int,
    require_covered: bool = False,
    cache: Mapping[tuple[int, bool], MaxSearchResult] | None = None,
) -> Word | None:
    """Lexicographically least binary word of length n with at least k distinct
    abelian-square factors (and a covered last symbol when required), if any.

    ``cache`` may map (n, constrained) to a prior MaxSearchResult; it is used
    to rule out impossible requests without re-enumerating.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if k < 0:
        raise ValueError("k must be >= 0")
    if cache is not None:
        prior = cache.get((n, require_covered))
        if prior is not None and prior.max_k < k:
            return None
    for buf in iter_canonical_arrays(n, 2):
        used = int(buf.max()) + 1 if buf.size else 1
        count, covered = arr_stats(buf, used)
        if count >= k and (covered or not require_covered):
            return Word(buf.copy())
    return None
