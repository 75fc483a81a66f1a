"""Content consistency scoring.

Compares the word sequence decoded from a video's audio track (reference)
against the word sequence decoded from its lip movements (hypothesis):
a minimum-cost word alignment yields the word error rate, and the score
``1 - min(WER, 1)`` maps it onto [0, 1] where 1 means fully consistent.
"""

from __future__ import annotations

import math
import string
from dataclasses import dataclass

__all__ = [
    "AlignmentOp",
    "AlignmentResult",
    "tokenize",
    "align",
    "wer",
    "ccfd_score",
]

MATCH = "match"
SUB = "sub"
DELETE = "del"
INSERT = "ins"


@dataclass(frozen=True)
class AlignmentOp:
    """One step of an alignment trace.

    ``ref_index``/``hyp_index`` are 0-based positions into the reference and
    hypothesis; a deletion carries no hypothesis index and an insertion no
    reference index.
    """

    op: str
    ref_index: int | None
    hyp_index: int | None


@dataclass(frozen=True)
class AlignmentResult:
    """Counts and trace of a minimum-cost word alignment (unit costs)."""

    hits: int
    substitutions: int
    deletions: int
    insertions: int
    alignment: tuple[AlignmentOp, ...]

    @property
    def edit_cost(self) -> int:
        return self.substitutions + self.deletions + self.insertions

    @property
    def reference_length(self) -> int:
        return self.hits + self.substitutions + self.deletions

    @property
    def hypothesis_length(self) -> int:
        return self.hits + self.substitutions + self.insertions


def tokenize(text: str) -> list[str]:
    """Split free text into comparable word tokens.

    Uppercases, splits on whitespace runs, and strips leading/trailing
    punctuation from each token (internal punctuation such as apostrophes
    survives). Tokens that are pure punctuation are dropped. An empty or
    all-whitespace string yields an empty list.
    """
    tokens = []
    for piece in text.upper().split():
        word = piece.strip(string.punctuation)
        if word:
            tokens.append(word)
    return tokens


def align(reference: list[str], hypothesis: list[str]) -> AlignmentResult:
    """Minimum-cost alignment of hypothesis against reference.

    Unit costs for substitution, deletion, and insertion. Among equal-cost
    alignments the backtrace prefers match > substitution > deletion >
    insertion, so the trace is deterministic; the counts are the same for
    every minimum-cost alignment.
    """
    n, m = len(reference), len(hypothesis)
    # dist[i][j] = cost of aligning reference[:i] with hypothesis[:j]
    prev = list(range(m + 1))
    rows = [prev]
    for i in range(1, n + 1):
        ref_tok = reference[i - 1]
        cur = [i] + [0] * m
        for j in range(1, m + 1):
            if ref_tok == hypothesis[j - 1]:
                cur[j] = prev[j - 1]
            else:
                cur[j] = 1 + min(prev[j - 1], prev[j], cur[j - 1])
        rows.append(cur)
        prev = cur

    ops: list[AlignmentOp] = []
    hits = subs = dels = ins = 0
    i, j = n, m
    while i > 0 or j > 0:
        cell = rows[i][j]
        if i > 0 and j > 0 and reference[i - 1] == hypothesis[j - 1] and cell == rows[i - 1][j - 1]:
            ops.append(AlignmentOp(MATCH, i - 1, j - 1))
            hits += 1
            i -= 1
            j -= 1
        elif i > 0 and j > 0 and cell == rows[i - 1][j - 1] + 1:
            ops.append(AlignmentOp(SUB, i - 1, j - 1))
            subs += 1
            i -= 1
            j -= 1
        elif i > 0 and cell == rows[i - 1][j] + 1:
            ops.append(AlignmentOp(DELETE, i - 1, None))
            dels += 1
            i -= 1
        else:
            ops.append(AlignmentOp(INSERT, None, j - 1))
            ins += 1
            j -= 1
    ops.reverse()
    return AlignmentResult(
        hits=hits,
        substitutions=subs,
        deletions=dels,
        insertions=ins,
        alignment=tuple(ops),
    )


def wer(alignment: AlignmentResult, reference_len: int) -> float:
    """Word error rate: (substitutions + deletions + insertions) / reference length.

    May exceed 1.0 when insertions dominate. An empty reference with a
    non-empty hypothesis returns ``math.inf`` (maximal inconsistency, mapped
    to score 0 downstream) rather than raising; an empty reference with an
    empty hypothesis returns 0.0.
    """
    if reference_len != alignment.reference_length:
        raise ValueError(
            f"reference_len {reference_len} does not match alignment "
            f"(hits + substitutions + deletions = {alignment.reference_length})"
        )
    if reference_len == 0:
        return 0.0 if alignment.hypothesis_length == 0 else math.inf
    return alignment.edit_cost / reference_len


def ccfd_score(wer_value: float) -> float:
    """Map a WER (or the infinity sentinel) onto a [0, 1] consistency score.

    Returns ``1 - min(wer_value, 1)``; infinity maps to 0.
    """
    if wer_value < 0:
        raise ValueError(f"WER cannot be negative, got {wer_value}")
    return 1.0 - min(wer_value, 1.0)
