"""
Content consistency from transcripts
====================================

A claimed video yields two word sequences: what a speech recognizer hears
in the audio track, and what a lip reader sees in the mouth region. On
genuine footage the two tell the same story; on many fakes they drift
apart. This demo walks the content scoring chain end to end.
"""
# %%
# Raw recognizer output is messy text; normalize it into comparable tokens.

from avcheck import align, ccfd_score, tokenize, wer

heard = "The quick, brown fox jumps over the lazy dog."
seen = "the quick brown fox trips over a lazy dog today"

reference = tokenize(heard)
hypothesis = tokenize(seen)
print("reference: ", reference)
print("hypothesis:", hypothesis)

# %%
# A minimum-cost word alignment explains the differences: matches,
# substitutions, deletions, insertions.

result = align(reference, hypothesis)
print(f"hits={result.hits} sub={result.substitutions} "
      f"del={result.deletions} ins={result.insertions}")

for op in result.alignment:
    ref_word = reference[op.ref_index] if op.ref_index is not None else "*" * 6
    hyp_word = hypothesis[op.hyp_index] if op.hyp_index is not None else "*" * 6
    print(f"  {op.op:5s} {ref_word:>8s} -> {hyp_word}")

# %%
# Word error rate divides total edits by the reference length, and
# 1 - min(WER, 1) turns it into a [0, 1] consistency score. Identical
# transcripts score 1.0; a hypothesis with nothing in common scores 0.0.

error_rate = wer(result, len(reference))
print(f"WER   = {error_rate:.4f}")
print(f"score = {ccfd_score(error_rate):.4f}")

# %%
# Degenerate decodes are handled explicitly rather than crashing: silence
# on both sides is vacuous consistency, silence on the reference side with
# visible speech is maximal inconsistency.

silent = align([], [])
print("both silent  ->", ccfd_score(wer(silent, 0)))

mismatch = align([], tokenize("words from nowhere"))
print("ref silent   ->", ccfd_score(wer(mismatch, 0)))
