"""
Normalization, fusion, and AUC evaluation
=========================================

Raw system scores live on incompatible scales: cosines in [-1, 1], sync
scores on whatever scale the model emits, word error rates in [0, inf).
Min-max normalization puts the first two on [0, 1] over the evaluated
population; WER maps through 1 - min(WER, 1); fusion is the plain mean.
AUC then asks: how often does a random genuine video outscore a random
fake one?
"""
# %%

import numpy as np

from avcheck import (
    Label,
    LabeledScore,
    aggregate_mean_std,
    apply_minmax,
    auc,
    ccfd_score,
    fit_minmax,
    fuse,
)

rng = np.random.default_rng(42)
n_genuine, n_fake = 30, 30

population = {
    "SCFD": np.concatenate([rng.normal(0.7, 0.1, n_genuine), rng.normal(0.3, 0.2, n_fake)]),
    "TCFD": np.concatenate([rng.normal(6.0, 1.0, n_genuine), rng.normal(3.5, 1.5, n_fake)]),
}
wers = np.concatenate([rng.uniform(0.0, 0.3, n_genuine), rng.uniform(0.4, 1.4, n_fake)])

# %%
# Fit min-max over the full population under evaluation (genuine + fake
# together - detection needs no fake training data, so there is no split
# to fit on), then normalize and fuse per video.

stats = {name: fit_minmax(list(scores), name, "demo-population") for name, scores in population.items()}
for name, s in stats.items():
    print(f"{name}: observed range [{s.min:+.3f}, {s.max:+.3f}]")

fused_scores = []
for i in range(n_genuine + n_fake):
    normalized = {
        "SCFD": apply_minmax(population["SCFD"][i], stats["SCFD"]),
        "TCFD": apply_minmax(population["TCFD"][i], stats["TCFD"]),
        "CCFD": ccfd_score(wers[i]),
    }
    fused_scores.append(fuse(normalized))

# %%
# AUC per system and for the fusion. Normalization is rank-preserving, so
# each single system's AUC is identical before and after it; fusion is
# where normalization actually matters.

labels = [Label.GENUINE] * n_genuine + [Label.FAKE] * n_fake

def auc_of(values):
    return auc([
        LabeledScore(video_id=str(i), label=lbl, score=float(v))
        for i, (lbl, v) in enumerate(zip(labels, values))
    ])

print(f"SCFD   AUC: {auc_of(population['SCFD']):.4f}")
print(f"TCFD   AUC: {auc_of(population['TCFD']):.4f}")
print(f"CCFD   AUC: {auc_of([ccfd_score(w) for w in wers]):.4f}")
print(f"Fusion AUC: {auc_of(fused_scores):.4f}")

# %%
# Row summaries use the population standard deviation (divide by N):
# a high mean with a low std across subsets is what "generalizes" means
# numerically.

row = [auc_of(population["SCFD"]), auc_of(population["TCFD"]), auc_of(fused_scores)]
mean, std = aggregate_mean_std(row)
print(f"row mean={mean:.4f} population std={std:.4f}")
