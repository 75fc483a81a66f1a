"""avcheck: audio-visual consistency scoring for claimed-video authenticity.

Three systems score how well a video's audio and visual streams agree:

* content (CCFD): word error rate between the word sequence recognized
  from audio and the one read from lip movements;
* semantic (SCFD): 3rd percentile of per-frame cosine similarity between
  paired audio/video embeddings;
* temporal (TCFD): mean synchronization score over sliding windows.

Scores are min-max normalized (CCFD by formula), fused by averaging, and
evaluated with AUC broken down by dataset, deepfake mode/technique, and
perturbation. Frontend model outputs arrive as JSON Lines interchange
files; see docs/formats.md.
"""

from .content import AlignmentOp, AlignmentResult, align, ccfd_score, tokenize, wer
from .errors import (
    AvCheckError,
    DegenerateLabels,
    DimensionMismatch,
    EmptyInput,
    MissingSystem,
    ParseError,
    SchemaError,
    ValidationError,
)
from .evaluation import (
    AucTable,
    LabeledScore,
    RobustnessMatrix,
    aggregate_mean_std,
    auc,
    emit_report,
    robustness_matrix,
    subset_breakdown,
)
from .fusion import NormalizationStats, apply_minmax, fit_minmax, fuse
from .interchange import (
    EmbeddingFrameSeries,
    Label,
    DeepfakeMode,
    ManifestEntry,
    Modality,
    PerturbationConfig,
    PerturbationTag,
    ScoreRecord,
    SyncScoreSeries,
    Technique,
    TranscriptPair,
    load_frontend_outputs,
    load_manifest,
    load_score_records,
    save_manifest,
    save_score_records,
)
from .pipeline import evaluate_records, fuse_records, score_manifest_entries
from .semantic import cosine_similarity, frame_scores, percentile_3, scfd_score
from .temporal import expected_window_count, tcfd_score

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "AvCheckError",
    "ParseError",
    "ValidationError",
    "SchemaError",
    "DimensionMismatch",
    "EmptyInput",
    "MissingSystem",
    "DegenerateLabels",
    # interchange
    "Label",
    "DeepfakeMode",
    "Technique",
    "Modality",
    "PerturbationTag",
    "PerturbationConfig",
    "ManifestEntry",
    "TranscriptPair",
    "EmbeddingFrameSeries",
    "SyncScoreSeries",
    "ScoreRecord",
    "load_manifest",
    "save_manifest",
    "load_frontend_outputs",
    "load_score_records",
    "save_score_records",
    # content
    "AlignmentOp",
    "AlignmentResult",
    "tokenize",
    "align",
    "wer",
    "ccfd_score",
    # semantic
    "cosine_similarity",
    "frame_scores",
    "percentile_3",
    "scfd_score",
    # temporal
    "expected_window_count",
    "tcfd_score",
    # fusion
    "NormalizationStats",
    "fit_minmax",
    "apply_minmax",
    "fuse",
    # evaluation
    "LabeledScore",
    "AucTable",
    "RobustnessMatrix",
    "auc",
    "aggregate_mean_std",
    "subset_breakdown",
    "robustness_matrix",
    "emit_report",
    # pipeline
    "score_manifest_entries",
    "fuse_records",
    "evaluate_records",
]
