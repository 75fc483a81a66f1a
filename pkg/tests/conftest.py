import sys
from pathlib import Path

import pytest

# oracles.py and fixture helpers live next to the tests
sys.path.insert(0, str(Path(__file__).parent))

from avcheck.interchange import (
    EmbeddingFrameSeries,
    Label,
    ManifestEntry,
    SyncScoreSeries,
    TranscriptPair,
    save_embeddings_file,
    save_manifest,
    save_sync_file,
    save_transcripts_file,
)


class DatasetBuilder:
    """Assemble a manifest plus frontend-output files under one directory.

    ``add_video`` takes the subset tags and the three frontend payloads;
    ``write`` emits one file per kind plus the manifest and returns the
    manifest path.
    """

    def __init__(self, root: Path, dataset: str = "DemoSet"):
        self.root = Path(root)
        self.dataset = dataset
        self.entries = []
        self.transcripts = []
        self.embeddings = []
        self.sync = []

    def add_video(
        self,
        video_id,
        label,
        mode=None,
        technique=None,
        perturbation=None,
        reference=None,
        hypothesis=None,
        frame_cosines=None,
        sync_scores=None,
        frame_count=None,
    ):
        from avcheck.interchange import DeepfakeMode, Technique

        kinds = {}
        if reference is not None:
            self.transcripts.append(
                TranscriptPair(video_id, tuple(reference), tuple(hypothesis or ()))
            )
            kinds["transcripts"] = "transcripts.jsonl"
        if frame_cosines is not None:
            frames = tuple(
                ((1.0, 0.0), (c, (max(0.0, 1.0 - c * c)) ** 0.5)) for c in frame_cosines
            )
            self.embeddings.append(EmbeddingFrameSeries(video_id, 2, frames))
            kinds["embeddings"] = "embeddings.jsonl"
        if sync_scores is not None:
            self.sync.append(SyncScoreSeries(video_id, tuple(sync_scores)))
            kinds["sync"] = "sync.jsonl"
        if frame_count is None:
            frame_count = len(sync_scores) + 4 if sync_scores else 100
        self.entries.append(
            ManifestEntry(
                video_id=video_id,
                label=Label(label),
                dataset=self.dataset,
                frame_count=frame_count,
                fps=25.0,
                paths=kinds,
                deepfake_mode=None if mode is None else DeepfakeMode(mode),
                technique=None if technique is None else Technique(technique),
                perturbation=perturbation,
            )
        )

    def write(self) -> Path:
        self.root.mkdir(parents=True, exist_ok=True)
        if self.transcripts:
            save_transcripts_file(self.transcripts, self.root / "transcripts.jsonl")
        if self.embeddings:
            save_embeddings_file(self.embeddings, self.root / "embeddings.jsonl")
        if self.sync:
            save_sync_file(self.sync, self.root / "sync.jsonl")
        manifest_path = self.root / "manifest.jsonl"
        save_manifest(self.entries, manifest_path)
        return manifest_path


@pytest.fixture
def dataset_builder(tmp_path):
    def make(dataset="DemoSet", subdir="data"):
        return DatasetBuilder(tmp_path / subdir, dataset=dataset)

    return make
