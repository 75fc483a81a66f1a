/**
 * Frontend adapters: clips in, interchange files out.
 *
 * `processClip` runs the full chain for one clip - synthesize media,
 * apply any perturbation, re-measure, run the engines - and returns the
 * records the backend consumes. `emitDataset` batches clips into the
 * one-file-per-kind layout the manifest points at.
 */

import { join } from "node:path";

import type { Clip } from "./clip.js";
import { audioEnvelope, lipAperture } from "./clip.js";
import type { AdapterConfig } from "./config.js";
import { DEFAULT_CONFIG, validateConfig } from "./config.js";
import type {
  EmbeddingRecord,
  LabelValue,
  DeepfakeModeValue,
  ManifestRecord,
  PerturbationTag,
  SyncRecord,
  TechniqueValue,
  TranscriptRecord,
} from "./interchange.js";
import {
  SCHEMA_EMBEDDINGS,
  SCHEMA_MANIFEST,
  SCHEMA_SYNC,
  SCHEMA_TRANSCRIPTS,
  writeJsonLines,
} from "./interchange.js";
import type { MeasuredMedia } from "./engines.js";
import {
  SyntheticAsr,
  SyntheticEncoder,
  SyntheticSyncScorer,
  SyntheticVsr,
} from "./engines.js";
import {
  applyVideoPerturbation,
  estimateAperture,
  frameSharpness,
  generateNoise,
  measureEnvelope,
  measureSnr,
  mixAtSnr,
  renderMouthFrames,
  synthesizeWaveform,
} from "./media.js";

export interface ClipLabeling {
  label: LabelValue;
  deepfakeMode?: DeepfakeModeValue;
  technique?: TechniqueValue;
}

export interface ProcessedClip {
  transcript: TranscriptRecord;
  embedding: EmbeddingRecord;
  sync: SyncRecord;
  frameCount: number;
  /** Too short for even one sync window; scores are empty. */
  tooShort: boolean;
  /** Measured SNR of the audio actually emitted, when audio was perturbed. */
  measuredSnrDb?: number;
}

const engines = {
  asr: new SyntheticAsr(),
  vsr: new SyntheticVsr(),
  encoder: new SyntheticEncoder(),
  sync: new SyntheticSyncScorer(),
};

/** Synthesize, perturb, re-measure, and run all engines for one clip. */
export function processClip(
  clip: Clip,
  config: AdapterConfig = DEFAULT_CONFIG,
  perturbation?: PerturbationTag,
): ProcessedClip {
  validateConfig(config);

  // audio chain: envelope -> waveform -> (optional noise) -> measured envelope
  const waveform = synthesizeWaveform(
    audioEnvelope(clip),
    config.targetFps,
    config.targetSampleRate,
    clip.seed,
  );
  let audioIn = waveform;
  let measuredSnrDb: number | undefined;
  if (perturbation?.modality === "audio") {
    const noise = generateNoise(perturbation.kind, waveform.length, clip.seed ^ 0xa0d10);
    const { mixed, scaledNoise } = mixAtSnr(waveform, noise, perturbation.snr_db);
    audioIn = mixed;
    measuredSnrDb = measureSnr(waveform, scaledNoise);
  }
  const envelope = measureEnvelope(
    audioIn,
    clip.frameCount,
    config.targetFps,
    config.targetSampleRate,
  );

  // video chain: aperture -> mouth crops -> (optional degradation) -> estimate
  const cleanFrames = renderMouthFrames(lipAperture(clip), config.mouthCropSize, clip.seed);
  let frames = cleanFrames;
  if (perturbation?.modality === "video") {
    frames = applyVideoPerturbation(
      cleanFrames,
      config.mouthCropSize,
      perturbation.kind,
      perturbation.level,
      clip.seed ^ 0x71de0,
    );
  }
  const aperture = estimateAperture(frames, config.mouthCropSize);
  const cleanSharpness = frameSharpness(cleanFrames, config.mouthCropSize);
  const sharpnessRatio =
    cleanSharpness === 0
      ? 1
      : frameSharpness(frames, config.mouthCropSize) / cleanSharpness;

  const media: MeasuredMedia = { envelope, aperture, sharpnessRatio };
  const syncScores = engines.sync.score(clip, media, config);
  return {
    transcript: {
      video_id: clip.id,
      reference_tokens: engines.asr.transcribe(clip, media, config),
      hypothesis_tokens: engines.vsr.read(clip, media, config),
    },
    embedding: {
      video_id: clip.id,
      dim: config.embeddingDim,
      frames: engines.encoder.encode(clip, media, config),
    },
    sync: {
      video_id: clip.id,
      window_len: config.syncWindowLen,
      stride: config.syncStride,
      scores: syncScores,
    },
    frameCount: clip.frameCount,
    tooShort: syncScores.length === 0,
    measuredSnrDb,
  };
}

export interface DatasetClip {
  clip: Clip;
  labeling: ClipLabeling;
  perturbation?: PerturbationTag;
}

export interface DatasetSummary {
  manifestPath: string;
  videoIds: string[];
  tooShort: string[];
  measuredSnrDb: Record<string, number>;
}

/** Process a batch of clips and write the four interchange files. */
export function emitDataset(
  clips: DatasetClip[],
  outDir: string,
  dataset: string,
  config: AdapterConfig = DEFAULT_CONFIG,
): DatasetSummary {
  const manifest: ManifestRecord[] = [];
  const transcripts: TranscriptRecord[] = [];
  const embeddings: EmbeddingRecord[] = [];
  const sync: SyncRecord[] = [];
  const tooShort: string[] = [];
  const measuredSnrDb: Record<string, number> = {};

  for (const { clip, labeling, perturbation } of clips) {
    const processed = processClip(clip, config, perturbation);
    transcripts.push(processed.transcript);
    embeddings.push(processed.embedding);
    sync.push(processed.sync);
    if (processed.tooShort) tooShort.push(clip.id);
    if (processed.measuredSnrDb !== undefined) {
      measuredSnrDb[clip.id] = processed.measuredSnrDb;
    }
    const record: ManifestRecord = {
      video_id: clip.id,
      label: labeling.label,
      dataset,
      frame_count: clip.frameCount,
      fps: config.targetFps,
      paths: {
        transcripts: "transcripts.jsonl",
        embeddings: "embeddings.jsonl",
        sync: "sync.jsonl",
      },
    };
    if (labeling.deepfakeMode) record.deepfake_mode = labeling.deepfakeMode;
    if (labeling.technique) record.technique = labeling.technique;
    if (perturbation) record.perturbation = perturbation;
    manifest.push(record);
  }

  const provenance = {
    producer: "avcheck-frontend-adapters",
    asr_model: config.asrModel,
    vsr_model: config.vsrModel,
    encoder_model: config.encoderModel,
    sync_model: config.syncModel,
    beam_size: config.beamSize,
  };
  writeJsonLines(join(outDir, "transcripts.jsonl"), SCHEMA_TRANSCRIPTS, transcripts, provenance);
  writeJsonLines(join(outDir, "embeddings.jsonl"), SCHEMA_EMBEDDINGS, embeddings, provenance);
  writeJsonLines(join(outDir, "sync.jsonl"), SCHEMA_SYNC, sync, provenance);
  const manifestPath = join(outDir, "manifest.jsonl");
  writeJsonLines(manifestPath, SCHEMA_MANIFEST, manifest);
  return {
    manifestPath,
    videoIds: clips.map((c) => c.clip.id),
    tooShort,
    measuredSnrDb,
  };
}
