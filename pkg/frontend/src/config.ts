/**
 * Adapter configuration: which engines to run, decode settings, media
 * geometry, and the perturbation grid. Engine model ids/paths are plain
 * strings so a deployment can point them at real checkpoints; the
 * bundled synthetic engines ignore them.
 */

export interface AdapterConfig {
  /** Identifier or path of the audio speech recognition model. */
  asrModel: string;
  /** Identifier or path of the lip-reading model. */
  vsrModel: string;
  /** Identifier or path of the paired audio/video embedding encoder. */
  encoderModel: string;
  /** Identifier or path of the lip-sync scoring model. */
  syncModel: string;
  /** Beam width for recognizer decoding. */
  beamSize: number;
  /** Mouth-region crop edge in pixels (square). */
  mouthCropSize: number;
  /** Frame rate every clip is normalized to before processing. */
  targetFps: number;
  /** Audio sample rate every clip is resampled to. */
  targetSampleRate: number;
  /** Sync scoring window geometry. */
  syncWindowLen: number;
  syncStride: number;
  /** Embedding dimensionality emitted per frame and per audio segment. */
  embeddingDim: number;
}

export const DEFAULT_CONFIG: AdapterConfig = {
  asrModel: "synthetic",
  vsrModel: "synthetic",
  encoderModel: "synthetic",
  syncModel: "synthetic",
  beamSize: 40,
  mouthCropSize: 96,
  targetFps: 25,
  targetSampleRate: 16000,
  syncWindowLen: 5,
  syncStride: 1,
  embeddingDim: 16,
};

export function validateConfig(config: AdapterConfig): void {
  if (!Number.isInteger(config.beamSize) || config.beamSize < 1) {
    throw new Error(`beamSize must be a positive integer, got ${config.beamSize}`);
  }
  if (config.targetFps <= 0) {
    throw new Error(`targetFps must be positive, got ${config.targetFps}`);
  }
  if (config.targetSampleRate <= 0) {
    throw new Error(`targetSampleRate must be positive, got ${config.targetSampleRate}`);
  }
  if (config.mouthCropSize < 1) {
    throw new Error(`mouthCropSize must be positive, got ${config.mouthCropSize}`);
  }
  if (config.syncWindowLen < 1 || config.syncStride < 1) {
    throw new Error("sync window geometry must be positive");
  }
  if (config.embeddingDim < 1) {
    throw new Error(`embeddingDim must be positive, got ${config.embeddingDim}`);
  }
}

/** Video perturbation grid: (kind, level) -> parameter name and value. */
export const VIDEO_PERTURBATIONS: Record<
  string,
  { parameter: string; levels: Record<number, number> }
> = {
  blur: { parameter: "sigma", levels: { 1: 0.1, 2: 2, 3: 5 } },
  noise: { parameter: "std", levels: { 1: 0.01, 2: 0.05, 3: 0.1 } },
  contrast: { parameter: "factor", levels: { 1: 0.8, 2: 1.2, 3: 2 } },
  compression: { parameter: "crf", levels: { 1: 33, 2: 40, 3: 47 } },
};

export const AUDIO_SNR_LEVELS_DB = [12.5, 2.5, -7.5] as const;

/**
 * Default audio noise taxonomy. The backend treats the type as a free
 * string declared by the adapter, so deployments may substitute their
 * own noise bank; these four ship with synthesis routines.
 */
export const AUDIO_NOISE_TYPES = ["white", "pink", "babble", "music"] as const;
export type AudioNoiseType = (typeof AUDIO_NOISE_TYPES)[number];

export function videoPerturbationValue(kind: string, level: number): number {
  const row = VIDEO_PERTURBATIONS[kind];
  if (row === undefined) {
    throw new Error(`unknown video perturbation kind '${kind}'`);
  }
  const value = row.levels[level];
  if (value === undefined) {
    throw new Error(`unknown level ${level} for video perturbation '${kind}'`);
  }
  return value;
}
