export {
  Rng,
  hashString,
} from "./random.js";
export {
  SCHEMA_MANIFEST,
  SCHEMA_TRANSCRIPTS,
  SCHEMA_EMBEDDINGS,
  SCHEMA_SYNC,
  toJsonLines,
  writeJsonLines,
} from "./interchange.js";
export type {
  ManifestRecord,
  TranscriptRecord,
  EmbeddingRecord,
  SyncRecord,
  PerturbationTag,
  LabelValue,
  DeepfakeModeValue,
  TechniqueValue,
} from "./interchange.js";
export {
  DEFAULT_CONFIG,
  VIDEO_PERTURBATIONS,
  AUDIO_NOISE_TYPES,
  AUDIO_SNR_LEVELS_DB,
  validateConfig,
  videoPerturbationValue,
} from "./config.js";
export type { AdapterConfig, AudioNoiseType } from "./config.js";
export {
  makeClip,
  shiftAudio,
  replaceAudioWords,
  corruptVideoWords,
  lipAperture,
  audioEnvelope,
  articulationSeries,
  confusableWord,
} from "./clip.js";
export type { Clip, TimedWord, ClipOptions } from "./clip.js";
export {
  synthesizeWaveform,
  measureEnvelope,
  generateNoise,
  mixAtSnr,
  measureSnr,
  renderMouthFrame,
  renderMouthFrames,
  estimateAperture,
  frameSharpness,
  gaussianBlur,
  addPixelNoise,
  adjustContrast,
  dctQuantize,
  applyVideoPerturbation,
  makeVideoTag,
  makeAudioTag,
} from "./media.js";
export {
  SyntheticAsr,
  SyntheticVsr,
  SyntheticEncoder,
  SyntheticSyncScorer,
} from "./engines.js";
export type {
  MeasuredMedia,
  SpeechRecognizer,
  LipReader,
  PairedEncoder,
  SyncScorer,
} from "./engines.js";
export { processClip, emitDataset } from "./adapters.js";
export type {
  ProcessedClip,
  DatasetClip,
  DatasetSummary,
  ClipLabeling,
} from "./adapters.js";
