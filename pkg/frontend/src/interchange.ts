/**
 * Writers for the avcheck interchange formats (see ../docs/formats.md in
 * the repository root). Files are UTF-8 JSON Lines with a schema header
 * on the first line; records are keyed by video_id. The backend loader
 * is strict, so everything emitted here must round-trip through it.
 */

import { writeFileSync, mkdirSync } from "node:fs";
import { dirname } from "node:path";

export const SCHEMA_MANIFEST = "avcheck/manifest/v1";
export const SCHEMA_TRANSCRIPTS = "avcheck/transcripts/v1";
export const SCHEMA_EMBEDDINGS = "avcheck/embeddings/v1";
export const SCHEMA_SYNC = "avcheck/sync/v1";

export type LabelValue = "genuine" | "fake";
export type DeepfakeModeValue = "RVFA" | "FVRA" | "FVFA";
export type TechniqueValue = "WL" | "GAN" | "FS" | "GAN_WL" | "FS_WL";

export interface VideoPerturbationTag {
  modality: "video";
  kind: "blur" | "noise" | "contrast" | "compression";
  level: 1 | 2 | 3;
  parameter_value: number;
}

export interface AudioPerturbationTag {
  modality: "audio";
  kind: string; // noise type, declared verbatim
  snr_db: number;
}

export type PerturbationTag = VideoPerturbationTag | AudioPerturbationTag;

export interface ManifestRecord {
  video_id: string;
  label: LabelValue;
  dataset: string;
  frame_count: number;
  fps: number;
  paths: Record<string, string>;
  deepfake_mode?: DeepfakeModeValue;
  technique?: TechniqueValue;
  perturbation?: PerturbationTag;
}

export interface TranscriptRecord {
  video_id: string;
  reference_tokens: string[];
  hypothesis_tokens: string[];
}

export interface EmbeddingFrame {
  audio: number[];
  video: number[];
}

export interface EmbeddingRecord {
  video_id: string;
  dim: number;
  frames: EmbeddingFrame[];
}

export interface SyncRecord {
  video_id: string;
  window_len: number;
  stride: number;
  scores: number[];
}

/**
 * Serialize records as JSON Lines under a schema header. Keys are sorted
 * for byte-stable output; JSON.stringify emits shortest round-trip
 * decimals, which satisfies the full-precision requirement. Non-finite
 * numbers are rejected: nothing an adapter emits may be NaN/Infinity.
 */
export function toJsonLines(
  schema: string,
  records: object[],
  headerExtra: Record<string, unknown> = {},
): string {
  const lines = [stableStringify({ schema, ...headerExtra })];
  for (const record of records) {
    lines.push(stableStringify(record));
  }
  return lines.join("\n") + "\n";
}

export function writeJsonLines(
  path: string,
  schema: string,
  records: object[],
  headerExtra: Record<string, unknown> = {},
): void {
  mkdirSync(dirname(path), { recursive: true });
  writeFileSync(path, toJsonLines(schema, records, headerExtra), "utf-8");
}

function stableStringify(value: unknown): string {
  return JSON.stringify(sortKeys(value));
}

function sortKeys(value: unknown): unknown {
  if (Array.isArray(value)) {
    return value.map(sortKeys);
  }
  if (value !== null && typeof value === "object") {
    const out: Record<string, unknown> = {};
    for (const key of Object.keys(value as object).sort()) {
      out[key] = sortKeys((value as Record<string, unknown>)[key]);
    }
    return out;
  }
  if (typeof value === "number" && !Number.isFinite(value)) {
    throw new Error(`non-finite number in interchange record: ${value}`);
  }
  return value;
}
