/**
 * Recognition and scoring engines over measured media signals.
 *
 * The interfaces are the extension points for real models (spawn an
 * external decoder, call an inference server); the bundled synthetic
 * engines work from the measured envelope/aperture plus the clip's word
 * timelines, and degrade when the measurement degrades - a faithful
 * miniature of how recognizers behave on corrupted media.
 */

import type { Clip } from "./clip.js";
import { articulationSeries, confusableWord } from "./clip.js";
import type { AdapterConfig } from "./config.js";
import { Rng, hashString } from "./random.js";

export interface MeasuredMedia {
  /** Per-frame loudness recovered from the (possibly noisy) waveform. */
  envelope: Float64Array;
  /** Per-frame lip aperture recovered from the (possibly degraded) crops. */
  aperture: Float64Array;
  /**
   * Fine-detail retention of the crops relative to clean rendering
   * (1 = clean; blur pushes it down, pixel noise pushes it up). The lip
   * reader needs texture, not just the opening, so both directions hurt.
   */
  sharpnessRatio: number;
}

export interface SpeechRecognizer {
  transcribe(clip: Clip, media: MeasuredMedia, config: AdapterConfig): string[];
}

export interface LipReader {
  read(clip: Clip, media: MeasuredMedia, config: AdapterConfig): string[];
}

export interface PairedEncoder {
  encode(
    clip: Clip,
    media: MeasuredMedia,
    config: AdapterConfig,
  ): { audio: number[]; video: number[] }[];
}

export interface SyncScorer {
  score(clip: Clip, media: MeasuredMedia, config: AdapterConfig): number[];
}

/** RMS deviation between a measured signal and a reference over a span. */
function spanRmse(
  measured: Float64Array,
  reference: Float64Array,
  start: number,
  end: number,
): number {
  let acc = 0;
  let count = 0;
  for (let f = Math.max(0, start); f < Math.min(measured.length, end); f++) {
    const d = measured[f] - reference[f];
    acc += d * d;
    count += 1;
  }
  return count === 0 ? 1 : Math.sqrt(acc / count);
}

/**
 * Synthetic ASR: decodes the audio track's words, misreading a word when
 * the measured envelope no longer matches what that word should sound
 * like (noise), and losing words the media no longer contains (a shifted
 * timeline pushes trailing words past the end of the clip).
 * Deterministic per (clip, word position).
 */
export class SyntheticAsr implements SpeechRecognizer {
  transcribe(clip: Clip, media: MeasuredMedia, _config: AdapterConfig): string[] {
    const ideal = articulationSeries(clip.audioTrack, clip.frameCount, clip.audioShiftFrames);
    // measured RMS runs lower than the unit-scale articulation signal
    const gain = fitGain(media.envelope, ideal);
    const tokens: string[] = [];
    for (const [index, timed] of clip.audioTrack.entries()) {
      const start = timed.startFrame + clip.audioShiftFrames;
      const end = timed.endFrame + clip.audioShiftFrames;
      const audible =
        (Math.min(end, clip.frameCount) - Math.max(start, 0)) / (end - start);
      if (audible < 0.5) {
        continue; // most of the word lies outside the media
      }
      const rmse = spanRmse(media.envelope, scaled(ideal, gain), start, end) / gain;
      const clipped = 1 - audible; // partially cut words decode worse
      const pMiss = Math.min(0.95, Math.max(0, (rmse - 0.25) * 1.8) + clipped);
      const draw = new Rng((clip.seed ^ hashString(`asr:${index}:${timed.word}`)) >>> 0);
      if (draw.next() < pMiss) {
        tokens.push(draw.pick([confusableWord(timed.word), "UH"]));
      } else {
        tokens.push(timed.word);
      }
    }
    return tokens;
  }
}

/**
 * Synthetic lip reader: decodes the video track's words with an inherent
 * error floor (lip reading is hard) that grows when the measured aperture
 * drifts from clean articulation or when the crops lose fine detail -
 * blur and compression wash texture out, pixel noise buries it.
 */
export class SyntheticVsr implements LipReader {
  constructor(private readonly baseErrorRate = 0.06) {}

  read(clip: Clip, media: MeasuredMedia, _config: AdapterConfig): string[] {
    const ideal = articulationSeries(clip.videoTrack, clip.frameCount);
    const detailLoss = Math.abs(Math.log(Math.max(media.sharpnessRatio, 1e-3)));
    const tokens: string[] = [];
    for (const [index, timed] of clip.videoTrack.entries()) {
      const rmse = spanRmse(media.aperture, ideal, timed.startFrame, timed.endFrame);
      const pMiss = Math.min(
        0.95,
        this.baseErrorRate + Math.max(0, (rmse - 0.08) * 2.5) + 0.5 * detailLoss,
      );
      const draw = new Rng((clip.seed ^ hashString(`vsr:${index}:${timed.word}`)) >>> 0);
      if (draw.next() < pMiss) {
        tokens.push(confusableWord(timed.word));
      } else {
        tokens.push(timed.word);
      }
    }
    return tokens;
  }
}

/**
 * Synthetic paired encoder: embeds a short local window of the measured
 * signal for each frame, audio side from the envelope and video side
 * from the aperture, through one shared seeded projection. Consistent
 * streams land near each other; desynchronized or degraded streams
 * drift apart.
 */
export class SyntheticEncoder implements PairedEncoder {
  private static readonly TAPS = 5;

  encode(clip: Clip, media: MeasuredMedia, config: AdapterConfig) {
    const dim = config.embeddingDim;
    const projection = this.projection(dim);
    const gain = fitGain(media.envelope, articulationSeries(clip.audioTrack, clip.frameCount, clip.audioShiftFrames));
    const frames = [];
    for (let f = 0; f < clip.frameCount; f++) {
      const audioWindow = localWindow(media.envelope, f, 1 / Math.max(gain, 1e-6));
      const videoWindow = localWindow(media.aperture, f, 1);
      frames.push({
        audio: project(projection, audioWindow, dim),
        video: project(projection, videoWindow, dim),
      });
    }
    return frames;
  }

  private projection(dim: number): Float64Array {
    // fixed seed: the projection is part of the encoder, not the clip
    const rng = new Rng(0xec0de1);
    const matrix = new Float64Array(dim * SyntheticEncoder.TAPS);
    for (let i = 0; i < matrix.length; i++) matrix[i] = rng.gauss();
    return matrix;
  }
}

function localWindow(series: Float64Array, center: number, scale: number): Float64Array {
  const taps = 5;
  const window = new Float64Array(taps);
  for (let k = 0; k < taps; k++) {
    const f = Math.min(series.length - 1, Math.max(0, center + k - 2));
    window[k] = series[f] * scale;
  }
  return window;
}

function project(matrix: Float64Array, window: Float64Array, dim: number): number[] {
  const out = new Array<number>(dim);
  for (let d = 0; d < dim; d++) {
    let acc = 0;
    for (let k = 0; k < window.length; k++) {
      acc += matrix[d * window.length + k] * window[k];
    }
    out[d] = acc + 1e-4; // keep vectors away from exact zero norm
  }
  return out;
}

/**
 * Synthetic sync scorer: Pearson correlation between measured envelope
 * and measured aperture over each window, mapped to [0, 1]. Windows of
 * constant signal (silence) correlate at 0 by convention.
 */
export class SyntheticSyncScorer implements SyncScorer {
  score(clip: Clip, media: MeasuredMedia, config: AdapterConfig): number[] {
    const windowLen = config.syncWindowLen;
    const stride = config.syncStride;
    const count = Math.max(
      0,
      Math.floor((clip.frameCount - windowLen) / stride) + 1,
    );
    const scores: number[] = [];
    for (let w = 0; w < count; w++) {
      const start = w * stride;
      scores.push(
        (correlation(media.envelope, media.aperture, start, start + windowLen) + 1) / 2,
      );
    }
    return scores;
  }
}

function correlation(
  a: Float64Array,
  b: Float64Array,
  start: number,
  end: number,
): number {
  const n = end - start;
  let meanA = 0;
  let meanB = 0;
  for (let i = start; i < end; i++) {
    meanA += a[i];
    meanB += b[i];
  }
  meanA /= n;
  meanB /= n;
  let cov = 0;
  let varA = 0;
  let varB = 0;
  for (let i = start; i < end; i++) {
    const da = a[i] - meanA;
    const db = b[i] - meanB;
    cov += da * db;
    varA += da * da;
    varB += db * db;
  }
  if (varA === 0 || varB === 0) return 0;
  return cov / Math.sqrt(varA * varB);
}

function fitGain(measured: Float64Array, ideal: Float64Array): number {
  let num = 0;
  let den = 0;
  for (let i = 0; i < measured.length; i++) {
    num += measured[i] * ideal[i];
    den += ideal[i] * ideal[i];
  }
  return den === 0 ? 1 : Math.max(num / den, 1e-6);
}

function scaled(series: Float64Array, gain: number): Float64Array {
  return Float64Array.from(series, (v) => v * gain);
}
