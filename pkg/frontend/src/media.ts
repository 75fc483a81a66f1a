/**
 * Media synthesis, measurement, and perturbation.
 *
 * Clips render to real signal buffers - a 16 kHz waveform and per-frame
 * grayscale mouth crops - and the engines re-measure those buffers
 * instead of peeking at the clip descriptor. Perturbations therefore
 * degrade downstream scores the way they would in a real pipeline:
 * additive noise at a target SNR drowns the envelope, blur/noise/contrast
 * distort the aperture estimate.
 *
 * One caveat is compression: there is no video encoder in this package,
 * so the `compression` kind applies blockwise DCT quantization with
 * strength mapped from CRF - an artifact model, not a codec. Wiring a
 * real encoder (ffmpeg with `-crf N`) in place of it is a deployment
 * concern.
 */

import { Rng, hashString } from "./random.js";
import type { AudioNoiseType } from "./config.js";
import { videoPerturbationValue } from "./config.js";
import type { PerturbationTag } from "./interchange.js";

// ---------------------------------------------------------------------------
// Audio: waveform synthesis, envelope recovery, noise at a target SNR
// ---------------------------------------------------------------------------

/** Envelope-modulated voiced tone with a soft noise floor, at 16 kHz. */
export function synthesizeWaveform(
  envelope: Float64Array,
  fps: number,
  sampleRate: number,
  seed: number,
): Float64Array {
  const samplesPerFrame = Math.round(sampleRate / fps);
  const waveform = new Float64Array(envelope.length * samplesPerFrame);
  const rng = new Rng(seed ^ 0x5eed);
  const f0 = 120; // nominal voicing pitch
  for (let frame = 0; frame < envelope.length; frame++) {
    const level = envelope[frame];
    for (let s = 0; s < samplesPerFrame; s++) {
      const t = (frame * samplesPerFrame + s) / sampleRate;
      const voiced =
        Math.sin(2 * Math.PI * f0 * t) +
        0.5 * Math.sin(2 * Math.PI * 2 * f0 * t) +
        0.25 * Math.sin(2 * Math.PI * 3 * f0 * t);
      waveform[frame * samplesPerFrame + s] =
        level * 0.5 * voiced + 0.01 * rng.gauss();
    }
  }
  return waveform;
}

/** Per-frame RMS of a waveform: the envelope an engine can measure. */
export function measureEnvelope(
  waveform: Float64Array,
  frameCount: number,
  fps: number,
  sampleRate: number,
): Float64Array {
  const samplesPerFrame = Math.round(sampleRate / fps);
  const envelope = new Float64Array(frameCount);
  for (let frame = 0; frame < frameCount; frame++) {
    let energy = 0;
    const start = frame * samplesPerFrame;
    for (let s = start; s < start + samplesPerFrame && s < waveform.length; s++) {
      energy += waveform[s] * waveform[s];
    }
    envelope[frame] = Math.sqrt(energy / samplesPerFrame);
  }
  return envelope;
}

export function generateNoise(
  type: AudioNoiseType | string,
  length: number,
  seed: number,
): Float64Array {
  const rng = new Rng(seed ^ hashString(type));
  const noise = new Float64Array(length);
  switch (type) {
    case "white": {
      for (let i = 0; i < length; i++) noise[i] = rng.gauss();
      break;
    }
    case "pink": {
      // Paul Kellet's economy pink filter
      let b0 = 0, b1 = 0, b2 = 0;
      for (let i = 0; i < length; i++) {
        const white = rng.gauss();
        b0 = 0.99765 * b0 + white * 0.099046;
        b1 = 0.963 * b1 + white * 0.2965164;
        b2 = 0.57 * b2 + white * 1.0526913;
        noise[i] = b0 + b1 + b2 + white * 0.1848;
      }
      break;
    }
    case "babble": {
      // several uncorrelated speakers: slow random envelopes over voicing
      for (let voice = 0; voice < 6; voice++) {
        const voiceRng = new Rng((seed + voice * 101) >>> 0);
        const pitch = 90 + voiceRng.uniform(0, 120);
        let level = voiceRng.uniform(0.2, 1);
        for (let i = 0; i < length; i++) {
          if (i % 1600 === 0) level = voiceRng.uniform(0.1, 1); // 0.1 s syllables
          noise[i] +=
            level * Math.sin((2 * Math.PI * pitch * i) / 16000 + voice);
        }
      }
      break;
    }
    case "music": {
      // slow chord progression of harmonic tones
      const roots = [220, 246.9, 261.6, 293.7];
      for (let i = 0; i < length; i++) {
        const root = roots[Math.floor(i / 8000) % roots.length];
        noise[i] =
          Math.sin((2 * Math.PI * root * i) / 16000) +
          0.6 * Math.sin((2 * Math.PI * root * 1.25 * i) / 16000) +
          0.4 * Math.sin((2 * Math.PI * root * 1.5 * i) / 16000);
      }
      break;
    }
    default: {
      // unrecognized type string: fall back to white and let the tag
      // carry the declared name verbatim
      for (let i = 0; i < length; i++) noise[i] = rng.gauss();
    }
  }
  return noise;
}

function power(signal: Float64Array): number {
  let total = 0;
  for (let i = 0; i < signal.length; i++) total += signal[i] * signal[i];
  return total / signal.length;
}

/** Scale `noise` so that 10*log10(Ps/Pn) hits `snrDb`, then mix. */
export function mixAtSnr(
  signal: Float64Array,
  noise: Float64Array,
  snrDb: number,
): { mixed: Float64Array; scaledNoise: Float64Array } {
  const signalPower = power(signal);
  const noisePower = power(noise);
  if (noisePower === 0) {
    throw new Error("noise has zero power, cannot set an SNR");
  }
  const gain = Math.sqrt(signalPower / (noisePower * Math.pow(10, snrDb / 10)));
  const mixed = new Float64Array(signal.length);
  const scaledNoise = new Float64Array(signal.length);
  for (let i = 0; i < signal.length; i++) {
    scaledNoise[i] = gain * noise[i];
    mixed[i] = signal[i] + scaledNoise[i];
  }
  return { mixed, scaledNoise };
}

/** SNR in dB of a clean signal against the noise actually added. */
export function measureSnr(signal: Float64Array, noise: Float64Array): number {
  return 10 * Math.log10(power(signal) / power(noise));
}

// ---------------------------------------------------------------------------
// Video: mouth-crop rendering, aperture recovery, pixel perturbations
// ---------------------------------------------------------------------------

/**
 * Render one grayscale mouth crop: a dark elliptical opening whose height
 * follows the aperture, on a mid-gray face patch with a little texture.
 */
export function renderMouthFrame(
  aperture: number,
  size: number,
  seed: number,
): Float64Array {
  const frame = new Float64Array(size * size);
  const rng = new Rng(seed);
  const cx = (size - 1) / 2;
  const cy = (size - 1) / 2;
  const halfWidth = size * 0.32;
  const halfHeight = Math.max(0.75, aperture * size * 0.22);
  for (let y = 0; y < size; y++) {
    for (let x = 0; x < size; x++) {
      const dx = (x - cx) / halfWidth;
      const dy = (y - cy) / halfHeight;
      const inside = dx * dx + dy * dy <= 1;
      const skin = 0.62 + 0.05 * rng.gauss() * 0.2;
      frame[y * size + x] = inside ? 0.08 : Math.min(1, Math.max(0, skin));
    }
  }
  return frame;
}

export function renderMouthFrames(
  aperture: Float64Array,
  size: number,
  seed: number,
): Float64Array[] {
  return Array.from(aperture, (a, i) =>
    renderMouthFrame(a, size, (seed + i * 31) >>> 0),
  );
}

/** Mean gradient magnitude: how much fine detail the crops retain. */
export function frameSharpness(frames: Float64Array[], size: number): number {
  if (frames.length === 0) return 0;
  let total = 0;
  for (const frame of frames) {
    let acc = 0;
    for (let y = 0; y < size - 1; y++) {
      for (let x = 0; x < size - 1; x++) {
        const v = frame[y * size + x];
        acc += Math.abs(frame[y * size + x + 1] - v);
        acc += Math.abs(frame[(y + 1) * size + x] - v);
      }
    }
    total += acc / ((size - 1) * (size - 1));
  }
  return total / frames.length;
}

/** Recover the aperture: dark-pixel mass in the crop, rescaled. */
export function estimateAperture(frames: Float64Array[], size: number): Float64Array {
  const estimate = new Float64Array(frames.length);
  const halfWidth = size * 0.32;
  for (let i = 0; i < frames.length; i++) {
    let dark = 0;
    for (const value of frames[i]) {
      if (value < 0.35) dark += 1;
    }
    // invert the ellipse area formula: area = pi * halfWidth * halfHeight
    const halfHeight = dark / (Math.PI * halfWidth);
    estimate[i] = Math.min(1, halfHeight / (size * 0.22));
  }
  return estimate;
}

export function gaussianBlur(frame: Float64Array, size: number, sigma: number): Float64Array {
  if (sigma <= 0) return frame.slice();
  const radius = Math.max(1, Math.ceil(3 * sigma));
  const kernel = new Float64Array(2 * radius + 1);
  let total = 0;
  for (let k = -radius; k <= radius; k++) {
    kernel[k + radius] = Math.exp(-(k * k) / (2 * sigma * sigma));
    total += kernel[k + radius];
  }
  for (let k = 0; k < kernel.length; k++) kernel[k] /= total;
  // separable: horizontal then vertical
  const horizontal = new Float64Array(size * size);
  for (let y = 0; y < size; y++) {
    for (let x = 0; x < size; x++) {
      let acc = 0;
      for (let k = -radius; k <= radius; k++) {
        const xx = Math.min(size - 1, Math.max(0, x + k));
        acc += kernel[k + radius] * frame[y * size + xx];
      }
      horizontal[y * size + x] = acc;
    }
  }
  const output = new Float64Array(size * size);
  for (let y = 0; y < size; y++) {
    for (let x = 0; x < size; x++) {
      let acc = 0;
      for (let k = -radius; k <= radius; k++) {
        const yy = Math.min(size - 1, Math.max(0, y + k));
        acc += kernel[k + radius] * horizontal[yy * size + x];
      }
      output[y * size + x] = acc;
    }
  }
  return output;
}

export function addPixelNoise(
  frame: Float64Array,
  std: number,
  seed: number,
): Float64Array {
  const rng = new Rng(seed);
  return Float64Array.from(frame, (v) =>
    Math.min(1, Math.max(0, v + std * rng.gauss())),
  );
}

export function adjustContrast(frame: Float64Array, factor: number): Float64Array {
  let mean = 0;
  for (const v of frame) mean += v;
  mean /= frame.length;
  return Float64Array.from(frame, (v) =>
    Math.min(1, Math.max(0, mean + factor * (v - mean))),
  );
}

/** Blockwise DCT quantization: a compression-artifact stand-in for CRF. */
export function dctQuantize(frame: Float64Array, size: number, crf: number): Float64Array {
  const block = 8;
  // steps calibrated to this renderer's coefficient scale: CRF 33 keeps
  // median detail, CRF 47 leaves little beyond block means
  const step = 0.008 * Math.pow(2, (crf - 33) / 4.2);
  const output = frame.slice();
  for (let by = 0; by < size; by += block) {
    for (let bx = 0; bx < size; bx += block) {
      const coefficients = new Float64Array(block * block);
      for (let v = 0; v < block; v++) {
        for (let u = 0; u < block; u++) {
          let acc = 0;
          for (let y = 0; y < block; y++) {
            for (let x = 0; x < block; x++) {
              acc +=
                frame[(by + y) * size + (bx + x)] *
                Math.cos(((2 * x + 1) * u * Math.PI) / (2 * block)) *
                Math.cos(((2 * y + 1) * v * Math.PI) / (2 * block));
            }
          }
          const cu = u === 0 ? Math.SQRT1_2 : 1;
          const cv = v === 0 ? Math.SQRT1_2 : 1;
          const coefficient = (cu * cv * acc) / 4; // DCT-II, 8x8
          const weight = 1 + (u + v) * 0.25; // coarser for high frequencies
          coefficients[v * block + u] =
            Math.round(coefficient / (step * weight)) * (step * weight);
        }
      }
      for (let y = 0; y < block; y++) {
        for (let x = 0; x < block; x++) {
          let acc = 0;
          for (let v = 0; v < block; v++) {
            for (let u = 0; u < block; u++) {
              const cu = u === 0 ? Math.SQRT1_2 : 1;
              const cv = v === 0 ? Math.SQRT1_2 : 1;
              acc +=
                cu * cv * coefficients[v * block + u] *
                Math.cos(((2 * x + 1) * u * Math.PI) / (2 * block)) *
                Math.cos(((2 * y + 1) * v * Math.PI) / (2 * block));
            }
          }
          output[(by + y) * size + (bx + x)] = Math.min(1, Math.max(0, acc / 4));
        }
      }
    }
  }
  return output;
}

export function applyVideoPerturbation(
  frames: Float64Array[],
  size: number,
  kind: string,
  level: number,
  seed: number,
): Float64Array[] {
  const value = videoPerturbationValue(kind, level);
  switch (kind) {
    case "blur":
      return frames.map((f) => gaussianBlur(f, size, value));
    case "noise":
      return frames.map((f, i) => addPixelNoise(f, value, (seed + i * 17) >>> 0));
    case "contrast":
      return frames.map((f) => adjustContrast(f, value));
    case "compression":
      return frames.map((f) => dctQuantize(f, size, value));
    default:
      throw new Error(`unknown video perturbation kind '${kind}'`);
  }
}

export function makeVideoTag(kind: string, level: number): PerturbationTag {
  return {
    modality: "video",
    kind: kind as "blur" | "noise" | "contrast" | "compression",
    level: level as 1 | 2 | 3,
    parameter_value: videoPerturbationValue(kind, level),
  };
}

export function makeAudioTag(noiseType: string, snrDb: number): PerturbationTag {
  return { modality: "audio", kind: noiseType, snr_db: snrDb };
}
