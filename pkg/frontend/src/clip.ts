/**
 * Synthetic clips: a deterministic stand-in for decoded media.
 *
 * A clip carries two word timelines - what the audio says and what the
 * lips articulate - plus a seed. Everything downstream (waveforms, mouth
 * frames, envelopes) derives from these deterministically, so a clip
 * descriptor fully reproduces its media. Genuine clips share one
 * timeline; tamper helpers shift or rewrite one side, which is how test
 * fixtures model dubbed, re-voiced, or re-animated videos.
 */

import { Rng, hashString } from "./random.js";

export interface TimedWord {
  word: string;
  /** First frame of articulation (inclusive). */
  startFrame: number;
  /** Last frame of articulation (exclusive). */
  endFrame: number;
}

export interface Clip {
  id: string;
  frameCount: number;
  fps: number;
  sampleRate: number;
  seed: number;
  /** Words present in the audio stream. */
  audioTrack: TimedWord[];
  /** Words the mouth articulates in the video stream. */
  videoTrack: TimedWord[];
  /** Frames the audio timeline lags the video timeline by. */
  audioShiftFrames: number;
}

const LEXICON = [
  "ABOUT", "BETTER", "CAMERA", "DOUBLE", "EVENING", "FOLLOW", "GARDEN",
  "HARBOR", "ISLAND", "JOURNEY", "KITCHEN", "LADDER", "MORNING", "NUMBER",
  "OFFICE", "PEOPLE", "QUIET", "RIVER", "SUMMER", "TRAVEL", "UNDER",
  "VILLAGE", "WINDOW", "YELLOW", "ZERO", "ANSWER", "BORROW", "CIRCLE",
  "DINNER", "ENGINE", "FOREST", "GUITAR",
];

/** Viseme-confusable substitutions for the synthetic lip reader. */
const CONFUSIONS: Record<string, string> = {
  ABOUT: "AMOUNT", BETTER: "BUTTER", CAMERA: "CAMPER", DOUBLE: "TROUBLE",
  EVENING: "EVENING", FOLLOW: "FALLOW", GARDEN: "GARBLE", HARBOR: "HARDER",
  ISLAND: "INLAND", JOURNEY: "TURNEY", KITCHEN: "MISSION", LADDER: "LATTER",
  MORNING: "MOANING", NUMBER: "LUMBER", OFFICE: "OFFSET", PEOPLE: "PURPLE",
  QUIET: "QUITE", RIVER: "RIPPER", SUMMER: "SUPPER", TRAVEL: "TRAMPLE",
  UNDER: "UTTER", VILLAGE: "MILLAGE", WINDOW: "WIDOW", YELLOW: "MELLOW",
  ZERO: "HERO", ANSWER: "ANCHOR", BORROW: "BARROW", CIRCLE: "CIRCUS",
  DINNER: "DIMMER", ENGINE: "ENSIGN", FOREST: "FORTMOST", GUITAR: "GUTTER",
};

export function confusableWord(word: string): string {
  return CONFUSIONS[word] ?? word.split("").reverse().join("");
}

export interface ClipOptions {
  wordCount?: number;
  words?: string[];
  fps?: number;
  sampleRate?: number;
  /** Silent tail appended after the last word, in frames. */
  tailFrames?: number;
  /** Force an exact frame count; must fit the laid-out words. */
  frameCount?: number;
}

/** Lay words on a timeline: 4-8 frames each, 1-3 frame gaps. */
export function makeClip(id: string, seed: number, options: ClipOptions = {}): Clip {
  const rng = new Rng((seed ^ hashString(id)) >>> 0);
  const words =
    options.words ??
    Array.from({ length: options.wordCount ?? 10 }, () => rng.pick(LEXICON));
  const track: TimedWord[] = [];
  let cursor = rng.int(1, 3);
  for (const word of words) {
    const span = rng.int(4, 8);
    track.push({ word, startFrame: cursor, endFrame: cursor + span });
    cursor += span + rng.int(1, 3);
  }
  let frameCount = cursor + (options.tailFrames ?? 2);
  if (options.frameCount !== undefined) {
    if (options.frameCount < cursor) {
      throw new Error(
        `frameCount ${options.frameCount} cannot hold ${words.length} words ` +
          `(need ${cursor} frames)`,
      );
    }
    frameCount = options.frameCount;
  }
  return {
    id,
    frameCount,
    fps: options.fps ?? 25,
    sampleRate: options.sampleRate ?? 16000,
    seed,
    audioTrack: track,
    videoTrack: track,
    audioShiftFrames: 0,
  };
}

/** Desynchronize: the audio timeline lags the lips by `frames`. */
export function shiftAudio(clip: Clip, frames: number): Clip {
  return { ...clip, id: `${clip.id}-shift${frames}`, audioShiftFrames: frames };
}

/** Re-voice: the audio speaks freshly drawn words over the same lips. */
export function replaceAudioWords(clip: Clip, seed: number): Clip {
  const rng = new Rng(seed);
  const audioTrack = clip.videoTrack.map((w) => ({
    ...w,
    word: rng.pick(LEXICON),
  }));
  return { ...clip, id: `${clip.id}-revoiced`, audioTrack };
}

/** Re-animate: a fraction of lip movements articulate different words. */
export function corruptVideoWords(clip: Clip, fraction: number, seed: number): Clip {
  const rng = new Rng(seed);
  const videoTrack = clip.videoTrack.map((w) =>
    rng.next() < fraction ? { ...w, word: rng.pick(LEXICON) } : w,
  );
  return { ...clip, id: `${clip.id}-reanimated`, videoTrack };
}

/**
 * Per-frame articulation strength of a word track in [0, 1].
 *
 * Each word contributes one raised-cosine hump per syllable, with
 * amplitudes seeded by the word itself, over a small resting level.
 * Because both modality tracks of a genuine clip share the generator,
 * their signals agree frame by frame; a shift or rewrite breaks that.
 */
export function articulationSeries(
  track: TimedWord[],
  frameCount: number,
  shiftFrames = 0,
): Float64Array {
  const series = new Float64Array(frameCount).fill(0.05);
  for (const timed of track) {
    const syllables = Math.max(1, Math.round(timed.word.length / 3));
    const span = timed.endFrame - timed.startFrame;
    for (let f = 0; f < span; f++) {
      const frame = timed.startFrame + f + shiftFrames;
      if (frame < 0 || frame >= frameCount) continue;
      const phase = (f / span) * syllables * Math.PI;
      const syllableIndex = Math.min(syllables - 1, Math.floor((f / span) * syllables));
      // one deterministic amplitude per syllable
      const syllableRng = new Rng((hashString(timed.word) + syllableIndex * 7919) >>> 0);
      const amplitude = 0.4 + 0.6 * syllableRng.next();
      const value = 0.05 + amplitude * Math.abs(Math.sin(phase));
      series[frame] = Math.max(series[frame], Math.min(1, value));
    }
  }
  return series;
}

/** Lip aperture per frame, from the video track. */
export function lipAperture(clip: Clip): Float64Array {
  return articulationSeries(clip.videoTrack, clip.frameCount);
}

/** Loudness envelope per frame, from the audio track (with any shift). */
export function audioEnvelope(clip: Clip): Float64Array {
  return articulationSeries(clip.audioTrack, clip.frameCount, clip.audioShiftFrames);
}
