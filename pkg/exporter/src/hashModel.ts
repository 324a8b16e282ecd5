/**
 * Built-in hashed character n-gram embedder.
 *
 * Each text is lowercased, padded with one space on both sides and split
 * into character trigrams; every trigram is feature-hashed (FNV-1a, two
 * seeds: one picks the bucket, one the sign) into a fixed-width vector.
 * Fully deterministic and offline, so it doubles as the test model for
 * the export pipeline when no downloadable model is reachable.
 */

import type { EmbeddingModel } from "./models.js";

const FNV_PRIME = 0x01000193;

function fnv1a(text: string, seed: number): number {
  let hash = seed >>> 0;
  for (let i = 0; i < text.length; i++) {
    const code = text.charCodeAt(i);
    // mix both bytes of the UTF-16 code unit
    hash = Math.imul(hash ^ (code & 0xff), FNV_PRIME) >>> 0;
    hash = Math.imul(hash ^ (code >>> 8), FNV_PRIME) >>> 0;
  }
  return hash >>> 0;
}

export function hashEmbed(text: string, dim: number): number[] {
  const padded = ` ${text.toLowerCase()} `;
  const vector = new Array<number>(dim).fill(0);
  for (let i = 0; i + 3 <= padded.length; i++) {
    const gram = padded.slice(i, i + 3);
    const bucket = fnv1a(gram, 0x811c9dc5) % dim;
    const sign = fnv1a(gram, 0x01234567) & 1 ? 1 : -1;
    vector[bucket] += sign;
  }
  return vector;
}

export class HashNgramModel implements EmbeddingModel {
  readonly name: string;
  readonly dim: number;

  constructor(dim: number) {
    if (!Number.isInteger(dim) || dim < 1) {
      throw new Error(`hash model dimension must be a positive integer, got ${dim}`);
    }
    this.dim = dim;
    this.name = `hash-${dim}`;
  }

  async embed(texts: string[]): Promise<number[][]> {
    return texts.map((text) => hashEmbed(text, this.dim));
  }
}
