/**
 * Model registry.
 *
 * Two backends:
 *  - `hash-<dim>`: the built-in hashed character n-gram embedder. Needs
 *    no download, fully deterministic.
 *  - `xenova:<model id>`: a transformers.js feature-extraction pipeline
 *    (for example `xenova:Xenova/all-MiniLM-L6-v2`), mean pooled.
 *    Requires the optional `@xenova/transformers` package and access to
 *    the model files. Some published models expect a prompt prefix (for
 *    example `passage: ` for the e5 family); pass `--prefix` for those.
 */

import { ModelNotFoundError } from "./errors.js";
import { HashNgramModel } from "./hashModel.js";

export interface EmbeddingModel {
  readonly name: string;
  readonly dim: number;
  embed(texts: string[]): Promise<number[][]>;
}

class XenovaModel implements EmbeddingModel {
  readonly name: string;
  dim = 0;
  private readonly modelId: string;
  private readonly prefix: string;

  constructor(modelId: string, prefix: string) {
    this.modelId = modelId;
    this.prefix = prefix;
    this.name = `xenova:${modelId}`;
  }

  async embed(texts: string[]): Promise<number[][]> {
    let pipeline;
    try {
      ({ pipeline } = await import("@xenova/transformers"));
    } catch {
      throw new ModelNotFoundError(
        "the xenova backend needs the optional @xenova/transformers package " +
          "(npm install @xenova/transformers) and access to the model files",
      );
    }
    const extractor = await pipeline("feature-extraction", this.modelId);
    const rows: number[][] = [];
    for (const text of texts) {
      const output = await extractor(this.prefix + text, {
        pooling: "mean",
        normalize: false,
      });
      rows.push(Array.from(output.data as Float32Array, Number));
    }
    this.dim = rows.length ? rows[0].length : 0;
    return rows;
  }
}

export function resolveModel(modelId: string, prefix = ""): EmbeddingModel {
  const hashMatch = /^hash-(\d+)$/.exec(modelId);
  if (hashMatch) {
    return new HashNgramModel(Number(hashMatch[1]));
  }
  if (modelId.startsWith("xenova:")) {
    return new XenovaModel(modelId.slice("xenova:".length), prefix);
  }
  throw new ModelNotFoundError(
    `unknown model ${JSON.stringify(modelId)}; expected hash-<dim> or xenova:<model id>`,
  );
}
