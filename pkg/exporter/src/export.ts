import { readFileSync, writeFileSync } from "node:fs";

import { parseItems } from "./input.js";
import { formatJsonl } from "./jsonl.js";
import { resolveModel } from "./models.js";
import { l2Normalize } from "./normalize.js";

export interface ExportJob {
  model: string;
  inputPath: string;
  outputPath: string;
  normalize: boolean;
  /** Prompt prefix some published models require (e.g. "passage: "). */
  prefix?: string;
}

export interface ExportResult {
  modelName: string;
  dim: number;
  rows: number;
}

/**
 * Embed every input item and write the JSON lines file.
 *
 * The output is built fully in memory and written once at the end, so a
 * failing job (empty input, unknown model, zero vector) leaves no file
 * behind. Output rows match input items one to one, in input order.
 */
export async function runExport(job: ExportJob): Promise<ExportResult> {
  const model = resolveModel(job.model, job.prefix ?? "");
  const items = parseItems(readFileSync(job.inputPath, "utf-8"), job.inputPath);
  const vectors = await model.embed(items.map((item) => item.text));
  if (vectors.length !== items.length) {
    throw new Error(
      `model returned ${vectors.length} vectors for ${items.length} items`,
    );
  }
  const dim = vectors[0].length;
  for (const vector of vectors) {
    if (vector.length !== dim) {
      throw new Error("model returned vectors of differing dimensions");
    }
  }
  const rows = items.map((item, i) => ({
    id: item.id,
    vector: job.normalize ? l2Normalize(vectors[i]) : vectors[i],
  }));
  writeFileSync(job.outputPath, formatJsonl(model.name, dim, rows), "utf-8");
  return { modelName: model.name, dim, rows: rows.length };
}
