#!/usr/bin/env node
import { pathToFileURL } from "node:url";

import { EmptyInputError, InputFormatError, ModelNotFoundError } from "./errors.js";
import { runExport, type ExportJob } from "./export.js";

const USAGE = `usage: conefit-export --model MODEL --input PATH --out PATH [--normalize] [--prefix TEXT]

Dump one embedding vector per input line into the conefit JSON lines format.

options:
  --model MODEL    hash-<dim> (built-in, offline) or xenova:<model id>
                   (needs the optional @xenova/transformers package)
  --input PATH     text file, one item per line ("id<TAB>text" or plain text)
  --out PATH       output JSON lines file
  --normalize      scale every vector to unit Euclidean norm
  --prefix TEXT    prompt prefix some published models expect, e.g.
                   "query: " or "passage: " for the multilingual-e5
                   family; all-MiniLM and bge models need none
`;

function parseArgs(argv: string[]): ExportJob {
  const values: Record<string, string> = {};
  let normalize = false;
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    if (arg === "--help" || arg === "-h") {
      process.stdout.write(USAGE);
      process.exit(0);
    } else if (arg === "--normalize") {
      normalize = true;
    } else if (arg === "--model" || arg === "--input" || arg === "--out" || arg === "--prefix") {
      const value = argv[++i];
      if (value === undefined) {
        throw new UsageError(`${arg} needs a value`);
      }
      values[arg.slice(2)] = value;
    } else {
      throw new UsageError(`unknown argument ${JSON.stringify(arg)}`);
    }
  }
  for (const required of ["model", "input", "out"]) {
    if (!(required in values)) {
      throw new UsageError(`--${required} is required`);
    }
  }
  return {
    model: values.model,
    inputPath: values.input,
    outputPath: values.out,
    normalize,
    prefix: values.prefix ?? "",
  };
}

class UsageError extends Error {}

export async function main(argv: string[]): Promise<number> {
  let job: ExportJob;
  try {
    job = parseArgs(argv);
  } catch (error) {
    process.stderr.write(`error: ${(error as Error).message}\n${USAGE}`);
    return 2;
  }
  try {
    const result = await runExport(job);
    process.stderr.write(
      `wrote ${result.rows} vectors (model=${result.modelName}, dim=${result.dim}) to ${job.outputPath}\n`,
    );
    return 0;
  } catch (error) {
    const err = error as Error;
    process.stderr.write(`error: ${err.name}: ${err.message}\n`);
    if (err instanceof ModelNotFoundError) return 3;
    if (err instanceof EmptyInputError) return 4;
    if (err instanceof InputFormatError) return 5;
    return 1;
  }
}

if (process.argv[1] && import.meta.url === pathToFileURL(process.argv[1]).href) {
  main(process.argv.slice(2)).then((code) => {
    process.exitCode = code;
  });
}
