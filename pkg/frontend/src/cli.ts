#!/usr/bin/env node
/**
 * render-figure --recipe figN --in <csv dir> --out <svg file>
 *
 * Exit codes: 0 success, 1 render/input failure, 2 usage error.
 * Nothing is written when rendering fails.
 */

import { writeFileSync } from "node:fs";
import { pathToFileURL } from "node:url";

import { CsvError, renderRecipe } from "./render.js";
import { RECIPES } from "./recipes.js";

function parseArgs(argv: string[]): { recipe: string; inDir: string; out: string } {
  const opts = new Map<string, string>();
  for (let i = 0; i < argv.length; i += 2) {
    const key = argv[i];
    const value = argv[i + 1];
    if (!key.startsWith("--") || value === undefined) {
      throw new UsageError(`malformed arguments near '${key}'`);
    }
    opts.set(key.slice(2), value);
  }
  const recipe = opts.get("recipe");
  const inDir = opts.get("in");
  const out = opts.get("out");
  if (!recipe || !inDir || !out) {
    throw new UsageError("required: --recipe <id> --in <dir> --out <file>");
  }
  return { recipe, inDir, out };
}

class UsageError extends Error {}

export function main(argv: string[]): number {
  let parsed;
  try {
    parsed = parseArgs(argv);
  } catch (err) {
    console.error(`usage error: ${(err as Error).message}`);
    console.error("known recipes:", Object.keys(RECIPES).join(", "));
    return 2;
  }
  const recipe = RECIPES[parsed.recipe];
  if (!recipe) {
    console.error(
      `usage error: unknown recipe '${parsed.recipe}'; known: ${Object.keys(RECIPES).join(", ")}`,
    );
    return 2;
  }
  try {
    const svg = renderRecipe(recipe, parsed.inDir);
    writeFileSync(parsed.out, svg);
    console.log(`wrote ${parsed.out}`);
    return 0;
  } catch (err) {
    if (err instanceof CsvError) {
      console.error(`render failed: ${err.message}`);
      return 1;
    }
    throw err;
  }
}

const invokedDirectly =
  process.argv[1] !== undefined &&
  import.meta.url === pathToFileURL(process.argv[1]).href;

if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
