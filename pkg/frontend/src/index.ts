/**
 * Entry point: `node dist/index.js <figure-spec.json>`
 *
 * The spec JSON lists the input CSVs (one per panel), the panel grid, the
 * horizontal-axis mode, and the output image path; CSV paths are resolved
 * relative to the spec file.
 */

import { readFileSync } from "node:fs";
import { dirname, resolve } from "node:path";

import { FigureSpec, render } from "./figure.js";

export function main(argv: string[]): number {
  const specPath = argv[0];
  if (!specPath) {
    console.error("usage: index.js <figure-spec.json>");
    return 2;
  }
  let spec: FigureSpec;
  try {
    spec = JSON.parse(readFileSync(specPath, "utf8")) as FigureSpec;
  } catch (err) {
    console.error(`cannot read spec: ${(err as Error).message}`);
    return 2;
  }
  const base = dirname(resolve(specPath));
  spec.input_csvs = spec.input_csvs.map((p) => resolve(base, p));
  spec.output_path = resolve(base, spec.output_path);
  try {
    const out = render(spec);
    console.log(`wrote ${out}`);
    return 0;
  } catch (err) {
    console.error(`render failed: ${(err as Error).message}`);
    return 1;
  }
}

process.exitCode = main(process.argv.slice(2));
