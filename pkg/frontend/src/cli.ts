#!/usr/bin/env node
/** `plot --spec spec.json`: regenerate a figure from sweep CSVs.
 *
 * Exit codes: 0 success, 1 usage error, 2 bad spec or CSV schema.
 */

import { resolve } from "path";
import { fileURLToPath } from "url";

import { CsvSchemaError, loadSpec, render, SpecError } from "./render.js";

export function main(argv: string[]): number {
  const args = argv.slice();
  let specPath: string | undefined;
  while (args.length > 0) {
    const flag = args.shift();
    if (flag === "--spec") {
      specPath = args.shift();
    } else {
      process.stderr.write(`error: unknown argument ${flag}\n`);
      return 1;
    }
  }
  if (!specPath) {
    process.stderr.write("usage: plot --spec <spec.json>\n");
    return 1;
  }
  try {
    const result = render(loadSpec(specPath));
    process.stdout.write(`${result.rasterPath}\n${result.vectorPath}\n`);
    return 0;
  } catch (err) {
    if (err instanceof SpecError || err instanceof CsvSchemaError) {
      process.stderr.write(`error: ${err.message}\n`);
      return 2;
    }
    throw err;
  }
}

const invokedDirectly =
  process.argv[1] !== undefined &&
  fileURLToPath(import.meta.url) === resolve(process.argv[1]);
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
