#!/usr/bin/env node
/** `render --spec <json>`: render one plot spec to its SVG output. */

import { CsvFormatError, PlotSpecError, renderSpecFile } from "./render";

function main(argv: string[]): number {
  const idx = argv.indexOf("--spec");
  if (idx < 0 || idx + 1 >= argv.length) {
    console.error("usage: render --spec <plot-spec.json>");
    return 2;
  }
  try {
    const out = renderSpecFile(argv[idx + 1]);
    console.log(`wrote ${out}`);
    return 0;
  } catch (err) {
    if (err instanceof PlotSpecError || err instanceof CsvFormatError) {
      console.error(`error: ${(err as Error).message}`);
      return 2;
    }
    throw err;
  }
}

process.exit(main(process.argv.slice(2)));
