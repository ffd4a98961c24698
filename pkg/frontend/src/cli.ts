/**
 * CLI: turn a sweep-result CSV into an SVG figure.
 *
 *   mmwave-figures render --preset fig5 --csv fig5.csv --out fig5.svg
 *   mmwave-figures render --spec custom.json --csv results.csv --out fig.svg
 *   mmwave-figures preset fig5 [--out spec.json]
 *
 * Exit codes follow the producer CLI's convention: 0 success, 1 for
 * configuration problems (usage, unknown preset, invalid spec), 2 for
 * runtime problems (unreadable/rejected CSV, missing quantity, write
 * failure).  The output file is written only after rendering succeeds,
 * so a rejected CSV never leaves a truncated figure behind.
 */
import * as fs from "fs";
import { parseArgs } from "util";
import { parseResults, CsvFormatError } from "./csv";
import { PRESETS, FigureSpec, SpecError, validateSpec } from "./spec";
import { renderFigure, MissingQuantityError } from "./render";

class UsageError extends Error {}

type Log = (msg: string) => void;

const USAGE =
  "usage: mmwave-figures render (--preset NAME | --spec FILE) --csv FILE --out FILE\n" +
  "       mmwave-figures preset NAME [--out FILE]\n" +
  `presets: ${Object.keys(PRESETS).join(", ")}`;

function loadSpec(presetName: string | undefined, specPath: string | undefined): FigureSpec {
  if ((presetName === undefined) === (specPath === undefined)) {
    throw new UsageError("exactly one of --preset and --spec is required");
  }
  if (presetName !== undefined) {
    const spec = PRESETS[presetName];
    if (spec === undefined) {
      throw new UsageError(`unknown preset "${presetName}"; available: ${Object.keys(PRESETS).join(", ")}`);
    }
    return spec;
  }
  let text: string;
  try {
    text = fs.readFileSync(specPath!, "utf8");
  } catch (e) {
    throw new UsageError(`cannot read spec file ${specPath}: ${(e as Error).message}`);
  }
  let raw: unknown;
  try {
    raw = JSON.parse(text);
  } catch (e) {
    throw new UsageError(`spec file ${specPath} is not valid JSON: ${(e as Error).message}`);
  }
  return validateSpec(raw);
}

function cmdRender(args: string[], log: Log): number {
  const { values } = parseArgs({
    args,
    options: {
      preset: { type: "string" },
      spec: { type: "string" },
      csv: { type: "string" },
      out: { type: "string" },
    },
  });
  if (values.csv === undefined || values.out === undefined) {
    throw new UsageError("--csv and --out are required");
  }
  const spec = loadSpec(values.preset, values.spec);

  let text: string;
  try {
    text = fs.readFileSync(values.csv, "utf8");
  } catch (e) {
    log(`error: cannot read ${values.csv}: ${(e as Error).message}`);
    return 2;
  }
  try {
    const rows = parseResults(text);
    const result = renderFigure(rows, spec);
    fs.writeFileSync(values.out, result.svg, "utf8");
    log(`wrote ${values.out}: ${result.rendered.length} series (${result.rendered.join(", ")})`);
    if (result.skipped.length > 0) {
      log(`skipped quantity ids: ${result.skipped.join(", ")}`);
    }
    return 0;
  } catch (e) {
    if (e instanceof CsvFormatError || e instanceof MissingQuantityError) {
      log(`error: ${e.message}`);
      return 2;
    }
    if (e instanceof Error && "code" in e) {
      // fs errors (ENOENT on the out dir, EACCES, ...)
      log(`error: ${e.message}`);
      return 2;
    }
    throw e;
  }
}

function cmdPreset(args: string[], log: Log): number {
  const { values, positionals } = parseArgs({
    args,
    options: { out: { type: "string" } },
    allowPositionals: true,
  });
  if (positionals.length !== 1) {
    throw new UsageError("preset needs exactly one name");
  }
  const spec = PRESETS[positionals[0]];
  if (spec === undefined) {
    throw new UsageError(`unknown preset "${positionals[0]}"; available: ${Object.keys(PRESETS).join(", ")}`);
  }
  const text = JSON.stringify(spec, null, 2) + "\n";
  if (values.out !== undefined) {
    try {
      fs.writeFileSync(values.out, text, "utf8");
    } catch (e) {
      log(`error: cannot write ${values.out}: ${(e as Error).message}`);
      return 2;
    }
    log(`wrote ${values.out}`);
  } else {
    log(text.trimEnd());
  }
  return 0;
}

export function runCli(argv: string[], log: Log = console.log, errLog: Log = console.error): number {
  try {
    const [command, ...rest] = argv;
    switch (command) {
      case "render":
        return cmdRender(rest, log);
      case "preset":
        return cmdPreset(rest, log);
      case undefined:
      case "--help":
      case "-h":
        errLog(USAGE);
        return command === undefined ? 1 : 0;
      default:
        throw new UsageError(`unknown command "${command}"`);
    }
  } catch (e) {
    // parseArgs throws plain TypeError-ish errors with an ERR_PARSE_ARGS_* code.
    if (e instanceof UsageError || e instanceof SpecError || (e instanceof Error && "code" in e && String((e as NodeJS.ErrnoException).code).startsWith("ERR_PARSE_ARGS"))) {
      errLog(`error: ${e.message}`);
      errLog(USAGE);
      return 1;
    }
    throw e;
  }
}

/* istanbul ignore next -- bin entry */
if (typeof require !== "undefined" && require.main === module) {
  process.exit(runCli(process.argv.slice(2)));
}
