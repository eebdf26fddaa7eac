/**
 * Subprocess entry point: labeleval-infer <request.json> <out.jsonl>
 *
 * Structured errors go to stderr as one JSON object with "error",
 * "message", and (for capacity problems) "advice" fields.
 */

import { PromptCapacityError, SetupError } from "./backends.js";
import { loadRequest, runInference, writeWireFile } from "./adapter.js";

export function main(argv: string[]): number {
  if (argv.length !== 2) {
    process.stderr.write(
      JSON.stringify({
        error: "usage",
        message: "usage: labeleval-infer <request.json> <out.jsonl>",
      }) + "\n",
    );
    return 2;
  }
  const [requestPath, destPath] = argv;
  try {
    const stream = runInference(loadRequest(requestPath));
    writeWireFile(stream, destPath);
    process.stdout.write(
      `${stream.records.length} records -> ${destPath}\n`,
    );
    return 0;
  } catch (err) {
    if (err instanceof PromptCapacityError) {
      process.stderr.write(
        JSON.stringify({
          error: err.kind,
          message: err.message,
          advice: "split the prompt list via prompt_chunk_size",
        }) + "\n",
      );
      return 3;
    }
    if (err instanceof SetupError) {
      process.stderr.write(
        JSON.stringify({ error: err.kind, message: err.message }) + "\n",
      );
      return 4;
    }
    process.stderr.write(
      JSON.stringify({
        error: "invalid_request",
        message: err instanceof Error ? err.message : String(err),
      }) + "\n",
    );
    return 2;
  }
}

const invokedDirectly =
  process.argv[1] !== undefined &&
  import.meta.url === new URL(`file://${process.argv[1]}`).href;
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
