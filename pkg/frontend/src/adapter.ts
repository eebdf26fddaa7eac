/**
 * Run a detector over an image list and emit the wire format.
 *
 * The adapter never applies a confidence threshold: one inference pass
 * serves every downstream threshold choice. Image payloads never cross
 * the wire; only geometry does.
 */

import * as fs from "node:fs";
import * as path from "node:path";
import {
  backendSpec,
  DetectorBackend,
  PromptCapacityError,
} from "./backends.js";
import { AdapterRequest, WireHeader, WireLabel, WireRecord } from "./types.js";
import { chunkPrompts, globalIndex, PromptChunk } from "./vocab.js";

export interface WireStream {
  header: WireHeader;
  records: WireRecord[];
}

function validateRequest(request: AdapterRequest): void {
  if (!request.prompts || request.prompts.length === 0) {
    throw new Error("request has no prompts");
  }
  if (!request.images || request.images.length === 0) {
    throw new Error("request has no images");
  }
  for (const image of request.images) {
    if (!fs.existsSync(image)) {
      throw new Error(`image path does not exist: ${image}`);
    }
  }
}

export function runInference(request: AdapterRequest): WireStream {
  validateRequest(request);
  const spec = backendSpec(request.model);

  let chunks: PromptChunk[];
  if (request.prompt_chunk_size) {
    if (request.prompt_chunk_size > spec.maxPrompts) {
      throw new PromptCapacityError(
        request.model,
        request.prompt_chunk_size,
        spec.maxPrompts,
      );
    }
    chunks = chunkPrompts(request.prompts, request.prompt_chunk_size);
  } else {
    if (request.prompts.length > spec.maxPrompts) {
      throw new PromptCapacityError(
        request.model,
        request.prompts.length,
        spec.maxPrompts,
      );
    }
    chunks = [{ prompts: request.prompts, offset: 0 }];
  }

  const backend = spec.create();
  const records = request.images.map((image) =>
    labelImage(backend, image, chunks),
  );
  return {
    header: {
      classes: request.prompts,
      model: request.model,
      options: {
        nms: backend.nmsDescription,
        confidence_floor: backend.confidenceFloor,
        prompt_chunks: chunks.length,
      },
    },
    records,
  };
}

function labelImage(
  backend: DetectorBackend,
  imagePath: string,
  chunks: PromptChunk[],
): WireRecord {
  const { width, height } = backend.imageSize(imagePath);
  const labels: WireLabel[] = [];
  for (const chunk of chunks) {
    for (const det of backend.detect(imagePath, chunk.prompts)) {
      labels.push({
        class_index: globalIndex(chunk, det.promptIndex),
        cx: det.cx,
        cy: det.cy,
        w: det.w,
        h: det.h,
        confidence: det.confidence,
      });
    }
  }
  labels.sort((a, b) => a.class_index - b.class_index || b.confidence - a.confidence);
  return {
    image_id: path.basename(imagePath, path.extname(imagePath)),
    width,
    height,
    labels,
  };
}

export function serializeWire(stream: WireStream): string {
  const lines = [JSON.stringify(stream.header)];
  for (const record of stream.records) {
    lines.push(JSON.stringify(record));
  }
  return lines.join("\n") + "\n";
}

export function loadRequest(requestPath: string): AdapterRequest {
  const request = JSON.parse(
    fs.readFileSync(requestPath, "utf-8"),
  ) as AdapterRequest;
  return request;
}

export function writeWireFile(stream: WireStream, destPath: string): void {
  fs.mkdirSync(path.dirname(path.resolve(destPath)), { recursive: true });
  fs.writeFileSync(destPath, serializeWire(stream), "utf-8");
}
