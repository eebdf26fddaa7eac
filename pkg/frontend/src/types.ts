/**
 * Request and wire-format shapes.
 *
 * The wire format is the exact contract with the evaluation core: an
 * optional header line fixing the class order, then one JSON line per
 * image with boxes in absolute pixels (center format) and mandatory
 * confidences in [0, 1].
 */

export interface AdapterRequest {
  /** Registered detector tag, e.g. "synthetic". */
  model: string;
  /** Image files to label; every path must exist. */
  images: string[];
  /** Ordered class prompts; index order defines class indices. */
  prompts: string[];
  /**
   * Emit every detection above the model's internal floor so threshold
   * filtering stays downstream. Defaults to true.
   */
  raw_output?: boolean;
  /**
   * Split the prompt list into chunks of at most this many prompts and
   * run one forward pass per chunk, merging outputs with indices
   * remapped to the full prompt order.
   */
  prompt_chunk_size?: number | null;
}

export interface WireLabel {
  class_index: number;
  cx: number;
  cy: number;
  w: number;
  h: number;
  confidence: number;
}

export interface WireRecord {
  image_id: string;
  width: number;
  height: number;
  labels: WireLabel[];
}

export interface WireHeader {
  classes: string[];
  model: string;
  options: {
    nms: string;
    confidence_floor: number;
    prompt_chunks: number;
  };
}

/** One detection from a backend pass, indexed into that pass's prompts. */
export interface Detection {
  promptIndex: number;
  cx: number;
  cy: number;
  w: number;
  h: number;
  confidence: number;
}

export interface ImageSize {
  width: number;
  height: number;
}
