/**
 * Prompt-list chunking for models whose architecture caps the number of
 * prompts per forward pass. Chunk-local class indices map back to the
 * full prompt order, so split and unsplit runs agree on indices.
 */

export interface PromptChunk {
  prompts: string[];
  /** Chunk-local index -> index in the full prompt list. */
  offset: number;
}

export function chunkPrompts(prompts: string[], chunkSize: number): PromptChunk[] {
  if (chunkSize < 1) {
    throw new Error(`prompt chunk size must be >= 1, got ${chunkSize}`);
  }
  const chunks: PromptChunk[] = [];
  for (let start = 0; start < prompts.length; start += chunkSize) {
    chunks.push({
      prompts: prompts.slice(start, start + chunkSize),
      offset: start,
    });
  }
  return chunks;
}

/** Remap a chunk-local prompt index to the full-vocabulary index. */
export function globalIndex(chunk: PromptChunk, localIndex: number): number {
  if (localIndex < 0 || localIndex >= chunk.prompts.length) {
    throw new Error(
      `local prompt index ${localIndex} outside chunk of ${chunk.prompts.length}`,
    );
  }
  return chunk.offset + localIndex;
}
