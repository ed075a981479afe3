/**
 * The shared config file format: one JSON object with format_version, p, n,
 * seed, vocab_size, matrix (row-major flat list), matrix_pinned. Parsing
 * applies the same validation ladder as the core (schema, version, ranges,
 * primality, capacity, singularity, regeneration-from-seed), and the writer
 * emits the exact same bytes the core writes for the same config.
 *
 * seed and vocab_size can exceed 2**53, so they are re-read from the raw
 * document text as BigInt instead of trusting JSON.parse's doubles.
 */

import { readFileSync, writeFileSync } from "node:fs";

import { FormatError, IntegrityError, VersionError } from "./errors.js";
import { isPrime, matricesEqual, randomInvertible, PRIME_LIMIT } from "./math.js";

export const FORMAT_VERSION = 1;
export const MAX_DIGITS = 64;
export const CAPACITY_LIMIT = 1n << 128n;

export interface ConfigDocument {
  format_version: number;
  p: number;
  n: number;
  seed: bigint;
  vocab_size: bigint;
  matrix: number[];
  matrix_pinned: boolean;
}

const REQUIRED_KEYS = ["format_version", "p", "n", "seed", "vocab_size", "matrix"];
const ALL_KEYS = [...REQUIRED_KEYS, "matrix_pinned"];

function extractBigIntField(text: string, key: string): bigint {
  const match = text.match(new RegExp(`"${key}"\\s*:\\s*(-?\\d+)`));
  if (!match) {
    throw new FormatError(`field '${key}' must be an unsigned integer`);
  }
  return BigInt(match[1]);
}

function requireInt(doc: Record<string, unknown>, key: string): number {
  const value = doc[key];
  if (typeof value !== "number" || !Number.isInteger(value)) {
    throw new FormatError(`field '${key}' must be an integer, got ${JSON.stringify(value)}`);
  }
  return value;
}

export function parseConfigText(text: string): ConfigDocument {
  let raw: unknown;
  try {
    raw = JSON.parse(text);
  } catch (exc) {
    throw new FormatError(`config is not valid JSON: ${(exc as Error).message}`);
  }
  if (typeof raw !== "object" || raw === null || Array.isArray(raw)) {
    throw new FormatError("config document must be a JSON object");
  }
  const doc = raw as Record<string, unknown>;
  const missing = REQUIRED_KEYS.filter((k) => !(k in doc));
  if (missing.length > 0) {
    throw new FormatError(`config document missing fields: ${missing.join(", ")}`);
  }
  const unknown = Object.keys(doc).filter((k) => !ALL_KEYS.includes(k));
  if (unknown.length > 0) {
    throw new FormatError(`config document has unknown fields: ${unknown.join(", ")}`);
  }
  const version = doc.format_version;
  if (typeof version !== "number" || !Number.isInteger(version) || version !== FORMAT_VERSION) {
    throw new VersionError(`unsupported config format_version ${JSON.stringify(version)}`);
  }

  const p = requireInt(doc, "p");
  if (p < 2 || BigInt(p) >= PRIME_LIMIT) {
    throw new FormatError(`field 'p' = ${p} outside [2, 2**31)`);
  }
  const n = requireInt(doc, "n");
  if (n < 1 || n > MAX_DIGITS) {
    throw new FormatError(`field 'n' = ${n} outside [1, ${MAX_DIGITS}]`);
  }
  requireInt(doc, "seed");
  requireInt(doc, "vocab_size");
  const seed = extractBigIntField(text, "seed");
  if (seed < 0n || seed >= 1n << 64n) {
    throw new FormatError(`field 'seed' = ${seed} outside [0, 2**64)`);
  }
  const vocabSize = extractBigIntField(text, "vocab_size");
  if (vocabSize < 1n || vocabSize >= 1n << 63n) {
    throw new FormatError(`field 'vocab_size' = ${vocabSize} outside [1, 2**63)`);
  }
  const pinned = doc.matrix_pinned ?? false;
  if (typeof pinned !== "boolean") {
    throw new FormatError(`field 'matrix_pinned' must be a boolean`);
  }
  const matrix = doc.matrix;
  if (!Array.isArray(matrix) || matrix.length !== n * n) {
    throw new FormatError(`field 'matrix' must be a flat list of ${n * n} integers`);
  }
  for (const entry of matrix) {
    if (typeof entry !== "number" || !Number.isInteger(entry) || entry < 0 || entry >= p) {
      throw new FormatError(`matrix entry ${JSON.stringify(entry)} outside [0, ${p})`);
    }
  }

  if (!isPrime(BigInt(p))) {
    throw new IntegrityError(`modulus ${p} is not prime`);
  }
  let capacity = 1n;
  for (let i = 0; i < n; i++) {
    capacity *= BigInt(p);
    if (capacity >= CAPACITY_LIMIT) {
      throw new FormatError(`capacity ${p}**${n} exceeds the 128-bit limit`);
    }
  }
  if (capacity <= vocabSize) {
    throw new IntegrityError(
      `capacity ${p}**${n} = ${capacity} does not exceed vocab_size ${vocabSize}`,
    );
  }

  return {
    format_version: FORMAT_VERSION,
    p,
    n,
    seed,
    vocab_size: vocabSize,
    matrix: matrix as number[],
    matrix_pinned: pinned,
  };
}

/** The regeneration cross-check applied after structural validation. */
export function verifyMatrixProvenance(doc: ConfigDocument): void {
  if (doc.matrix_pinned) {
    return;
  }
  const p = BigInt(doc.p);
  const rows: bigint[][] = [];
  for (let i = 0; i < doc.n; i++) {
    rows.push(doc.matrix.slice(i * doc.n, (i + 1) * doc.n).map(BigInt));
  }
  const regenerated = randomInvertible(p, doc.n, doc.seed);
  if (!matricesEqual(regenerated, rows)) {
    throw new IntegrityError(
      "stored matrix does not match regeneration from (p, n, seed); " +
        "set matrix_pinned to keep a hand-injected matrix",
    );
  }
}

export function loadConfigFile(path: string): ConfigDocument {
  return parseConfigText(readFileSync(path, "utf8"));
}

/** Byte-identical to the core writer: sorted keys, two-space indent. */
export function serializeConfig(doc: ConfigDocument): string {
  const lines: string[] = ["{"];
  lines.push(`  "format_version": ${doc.format_version},`);
  lines.push('  "matrix": [');
  doc.matrix.forEach((value, i) => {
    lines.push(`    ${value}${i < doc.matrix.length - 1 ? "," : ""}`);
  });
  lines.push("  ],");
  lines.push(`  "matrix_pinned": ${doc.matrix_pinned},`);
  lines.push(`  "n": ${doc.n},`);
  lines.push(`  "p": ${doc.p},`);
  lines.push(`  "seed": ${doc.seed},`);
  lines.push(`  "vocab_size": ${doc.vocab_size}`);
  lines.push("}");
  return lines.join("\n") + "\n";
}

export function saveConfigFile(doc: ConfigDocument, path: string): void {
  writeFileSync(path, serializeConfig(doc), "utf8");
}
