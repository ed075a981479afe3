/**
 * BoundTokenizer: the in-process face of a tokenizer config.
 *
 * Encode/decode are computed locally over the loaded config document
 * (BigInt arithmetic, exact); fitting delegates to the CLI so that parameter
 * selection and matrix generation have a single source of truth. Instances
 * are immutable and safe for concurrent use; nothing here takes a lock.
 */

import { mkdtempSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import {
  ConfigDocument,
  loadConfigFile,
  parseConfigText,
  saveConfigFile,
  verifyMatrixProvenance,
} from "./config.js";
import {
  DigitOutOfRangeError,
  DimensionMismatchError,
  IdOutOfRangeError,
  IntegrityError,
} from "./errors.js";
import { identity, invertMatrix, matMul, matricesEqual, Matrix, detMod } from "./math.js";
import { runCli } from "./cli.js";

export interface FitOptions {
  vocabSize?: number | bigint;
  vocabFile?: string;
  fixP?: number;
  fixN?: number;
  seed?: number | bigint;
  /** Where to write the config; a temp file is used (and removed) if omitted. */
  out?: string;
}

export class BoundTokenizer {
  readonly p: number;
  readonly n: number;
  readonly seed: bigint;
  readonly vocabSize: bigint;
  readonly matrixPinned: boolean;
  readonly capacity: bigint;

  private readonly bigP: bigint;
  private readonly matrix: Matrix;
  private readonly matrixInv: Matrix;
  private readonly document: ConfigDocument;

  private constructor(doc: ConfigDocument) {
    this.document = doc;
    this.p = doc.p;
    this.n = doc.n;
    this.seed = doc.seed;
    this.vocabSize = doc.vocab_size;
    this.matrixPinned = doc.matrix_pinned;
    this.bigP = BigInt(doc.p);

    this.matrix = [];
    for (let i = 0; i < doc.n; i++) {
      this.matrix.push(doc.matrix.slice(i * doc.n, (i + 1) * doc.n).map(BigInt));
    }
    if (detMod(this.matrix, this.bigP) === 0n) {
      throw new IntegrityError("stored matrix is singular mod p");
    }
    this.matrixInv = invertMatrix(this.matrix, this.bigP);
    const ident = identity(doc.n);
    if (
      !matricesEqual(matMul(this.matrix, this.matrixInv, this.bigP), ident) ||
      !matricesEqual(matMul(this.matrixInv, this.matrix, this.bigP), ident)
    ) {
      throw new IntegrityError("recomputed inverse failed the identity check");
    }
    verifyMatrixProvenance(doc);

    let capacity = 1n;
    for (let i = 0; i < doc.n; i++) {
      capacity *= this.bigP;
    }
    this.capacity = capacity;
  }

  static fromDocument(doc: ConfigDocument): BoundTokenizer {
    return new BoundTokenizer(doc);
  }

  static fromText(text: string): BoundTokenizer {
    return new BoundTokenizer(parseConfigText(text));
  }

  static load(path: string): BoundTokenizer {
    return new BoundTokenizer(loadConfigFile(path));
  }

  /** Fit through the CLI; selection and matrix generation stay in the core. */
  static fit(options: FitOptions): BoundTokenizer {
    const args = ["fit"];
    if (options.vocabSize !== undefined) {
      args.push("--vocab-size", String(options.vocabSize));
    }
    if (options.vocabFile !== undefined) {
      args.push("--vocab-file", options.vocabFile);
    }
    if (options.fixP !== undefined) {
      args.push("--fix-p", String(options.fixP));
    }
    if (options.fixN !== undefined) {
      args.push("--fix-n", String(options.fixN));
    }
    args.push("--seed", String(options.seed ?? 0));

    if (options.out !== undefined) {
      args.push("--out", options.out);
      runCli(args);
      return BoundTokenizer.load(options.out);
    }
    const dir = mkdtempSync(join(tmpdir(), "modtok-bindings-"));
    try {
      const out = join(dir, "config.json");
      runCli([...args, "--out", out]);
      return BoundTokenizer.load(out);
    } finally {
      rmSync(dir, { recursive: true, force: true });
    }
  }

  save(path: string): void {
    saveConfigFile(this.document, path);
  }

  toDocument(): ConfigDocument {
    return { ...this.document, matrix: [...this.document.matrix] };
  }

  encode(id: number | bigint): number[] {
    return this.encodeAt(id);
  }

  private encodeAt(id: number | bigint, index?: number): number[] {
    let x: bigint;
    if (typeof id === "bigint") {
      x = id;
    } else if (Number.isInteger(id)) {
      x = BigInt(id);
    } else {
      throw new TypeError(`id must be an integer, got ${id}`);
    }
    if (x < 0n || x >= this.capacity) {
      const at = index === undefined ? "" : ` at batch index ${index}`;
      throw new IdOutOfRangeError(`id ${x} outside [0, ${this.capacity})${at}`, x, index);
    }
    const digits: bigint[] = [];
    for (let i = 0; i < this.n; i++) {
      digits.push(x % this.bigP);
      x /= this.bigP;
    }
    const out: number[] = [];
    for (let i = 0; i < this.n; i++) {
      let acc = 0n;
      const row = this.matrix[i];
      for (let j = 0; j < this.n; j++) {
        acc += row[j] * digits[j];
      }
      out.push(Number(acc % this.bigP));
    }
    return out;
  }

  decode(token: ArrayLike<number>): bigint {
    return this.decodeAt(token);
  }

  private decodeAt(token: ArrayLike<number>, index?: number): bigint {
    if (token.length !== this.n) {
      throw new DimensionMismatchError(
        `token has ${token.length} digits, expected ${this.n}`,
      );
    }
    const digits: bigint[] = [];
    for (let j = 0; j < this.n; j++) {
      const d = token[j];
      if (!Number.isInteger(d) || d < 0 || d >= this.p) {
        const at = index === undefined ? "" : ` at batch index ${index}`;
        throw new DigitOutOfRangeError(
          `digit ${d} outside [0, ${this.p})${at}`,
          d,
          index,
        );
      }
      digits.push(BigInt(d));
    }
    const plain: bigint[] = [];
    for (let i = 0; i < this.n; i++) {
      let acc = 0n;
      const row = this.matrixInv[i];
      for (let j = 0; j < this.n; j++) {
        acc += row[j] * digits[j];
      }
      plain.push(acc % this.bigP);
    }
    let id = 0n;
    for (let i = this.n - 1; i >= 0; i--) {
      id = id * this.bigP + plain[i];
    }
    return id;
  }

  encodeBatch(ids: Array<number | bigint>): number[][] {
    return ids.map((id, i) => this.encodeAt(id, i));
  }

  decodeBatch(tokens: Array<ArrayLike<number>>): bigint[] {
    return tokens.map((t, i) => this.decodeAt(t, i));
  }

  /** Componentwise digit / p: equally spaced values in [0, 1). */
  normalize(token: ArrayLike<number>): number[] {
    const out: number[] = [];
    for (let j = 0; j < token.length; j++) {
      out.push(token[j] / this.p);
    }
    return out;
  }

  /** Per-head class targets: the token digits of the class id. */
  factorizeLabel(classId: number | bigint): number[] {
    return this.encode(classId);
  }

  /** Class id back from n per-head predictions. */
  reconstructLabel(predictedDigits: ArrayLike<number>): bigint {
    return this.decode(predictedDigits);
  }
}
