/**
 * Exact integer math over Z_p, mirroring the core implementation bit for bit:
 * the same SplitMix64 stream, the same rejection thresholds, the same
 * elimination pivoting. BigInt keeps every product exact (residues are below
 * 2**31, so products reach 2**62, past the double-precision safe range).
 */

import {
  GenerationFailedError,
  NotInvertibleError,
  SingularMatrixError,
} from "./errors.js";

export const MASK64 = (1n << 64n) - 1n;
export const PRIME_LIMIT = 1n << 31n;

const MR_WITNESSES = [2n, 3n, 5n, 7n, 11n, 13n, 17n, 19n, 23n, 29n, 31n, 37n];

function powMod(base: bigint, exp: bigint, mod: bigint): bigint {
  let result = 1n;
  let b = base % mod;
  let e = exp;
  while (e > 0n) {
    if (e & 1n) {
      result = (result * b) % mod;
    }
    b = (b * b) % mod;
    e >>= 1n;
  }
  return result;
}

/** Deterministic Miller-Rabin, exact for all candidates below 2**64. */
export function isPrime(candidate: bigint): boolean {
  const n = candidate;
  if (n < 2n) {
    return false;
  }
  for (const w of MR_WITNESSES) {
    if (n === w) {
      return true;
    }
    if (n % w === 0n) {
      return false;
    }
  }
  let d = n - 1n;
  let r = 0;
  while (d % 2n === 0n) {
    d /= 2n;
    r += 1;
  }
  witness: for (const a of MR_WITNESSES) {
    let x = powMod(a, d, n);
    if (x === 1n || x === n - 1n) {
      continue;
    }
    for (let i = 0; i < r - 1; i++) {
      x = (x * x) % n;
      if (x === n - 1n) {
        continue witness;
      }
    }
    return false;
  }
  return true;
}

/** Multiplicative inverse of a nonzero residue by extended Euclid. */
export function inverseMod(a: bigint, p: bigint): bigint {
  if (a % p === 0n) {
    throw new NotInvertibleError(`0 has no inverse mod ${p}`);
  }
  let loCoef = 1n;
  let hiCoef = 0n;
  let lo = a % p;
  let hi = p;
  while (lo > 1n) {
    const q = hi / lo;
    [loCoef, hiCoef] = [hiCoef - q * loCoef, loCoef];
    [lo, hi] = [hi - q * lo, lo];
  }
  return ((loCoef % p) + p) % p;
}

export class SplitMix64 {
  private static readonly GOLDEN = 0x9e3779b97f4a7c15n;
  private static readonly MIX1 = 0xbf58476d1ce4e5b9n;
  private static readonly MIX2 = 0x94d049bb133111ebn;

  private state: bigint;
  readonly seed: bigint;

  constructor(seed: bigint) {
    if (seed < 0n || seed > MASK64) {
      throw new RangeError(`seed ${seed} outside [0, 2**64)`);
    }
    this.seed = seed;
    this.state = seed;
  }

  nextU64(): bigint {
    this.state = (this.state + SplitMix64.GOLDEN) & MASK64;
    let z = this.state;
    z = ((z ^ (z >> 30n)) * SplitMix64.MIX1) & MASK64;
    z = ((z ^ (z >> 27n)) * SplitMix64.MIX2) & MASK64;
    return z ^ (z >> 31n);
  }

  /** Uniform draw from [0, bound) with the same rejection rule as the core. */
  nextBelow(bound: bigint): bigint {
    if (bound <= 0n) {
      throw new RangeError("bound must be positive");
    }
    if (bound <= MASK64 + 1n) {
      const limit = (1n << 64n) - ((1n << 64n) % bound);
      for (;;) {
        const raw = this.nextU64();
        if (raw < limit) {
          return raw % bound;
        }
      }
    }
    if (bound > 1n << 128n) {
      throw new RangeError("bounds above 2**128 are not supported");
    }
    const limit = (1n << 128n) - ((1n << 128n) % bound);
    for (;;) {
      const raw = (this.nextU64() << 64n) | this.nextU64();
      if (raw < limit) {
        return raw % bound;
      }
    }
  }
}

export type Matrix = bigint[][];

export function identity(n: number): Matrix {
  return Array.from({ length: n }, (_, i) =>
    Array.from({ length: n }, (_, j) => (i === j ? 1n : 0n)),
  );
}

export function matricesEqual(a: Matrix, b: Matrix): boolean {
  return (
    a.length === b.length &&
    a.every((row, i) => row.length === b[i].length && row.every((v, j) => v === b[i][j]))
  );
}

function mod(value: bigint, p: bigint): bigint {
  const r = value % p;
  return r < 0n ? r + p : r;
}

export function detMod(rows: Matrix, p: bigint): bigint {
  const n = rows.length;
  const m = rows.map((row) => row.map((v) => mod(v, p)));
  let det = 1n;
  for (let col = 0; col < n; col++) {
    let pivotRow = -1;
    for (let r = col; r < n; r++) {
      if (m[r][col] !== 0n) {
        pivotRow = r;
        break;
      }
    }
    if (pivotRow === -1) {
      return 0n;
    }
    if (pivotRow !== col) {
      [m[col], m[pivotRow]] = [m[pivotRow], m[col]];
      det = mod(-det, p);
    }
    const pivot = m[col][col];
    det = mod(det * pivot, p);
    const inv = inverseMod(pivot, p);
    for (let r = col + 1; r < n; r++) {
      const factor = mod(m[r][col] * inv, p);
      if (factor !== 0n) {
        for (let c = 0; c < n; c++) {
          m[r][c] = mod(m[r][c] - factor * m[col][c], p);
        }
      }
    }
  }
  return det;
}

export function invertMatrix(rows: Matrix, p: bigint): Matrix {
  const n = rows.length;
  const left = rows.map((row) => row.map((v) => mod(v, p)));
  const right = identity(n);
  for (let col = 0; col < n; col++) {
    let pivotRow = -1;
    for (let r = col; r < n; r++) {
      if (left[r][col] !== 0n) {
        pivotRow = r;
        break;
      }
    }
    if (pivotRow === -1) {
      throw new SingularMatrixError(
        `matrix is singular mod p (no pivot in column ${col})`,
      );
    }
    if (pivotRow !== col) {
      [left[col], left[pivotRow]] = [left[pivotRow], left[col]];
      [right[col], right[pivotRow]] = [right[pivotRow], right[col]];
    }
    const inv = inverseMod(left[col][col], p);
    for (let c = 0; c < n; c++) {
      left[col][c] = mod(left[col][c] * inv, p);
      right[col][c] = mod(right[col][c] * inv, p);
    }
    for (let r = 0; r < n; r++) {
      if (r === col) {
        continue;
      }
      const factor = left[r][col];
      if (factor !== 0n) {
        for (let c = 0; c < n; c++) {
          left[r][c] = mod(left[r][c] - factor * left[col][c], p);
          right[r][c] = mod(right[r][c] - factor * right[col][c], p);
        }
      }
    }
  }
  return right;
}

export function matMul(a: Matrix, b: Matrix, p: bigint): Matrix {
  const n = a.length;
  const out = identity(n);
  for (let i = 0; i < n; i++) {
    for (let j = 0; j < n; j++) {
      let acc = 0n;
      for (let k = 0; k < n; k++) {
        acc += a[i][k] * b[k][j];
      }
      out[i][j] = mod(acc, p);
    }
  }
  return out;
}

const MAX_ATTEMPTS = 256;

/** The same seeded uniform draw over invertible matrices as the core. */
export function randomInvertible(p: bigint, n: number, seed: bigint): Matrix {
  const rng = new SplitMix64(seed);
  for (let attempt = 0; attempt < MAX_ATTEMPTS; attempt++) {
    const rows: Matrix = [];
    for (let i = 0; i < n; i++) {
      const row: bigint[] = [];
      for (let j = 0; j < n; j++) {
        row.push(rng.nextBelow(p));
      }
      rows.push(row);
    }
    if (detMod(rows, p) !== 0n) {
      return rows;
    }
  }
  throw new GenerationFailedError(
    `no invertible ${n}x${n} matrix mod ${p} in ${MAX_ATTEMPTS} draws`,
  );
}
