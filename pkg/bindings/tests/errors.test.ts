import { mkdtempSync, readFileSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, test } from "vitest";

import {
  BoundTokenizer,
  DigitOutOfRangeError,
  DimensionMismatchError,
  ERROR_BY_CATEGORY,
  FormatError,
  IdOutOfRangeError,
  IntegrityError,
  ModtokError,
  UnknownValueError,
  UsageError,
  VersionError,
  mapCliFailure,
  parseConfigText,
  runCli,
} from "../src/index.js";

let dir: string;
let cfgPath: string;
let cfgText: string;
let tok: BoundTokenizer;

beforeAll(() => {
  dir = mkdtempSync(join(tmpdir(), "modtok-errors-"));
  cfgPath = join(dir, "cfg.json");
  runCli(["fit", "--vocab-size", "124", "--fix-n", "3", "--seed", "7", "--out", cfgPath]);
  cfgText = readFileSync(cfgPath, "utf8");
  tok = BoundTokenizer.load(cfgPath);
});

afterAll(() => {
  rmSync(dir, { recursive: true, force: true });
});

describe("error categories", () => {
  test("every core category maps to its own distinct host class", () => {
    const ctors = Object.values(ERROR_BY_CATEGORY);
    expect(new Set(ctors).size).toBe(ctors.length);
    for (const [category, ctor] of Object.entries(ERROR_BY_CATEGORY)) {
      const err = new ctor(`probe ${category}`);
      expect(err).toBeInstanceOf(ModtokError);
      expect(err.message).toContain(category);
    }
  });

  test("stderr lines map back to the right classes", () => {
    expect(mapCliFailure(1, "error: IdOutOfRange: id 200 outside [0, 125)\n")).toBeInstanceOf(
      IdOutOfRangeError,
    );
    expect(mapCliFailure(1, "error: IntegrityError: bad matrix\n")).toBeInstanceOf(
      IntegrityError,
    );
    expect(mapCliFailure(2, "usage error: 4 is not prime\n")).toBeInstanceOf(UsageError);
  });
});

describe("local validation errors", () => {
  test("malformed documents raise FormatError", () => {
    expect(() => parseConfigText("{not json")).toThrow(FormatError);
    expect(() => parseConfigText("[1, 2]")).toThrow(FormatError);
    const doc = JSON.parse(cfgText);
    delete doc.matrix;
    expect(() => parseConfigText(JSON.stringify(doc))).toThrow(FormatError);
    const extra = { ...JSON.parse(cfgText), surprise: 1 };
    expect(() => parseConfigText(JSON.stringify(extra))).toThrow(FormatError);
  });

  test("unsupported version raises VersionError", () => {
    const doc = JSON.parse(cfgText);
    doc.format_version = 99;
    expect(() => parseConfigText(JSON.stringify(doc))).toThrow(VersionError);
  });

  test("composite modulus raises IntegrityError", () => {
    const doc = JSON.parse(cfgText);
    doc.p = 4;
    doc.matrix = doc.matrix.map((v: number) => v % 4);
    expect(() => parseConfigText(JSON.stringify(doc))).toThrow(IntegrityError);
  });

  test("tampered matrix raises IntegrityError", () => {
    const doc = JSON.parse(cfgText);
    doc.matrix[0] = (doc.matrix[0] + 1) % 5;
    expect(() => BoundTokenizer.fromText(JSON.stringify(doc))).toThrow(IntegrityError);
  });

  test("wrong seed raises IntegrityError", () => {
    const doc = JSON.parse(cfgText);
    doc.seed = 8;
    expect(() => BoundTokenizer.fromText(JSON.stringify(doc))).toThrow(IntegrityError);
  });

  test("singular pinned matrix raises IntegrityError", () => {
    const doc = {
      format_version: 1,
      p: 5,
      n: 2,
      seed: 0,
      vocab_size: 8,
      matrix: [2, 3, 1, 4], // determinant 5, i.e. 0 mod 5
      matrix_pinned: true,
    };
    expect(() => BoundTokenizer.fromText(JSON.stringify(doc))).toThrow(IntegrityError);
  });

  test("encode range errors carry the id and batch index", () => {
    expect(() => tok.encode(125)).toThrow(IdOutOfRangeError);
    try {
      tok.encodeBatch([0, 1, 200]);
      expect.unreachable();
    } catch (exc) {
      expect(exc).toBeInstanceOf(IdOutOfRangeError);
      expect((exc as IdOutOfRangeError).id).toBe(200n);
      expect((exc as IdOutOfRangeError).index).toBe(2);
    }
  });

  test("decode validation errors", () => {
    expect(() => tok.decode([0, 1])).toThrow(DimensionMismatchError);
    expect(() => tok.decode([0, 9, 0])).toThrow(DigitOutOfRangeError);
    try {
      tok.decodeBatch([
        [0, 0, 0],
        [0, 9, 0],
      ]);
      expect.unreachable();
    } catch (exc) {
      expect(exc).toBeInstanceOf(DigitOutOfRangeError);
      expect((exc as DigitOutOfRangeError).index).toBe(1);
    }
  });
});

describe("CLI-surfaced errors", () => {
  test("composite --fix-p surfaces as UsageError", () => {
    expect(() => BoundTokenizer.fit({ vocabSize: 10, fixP: 4 })).toThrow(UsageError);
  });

  test("unknown value in a file job surfaces as UnknownValueError", () => {
    const vocabPath = join(dir, "tiny.vocab");
    const inputPath = join(dir, "tiny.csv");
    writeFileSync(vocabPath, "alpha\nbeta\n", "utf8");
    writeFileSync(inputPath, "name\nalpha\ngamma\n", "utf8");
    const tinyCfg = join(dir, "tiny.json");
    runCli(["fit", "--vocab-size", "2", "--fix-p", "2", "--seed", "1", "--out", tinyCfg]);
    expect(() =>
      runCli([
        "encode", "--config", tinyCfg, "--column", "name", "--vocab", vocabPath,
        "--input", inputPath, "--output", join(dir, "never.csv"),
      ]),
    ).toThrow(UnknownValueError);
  });

  test("tampered config surfaces as IntegrityError through verify", () => {
    const doc = JSON.parse(cfgText);
    doc.matrix[3] = (doc.matrix[3] + 2) % 5;
    const badPath = join(dir, "bad.json");
    writeFileSync(badPath, JSON.stringify(doc), "utf8");
    expect(() => runCli(["verify", "--config", badPath, "--exhaustive"])).toThrow(
      IntegrityError,
    );
  });
});
