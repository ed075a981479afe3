/**
 * One host exception class per core error category.
 *
 * Errors raised locally (config validation, encode/decode range checks) use
 * these classes directly; failures surfaced by the CLI are mapped back onto
 * the same classes from its `error: <Category>: <message>` stderr lines, so
 * callers see a single error vocabulary either way.
 */

export class ModtokError extends Error {
  constructor(message: string) {
    super(message);
    this.name = new.target.name;
  }
}

export class NotPrimeError extends ModtokError {}
export class ModulusMismatchError extends ModtokError {}
export class NotInvertibleError extends ModtokError {}

export class IdOutOfRangeError extends ModtokError {
  constructor(message: string, readonly id: bigint, readonly index?: number) {
    super(message);
  }
}

export class DigitOutOfRangeError extends ModtokError {
  constructor(message: string, readonly digit: number, readonly index?: number) {
    super(message);
  }
}

export class DimensionMismatchError extends ModtokError {}
export class SingularMatrixError extends ModtokError {}
export class GenerationFailedError extends ModtokError {}
export class FormatError extends ModtokError {}
export class IntegrityError extends ModtokError {}
export class VersionError extends ModtokError {}
export class UnknownValueError extends ModtokError {}
export class MissingColumnError extends ModtokError {}
export class IdAboveVocabError extends ModtokError {}
export class CapacityError extends ModtokError {}
export class OverflowError extends ModtokError {}

/** CLI usage failures (exit status 2). */
export class UsageError extends ModtokError {}

/** CLI failures in a category this wrapper does not model explicitly. */
export class CliError extends ModtokError {
  constructor(message: string, readonly category: string) {
    super(message);
  }
}

type ErrorCtor = new (message: string) => ModtokError;

export const ERROR_BY_CATEGORY: Readonly<Record<string, ErrorCtor>> = {
  NotPrime: NotPrimeError,
  ModulusMismatch: ModulusMismatchError,
  NotInvertible: NotInvertibleError,
  IdOutOfRange: class extends IdOutOfRangeError {
    constructor(message: string) {
      super(message, -1n);
    }
  },
  DigitOutOfRange: class extends DigitOutOfRangeError {
    constructor(message: string) {
      super(message, -1);
    }
  },
  DimensionMismatch: DimensionMismatchError,
  SingularMatrix: SingularMatrixError,
  GenerationFailed: GenerationFailedError,
  FormatError: FormatError,
  IntegrityError: IntegrityError,
  VersionError: VersionError,
  UnknownValue: UnknownValueError,
  MissingColumn: MissingColumnError,
  IdAboveVocab: IdAboveVocabError,
  CapacityError: CapacityError,
  OverflowError: OverflowError,
};

/** Turn a nonzero CLI exit into the matching host exception. */
export function mapCliFailure(status: number, stderr: string): ModtokError {
  const usage = stderr.match(/^usage error: (.*)$/m);
  if (usage) {
    return new UsageError(usage[1]);
  }
  const operational = stderr.match(/^error: ([A-Za-z_]+): (.*)$/m);
  if (operational) {
    const [, category, message] = operational;
    const ctor = ERROR_BY_CATEGORY[category];
    if (ctor) {
      return new ctor(message);
    }
    return new CliError(message, category);
  }
  return new CliError(
    `CLI exited with status ${status}: ${stderr.trim()}`,
    "Unknown",
  );
}
