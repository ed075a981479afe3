"""The reversible tokenizer: fit, encode, decode, batching, persistence.

An id below p**n is encoded in three steps: expand to base-p digits, multiply
by an invertible matrix M over Z_p, reduce mod p. Decoding applies M^-1 and
reads the digits back. Because M is invertible, the map is a bijection on the
whole space [0, p**n): every id has exactly one token vector and every token
vector decodes to exactly one id, with no collisions.

A TokenizerConfig is immutable and fully reproducible from (p, n, seed); the
config file stores the matrix as well so documents are self-contained, and
loading cross-checks the stored matrix against regeneration from the seed.

Scalar encode/decode pack each matrix column into one wide integer (96-bit
lanes), so a matrix-vector product is n multiply-adds on Python ints instead
of n**2 element operations; lane sums stay below 2**68 for any p < 2**31 and
n <= 64, so lanes never carry into each other. Batch operations use exact
int64 numpy arithmetic whenever ids fit.
"""

from __future__ import annotations

import json
import os
import tempfile
from operator import index
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DigitOutOfRange,
    DimensionMismatch,
    FormatError,
    IdOutOfRange,
    IntegrityError,
    ModulusMismatch,
    NotPrime,
    VersionError,
)
from .field import PRIME_LIMIT, FieldPrime
from .matrix import ModMatrix, det_mod_p, invert, mat_mul, random_invertible
from .radix import MAX_DIGITS, DigitVector, RadixParams, select_n, select_p

FORMAT_VERSION = 1

_LANE_SHIFT = 96
_LANE_MASK = (1 << _LANE_SHIFT) - 1

# Token vectors are digit vectors produced by the linear transform; they share
# shape and range with base-p expansions.
TokenVector = DigitVector


def _pack_columns(m: ModMatrix) -> tuple[int, ...]:
    # Column j packed into one integer, row i in bit lane [96*i, 96*(i+1)).
    packed = []
    for j in range(m.dim):
        acc = 0
        for i, row in enumerate(m.entries):
            acc |= row[j] << (_LANE_SHIFT * i)
        packed.append(acc)
    return tuple(packed)


class TokenizerConfig:
    """Complete, immutable tokenizer state: p, n, seed, vocab size, M, M^-1.

    Invariants enforced at construction: p**n strictly exceeds vocab_size,
    matrices are n x n over Z_p, and matrix_inv * matrix is the identity.
    """

    __slots__ = (
        "format_version",
        "prime",
        "n",
        "seed",
        "vocab_size",
        "matrix",
        "matrix_inv",
        "matrix_pinned",
        "capacity",
        "_p",
        "_packed_m",
        "_packed_inv",
        "_shifts",
        "_np_m",
        "_np_inv",
        "_np_pows",
    )

    def __init__(
        self,
        prime: FieldPrime,
        n: int,
        seed: int,
        vocab_size: int,
        matrix: ModMatrix,
        matrix_inv: ModMatrix,
        matrix_pinned: bool = False,
        format_version: int = FORMAT_VERSION,
    ):
        if format_version != FORMAT_VERSION:
            raise VersionError(format_version)
        if not 0 <= seed < 2**64:
            raise ValueError(f"seed {seed} outside [0, 2**64)")
        if vocab_size < 1:
            raise ValueError(f"vocabulary size must be >= 1, got {vocab_size}")
        if vocab_size >= 2**63:
            raise OverflowError(f"vocabulary size {vocab_size} exceeds the 2**63 limit")
        params = RadixParams(prime, n)  # validates n and the capacity limit
        if params.capacity <= vocab_size:
            raise IntegrityError(
                f"capacity {prime.value}**{n} = {params.capacity} does not exceed "
                f"vocabulary size {vocab_size}"
            )
        if matrix.prime.value != prime.value or matrix_inv.prime.value != prime.value:
            raise ModulusMismatch("matrix modulus differs from config modulus")
        if matrix.dim != n or matrix_inv.dim != n:
            raise DimensionMismatch(
                f"matrix is {matrix.dim}x{matrix.dim} but config has n={n}"
            )
        ident = ModMatrix.identity(n, prime)
        if mat_mul(matrix_inv, matrix) != ident or mat_mul(matrix, matrix_inv) != ident:
            raise IntegrityError("matrix_inv is not the inverse of matrix mod p")

        self.format_version = format_version
        self.prime = prime
        self.n = n
        self.seed = seed
        self.vocab_size = vocab_size
        self.matrix = matrix
        self.matrix_inv = matrix_inv
        self.matrix_pinned = bool(matrix_pinned)
        self.capacity = params.capacity

        self._p = prime.value
        self._packed_m = _pack_columns(matrix)
        self._packed_inv = _pack_columns(matrix_inv)
        self._shifts = tuple(_LANE_SHIFT * i for i in range(n))
        self._np_m = np.array(matrix.entries, dtype=np.int64)
        self._np_inv = np.array(matrix_inv.entries, dtype=np.int64)
        if self.capacity < 2**63:
            self._np_pows = self._p ** np.arange(n, dtype=np.int64)
        else:
            self._np_pows = None

    # Configs are value objects; equality ignores derived caches.
    def __eq__(self, other) -> bool:
        if not isinstance(other, TokenizerConfig):
            return NotImplemented
        return (
            self.format_version == other.format_version
            and self._p == other._p
            and self.n == other.n
            and self.seed == other.seed
            and self.vocab_size == other.vocab_size
            and self.matrix.entries == other.matrix.entries
            and self.matrix_pinned == other.matrix_pinned
        )

    def __repr__(self) -> str:
        return (
            f"TokenizerConfig(p={self._p}, n={self.n}, seed={self.seed}, "
            f"vocab_size={self.vocab_size}, capacity={self.capacity})"
        )

    def describe(self) -> str:
        """Short stable identifier used in file-processing summaries."""
        return f"p={self._p},n={self.n},seed={self.seed}"

    @property
    def load_factor(self) -> float:
        """Fraction of the token space occupied by vocabulary ids."""
        return self.vocab_size / self.capacity

    # ------------------------------------------------------------------
    # scalar operations
    # ------------------------------------------------------------------

    def encode(self, id_: int) -> TokenVector:
        """Token vector (M . digits(id)) mod p; bijective on [0, p**n)."""
        x = index(id_)
        if x < 0 or x >= self.capacity:
            raise IdOutOfRange(x, self.capacity)
        p = self._p
        acc = 0
        for col in self._packed_m:
            x, r = divmod(x, p)
            if r:
                acc += r * col
        digits = tuple([(acc >> s & _LANE_MASK) % p for s in self._shifts])
        return DigitVector._trusted(digits, self.prime)

    def decode(self, t: TokenVector | Sequence[int]) -> int:
        """Original id from a token vector; exact inverse of encode.

        Every vector in [0, p)**n decodes to some id below p**n (the transform
        is a bijection on the full space); ids at or above the fitted
        vocabulary size are the caller's concern.
        """
        digits = self._coerce_token(t)
        return self._decode_trusted(digits)

    def _coerce_token(self, t, batch_index: int | None = None) -> tuple[int, ...]:
        if isinstance(t, DigitVector):
            if t.prime.value != self._p:
                raise ModulusMismatch(
                    f"token mod {t.prime.value} given to tokenizer mod {self._p}"
                )
            if len(t.digits) != self.n:
                raise DimensionMismatch(
                    f"token has {len(t.digits)} digits, expected {self.n}"
                )
            return t.digits
        digits = tuple(index(d) for d in t)
        if len(digits) != self.n:
            raise DimensionMismatch(f"token has {len(digits)} digits, expected {self.n}")
        for d in digits:
            if not 0 <= d < self._p:
                raise DigitOutOfRange(d, self._p, index=batch_index)
        return digits

    # ------------------------------------------------------------------
    # batch operations (order-preserving; a bad element fails the batch
    # with its index reported)
    # ------------------------------------------------------------------

    def encode_batch(self, ids: Iterable[int]) -> list[TokenVector]:
        ids = list(ids)
        if not ids:
            return []
        if self.capacity < 2**63:
            try:
                arr = np.fromiter((index(v) for v in ids), dtype=np.int64, count=len(ids))
            except OverflowError:
                arr = None  # any id >= 2**63 is out of range; report via scalar path
            if arr is not None:
                return self._encode_batch_np(arr)
        out = []
        for i, id_ in enumerate(ids):
            try:
                out.append(self.encode(id_))
            except IdOutOfRange as e:
                raise IdOutOfRange(e.id, e.capacity, index=i) from None
        return out

    def _encode_batch_np(self, arr: np.ndarray) -> list[TokenVector]:
        p = self._p
        bad = (arr < 0) | (arr >= self.capacity)
        if bad.any():
            i = int(np.argmax(bad))
            raise IdOutOfRange(int(arr[i]), self.capacity, index=i)
        x = arr.copy()
        n = self.n
        digits = np.empty((len(arr), n), dtype=np.int64)
        for j in range(n):
            digits[:, j] = x % p
            x //= p
        tok = np.zeros((len(arr), n), dtype=np.int64)
        for j in range(n):
            # per-step reduction keeps every entry below p + p**2 < 2**63
            tok = (tok + np.outer(digits[:, j], self._np_m[:, j])) % p
        prime = self.prime
        return [DigitVector._trusted(tuple(row), prime) for row in tok.tolist()]

    def decode_batch(self, tokens: Iterable[TokenVector | Sequence[int]]) -> list[int]:
        rows = [self._coerce_token(t, batch_index=i) for i, t in enumerate(tokens)]
        if not rows:
            return []
        if self.capacity < 2**63:
            arr = np.array(rows, dtype=np.int64)
            p = self._p
            digits = np.zeros_like(arr)
            for j in range(self.n):
                digits = (digits + np.outer(arr[:, j], self._np_inv[:, j])) % p
            ids = digits @ self._np_pows
            return [int(v) for v in ids.tolist()]
        return [self._decode_trusted(row) for row in rows]

    def _decode_trusted(self, digits: tuple[int, ...]) -> int:
        p = self._p
        acc = 0
        for d, col in zip(digits, self._packed_inv):
            if d:
                acc += d * col
        id_ = 0
        for s in reversed(self._shifts):
            id_ = id_ * p + (acc >> s & _LANE_MASK) % p
        return id_

    # ------------------------------------------------------------------
    # label factorization: one V-way classification becomes n p-way heads
    # ------------------------------------------------------------------

    def factorize_label(self, class_id: int) -> TokenVector:
        """Per-head targets for a class id: the token digits themselves.

        Predicting all n digits correctly identifies the class uniquely,
        replacing one softmax of size V with n softmax heads of size p.
        """
        return self.encode(class_id)

    def reconstruct_label(self, predicted_digits: Sequence[int]) -> int:
        """Class id from n per-head predictions; inverse of factorize_label.

        A digit tuple never produced by ids below vocab_size still decodes to
        a unique id below p**n; range-check against the vocabulary if needed.
        """
        return self.decode(predicted_digits)


def fit(
    vocab_size: int,
    *,
    fix_p: int | None = None,
    fix_n: int | None = None,
    seed: int = 0,
) -> TokenizerConfig:
    """Fit a tokenizer for a vocabulary of vocab_size ids.

    Exactly one of fix_p (use this prime, derive the minimal digit count) or
    fix_n (use this many digits, derive the minimal prime) must be given. The
    result is deterministic in (vocab_size, strategy, seed).
    """
    if (fix_p is None) == (fix_n is None):
        raise ValueError("exactly one of fix_p or fix_n must be given")
    if vocab_size < 1:
        raise ValueError(f"vocabulary size must be >= 1, got {vocab_size}")
    if not 0 <= seed < 2**64:
        raise ValueError(f"seed {seed} outside [0, 2**64)")
    if fix_p is not None:
        params = select_n(FieldPrime(fix_p), vocab_size)
    else:
        params = select_p(fix_n, vocab_size)
    m = random_invertible(params.p, params.n, seed)
    return TokenizerConfig(
        prime=params.p,
        n=params.n,
        seed=seed,
        vocab_size=vocab_size,
        matrix=m,
        matrix_inv=invert(m),
    )


def normalize(t: TokenVector) -> list[float]:
    """Componentwise t[i] / p: equally spaced reals in [0, 1).

    Division uses round-to-nearest binary floating point; the grid spacing is
    exactly 1/p and the supremum (p-1)/p stays strictly below 1.0.
    """
    p = t.prime.value
    return [d / p for d in t.digits]


# ----------------------------------------------------------------------
# persistence: a single JSON document, deterministic byte-for-byte
# ----------------------------------------------------------------------

_REQUIRED_KEYS = {"format_version", "p", "n", "seed", "vocab_size", "matrix"}
_ALL_KEYS = _REQUIRED_KEYS | {"matrix_pinned"}


def config_to_document(cfg: TokenizerConfig) -> dict:
    """The JSON-compatible document form of a config. matrix_inv is derived
    on load and never serialized."""
    return {
        "format_version": cfg.format_version,
        "p": cfg.prime.value,
        "n": cfg.n,
        "seed": cfg.seed,
        "vocab_size": cfg.vocab_size,
        "matrix": cfg.matrix.flat(),
        "matrix_pinned": cfg.matrix_pinned,
    }


def save_config(cfg: TokenizerConfig, destination: str | os.PathLike) -> None:
    """Write the config document; identical configs produce identical bytes.

    The document is written through a temporary file and renamed into place,
    so a failed write never leaves a partial config behind.
    """
    text = json.dumps(config_to_document(cfg), sort_keys=True, indent=2) + "\n"
    directory = os.path.dirname(os.path.abspath(destination)) or "."
    fd, tmp = tempfile.mkstemp(prefix=".modtok-cfg-", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise
    else:
        os.replace(tmp, destination)


def _require_uint(doc: dict, key: str, lo: int, hi: int) -> int:
    value = doc[key]
    if not isinstance(value, int) or isinstance(value, bool):
        raise FormatError(f"field {key!r} must be an integer, got {value!r}")
    if not lo <= value < hi:
        raise FormatError(f"field {key!r} = {value} outside [{lo}, {hi})")
    return value


def config_from_document(doc) -> TokenizerConfig:
    """Validate and rebuild a config from its document form.

    The inverse matrix is always recomputed from the stored matrix and checked
    against the identity; unless the document pins the matrix, the matrix must
    also match regeneration from (p, n, seed), so corrupted or hand-edited
    documents fail loudly instead of decoding garbage.
    """
    if not isinstance(doc, dict):
        raise FormatError("config document must be a JSON object")
    missing = _REQUIRED_KEYS - doc.keys()
    if missing:
        raise FormatError(f"config document missing fields: {sorted(missing)}")
    unknown = doc.keys() - _ALL_KEYS
    if unknown:
        raise FormatError(f"config document has unknown fields: {sorted(unknown)}")
    version = doc["format_version"]
    if not isinstance(version, int) or isinstance(version, bool) or version != FORMAT_VERSION:
        raise VersionError(version)

    p = _require_uint(doc, "p", 2, PRIME_LIMIT)
    n = _require_uint(doc, "n", 1, MAX_DIGITS + 1)
    seed = _require_uint(doc, "seed", 0, 2**64)
    vocab_size = _require_uint(doc, "vocab_size", 1, 2**63)
    pinned = doc.get("matrix_pinned", False)
    if not isinstance(pinned, bool):
        raise FormatError(f"field 'matrix_pinned' must be a boolean, got {pinned!r}")
    flat = doc["matrix"]
    if not isinstance(flat, list) or len(flat) != n * n:
        raise FormatError(f"field 'matrix' must be a flat list of {n * n} integers")
    for e in flat:
        if not isinstance(e, int) or isinstance(e, bool) or not 0 <= e < p:
            raise FormatError(f"matrix entry {e!r} outside [0, {p})")

    try:
        prime = FieldPrime(p)
    except NotPrime as exc:
        raise IntegrityError(f"modulus {p} is not prime") from exc
    try:
        params = RadixParams(prime, n)
    except OverflowError as exc:
        raise FormatError(str(exc)) from exc
    if params.capacity <= vocab_size:
        raise IntegrityError(
            f"capacity {p}**{n} = {params.capacity} does not exceed vocab_size {vocab_size}"
        )

    rows = tuple(tuple(flat[i * n : (i + 1) * n]) for i in range(n))
    m = ModMatrix(rows, prime)
    if det_mod_p(m).residue == 0:
        raise IntegrityError("stored matrix is singular mod p")
    m_inv = invert(m)
    ident = ModMatrix.identity(n, prime)
    if mat_mul(m_inv, m) != ident or mat_mul(m, m_inv) != ident:
        raise IntegrityError("recomputed inverse failed the identity check")
    if not pinned:
        regenerated = random_invertible(prime, n, seed)
        if regenerated.entries != m.entries:
            raise IntegrityError(
                "stored matrix does not match regeneration from (p, n, seed); "
                "set matrix_pinned to keep a hand-injected matrix"
            )
    return TokenizerConfig(
        prime=prime,
        n=n,
        seed=seed,
        vocab_size=vocab_size,
        matrix=m,
        matrix_inv=m_inv,
        matrix_pinned=pinned,
    )


def load_config(source: str | os.PathLike) -> TokenizerConfig:
    """Read, validate, and rebuild a config from a JSON document file."""
    with open(source, "r", encoding="utf-8") as fh:
        raw = fh.read()
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise FormatError(f"config is not valid JSON: {exc}") from exc
    return config_from_document(doc)
