"""Dense matrix algebra over Z_p and seeded generation of invertible matrices.

Matrices are immutable row-major tuples of residues. Inversion and
determinants use Gaussian elimination with modular pivot inverses; pivoting
picks the first nonzero entry scanning down each column, which is exact over
a field (no numerical stability concerns).

Matrix sampling uses SplitMix64 with rejection-threshold reduction so that a
given (p, n, seed) triple reproduces the identical matrix on every platform
and in every implementation of this scheme.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionMismatch, GenerationFailed, ModulusMismatch, SingularMatrix
from .field import FieldElement, FieldPrime, inverse_mod
from .radix import DigitVector

_MASK64 = 2**64 - 1

# Whole-matrix redraw attempts before concluding the generator is broken.
# The singular fraction is ~1/p per attempt, so 256 failures is astronomically
# unlikely for any prime.
_MAX_ATTEMPTS = 256


class SplitMix64:
    """The SplitMix64 generator: 64-bit state, one add-xor-shift-multiply step.

    Chosen for reproducibility: the algorithm is public domain, ten lines, and
    trivially portable, so configs regenerate identically across languages.
    """

    GOLDEN = 0x9E3779B97F4A7C15
    MIX1 = 0xBF58476D1CE4E5B9
    MIX2 = 0x94D049BB133111EB

    __slots__ = ("seed", "state")

    def __init__(self, seed: int):
        if not 0 <= seed <= _MASK64:
            raise ValueError(f"seed {seed} outside [0, 2**64)")
        self.seed = seed
        self.state = seed

    def next_u64(self) -> int:
        self.state = (self.state + self.GOLDEN) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * self.MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * self.MIX2) & _MASK64
        return z ^ (z >> 31)

    def next_below(self, bound: int) -> int:
        """Uniform draw from [0, bound) by rejection.

        Raw 64-bit draws at or above the largest multiple of bound are
        rejected before reduction, removing modulo bias exactly. Bounds up to
        2**128 are supported by concatenating two draws (high word first).
        """
        if bound <= 0:
            raise ValueError("bound must be positive")
        if bound <= _MASK64 + 1:
            limit = 2**64 - (2**64 % bound)
            while True:
                raw = self.next_u64()
                if raw < limit:
                    return raw % bound
        if bound > 2**128:
            raise ValueError("bounds above 2**128 are not supported")
        limit = 2**128 - (2**128 % bound)
        while True:
            raw = (self.next_u64() << 64) | self.next_u64()
            if raw < limit:
                return raw % bound


@dataclass(frozen=True)
class ModMatrix:
    """An n x n matrix of residues in [0, p), immutable after construction."""

    entries: tuple[tuple[int, ...], ...]
    prime: FieldPrime

    def __post_init__(self):
        rows = tuple(tuple(row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        n = len(rows)
        if n == 0:
            raise DimensionMismatch("matrix must have at least one row")
        p = self.prime.value
        for row in rows:
            if len(row) != n:
                raise DimensionMismatch(f"matrix is not square: {len(row)} != {n}")
            for e in row:
                if not 0 <= e < p:
                    raise ValueError(f"entry {e} outside [0, {p})")

    @property
    def dim(self) -> int:
        return len(self.entries)

    @classmethod
    def identity(cls, n: int, prime: FieldPrime) -> "ModMatrix":
        return cls(
            tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)),
            prime,
        )

    def flat(self) -> list[int]:
        """Row-major flattening, the layout used by the config file format."""
        return [e for row in self.entries for e in row]

    def __repr__(self) -> str:
        return f"ModMatrix({self.dim}x{self.dim} mod {self.prime.value})"


def det_mod_p(m: ModMatrix) -> FieldElement:
    """Determinant mod p via elimination; singular matrices return 0."""
    p = m.prime.value
    n = m.dim
    rows = [list(r) for r in m.entries]
    det = 1
    for col in range(n):
        pivot_row = None
        for r in range(col, n):
            if rows[r][col] % p != 0:
                pivot_row = r
                break
        if pivot_row is None:
            return FieldElement(0, m.prime)
        if pivot_row != col:
            rows[col], rows[pivot_row] = rows[pivot_row], rows[col]
            det = -det
        pivot = rows[col][col]
        det = (det * pivot) % p
        inv = inverse_mod(pivot, p)
        for r in range(col + 1, n):
            factor = (rows[r][col] * inv) % p
            if factor:
                rows[r] = [(a - factor * b) % p for a, b in zip(rows[r], rows[col])]
    return FieldElement(det % p, m.prime)


def invert(m: ModMatrix) -> ModMatrix:
    """Inverse matrix over Z_p by Gauss-Jordan elimination.

    Raises SingularMatrix naming the first column with no usable pivot.
    """
    p = m.prime.value
    n = m.dim
    left = [list(r) for r in m.entries]
    right = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot_row = None
        for r in range(col, n):
            if left[r][col] % p != 0:
                pivot_row = r
                break
        if pivot_row is None:
            raise SingularMatrix(col)
        if pivot_row != col:
            left[col], left[pivot_row] = left[pivot_row], left[col]
            right[col], right[pivot_row] = right[pivot_row], right[col]
        inv = inverse_mod(left[col][col], p)
        left[col] = [(e * inv) % p for e in left[col]]
        right[col] = [(e * inv) % p for e in right[col]]
        for r in range(n):
            if r == col:
                continue
            factor = left[r][col]
            if factor:
                left[r] = [(a - factor * b) % p for a, b in zip(left[r], left[col])]
                right[r] = [(a - factor * b) % p for a, b in zip(right[r], right[col])]
    return ModMatrix(tuple(tuple(row) for row in right), m.prime)


def mat_vec_mul(m: ModMatrix, v: DigitVector) -> DigitVector:
    """(M . v) mod p with every component reduced to [0, p)."""
    if m.prime.value != v.prime.value:
        raise ModulusMismatch(
            f"matrix mod {m.prime.value} applied to vector mod {v.prime.value}"
        )
    if m.dim != len(v):
        raise DimensionMismatch(f"matrix is {m.dim}x{m.dim} but vector has length {len(v)}")
    p = m.prime.value
    digits = v.digits
    out = tuple(sum(a * b for a, b in zip(row, digits)) % p for row in m.entries)
    return DigitVector._trusted(out, m.prime)


def mat_mul(a: ModMatrix, b: ModMatrix) -> ModMatrix:
    """(A . B) mod p; used to verify inverses against the identity."""
    if a.prime.value != b.prime.value:
        raise ModulusMismatch(f"moduli differ: {a.prime.value} vs {b.prime.value}")
    if a.dim != b.dim:
        raise DimensionMismatch(f"dimensions differ: {a.dim} vs {b.dim}")
    p = a.prime.value
    n = a.dim
    bt = list(zip(*b.entries))  # columns of b
    rows = tuple(
        tuple(sum(x * y for x, y in zip(row, col)) % p for col in bt) for row in a.entries
    )
    return ModMatrix(rows, a.prime)


def random_invertible(prime: FieldPrime, n: int, seed: int) -> ModMatrix:
    """Deterministic uniform draw from the invertible n x n matrices over Z_p.

    Entries are sampled i.i.d. uniform on [0, p) in row-major order from
    SplitMix64(seed); a singular draw rejects the whole matrix and redraws
    from the continuing stream, which makes the result exactly uniform over
    the invertible matrices. Identical (p, n, seed) always reproduces the
    identical matrix.
    """
    if n < 1:
        raise DimensionMismatch("matrix dimension must be >= 1")
    rng = SplitMix64(seed)
    p = prime.value
    for _ in range(_MAX_ATTEMPTS):
        rows = tuple(
            tuple(rng.next_below(p) for _ in range(n)) for _ in range(n)
        )
        m = ModMatrix(rows, prime)
        if det_mod_p(m).residue != 0:
            return m
    raise GenerationFailed(
        f"no invertible {n}x{n} matrix mod {p} in {_MAX_ATTEMPTS} draws; generator is broken"
    )
