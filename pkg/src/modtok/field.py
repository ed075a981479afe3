"""Exact arithmetic in the prime field Z_p.

The whole package works over Z_p = {0, ..., p-1} with addition and
multiplication modulo a prime p. This module provides the validated modulus
type (FieldPrime), a residue type (FieldElement), the four field operations,
and deterministic primality testing used when fitting parameters.

The modulus is capped below 2**31 so that any product of two residues fits
in unsigned 64 bits; all arithmetic here is exact integer arithmetic with no
possibility of silent wraparound.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ModulusMismatch, NotInvertible, NotPrime

# Exclusive upper bound for moduli. Keeps residue products within 64 bits
# and is far beyond any realistic vocabulary once n >= 2.
PRIME_LIMIT = 2**31

# Witnesses making Miller-Rabin exact for every candidate below 2**64.
# Fixed (never randomized) so independent implementations agree bit-for-bit.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(candidate: int) -> bool:
    """Deterministic primality test, exact for all 0 <= candidate < 2**64."""
    n = candidate
    if n < 2:
        return False
    for w in _MR_WITNESSES:
        if n == w:
            return True
        if n % w == 0:
            return False
    # n is odd and coprime to all witnesses here; write n-1 = 2**r * d.
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = (x * x) % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(floor: int) -> int:
    """Smallest prime >= floor.

    Raises OverflowError when no prime >= floor exists below 2**31
    (2**31 - 1 is itself prime, so this triggers exactly for floor > 2**31 - 1).
    """
    if floor > PRIME_LIMIT - 1:
        raise OverflowError(f"no prime >= {floor} below 2**31")
    if floor <= 2:
        return 2
    candidate = floor | 1  # first odd >= floor
    while not is_prime(candidate):
        candidate += 2
        if candidate >= PRIME_LIMIT:
            raise OverflowError(f"no prime >= {floor} below 2**31")
    return candidate


@dataclass(frozen=True)
class FieldPrime:
    """A validated prime modulus p defining the field Z_p.

    Construction verifies primality with the deterministic test above and
    enforces 2 <= p < 2**31.
    """

    value: int

    def __post_init__(self):
        if not isinstance(self.value, int) or isinstance(self.value, bool):
            raise NotPrime(self.value)
        if self.value >= PRIME_LIMIT:
            raise OverflowError(f"modulus {self.value} is not below 2**31")
        if not is_prime(self.value):
            raise NotPrime(self.value)

    @property
    def sample_limit(self) -> int:
        """Largest multiple of p that fits in 64 bits: 2**64 - (2**64 mod p).

        Raw 64-bit PRNG draws at or above this limit are rejected before
        reduction so that sampled residues are exactly uniform on [0, p).
        """
        return 2**64 - (2**64 % self.value)

    def element(self, residue: int) -> "FieldElement":
        return FieldElement(residue % self.value, self)

    def __repr__(self) -> str:
        return f"FieldPrime({self.value})"


@dataclass(frozen=True)
class FieldElement:
    """A residue in [0, p) tied to its modulus.

    Construction rejects out-of-range residues; every operation below reduces,
    so the invariant residue < p holds everywhere.
    """

    residue: int
    prime: FieldPrime

    def __post_init__(self):
        if not 0 <= self.residue < self.prime.value:
            raise ValueError(f"residue {self.residue} outside [0, {self.prime.value})")

    def __add__(self, other: "FieldElement") -> "FieldElement":
        return mod_add(self, other)

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        return mod_sub(self, other)

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        return mod_mul(self, other)

    def __int__(self) -> int:
        return self.residue

    def __repr__(self) -> str:
        return f"FieldElement({self.residue} mod {self.prime.value})"


def _require_same_modulus(a: FieldElement, b: FieldElement) -> int:
    if a.prime.value != b.prime.value:
        raise ModulusMismatch(f"moduli differ: {a.prime.value} vs {b.prime.value}")
    return a.prime.value


def mod_add(a: FieldElement, b: FieldElement) -> FieldElement:
    p = _require_same_modulus(a, b)
    return FieldElement((a.residue + b.residue) % p, a.prime)


def mod_sub(a: FieldElement, b: FieldElement) -> FieldElement:
    p = _require_same_modulus(a, b)
    return FieldElement((a.residue - b.residue) % p, a.prime)


def mod_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    # Residues are below 2**31, so the product stays below 2**62.
    p = _require_same_modulus(a, b)
    return FieldElement((a.residue * b.residue) % p, a.prime)


def inverse_mod(a: int, p: int) -> int:
    """Multiplicative inverse of a nonzero residue, by extended Euclid.

    Exact and independent of the size of p; preferred here over Fermat
    exponentiation for branch-predictable integer-only execution.
    """
    if a % p == 0:
        raise NotInvertible(f"0 has no inverse mod {p}")
    lo_coef, hi_coef = 1, 0
    lo, hi = a % p, p
    while lo > 1:
        q = hi // lo
        lo_coef, hi_coef = hi_coef - q * lo_coef, lo_coef
        lo, hi = hi - q * lo, lo
    return lo_coef % p


def mod_inverse(a: FieldElement) -> FieldElement:
    """Inverse element b with (a * b) mod p = 1. Raises NotInvertible for 0."""
    return FieldElement(inverse_mod(a.residue, a.prime.value), a.prime)
