"""Fixed-length base-p digit vectors and (p, n) capacity fitting.

An identifier id < p**n is written as its little-endian base-p expansion:
digits[0] is the least significant digit and the vector is zero-padded to
exactly n digits. The digit order is part of the serialized format and must
never change.

Capacity fitting enforces the strict condition p**n > V for a vocabulary of
V ids: either direction can be fixed (given p derive the minimal n, or given
n derive the minimal prime p).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import DigitOutOfRange, IdOutOfRange
from .field import FieldPrime, next_prime

# Digit counts are capped at 64 and capacities at 2**128; fits are refused
# (OverflowError) rather than silently wrapping.
MAX_DIGITS = 64
CAPACITY_LIMIT = 2**128


@dataclass(frozen=True)
class DigitVector:
    """A length-n vector of digits in [0, p).

    Serves both as the base-p expansion of an id and as the token vector
    produced by the linear transform; the two have identical shape and range.
    """

    digits: tuple[int, ...]
    prime: FieldPrime

    def __post_init__(self):
        digits = tuple(self.digits)
        object.__setattr__(self, "digits", digits)
        p = self.prime.value
        for d in digits:
            if not 0 <= d < p:
                raise DigitOutOfRange(d, p)

    @classmethod
    def _trusted(cls, digits: tuple[int, ...], prime: FieldPrime) -> "DigitVector":
        # Fast constructor for digits already known to be reduced.
        v = object.__new__(cls)
        object.__setattr__(v, "digits", digits)
        object.__setattr__(v, "prime", prime)
        return v

    def __len__(self) -> int:
        return len(self.digits)

    def __iter__(self):
        return iter(self.digits)

    def __getitem__(self, i):
        return self.digits[i]

    def __repr__(self) -> str:
        return f"DigitVector({list(self.digits)} mod {self.prime.value})"


@dataclass(frozen=True)
class RadixParams:
    """A (p, n) pair with its precomputed capacity p**n."""

    p: FieldPrime
    n: int
    capacity: int = field(init=False)

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError(f"digit count must be a positive integer, got {self.n!r}")
        if self.n > MAX_DIGITS:
            raise OverflowError(f"digit count {self.n} exceeds the maximum of {MAX_DIGITS}")
        capacity = self.p.value**self.n
        if capacity >= CAPACITY_LIMIT:
            raise OverflowError(
                f"capacity {self.p.value}**{self.n} exceeds the 128-bit limit"
            )
        object.__setattr__(self, "capacity", capacity)


def to_digits(id_: int, params: RadixParams) -> DigitVector:
    """Little-endian base-p expansion of id, zero-padded to length n."""
    if not 0 <= id_ < params.capacity:
        raise IdOutOfRange(id_, params.capacity)
    p = params.p.value
    x = id_
    digits = []
    for _ in range(params.n):
        x, r = divmod(x, p)
        digits.append(r)
    return DigitVector._trusted(tuple(digits), params.p)


def from_digits(v: DigitVector | Sequence[int], prime: FieldPrime | None = None) -> int:
    """Integer value sum(digits[i] * p**i); exact inverse of to_digits.

    Accepts either a DigitVector or a raw digit sequence plus its prime,
    validating digit range in the latter case.
    """
    if isinstance(v, DigitVector):
        digits, p = v.digits, v.prime.value
    else:
        if prime is None:
            raise TypeError("a raw digit sequence requires an explicit prime")
        v = DigitVector(tuple(v), prime)
        digits, p = v.digits, prime.value
    value = 0
    for d in reversed(digits):
        value = value * p + d
    return value


def select_n(p: FieldPrime, vocab_size: int) -> RadixParams:
    """Smallest n >= 1 with p**n strictly greater than vocab_size."""
    if vocab_size < 1:
        raise ValueError(f"vocabulary size must be >= 1, got {vocab_size}")
    n = 1
    capacity = p.value
    while capacity <= vocab_size:
        n += 1
        capacity *= p.value
        if n > MAX_DIGITS or capacity >= CAPACITY_LIMIT:
            raise OverflowError(
                f"no capacity p**n > {vocab_size} for p={p.value} within limits"
            )
    return RadixParams(p, n)


def _ceil_root(value: int, n: int) -> int:
    """Smallest integer x with x**n > value (integer-exact)."""
    if value < 1:
        return 2  # smallest admissible base either way
    x = max(2, round(value ** (1.0 / n)))
    while x**n > value:  # float seed may overshoot
        x -= 1
    while x**n <= value:
        x += 1
    return x


def select_p(n: int, vocab_size: int) -> RadixParams:
    """Smallest prime p with p**n strictly greater than vocab_size."""
    if vocab_size < 1:
        raise ValueError(f"vocabulary size must be >= 1, got {vocab_size}")
    if not 1 <= n <= MAX_DIGITS:
        raise OverflowError(f"digit count {n} outside [1, {MAX_DIGITS}]")
    base = _ceil_root(vocab_size, n)
    p = FieldPrime(next_prime(base))  # may raise OverflowError at the 2**31 cap
    return RadixParams(p, n)
