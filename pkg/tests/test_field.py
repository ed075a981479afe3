import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modtok.errors import ModulusMismatch, NotInvertible, NotPrime
from modtok.field import (
    FieldElement,
    FieldPrime,
    is_prime,
    mod_add,
    mod_inverse,
    mod_mul,
    mod_sub,
    next_prime,
)

SMALL_PRIMES = [2, 3, 5, 7, 97, 1009]


def trial_division(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def brute_force_inverse(a: int, p: int) -> int:
    for b in range(p):
        if (a * b) % p == 1:
            return b
    raise AssertionError(f"{a} has no inverse mod {p}")


def test_is_prime_trivial_cases():
    assert is_prime(2)
    assert not is_prime(1)
    assert not is_prime(0)


def test_is_prime_million_and_three():
    assert trial_division(1_000_003)  # oracle first
    assert is_prime(1_000_003)


def test_is_prime_classic_pseudoprimes():
    # 2047 = 23 * 89 is a strong pseudoprime to base 2; 561 is Carmichael.
    assert not is_prime(2047)
    assert not is_prime(561)
    assert is_prime(2**31 - 1)


def test_is_prime_agrees_with_sieve_to_one_million():
    limit = 10**6
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, int(limit**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    mismatches = [n for n in range(limit + 1) if bool(sieve[n]) != is_prime(n)]
    assert mismatches == []


def test_next_prime_small():
    assert next_prime(0) == 2
    assert next_prime(8) == 11
    assert trial_division(97)
    assert next_prime(97) == 97


def test_next_prime_against_enumeration():
    for floor in range(0, 200):
        expected = floor
        while not trial_division(max(expected, 2)) or expected < 2:
            expected += 1
        assert next_prime(floor) == expected


def test_next_prime_cap():
    assert next_prime(2**31 - 1) == 2**31 - 1
    with pytest.raises(OverflowError):
        next_prime(2**31)


def test_field_prime_validation():
    assert FieldPrime(2).value == 2
    with pytest.raises(NotPrime):
        FieldPrime(4)
    with pytest.raises(NotPrime):
        FieldPrime(1)
    with pytest.raises(OverflowError):
        FieldPrime(2**31 + 11)


def test_field_prime_sample_limit():
    p = FieldPrime(5)
    assert p.sample_limit == 2**64 - (2**64 % 5)
    assert p.sample_limit % 5 == 0


def test_mod_ops_hand_cases():
    p5 = FieldPrime(5)
    p7 = FieldPrime(7)
    assert mod_add(p5.element(3), p5.element(4)).residue == 2
    assert mod_sub(p7.element(0), p7.element(1)).residue == 6
    for p in (p5, p7):
        for x in range(p.value):
            assert mod_mul(p.element(x), p.element(1)).residue == x


def test_modulus_mismatch():
    a = FieldPrime(5).element(1)
    b = FieldPrime(7).element(1)
    for op in (mod_add, mod_sub, mod_mul):
        with pytest.raises(ModulusMismatch):
            op(a, b)


def test_mod_inverse_hand_cases():
    assert brute_force_inverse(2, 5) == 3
    assert mod_inverse(FieldPrime(5).element(2)).residue == 3
    assert brute_force_inverse(10, 17) == 12
    assert (10 * 12) % 17 == 1
    assert mod_inverse(FieldPrime(17).element(10)).residue == 12
    for p in SMALL_PRIMES:
        assert mod_inverse(FieldPrime(p).element(1)).residue == 1


def test_mod_inverse_zero_rejected():
    with pytest.raises(NotInvertible):
        mod_inverse(FieldPrime(5).element(0))


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_mod_inverse_matches_brute_force_exhaustively(p):
    prime = FieldPrime(p)
    for a in range(1, p):
        inv = mod_inverse(prime.element(a)).residue
        assert (a * inv) % p == 1
        assert inv == brute_force_inverse(a, p)


def test_element_range_enforced():
    with pytest.raises(ValueError):
        FieldElement(5, FieldPrime(5))
    with pytest.raises(ValueError):
        FieldElement(-1, FieldPrime(5))


@settings(max_examples=200)
@given(
    p=st.sampled_from(SMALL_PRIMES + [2**31 - 1]),
    a=st.integers(min_value=0, max_value=2**31 - 2),
    b=st.integers(min_value=0, max_value=2**31 - 2),
)
def test_field_operations_closed(p, a, b):
    prime = FieldPrime(p)
    x = prime.element(a)
    y = prime.element(b)
    for op in (mod_add, mod_sub, mod_mul):
        r = op(x, y)
        assert 0 <= r.residue < p
    if a % p:
        assert 0 <= mod_inverse(x).residue < p


def test_operator_sugar():
    p = FieldPrime(7)
    assert (p.element(3) + p.element(5)).residue == 1
    assert (p.element(3) - p.element(5)).residue == 5
    assert (p.element(3) * p.element(5)).residue == 1
    assert int(p.element(6)) == 6
