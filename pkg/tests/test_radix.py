import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modtok.errors import DigitOutOfRange, IdOutOfRange
from modtok.field import FieldPrime
from modtok.radix import DigitVector, RadixParams, from_digits, select_n, select_p, to_digits


def oracle_digits(id_: int, p: int, n: int) -> list[int]:
    out = []
    for _ in range(n):
        id_, r = divmod(id_, p)
        out.append(r)
    return out


def oracle_value(digits, p: int) -> int:
    total = 0
    for i, d in enumerate(digits):
        total += d * p**i
    return total


def params(p: int, n: int) -> RadixParams:
    return RadixParams(FieldPrime(p), n)


def test_to_digits_zero():
    for p, n in [(2, 1), (5, 3), (101, 4)]:
        assert list(to_digits(0, params(p, n))) == [0] * n


def test_to_digits_hand_cases():
    assert oracle_digits(11, 3, 3) == [2, 0, 1]
    assert 2 + 0 * 3 + 1 * 9 == 11
    assert list(to_digits(11, params(3, 3))) == [2, 0, 1]
    assert oracle_digits(124, 5, 3) == [4, 4, 4]
    assert list(to_digits(124, params(5, 3))) == [4, 4, 4]


def test_to_digits_range_check():
    with pytest.raises(IdOutOfRange) as exc:
        to_digits(125, params(5, 3))
    assert exc.value.id == 125
    assert exc.value.capacity == 125
    with pytest.raises(IdOutOfRange):
        to_digits(-1, params(5, 3))


def test_from_digits_hand_cases():
    p3 = FieldPrime(3)
    assert from_digits(DigitVector((0, 0, 0), p3)) == 0
    assert oracle_value([2, 0, 1], 3) == 11
    assert from_digits(DigitVector((2, 0, 1), p3)) == 11
    assert from_digits(DigitVector((1,), FieldPrime(2))) == 1


def test_from_digits_raw_sequence():
    assert from_digits([2, 0, 1], FieldPrime(3)) == 11
    with pytest.raises(DigitOutOfRange):
        from_digits([3, 0, 1], FieldPrime(3))
    with pytest.raises(TypeError):
        from_digits([1, 0])  # raw digits need an explicit prime


def test_digit_vector_validation():
    with pytest.raises(DigitOutOfRange):
        DigitVector((0, 5), FieldPrime(5))
    with pytest.raises(DigitOutOfRange):
        DigitVector((-1,), FieldPrime(5))


@pytest.mark.parametrize("p,n", [(2, 10), (3, 7), (5, 3), (7, 3)])
def test_round_trip_exhaustive(p, n):
    prm = params(p, n)
    seen = set()
    for id_ in range(prm.capacity):
        v = to_digits(id_, prm)
        assert list(v) == oracle_digits(id_, p, n)
        assert from_digits(v) == id_
        seen.add(v.digits)
    assert len(seen) == prm.capacity  # injectivity by collision scan


@settings(max_examples=300)
@given(data=st.data())
def test_round_trip_property(data):
    p = data.draw(st.sampled_from([2, 3, 5, 97, 65537, 2**31 - 1]))
    max_n = 8
    while p**max_n >= 2**128:
        max_n -= 1
    n = data.draw(st.integers(min_value=1, max_value=max_n))
    prm = params(p, n)
    id_ = data.draw(st.integers(min_value=0, max_value=prm.capacity - 1))
    assert from_digits(to_digits(id_, prm)) == id_


def test_select_n_hand_cases():
    assert select_n(FieldPrime(11), 100).n == 2  # 121 > 100
    assert select_n(FieldPrime(2), 1).n == 1  # 2 > 1
    got = select_n(FieldPrime(7), 164_320)
    assert got.n == 7
    assert 7**7 == 823_543 > 164_320
    assert 7**6 == 117_649 <= 164_320


def test_select_n_minimality_and_strictness():
    for p in (2, 3, 5, 11, 101):
        for v in (1, 2, 7, 99, 100, 101, 12345):
            prm = select_n(FieldPrime(p), v)
            assert prm.capacity > v  # strict, never equal
            if prm.n > 1:
                assert p ** (prm.n - 1) <= v


def test_select_n_exact_power_stays_strict():
    # capacity equal to the vocabulary is not enough
    prm = select_n(FieldPrime(5), 125)
    assert prm.n == 4


def test_select_n_overflow():
    with pytest.raises(OverflowError):
        select_n(FieldPrime(2), 2**127)


def test_select_p_hand_cases():
    assert select_p(1, 100).p.value == 101
    got = select_p(3, 124)
    assert got.p.value == 5 and got.capacity == 125
    assert select_p(64, 1).p.value == 2


def test_select_p_minimality():
    def previous_prime(p):
        from modtok.field import is_prime

        q = p - 1
        while q >= 2 and not is_prime(q):
            q -= 1
        return q if q >= 2 else None

    for n in (1, 2, 3, 7):
        for v in (1, 2, 10, 124, 125, 164_320):
            prm = select_p(n, v)
            assert prm.capacity > v
            smaller = previous_prime(prm.p.value)
            if smaller is not None:
                assert smaller**n <= v


def test_select_p_overflow():
    with pytest.raises(OverflowError):
        select_p(1, 2**31)  # would need a prime above the modulus cap


def test_radix_params_validation():
    with pytest.raises(ValueError):
        RadixParams(FieldPrime(5), 0)
    with pytest.raises(OverflowError):
        RadixParams(FieldPrime(5), 65)
    with pytest.raises(OverflowError):
        RadixParams(FieldPrime(2**31 - 1), 5)  # ~2**155 capacity
    assert RadixParams(FieldPrime(2), 64).capacity == 2**64


def test_vocab_size_validation():
    with pytest.raises(ValueError):
        select_n(FieldPrime(5), 0)
    with pytest.raises(ValueError):
        select_p(3, 0)
