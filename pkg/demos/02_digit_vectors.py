#!/usr/bin/env python3
# From one big integer to a fixed-length digit vector and back.
#
# An id below p**n is written in base p with exactly n digits (little-endian,
# zero-padded). The capacity condition is strict: p**n must exceed the
# vocabulary size, so every id has a slot and the expansion is lossless.

from modtok import FieldPrime, RadixParams, from_digits, select_n, select_p, to_digits

params = RadixParams(FieldPrime(5), 3)
print(f"p=5, n=3 holds ids 0..{params.capacity - 1}")
for id_ in [0, 11, 124]:
    v = to_digits(id_, params)
    print(f"  {id_:4d} -> {list(v)} -> {from_digits(v)}")

print("\n== fitting parameters to a vocabulary ==")
# Fix the prime and derive how many digits are needed...
for vocab in [10, 1_000, 1_000_000]:
    fitted = select_n(FieldPrime(7), vocab)
    print(f"p=7, V={vocab:>9,} -> n={fitted.n} (capacity {fitted.capacity:,})")

# ...or fix the number of digits and derive the smallest prime that fits.
for vocab in [124, 164_320, 10**9]:
    fitted = select_p(7, vocab)
    print(f"n=7, V={vocab:>13,} -> p={fitted.p.value} (capacity {fitted.capacity:,})")

print("\nload factor = share of the digit space the vocabulary occupies:")
fitted = select_p(7, 164_320)
print(f"  V=164,320 at p={fitted.p.value}, n=7: {164_320 / fitted.capacity:.1%}")
