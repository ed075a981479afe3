#!/usr/bin/env python3
# Arithmetic in Z_p: the ground everything else stands on.
#
# All tokenization here happens over a prime field: integers 0..p-1 with
# addition and multiplication taken mod p. Primality of p is what guarantees
# every nonzero element has a multiplicative inverse, which is what makes
# the mixing matrix invertible and the whole encoding reversible.

from modtok import FieldPrime, is_prime, mod_inverse, next_prime

print("== primality ==")
for candidate in [1, 2, 97, 98, 1_000_003, 2**31 - 1]:
    print(f"is_prime({candidate}) = {is_prime(candidate)}")

print("\n== picking a modulus ==")
for floor in [0, 8, 97, 100_000]:
    print(f"next_prime({floor}) = {next_prime(floor)}")

print("\n== field operations ==")
p = FieldPrime(7)
a, b = p.element(5), p.element(4)
print(f"in Z_{p.value}:  5+4 = {(a + b).residue},  5-4 = {(a - b).residue},  5*4 = {(a * b).residue}")

print("\n== inverses: the reason p must be prime ==")
for x in range(1, 7):
    inv = mod_inverse(p.element(x))
    print(f"{x}^-1 mod 7 = {inv.residue}   check: {x}*{inv.residue} mod 7 = {(x * inv.residue) % 7}")
