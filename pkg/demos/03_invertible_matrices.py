#!/usr/bin/env python3
# The mixing matrix: seeded, invertible, reproducible.
#
# Plain base-p digits leak structure: consecutive ids share most digits. An
# invertible matrix over Z_p spreads every input digit across all output
# positions while staying exactly reversible. Generation is seeded, so a
# (p, n, seed) triple names the same matrix forever, on any machine.

from modtok import (
    DigitVector,
    FieldPrime,
    det_mod_p,
    invert,
    mat_mul,
    mat_vec_mul,
    random_invertible,
    to_digits,
    RadixParams,
)

prime = FieldPrime(5)
m = random_invertible(prime, 3, seed=42)
print("M (p=5, n=3, seed=42):")
for row in m.entries:
    print("  ", list(row))
print(f"det(M) mod 5 = {det_mod_p(m).residue}  (nonzero, so invertible)")

m_inv = invert(m)
print("\nM^-1:")
for row in m_inv.entries:
    print("  ", list(row))
print("M * M^-1 == I:", mat_mul(m, m_inv).entries == tuple(
    tuple(1 if i == j else 0 for j in range(3)) for i in range(3)
))

print("\n== mixing in action ==")
params = RadixParams(prime, 3)
print("consecutive ids, raw digits vs mixed digits:")
for id_ in [20, 21, 22, 23]:
    raw = to_digits(id_, params)
    mixed = mat_vec_mul(m, raw)
    print(f"  id {id_}: digits {list(raw)} -> token {list(mixed)}")

print("\nsame seed, same matrix:")
again = random_invertible(prime, 3, seed=42)
print("  regenerated equals original:", again == m)
print("different seed, different matrix:")
other = random_invertible(prime, 3, seed=43)
print("  seed 43 equals seed 42:", other == m)
