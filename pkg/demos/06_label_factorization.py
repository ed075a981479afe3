#!/usr/bin/env python3
# Shrinking a giant output layer: n small softmax heads instead of one huge one.
#
# A classifier over V classes normally ends in one V-way softmax. With a
# fitted tokenizer, each class id maps to n digits in [0, p), so the model can
# end in n independent p-way heads instead; the joint prediction reconstructs
# the class id exactly. For V = 164,320 at p=7, n=7 that is 49 output units
# instead of 164,320.

from modtok import fit

V = 164_320
cfg = fit(V, fix_n=7, seed=1)
p, n = cfg.prime.value, cfg.n
print(f"V = {V:,} classes -> {n} heads of size {p} = {n * p} output units\n")

print("== targets for a few training labels ==")
for class_id in [0, 7, 123_456]:
    targets = cfg.factorize_label(class_id)
    print(f"  class {class_id:>7,} -> per-head targets {list(targets)}")

print("\n== reconstruction at inference time ==")
# pretend the n heads each produced an argmax
predicted = list(cfg.factorize_label(123_456))
print(f"  heads predicted {predicted}")
print(f"  reconstructed class id: {cfg.reconstruct_label(predicted):,}")

print("\n== every class gets a distinct target tuple ==")
small = fit(124, fix_n=3, seed=7)  # small enough to check exhaustively
tuples = {small.factorize_label(c).digits for c in range(small.capacity)}
print(f"  p={small.prime.value}, n={small.n}: {len(tuples)} distinct tuples "
      f"for {small.capacity} class ids")

print("\nnote: a digit tuple outside the fitted vocabulary still reconstructs")
print("to a unique id below p**n; range-check predictions against V yourself.")
