#!/usr/bin/env python3
# The full tokenizer: fit once, encode and decode forever.
#
# encode(id) = (M . base_p_digits(id)) mod p, decode applies M^-1 and reads
# the digits back. The map is a bijection on all of [0, p**n): no collisions,
# nothing learned, nothing lost.

import tempfile
from pathlib import Path

from modtok import fit, load_config, normalize, save_config

cfg = fit(vocab_size=164_320, fix_n=7, seed=1)
print(f"fitted: {cfg}")
print(f"load factor: {cfg.load_factor:.1%}\n")

print("== scalar round trip ==")
for id_ in [0, 1, 41_999, 164_319]:
    token = cfg.encode(id_)
    back = cfg.decode(token)
    print(f"  {id_:>7,} -> {list(token)} -> {back:,}")

print("\n== model-ready inputs ==")
token = cfg.encode(41_999)
print(f"  token digits: {list(token)}")
print(f"  normalized:   {[round(x, 4) for x in normalize(token)]}  (grid spacing 1/{cfg.prime.value})")

print("\n== batches preserve order ==")
ids = list(range(10))
tokens = cfg.encode_batch(ids)
print("  decode(encode(0..9)) ==", cfg.decode_batch(tokens))

print("\n== persistence is exact and self-checking ==")
with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "tokenizer.json"
    save_config(cfg, path)
    loaded = load_config(path)
    print(f"  saved {path.stat().st_size} bytes, loaded config equal: {loaded == cfg}")
    print(f"  loaded encodes 12345 identically: {loaded.encode(12345) == cfg.encode(12345)}")
