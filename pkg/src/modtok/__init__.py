"""Reversible tokenization of high-cardinality integer ids over a prime field.

An id below p**n is expanded into n base-p digits, mixed by an invertible
matrix over Z_p, and reduced mod p. The result is a fixed-length token vector
that decodes back to the exact original id: no collisions, no learned
parameters, and dimensionality chosen explicitly through (p, n).
"""

from . import errors
from .dataio import (
    ColumnSpec,
    FileSummary,
    Vocabulary,
    build_vocab,
    decode_file,
    encode_file,
    load_vocab,
    save_vocab,
)
from .field import (
    FieldElement,
    FieldPrime,
    is_prime,
    mod_add,
    mod_inverse,
    mod_mul,
    mod_sub,
    next_prime,
)
from .matrix import (
    ModMatrix,
    SplitMix64,
    det_mod_p,
    invert,
    mat_mul,
    mat_vec_mul,
    random_invertible,
)
from .radix import DigitVector, RadixParams, from_digits, select_n, select_p, to_digits
from .tokenizer import (
    TokenizerConfig,
    TokenVector,
    config_from_document,
    config_to_document,
    fit,
    load_config,
    normalize,
    save_config,
)

__version__ = "0.1.0"

__all__ = [
    "ColumnSpec",
    "DigitVector",
    "FieldElement",
    "FieldPrime",
    "FileSummary",
    "ModMatrix",
    "RadixParams",
    "SplitMix64",
    "TokenVector",
    "TokenizerConfig",
    "Vocabulary",
    "build_vocab",
    "config_from_document",
    "config_to_document",
    "decode_file",
    "det_mod_p",
    "encode_file",
    "errors",
    "fit",
    "from_digits",
    "invert",
    "is_prime",
    "load_config",
    "load_vocab",
    "mat_mul",
    "mat_vec_mul",
    "mod_add",
    "mod_inverse",
    "mod_mul",
    "mod_sub",
    "next_prime",
    "normalize",
    "random_invertible",
    "save_config",
    "save_vocab",
    "select_n",
    "select_p",
    "to_digits",
]
