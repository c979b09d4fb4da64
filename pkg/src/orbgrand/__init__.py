"""GRAND and ORBGRAND decoding of binary linear block codes."""

from .channel import (
    FlipModel,
    RankPermutation,
    SoftBlock,
    ebn0_to_sigma2,
    fit_beta,
    posterior_flip_prob,
    rank_order,
    transmit,
)
from .codes import LinearCode, load_parity_check, membership, rlc_random, write_alist
from .decoder import DecodeOutcome, grand_core, hard_grand_decode, orbgrand_decode
from .gf2 import BinMatrix, BitWord, ConstructionError, DimensionError, encode, syndrome, systematic_generator, xor
from .patterns import ErrorPattern, PatternStream, apply_rank_permutation, hamming_weight, logistic_weight, next_pattern

__all__ = [
    "BinMatrix",
    "BitWord",
    "ConstructionError",
    "DecodeOutcome",
    "DimensionError",
    "ErrorPattern",
    "FlipModel",
    "LinearCode",
    "PatternStream",
    "RankPermutation",
    "SoftBlock",
    "apply_rank_permutation",
    "ebn0_to_sigma2",
    "encode",
    "fit_beta",
    "grand_core",
    "hamming_weight",
    "hard_grand_decode",
    "load_parity_check",
    "logistic_weight",
    "membership",
    "next_pattern",
    "orbgrand_decode",
    "posterior_flip_prob",
    "rank_order",
    "rlc_random",
    "syndrome",
    "systematic_generator",
    "transmit",
    "write_alist",
    "xor",
]
