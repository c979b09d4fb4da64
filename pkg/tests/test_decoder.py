from functools import partial

import numpy as np
import pytest

from instances import bsc_instance, logistic_instance
from oracles import codewords_from_generator, max_log_likelihood, rank_log_likelihood
from orbgrand.channel import SoftBlock, transmit
from orbgrand.codes import membership, rlc_random
from orbgrand.decoder import (
    ABANDONED,
    FOUND,
    grand_core,
    hamming_schedule,
    hard_grand_decode,
    orbgrand_decode,
    orbgrand_schedule,
)
from orbgrand.gf2 import BitWord, DimensionError, encode
from orbgrand import rng


def test_core_codeword_needs_one_query(hamming74):
    cw = encode(hamming74.G, BitWord(4, 0b1011))
    out = grand_core(partial(membership, hamming74), cw, hamming_schedule(7), 100)
    assert (out.codeword, out.queries, out.status) == (cw, 1, FOUND)


def test_core_everything_is_a_codeword():
    y = BitWord.from_str("1101")
    out = grand_core(lambda w: True, y, hamming_schedule(4), 10)
    assert (out.codeword, out.queries) == (y, 1)


def test_core_corrects_single_flip(hamming74):
    for v in range(16):
        cw = encode(hamming74.G, BitWord(4, v))
        for j in range(7):
            out = grand_core(partial(membership, hamming74), cw ^ BitWord(7, 1 << j), hamming_schedule(7), 100)
            assert out.codeword == cw
            assert out.queries <= 8


def test_core_budget_and_exhaustion():
    y = BitWord.from_str("111")
    out = grand_core(lambda w: False, y, hamming_schedule(3), 5)
    assert (out.codeword, out.queries, out.status) == (None, 5, ABANDONED)
    out = grand_core(lambda w: False, y, hamming_schedule(3), 100)
    assert (out.queries, out.status) == (8, ABANDONED)
    with pytest.raises(ValueError):
        grand_core(lambda w: False, y, hamming_schedule(3), 0)


def test_core_rejects_nonzero_first_guess():
    with pytest.raises(ValueError):
        grand_core(lambda w: True, BitWord.zeros(3), iter([BitWord.from_str("100")]), 5)


def test_orbgrand_noiseless(hamming74):
    cw = encode(hamming74.G, BitWord(4, 0b0110))
    s = transmit(cw, 1e-9, rng.generator(0, 0))
    out = orbgrand_decode(hamming74, s)
    assert (out.codeword, out.queries, out.status) == (cw, 1, FOUND)


def test_orbgrand_budget_one(hamming74):
    s = SoftBlock.from_soft([-1.0, 1, 1, 1, 1, 1, 1], 0.5)
    out = orbgrand_decode(hamming74, s, budget=1)
    assert (out.codeword, out.queries, out.status) == (None, 1, ABANDONED)


def test_orbgrand_flips_least_reliable_bit(hamming74):
    # bit 2 is the only weak one; the single flip of rank 1 fixes the word
    cw = encode(hamming74.G, BitWord(4, 0b1001))
    soft = 1.0 - 2.0 * cw.to_array()
    soft[2] = -0.05 * soft[2]
    out = orbgrand_decode(hamming74, SoftBlock.from_soft(soft, 0.5))
    assert (out.codeword, out.queries) == (cw, 2)


def test_length_checks(hamming74):
    with pytest.raises(DimensionError):
        orbgrand_decode(hamming74, SoftBlock.from_soft(np.ones(6), 1.0))
    with pytest.raises(DimensionError):
        hard_grand_decode(hamming74, BitWord.zeros(8))


def test_hard_grand_all_zero():
    for seed in range(5):
        code = rlc_random(20, 10, seed)
        assert hard_grand_decode(code, BitWord.zeros(20)).queries == 1


def test_hard_grand_hamming74_perfect(hamming74):
    for v in range(16):
        cw = encode(hamming74.G, BitWord(4, v))
        for j in range(7):
            assert hard_grand_decode(hamming74, cw ^ BitWord(7, 1 << j)).codeword == cw


@pytest.mark.parametrize("seed", range(120))
def test_fast_path_equals_generic_loop(seed):
    g = np.random.default_rng(seed)
    n = int(g.integers(3, 14))
    code = rlc_random(n, int(g.integers(1, n)), seed)
    s = SoftBlock.from_soft(g.normal(0.6, 1.0, n), 0.5)
    member = partial(membership, code)
    for budget in (1, 2, int(g.integers(3, 40)), 2**n):
        assert orbgrand_decode(code, s, budget) == grand_core(member, s.hard, orbgrand_schedule(s), budget)
        assert hard_grand_decode(code, s.hard, budget) == grand_core(member, s.hard, hamming_schedule(n), budget)


def test_fast_path_multiword_syndrome():
    code = rlc_random(90, 20, 5)  # 70 parity bits: two syndrome words
    g = np.random.default_rng(0)
    member = partial(membership, code)
    for _ in range(10):
        c = encode(code.G, BitWord.from_bits(g.integers(0, 2, 20)))
        s = transmit(c, 0.3, g)
        fast = orbgrand_decode(code, s, 300)
        assert fast == grand_core(member, s.hard, orbgrand_schedule(s), 300)
        flips = g.choice(90, 2, replace=False)
        y = c ^ BitWord.from_positions(90, flips)
        assert hard_grand_decode(code, y, 5000) == grand_core(member, y, hamming_schedule(90), 5000)


@pytest.mark.parametrize("seed", range(50))
def test_query_count_reproducible(seed):
    code, s, _, _ = logistic_instance(seed)
    first = orbgrand_decode(code, s, 2**code.n)
    assert first.found and membership(code, first.codeword)
    assert orbgrand_decode(code, s, first.queries) == first
    if first.queries > 1:
        short = orbgrand_decode(code, s, first.queries - 1)
        assert (short.status, short.queries) == (ABANDONED, first.queries - 1)


@pytest.mark.parametrize("seed", range(200))
def test_orbgrand_ml_under_logistic_model(seed):
    code, s, p_channel, _ = logistic_instance(seed)
    out = orbgrand_decode(code, s, 2**code.n)
    y = s.hard.to_array()
    best = max_log_likelihood(codewords_from_generator(code.G.array), y, p_channel)
    assert rank_log_likelihood(out.codeword.to_array(), y, p_channel) == pytest.approx(best, abs=1e-9)


@pytest.mark.parametrize("seed", range(200))
def test_hard_grand_minimum_distance(seed):
    code, y = bsc_instance(seed)
    out = hard_grand_decode(code, y, 2**code.n)
    dists = (codewords_from_generator(code.G.array) != y.to_array()).sum(axis=1)
    assert (out.codeword ^ y).weight() == dists.min()
