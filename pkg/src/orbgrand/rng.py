"""Counter-based random streams keyed by (seed, domain, index).

Every stream is a Philox4x64 generator whose 128-bit key packs the user seed
(low 64 bits), a domain tag and a stream index. Streams never share state, so
results do not depend on how trials are split across workers.
"""

import numpy as np

TRIAL = 1
CODE = 2

_MASK64 = (1 << 64) - 1


def stream_key(seed: int, domain: int, index: int = 0) -> int:
    if not 0 <= domain < 256:
        raise ValueError("domain must fit in 8 bits")
    if not 0 <= index < (1 << 56):
        raise ValueError("stream index must fit in 56 bits")
    return (seed & _MASK64) | (domain << 64) | (index << 72)


def bit_generator(seed: int, domain: int, index: int = 0) -> np.random.Philox:
    return np.random.Philox(key=stream_key(seed, domain, index))


def generator(seed: int, domain: int, index: int = 0) -> np.random.Generator:
    return np.random.Generator(bit_generator(seed, domain, index))


def trial_generator(seed: int, trial: int) -> np.random.Generator:
    return generator(seed, TRIAL, trial)


def raw_bits(seed: int, domain: int, index: int, count: int) -> np.ndarray:
    """``count`` fair bits taken LSB-first from consecutive raw 64-bit outputs.

    Uses the raw Philox output rather than a distribution method so the bits
    are fixed by the Philox algorithm alone.
    """
    nwords = (count + 63) // 64
    words = bit_generator(seed, domain, index).random_raw(nwords).astype("<u8")
    bits = np.unpackbits(words.view(np.uint8), bitorder="little")
    return bits[:count]
