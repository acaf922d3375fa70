"""Module deriving reproducible random generators from the single run seed."""

import zlib

import numpy as np

DEFAULT_SEED = 0xC0FFEE


def derive_rng(seed: int, stream: str, *indices: int) -> np.random.Generator:
    """Generator for a named sub-stream of the run seed.

    Args:
        seed (int): Run seed.
        stream (str): Stream name, e.g. "spgc-trial".
        *indices (int): Further non-negative keys, e.g. a trial number.

    Returns:
        np.random.Generator: Independent generator for this stream and key.
    """
    entropy = [seed & (2**64 - 1), zlib.crc32(stream.encode("utf-8")), *indices]
    return np.random.default_rng(np.random.SeedSequence(entropy))
