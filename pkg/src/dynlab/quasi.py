"""Low-discrepancy (Halton) sampling with a deterministic seed offset.

All samplers in the verification harnesses draw from here so reports
are reproducible bit-for-bit for a given seed.
"""

from __future__ import annotations


def radical_inverse(index: int, base: int) -> float:
    f = 1.0
    r = 0.0
    i = index
    while i > 0:
        f /= base
        r += f * (i % base)
        i //= base
    return r


def halton_pairs(count: int, seed: int = 0):
    """Yield `count` points of the (2,3)-Halton sequence in [0,1)^2.

    The seed shifts the start index, giving distinct but reproducible
    sample sets.
    """
    start = (seed % 1_000_003) + 1
    for k in range(start, start + count):
        yield radical_inverse(k, 2), radical_inverse(k, 3)


def halton_in_rect(count: int, re_min: float, re_max: float,
                   im_min: float, im_max: float, seed: int = 0):
    for u, v in halton_pairs(count, seed):
        yield complex(re_min + u * (re_max - re_min),
                      im_min + v * (im_max - im_min))
