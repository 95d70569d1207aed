from fractions import Fraction
from typing import Sequence


def exact_mean(samples: Sequence[int]) -> Fraction:
    """Mean of integer samples as an exact fraction."""
    if not samples:
        raise ValueError("mean of an empty sample")
    return Fraction(sum(samples), len(samples))


def exact_median(samples: Sequence[int]) -> Fraction:
    """
    Median of integer samples; the midpoint of the two middle values for
    even-length input.
    """
    if not samples:
        raise ValueError("median of an empty sample")
    ordered = sorted(samples)
    mid = len(ordered) // 2
    if len(ordered) % 2:
        return Fraction(ordered[mid])
    return Fraction(ordered[mid - 1] + ordered[mid], 2)
