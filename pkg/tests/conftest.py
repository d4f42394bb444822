import itertools
from collections import Counter

import pytest


def digit_sum_counts(q, n):
    """Coefficients of (1 + ... + x^(q-1))^n by counting exponent vectors directly."""
    counts = Counter(sum(t) for t in itertools.product(range(q), repeat=n))
    return [counts[j] for j in range((q - 1) * n + 1)]


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


@pytest.fixture
def rng():
    import random

    return random.Random(1234)
