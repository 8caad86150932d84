"""Seeded Monte Carlo estimate of P(|S_n(p)/n| > eps).

Replicate r belongs to block r // MC_BLOCK_SIZE, and block b draws from its own
Philox stream seeded from SeedSequence(seed, spawn_key=(b,)). The block size is
a module constant, so every replicate is a fixed function of (seed, r) and the
estimate depends only on (seed, samples, n, p, eps).
"""

import logging
from decimal import Decimal
from fractions import Fraction
from math import ceil, floor
from typing import Union

import numpy as np

from .errors import InvalidArgumentError
from .models import McTailResult
from .rational import check_positive_int, check_probability

logger = logging.getLogger(__name__)

# Replicates per seeded stream. Changing it changes every published estimate.
MC_BLOCK_SIZE = 65536

DecimalLike = Union[str, float, Decimal, Fraction]


def _exact_decimal(value: DecimalLike, name: str) -> Fraction:
    """Read a decimal literal exactly; floats go through their shortest repr ("0.05", not 0.05000000000000000277)."""
    try:
        if isinstance(value, float):
            value = repr(value)
        return Fraction(value)
    except (TypeError, ValueError) as exc:
        raise InvalidArgumentError(f"{name} is not a decimal number: {value!r}") from exc


def _event_counts(n: int, p: Fraction, epsilon: Fraction) -> tuple[int, int]:
    """Integer cut points: |k - np| > n eps iff k < low or k > high."""
    centre, radius = n * p, n * epsilon
    low = ceil(centre - radius)  # k >= low stays inside
    high = floor(centre + radius)
    return low, high


def block_generator(seed: int, block: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(block,))))


def mc_tail(
    n: int,
    p: DecimalLike,
    epsilon: DecimalLike,
    samples: int,
    seed: int,
) -> McTailResult:
    """Empirical frequency of |S_n/n| > eps over `samples` binomial draws, with its standard error."""
    check_positive_int(n, "n")
    check_positive_int(samples, "samples")
    if isinstance(seed, bool) or not isinstance(seed, int) or not 0 <= seed < 2**64:
        raise InvalidArgumentError(f"seed must be an integer in [0, 2^64), got {seed!r}")
    p_exact = check_probability(_exact_decimal(p, "p"))
    eps_exact = _exact_decimal(epsilon, "epsilon")
    if eps_exact <= 0:
        raise InvalidArgumentError("epsilon must be positive")
    low, high = _event_counts(n, p_exact, eps_exact)

    hits = 0
    for block, start in enumerate(range(0, samples, MC_BLOCK_SIZE)):
        size = min(MC_BLOCK_SIZE, samples - start)
        draws = block_generator(seed, block).binomial(n, float(p_exact), size=size)
        hits += int(np.count_nonzero((draws < low) | (draws > high)))
    estimate = hits / samples
    stderr = float(np.sqrt(estimate * (1.0 - estimate) / samples))
    logger.debug("mc_tail n=%d seed=%d: %d/%d hits", n, seed, hits, samples)
    return McTailResult(
        n=n, p=float(p_exact), epsilon=float(eps_exact), samples=samples, seed=seed,
        hits=hits, estimate=estimate, stderr=stderr,
    )
