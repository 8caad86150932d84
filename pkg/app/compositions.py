"""Integer compositions (ordered partitions) and multinomial coefficients."""

import logging
from functools import lru_cache
from math import comb
from typing import Iterator, Sequence

from .config import get_settings
from .errors import InvalidArgumentError, ResourceLimitError
from .models import Composition

logger = logging.getLogger(__name__)


def iter_compositions(m: int) -> Iterator[tuple[int, ...]]:
    """Yield every composition of m in lexicographic order, without recursion.

    The successor of (c_1, ..., c_k) is (c_1, ..., c_{k-2}, c_{k-1} + 1)
    followed by c_k - 1 ones; (m) is the last composition.
    """
    if m < 1:
        raise InvalidArgumentError(f"m must be a positive integer, got {m}")
    parts = [1] * m
    while True:
        yield tuple(parts)
        if len(parts) == 1:
            return
        last = parts.pop()
        parts[-1] += 1
        parts.extend([1] * (last - 1))


def enumerate_compositions(m: int) -> list[Composition]:
    """All 2^(m-1) compositions of m, lexicographic by parts."""
    if isinstance(m, bool) or not isinstance(m, int) or m < 1:
        raise InvalidArgumentError(f"m must be a positive integer, got {m!r}")
    cap = get_settings().composition_cap
    if m > cap:
        raise ResourceLimitError(f"composition enumeration is capped at m = {cap} (2^(m-1) results); got m = {m}")
    return [Composition(parts=parts) for parts in iter_compositions(m)]


def multinomial(total: int, parts: Sequence[int]) -> int:
    """total! / prod(part!) computed as a product of binomials."""
    if any(part < 0 for part in parts):
        raise InvalidArgumentError("multinomial parts must be nonnegative")
    if sum(parts) != total:
        raise InvalidArgumentError(f"parts {list(parts)} do not sum to {total}")
    result = 1
    remaining = total
    for part in parts:
        result *= comb(remaining, part)
        remaining -= part
    return result


@lru_cache(maxsize=256)
def composition_size_weights(m: int) -> tuple[int, ...]:
    """W[k] = sum over compositions mu of m with k parts of multinomial(2m; 2mu).

    Index 0 is unused (always 0). Built by conditioning on the last part:
    W_{m,k} = sum_j binom(2m, 2j) W_{m-j,k-1}, so no composition is enumerated.
    """
    if m < 1:
        raise InvalidArgumentError(f"m must be a positive integer, got {m}")
    # table[t][k] for compositions of t (t = 0..m) into k parts
    table = [[0] * (m + 1) for _ in range(m + 1)]
    table[0][0] = 1
    for t in range(1, m + 1):
        for k in range(1, t + 1):
            table[t][k] = sum(comb(2 * t, 2 * j) * table[t - j][k - 1] for j in range(1, t - k + 2))
    logger.debug("composition size weights for m=%d: %s", m, table[m])
    return tuple(table[m])
