"""Permutations as 0-based tuples: sigma[i] is the image of i."""

import itertools
from fractions import Fraction
from typing import List, Sequence, Tuple

import numpy as np

from ..exceptions import InstanceError

Permutation = Tuple[int, ...]

# enumeration of S_r is only used for tiny r
MAX_ENUMERATION = 8


def check_permutation(sigma: Sequence[int]) -> Permutation:
    if sorted(sigma) != list(range(len(sigma))):
        raise InstanceError(f"not a permutation of [0, {len(sigma)}): {tuple(sigma)}")
    return tuple(int(x) for x in sigma)


def random_permutation(r: int, rng: np.random.Generator) -> Permutation:
    return tuple(int(x) for x in rng.permutation(r))


def from_one_based(images: Sequence[int]) -> Permutation:
    """(2, 3, 4, 1) -> (1, 2, 3, 0)."""
    return check_permutation([x - 1 for x in images])


def inverse(sigma: Permutation) -> Permutation:
    inv = [0] * len(sigma)
    for i, image in enumerate(sigma):
        inv[image] = i
    return tuple(inv)


def cycles(sigma: Permutation) -> List[Tuple[int, ...]]:
    """Cycles in order of their smallest element, each starting there."""
    seen = [False] * len(sigma)
    found = []
    for start in range(len(sigma)):
        if seen[start]:
            continue
        cycle = []
        v = start
        while not seen[v]:
            seen[v] = True
            cycle.append(v)
            v = sigma[v]
        found.append(tuple(cycle))
    return found


def longest_cycle(sigma: Permutation) -> int:
    return max((len(c) for c in cycles(sigma)), default=0)


def expected_longest_cycle(r: int) -> Fraction:
    """Exact mean of the longest cycle length over all of S_r."""
    if not 1 <= r <= MAX_ENUMERATION:
        raise InstanceError(f"exact enumeration supports 1 <= r <= {MAX_ENUMERATION}, got {r}")
    total = sum(longest_cycle(sigma) for sigma in itertools.permutations(range(r)))
    count = 1
    for i in range(2, r + 1):
        count *= i
    return Fraction(total, count)
