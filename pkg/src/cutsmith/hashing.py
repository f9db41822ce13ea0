import logging
import math
from itertools import combinations
from typing import Iterable, Iterator

import numpy as np
from pydantic import BaseModel, ConfigDict

from cutsmith.enums import FamilyMode
from cutsmith.exceptions import ArgumentError
from cutsmith.graph import TerminalSet, VertexCut
from cutsmith.utilities import ceil_log2

logger = logging.getLogger(__name__)

SPLITTER_THRESHOLD_FACTOR = 200


def first_primes(count: int) -> list[int]:
    """
    The first count primes in increasing order, found with a sieve of Eratosthenes
    whose bound is doubled until it holds enough primes.

    :param count: Number of primes, at least 1.
    """
    if count < 1:
        raise ArgumentError(f"prime count must be at least 1, got {count}")

    bound = int(2 * count * math.log(count + 2)) + 16
    while True:
        sieve = np.ones(bound + 1, dtype=bool)
        sieve[:2] = False
        for p in range(2, math.isqrt(bound) + 1):
            if sieve[p]:
                sieve[p * p :: p] = False
        primes = np.flatnonzero(sieve)
        if len(primes) >= count:
            return [int(p) for p in primes[:count]]
        bound *= 2


class HMHashFamily(BaseModel):
    """
    Hit-and-miss family of the modulus hashes h_p(x) = x mod p over the domain
    [0, N). For all disjoint A, B with |A| <= a and |B| <= b, some prime of the
    family maps every member of B away from every member of A.
    """

    model_config = ConfigDict(frozen=True)

    domain_size: int
    a: int
    b: int
    primes: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.primes)

    @property
    def alphabet(self) -> int:
        """The alphabet bound q, the largest prime of the family."""
        return self.primes[-1]

    @property
    def min_support(self) -> int:
        """
        The smallest non-empty preimage h_p^-1(j) over all primes p and residues j.
        """
        return min(1 if p >= self.domain_size else self.domain_size // p for p in self.primes)

    def separating_prime(self, a: Iterable[int], b: Iterable[int]) -> int | None:
        """
        The first prime whose hash keeps every member of b off the residues of a, or
        None when no member of the family does.
        """
        a, b = list(a), list(b)
        for p in self.primes:
            hit = {x % p for x in a}
            if all(y % p not in hit for y in b):
                return p
        return None


def build_hm_family(domain_size: int, a: int, b: int) -> HMHashFamily:
    """
    The prime hit-and-miss family built from the first 1 + a*b*ceil(log2 N) primes.

    :param domain_size: N, the domain is [0, N).
    :param a: Bound on the hit set size.
    :param b: Bound on the miss set size, at most a.
    """
    if domain_size < 1:
        raise ArgumentError(f"domain size must be at least 1, got {domain_size}")
    if b > a:
        raise ArgumentError(f"b={b} must not exceed a={a}")

    count = 1 + a * b * ceil_log2(domain_size)
    family = HMHashFamily(
        domain_size=domain_size, a=a, b=b, primes=tuple(first_primes(count))
    )
    logger.debug(
        f"Built HM family N={domain_size} a={a} b={b}: l={family.size}, "
        f"q={family.alphabet}, s={family.min_support}"
    )
    return family


def isolates(cut: VertexCut, subset: Iterable[int]) -> bool:
    """
    True iff the cut puts exactly one member of subset in L, none in S and at least
    one in R.
    """
    in_left = in_separator = in_right = 0
    for v in subset:
        if v in cut.left:
            in_left += 1
        elif v in cut.separator:
            in_separator += 1
        elif v in cut.right:
            in_right += 1
    return in_left == 1 and in_separator == 0 and in_right >= 1


class TerminalFamily(BaseModel):
    """
    A splitter family over a terminal set. In all-pairs mode the members are every
    2-subset of T. In hash-preimages mode terminal T[i] is hashed by its sorted
    position i, so the member for (p, j) is the slice T[j::p].

    Members are generated on demand; a family over 2^14 terminals is never
    materialized at once.
    """

    model_config = ConfigDict(frozen=True)

    terminals: tuple[int, ...]
    mode: FamilyMode
    hm_family: HMHashFamily | None = None

    def subsets(self) -> Iterator[tuple[int, ...]]:
        if self.mode == FamilyMode.ALL_PAIRS:
            yield from combinations(self.terminals, 2)
            return

        assert self.hm_family is not None
        t = len(self.terminals)
        for p in self.hm_family.primes:
            for j in range(min(p, t)):
                yield self.terminals[j::p]

    def __len__(self) -> int:
        t = len(self.terminals)
        if self.mode == FamilyMode.ALL_PAIRS:
            return t * (t - 1) // 2
        assert self.hm_family is not None
        return sum(min(p, t) for p in self.hm_family.primes)

    @property
    def size_bound(self) -> int:
        """l*q in hash mode, t(t-1)/2 in all-pairs mode."""
        if self.mode == FamilyMode.ALL_PAIRS:
            t = len(self.terminals)
            return t * (t - 1) // 2
        assert self.hm_family is not None
        return self.hm_family.size * self.hm_family.alphabet

    def find_isolated(self, cut: VertexCut) -> tuple[int, ...] | None:
        """
        The first member isolated by the cut, or None.
        """
        if self.mode == FamilyMode.ALL_PAIRS:
            return next((s for s in self.subsets() if isolates(cut, s)), None)

        assert self.hm_family is not None
        # 0 = L, 1 = S, 2 = R
        sides = np.array(
            [0 if v in cut.left else 1 if v in cut.separator else 2 for v in self.terminals]
        )
        positions = np.arange(len(self.terminals))
        for p in self.hm_family.primes:
            residues = positions % p
            width = min(p, len(self.terminals))
            counts = [
                np.bincount(residues[sides == side], minlength=width) for side in range(3)
            ]
            hits = np.flatnonzero((counts[0] == 1) & (counts[1] == 0) & (counts[2] >= 1))
            if len(hits):
                return self.terminals[int(hits[0]) :: p]
        return None


def build_terminal_family(
    terminals: TerminalSet,
    beta: int,
    *,
    threshold_factor: int = SPLITTER_THRESHOLD_FACTOR,
) -> TerminalFamily:
    """
    Build the splitter family isolating one side of every (T, beta)-unbalanced cut.

    Below t = threshold_factor * beta * ceil(log2 t)^2 the family is all 2-subsets of
    T. Above it the family is the preimages of the hit-and-miss hashes over [t] with
    a = beta - 1 and b = 1. If those preimages would include a singleton, all-pairs
    mode is used instead.

    :param terminals: The terminal set T, at least two terminals.
    :param beta: The unbalance bound, at least 2.
    :param threshold_factor: The constant in front of the all-pairs threshold.
    """
    if beta < 2:
        raise ArgumentError(f"beta must be at least 2, got {beta}")
    t = len(terminals)
    if t < 2:
        raise ArgumentError(f"terminal family needs at least 2 terminals, got {t}")

    if t < threshold_factor * beta * ceil_log2(t) ** 2:
        logger.debug(f"Terminal family over t={t}, beta={beta}: all pairs")
        return TerminalFamily(terminals=terminals.members, mode=FamilyMode.ALL_PAIRS)

    hm_family = build_hm_family(t, beta - 1, 1)
    if hm_family.min_support < 2:
        logger.debug(
            f"Terminal family over t={t}, beta={beta}: hash support "
            f"{hm_family.min_support} below 2, using all pairs"
        )
        return TerminalFamily(terminals=terminals.members, mode=FamilyMode.ALL_PAIRS)

    logger.debug(f"Terminal family over t={t}, beta={beta}: hash preimages")
    return TerminalFamily(
        terminals=terminals.members,
        mode=FamilyMode.HASH_PREIMAGES,
        hm_family=hm_family,
    )
