"""
Exhaustive reference solver for paired domination.

Knows nothing about blocks: subsets are enumerated by even size and
each candidate is tested for domination, then for a perfect matching
of its induced subgraph.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterable
from dataclasses import dataclass
from functools import cache
from itertools import combinations

from pairdom.errors import GraphError, TooLarge
from pairdom.graph import Graph

logger = logging.getLogger(__name__)

DEFAULT_CAP = 20


@dataclass(frozen=True)
class OracleResult:
    gamma_pr: int
    num_min_sets: int
    core: frozenset[int]
    min_sets: tuple[frozenset[int], ...] = ()


def _masks(g: Graph) -> tuple[list[int], list[int]]:
    open_nbr = [0] * g.n
    for v, adj in enumerate(g.adjacency):
        for w in adj:
            open_nbr[v] |= 1 << w
    closed = [m | (1 << v) for v, m in enumerate(open_nbr)]
    return open_nbr, closed


def _matcher(open_nbr: list[int]) -> Callable[[int], bool]:
    @cache
    def perfect(mask: int) -> bool:
        if mask == 0:
            return True
        low = mask & -mask
        v = low.bit_length() - 1
        rest = mask ^ low
        cand = open_nbr[v] & rest
        while cand:
            w = cand & -cand
            if perfect(rest ^ w):
                return True
            cand ^= w
        return False

    return perfect


def is_pds(g: Graph, s: Iterable[int]) -> bool:
    """Does s dominate g and induce a subgraph with a perfect matching?"""
    open_nbr, closed = _masks(g)
    mask = 0
    covered = 0
    for v in s:
        mask |= 1 << v
        covered |= closed[v]
    if mask == 0 or covered != (1 << g.n) - 1:
        return False
    return _matcher(open_nbr)(mask)


def solve(g: Graph, cap: int | None = None, keep_sets: bool = True) -> OracleResult:
    limit = DEFAULT_CAP if cap is None else cap
    if g.n > limit:
        raise TooLarge(f"graph has {g.n} vertices, oracle cap is {limit}")

    open_nbr, closed = _masks(g)
    perfect = _matcher(open_nbr)
    full = (1 << g.n) - 1

    for size in range(2, g.n + 1, 2):
        found: list[frozenset[int]] = []
        count = 0
        core = full
        for combo in combinations(range(g.n), size):
            covered = 0
            mask = 0
            for v in combo:
                covered |= closed[v]
                mask |= 1 << v
            if covered != full or not perfect(mask):
                continue
            count += 1
            core &= mask
            if keep_sets:
                found.append(frozenset(combo))
        if count:
            logger.debug("gamma_pr=%d with %d minimum sets", size, count)
            return OracleResult(
                gamma_pr=size,
                num_min_sets=count,
                core=frozenset(v for v in range(g.n) if core >> v & 1),
                min_sets=tuple(found),
            )

    raise GraphError("graph has no paired-dominating set (isolated vertex?)")


def core_membership(g: Graph, v: int, cap: int | None = None) -> bool:
    return v in solve(g, cap=cap, keep_sets=False).core
