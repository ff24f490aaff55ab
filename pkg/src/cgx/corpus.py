"""Exhaustive enumeration of convex geometries and closure operators on
small ground sets.

The search walks candidate subsets in decreasing cardinality, branching on
membership.  Including a set forces its pairwise intersections with previous
members (which are strictly smaller, hence still undecided), and a set with
no closed one-element extension is rejected immediately, so only valid
families reach the leaves.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator

from .closure import ClosureOperator, ConvexGeometry
from .errors import GroundTooLarge
from .ground import GroundSet, Mask, bits

CORPUS_GUARD = 5
ALPHABET = "abcdefghijklmnopqrstuvwxyz"


def standard_ground(n: int) -> GroundSet:
    return GroundSet(tuple(ALPHABET[:n]))


def _search(ground: GroundSet, require_extension: bool) -> Iterator[tuple[Mask, ...]]:
    n = ground.n
    full = ground.full_mask
    if n == 0:
        yield (0,)
        return
    candidates = sorted(range(1, full), key=lambda m: (-m.bit_count(), -m))
    index = {m: i for i, m in enumerate(candidates)}
    member = [False] * len(candidates)
    required = [False] * len(candidates)
    chosen: list[Mask] = []

    def extendable(s: Mask) -> bool:
        for x in bits(full & ~s):
            sup = s | (1 << x)
            if sup == full or (sup in index and member[index[sup]]):
                return True
        return False

    def rec(i: int) -> Iterator[tuple[Mask, ...]]:
        if i == len(candidates):
            if not require_extension or n == 1 or any(
                m.bit_count() == 1 for m in chosen
            ):
                yield (0, *sorted(chosen, key=lambda m: (m.bit_count(), m)), full)
            return
        s = candidates[i]
        # include s
        if not require_extension or extendable(s):
            forced: list[int] = []
            for c in chosen:
                t = s & c
                if t == 0 or t == s or t == c:
                    continue
                j = index[t]
                if not required[j]:
                    required[j] = True
                    forced.append(j)
            member[i] = True
            chosen.append(s)
            yield from rec(i + 1)
            chosen.pop()
            member[i] = False
            for j in forced:
                required[j] = False
        # exclude s
        if not required[i]:
            yield from rec(i + 1)

    yield from rec(0)


def enumerate_geometries(ground: GroundSet) -> tuple[ConvexGeometry, ...]:
    """Every labeled convex geometry on the ground set, sorted canonically."""
    out = [ConvexGeometry(ground, family) for family in _search(ground, True)]
    return tuple(sorted(out, key=lambda g: g.closed))


def enumerate_closure_operators(ground: GroundSet) -> tuple[ClosureOperator, ...]:
    """Every loopless closure operator (intersection-closed family) on the
    ground set, sorted canonically."""
    out = [ClosureOperator(ground, family) for family in _search(ground, False)]
    return tuple(sorted(out, key=lambda g: g.closed))


@lru_cache(maxsize=None)
def _corpus_for(n: int) -> tuple[ConvexGeometry, ...]:
    return enumerate_geometries(standard_ground(n))


def enumerate_corpus(max_n: int, guard: int = CORPUS_GUARD,
                     force: bool = False) -> tuple[ConvexGeometry, ...]:
    """All labeled convex geometries on ground sets of sizes 1..max_n."""
    if max_n > guard and not force:
        raise GroundTooLarge(f"corpus enumeration guarded at n <= {guard}")
    out: list[ConvexGeometry] = []
    for n in range(1, max_n + 1):
        out.extend(_corpus_for(n))
    return tuple(out)
