"""The lattice of closed sets: meet is intersection, join is the closure of
the union.  Supplies gradedness, rank-modularity, generated sublattices,
distributivity, chief chains, and the geometric chief-chain condition.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .closure import ClosureOperator
from .errors import (
    LatticeTooLarge,
    NotASublattice,
    NotGraded,
    NotMaximalChain,
)
from .ground import Mask

LATTICE_GUARD = 256

Chain = tuple[Mask, ...]


@dataclass(frozen=True)
class ClosedSetLattice:
    """Bounded lattice on the closed sets of a closure operator."""

    operator: ClosureOperator

    @property
    def elements(self) -> tuple[Mask, ...]:
        return self.operator.closed

    @property
    def bottom(self) -> Mask:
        return 0

    @property
    def top(self) -> Mask:
        return self.operator.full_mask

    def meet(self, a: Mask, b: Mask) -> Mask:
        return a & b

    def join(self, a: Mask, b: Mask) -> Mask:
        return self.operator.close(a | b)

    @cached_property
    def covers(self) -> dict[Mask, tuple[Mask, ...]]:
        """upper covers of each element"""
        elems = self.elements
        out: dict[Mask, list[Mask]] = {x: [] for x in elems}
        for x in elems:
            for y in elems:
                if x != y and x & ~y == 0:
                    if not any(
                        z != x and z != y and x & ~z == 0 and z & ~y == 0
                        for z in elems
                    ):
                        out[x].append(y)
        return {x: tuple(sorted(ys)) for x, ys in out.items()}

    @cached_property
    def height(self) -> dict[Mask, int]:
        """Longest-chain rank from the bottom."""
        order = sorted(self.elements, key=lambda m: m.bit_count())
        h = {self.bottom: 0}
        for x in order:
            for y in self.covers[x]:
                h[y] = max(h.get(y, 0), h[x] + 1)
        return h

    @cached_property
    def is_graded(self) -> bool:
        """True iff every cover step raises the height by exactly one."""
        return all(
            self.height[y] == self.height[x] + 1
            for x, ys in self.covers.items()
            for y in ys
        )

    def rank(self, x: Mask) -> int:
        if not self.is_graded:
            raise NotGraded("lattice is not graded; rank is unavailable")
        return self.height[x]

    @cached_property
    def maximal_chains(self) -> tuple[Chain, ...]:
        out: list[Chain] = []

        def rec(chain: tuple[Mask, ...]):
            x = chain[-1]
            if x == self.top:
                out.append(chain)
                return
            for y in self.covers[x]:
                rec(chain + (y,))

        rec((self.bottom,))
        return tuple(out)

    def is_maximal_chain(self, chain: Sequence[Mask]) -> bool:
        if not chain or chain[0] != self.bottom or chain[-1] != self.top:
            return False
        return all(y in self.covers[x] for x, y in zip(chain, chain[1:]))


def generated_sublattice(lattice: ClosedSetLattice, seed: Iterable[Mask]) -> frozenset[Mask]:
    """Smallest subset containing the seed closed under meet and join."""
    current = set(seed)
    frontier = list(current)
    while frontier:
        new = []
        for x in frontier:
            for y in current:
                for z in (lattice.meet(x, y), lattice.join(x, y)):
                    if z not in current:
                        current.add(z)
                        new.append(z)
        frontier = new
    return frozenset(current)


def is_distributive(lattice: ClosedSetLattice, subset: Iterable[Mask]) -> bool:
    """Distributivity of meet over join on a sublattice of the lattice."""
    elems = sorted(set(subset))
    for x in elems:
        for y in elems:
            if lattice.meet(x, y) not in elems or lattice.join(x, y) not in elems:
                raise NotASublattice(f"seed is not closed under meet/join at ({x}, {y})")
    for a, b, c in itertools.product(elems, repeat=3):
        if lattice.meet(a, lattice.join(b, c)) != lattice.join(
            lattice.meet(a, b), lattice.meet(a, c)
        ):
            return False
    return True


def is_rank_modular_chain(lattice: ClosedSetLattice, chain: Sequence[Mask]) -> bool:
    """rho(m ^ x) + rho(m v x) = rho(m) + rho(x) for every chain element m."""
    if not lattice.is_graded:
        raise NotGraded("rank-modularity needs a graded lattice")
    rho = lattice.height
    for m in chain:
        for x in lattice.elements:
            if rho[lattice.meet(m, x)] + rho[lattice.join(m, x)] != rho[m] + rho[x]:
                return False
    return True


def chief_chains(lattice: ClosedSetLattice, guard: int = LATTICE_GUARD,
                 force: bool = False) -> tuple[Chain, ...]:
    """Maximal chains generating a distributive sublattice with every chain.

    Checking against maximal chains suffices: every chain extends to a
    maximal one and sublattices of distributive lattices are distributive.
    """
    if len(lattice.elements) > guard and not force:
        raise LatticeTooLarge(f"lattice has more than {guard} elements")
    maximal = lattice.maximal_chains
    out = []
    for c in maximal:
        if all(
            is_distributive(lattice, generated_sublattice(lattice, set(c) | set(m)))
            for m in maximal
        ):
            out.append(c)
    return tuple(out)


def _union_intersection_closure(seed: Iterable[Mask]) -> frozenset[Mask]:
    current = set(seed)
    frontier = list(current)
    while frontier:
        new = []
        for x in frontier:
            for y in current:
                for z in (x & y, x | y):
                    if z not in current:
                        current.add(z)
                        new.append(z)
        frontier = new
    return frozenset(current)


def chain_blocks(chain: Sequence[Mask]) -> tuple[Mask, ...]:
    """Consecutive differences of a chain from bottom to top."""
    return tuple(hi & ~lo for lo, hi in zip(chain, chain[1:]))


def geometric_chief_condition(cl: ClosureOperator, chain: Sequence[Mask]) -> bool:
    """Projection-cone test of a maximal chain against every maximal chain.

    For each maximal chain m, the lower sets of the smallest preorder
    containing both chains are the union/intersection closure of their
    elements.  Every permutation of the chain's blocks whose prefix unions all
    lie in that closure must consist of closed sets of the operator.
    """
    lattice = ClosedSetLattice(cl)
    chain = tuple(chain)
    if not lattice.is_maximal_chain(chain):
        raise NotMaximalChain(f"{chain} is not a maximal chain")
    blocks = chain_blocks(chain)
    for m in lattice.maximal_chains:
        pr = _union_intersection_closure(set(chain) | set(m))

        # Only permutations with every prefix in pr are quantified, so a
        # non-closed prefix fails the test only once such a permutation
        # completes.
        def walk(prefix: Mask, remaining: tuple[Mask, ...], bad: bool) -> bool:
            if not remaining:
                return not bad
            for i, block in enumerate(remaining):
                nxt = prefix | block
                if nxt in pr:
                    rest = remaining[:i] + remaining[i + 1 :]
                    if not walk(nxt, rest, bad or nxt not in cl.closed_set):
                        return False
            return True

        if not walk(0, blocks, False):
            return False
    return True
