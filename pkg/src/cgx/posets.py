"""Partial orders, order ideals, linear extensions, and the embedding of
posets into convex geometries, plus exhaustive labeled-poset enumeration.

A poset stores, for each element position i, the mask ``below[i]`` of all
elements j with j <= i (including i itself).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence, Union

from .closure import ConvexGeometry
from .errors import CyclicRelations, GroundTooLarge
from .ground import GroundSet, LinearOrder, Mask, bits

POSET_ENUMERATION_GUARD = 6


@dataclass(frozen=True)
class Poset:
    ground: GroundSet
    below: tuple[Mask, ...]

    def __post_init__(self):
        object.__setattr__(self, "below", tuple(self.below))
        n = self.ground.n
        if len(self.below) != n:
            raise ValueError("below matrix size does not match ground set")
        for i, bi in enumerate(self.below):
            if not (bi >> i) & 1:
                raise ValueError("relation is not reflexive")
            for j in bits(bi):
                if self.below[j] & ~bi:
                    raise ValueError("relation is not transitive")
                if j != i and (self.below[j] >> i) & 1:
                    raise ValueError("relation is not antisymmetric")

    @property
    def n(self) -> int:
        return self.ground.n

    def leq(self, a: str, b: str) -> bool:
        return bool((self.below[self.ground.index(b)] >> self.ground.index(a)) & 1)

    @cached_property
    def relation_pairs(self) -> frozenset[tuple[int, int]]:
        """Strict pairs (i, j) with i < j in the order, as positions."""
        return frozenset(
            (i, j) for j, bj in enumerate(self.below) for i in bits(bj) if i != j
        )

    def relation_labels(self) -> tuple[tuple[str, str], ...]:
        labs = self.ground.labels
        return tuple(sorted((labs[i], labs[j]) for (i, j) in self.relation_pairs))

    @cached_property
    def minimal_elements(self) -> Mask:
        out = 0
        for i in range(self.n):
            if self.below[i] == 1 << i:
                out |= 1 << i
        return out

    @cached_property
    def maximal_elements(self) -> Mask:
        out = self.ground.full_mask
        for i, bi in enumerate(self.below):
            out &= ~(bi & ~(1 << i))
        return out

    def __str__(self) -> str:
        rels = ",".join(f"{a}<{b}" for a, b in self.relation_labels())
        return rels if rels else f"antichain({','.join(self.ground.labels)})"


@dataclass(frozen=True)
class Cyclic:
    """Witness that a join of partial orders is not antisymmetric."""

    witness: tuple[str, str]


def antichain(ground: GroundSet) -> Poset:
    return Poset(ground, tuple(1 << i for i in range(ground.n)))


def chain(ground: GroundSet, word: Sequence[str] | None = None) -> Poset:
    """The total order following ``word`` (ground label order by default)."""
    order = tuple(word) if word is not None else ground.labels
    below = [0] * ground.n
    acc = 0
    for lab in order:
        i = ground.index(lab)
        acc |= 1 << i
        below[i] = acc
    return Poset(ground, tuple(below))


def from_relations(ground: GroundSet, pairs: Iterable[tuple[str, str]]) -> Poset:
    """Transitive closure of the given strict relations a < b."""
    below = [1 << i for i in range(ground.n)]
    for a, b in pairs:
        below[ground.index(b)] |= 1 << ground.index(a)
    below = _transitive_closure(below)
    for i in range(ground.n):
        for j in bits(below[i]):
            if j != i and (below[j] >> i) & 1:
                raise CyclicRelations(
                    f"{ground.labels[i]} and {ground.labels[j]} are in a cycle"
                )
    return Poset(ground, tuple(below))


def _transitive_closure(below: list[Mask]) -> list[Mask]:
    below = list(below)
    changed = True
    while changed:
        changed = False
        for i in range(len(below)):
            acc = below[i]
            for j in bits(acc):
                acc |= below[j]
            if acc != below[i]:
                below[i] = acc
                changed = True
    return below


def ideals(p: Poset) -> tuple[Mask, ...]:
    """All down-closed subsets, sorted by (cardinality, mask value)."""
    out = []
    for s in range(1 << p.n):
        if all(p.below[i] & ~s == 0 for i in bits(s)):
            out.append(s)
    return tuple(sorted(out, key=lambda m: (m.bit_count(), m)))


def to_convex_geometry(p: Poset) -> ConvexGeometry:
    return ConvexGeometry(p.ground, ideals(p))


def linear_extensions(p: Poset) -> tuple[LinearOrder, ...]:
    """All total orders refining p, in lexicographic word order."""
    out: list[LinearOrder] = []
    labels = p.ground.labels

    def rec(used: Mask, word: tuple[str, ...]):
        if len(word) == p.n:
            out.append(LinearOrder(p.ground, word))
            return
        for i in range(p.n):
            bit = 1 << i
            if used & bit:
                continue
            if p.below[i] & ~(used | bit):
                continue
            rec(used | bit, word + (labels[i],))

    rec(0, ())
    return tuple(out)


def reverse(p: Poset) -> Poset:
    above = [0] * p.n
    for j, bj in enumerate(p.below):
        for i in bits(bj):
            above[i] |= 1 << j
    return Poset(p.ground, tuple(above))


def acyclic_join(posets: Sequence[Poset]) -> Union[Poset, Cyclic]:
    """Transitive closure of the union of relations; Cyclic on a 2-cycle.

    Realizes the intersection of the posets' top-cones: the intersection
    contains a chamber iff the joined preorder is antisymmetric.
    """
    if not posets:
        raise ValueError("need at least one poset")
    ground = posets[0].ground
    if any(p.ground != ground for p in posets):
        raise ValueError("posets live on different ground sets")
    below = [1 << i for i in range(ground.n)]
    for p in posets:
        for i in range(ground.n):
            below[i] |= p.below[i]
    below = _transitive_closure(below)
    for i in range(ground.n):
        for j in bits(below[i]):
            if j != i and (below[j] >> i) & 1:
                return Cyclic((ground.labels[min(i, j)], ground.labels[max(i, j)]))
    return Poset(ground, tuple(below))


def enumerate_posets(
    ground: GroundSet, guard: int = POSET_ENUMERATION_GUARD, force: bool = False
) -> Iterator[Poset]:
    """Yield every labeled partial order on the ground set exactly once.

    Elements are inserted one at a time; inserting element k into a poset on
    the first k elements amounts to choosing a down-set D (elements below k)
    and an up-set U (elements above k) with D x U already related.  Each poset
    arises from exactly one such choice, so no deduplication is needed.
    """
    n = ground.n
    if n > guard and not force:
        raise GroundTooLarge(f"poset enumeration guarded at n <= {guard} (got {n})")

    def rec(k: int, below: tuple[Mask, ...]) -> Iterator[tuple[Mask, ...]]:
        if k == n:
            yield below
            return
        downsets = [
            d
            for d in range(1 << k)
            if all(below[i] & ~d == 0 for i in bits(d))
        ]
        upsets_above = [0] * k
        for j in range(k):
            for i in bits(below[j]):
                upsets_above[i] |= 1 << j
        upsets = [
            u
            for u in range(1 << k)
            if all(upsets_above[i] & ~u == 0 for i in bits(u))
        ]
        bit = 1 << k
        for d in downsets:
            for u in upsets:
                if d & u:
                    continue
                if any(d & ~below[i] for i in bits(u)):
                    continue
                new_below = list(below) + [d | bit]
                for i in bits(u):
                    new_below[i] |= bit
                yield from rec(k + 1, tuple(new_below))

    for below in rec(0, ()):
        yield Poset(ground, below)
