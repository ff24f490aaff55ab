"""Closure operators stored extensionally as intersection-closed families.

A closure operator is represented by its family of closed sets (as bitmasks
over a :class:`~cgx.ground.GroundSet`), which must contain the empty set
(looplessness), the full set, and be closed under pairwise intersection.
The induced map sends A to the intersection of all closed supersets of A.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .errors import (
    InternalInconsistency,
    MissingTop,
    NotClosed,
    NotConvexGeometry,
    NotIntersectionClosed,
    NotLoopless,
    NotNested,
    OverlappingGrounds,
)
from .ground import GroundSet, Mask, bits

# close() uses a precomputed table of all 2^n closures below this bound.
_CLOSURE_TABLE_MAX_N = 16


@dataclass(frozen=True)
class ClosureOperator:
    """A loopless closure operator given by its sorted family of closed sets.

    The family is normalized (deduplicated, sorted by cardinality then mask
    value) so equal operators compare and hash equal.  Instances are immutable
    and safe to share; derived data is cached lazily.
    """

    ground: GroundSet
    closed: tuple[Mask, ...]

    def __post_init__(self):
        normalized = tuple(sorted(set(self.closed), key=lambda m: (m.bit_count(), m)))
        object.__setattr__(self, "closed", normalized)

    @property
    def n(self) -> int:
        return self.ground.n

    @cached_property
    def full_mask(self) -> Mask:
        return self.ground.full_mask

    @cached_property
    def closed_set(self) -> frozenset[Mask]:
        return frozenset(self.closed)

    def is_closed(self, mask: Mask) -> bool:
        return mask in self.closed_set

    @cached_property
    def _closure_table(self) -> list[Mask]:
        table = [0] * (1 << self.n)
        for a in range(1 << self.n):
            acc = self.full_mask
            for k in self.closed:
                if k & a == a:
                    acc &= k
            table[a] = acc
        return table

    def close(self, mask: Mask) -> Mask:
        """Smallest closed superset of ``mask``."""
        if self.n <= _CLOSURE_TABLE_MAX_N:
            return self._closure_table[mask]
        acc = self.full_mask
        for k in self.closed:
            if k & mask == mask:
                acc &= k
        return acc

    def is_discrete(self) -> bool:
        return len(self.closed) == 1 << self.n

    def extreme_points(self, mask: Mask) -> Mask:
        """Elements a of the set with a not in close(set minus a).

        Defined for arbitrary subsets; on a closed set K this is the usual set
        of extreme points {a in K : K \\ a closed}.
        """
        out = 0
        for i in bits(mask):
            if not (self.close(mask & ~(1 << i)) >> i) & 1:
                out |= 1 << i
        return out

    @cached_property
    def _totally_convex(self) -> tuple[Mask, ...]:
        good = [False] * (1 << self.n)
        out = []
        for s in range(1 << self.n):
            if s in self.closed_set and all(good[s & ~(1 << i)] for i in bits(s)):
                good[s] = True
                out.append(s)
        return tuple(out)

    def totally_convex_sets(self) -> tuple[Mask, ...]:
        """All S whose every subset is closed; their count is the phi value."""
        return self._totally_convex

    @cached_property
    def _minor_cache(self) -> dict[tuple[Mask, Mask], "ClosureOperator"]:
        return {}

    def minor(self, lower: Mask, upper: Mask) -> "ClosureOperator":
        """The operator induced on upper \\ lower by closed sets in between."""
        key = (lower, upper)
        cached = self._minor_cache.get(key)
        if cached is not None:
            return cached
        if not self.is_closed(lower):
            raise NotClosed(f"{self.ground.format_mask(lower)} is not closed")
        if not self.is_closed(upper):
            raise NotClosed(f"{self.ground.format_mask(upper)} is not closed")
        if lower & ~upper:
            raise NotNested("lower set is not contained in upper set")
        sub = upper & ~lower
        ground = self.ground.restrict(sub)
        family = tuple(
            self.ground.compress(sub, k & ~lower)
            for k in self.closed
            if k & lower == lower and k & ~upper == 0
        )
        result = ClosureOperator(ground, family)
        self._minor_cache[key] = result
        return result

    def restriction(self, mask: Mask) -> "ClosureOperator":
        return self.minor(0, mask)

    def contraction(self, mask: Mask) -> "ClosureOperator":
        return self.minor(mask, self.full_mask)

    def relabel(self, mapping: dict[str, str]) -> "ClosureOperator":
        """Rename ground labels; masks are re-indexed to the new canonical order."""
        new_labels = tuple(mapping[lab] for lab in self.ground.labels)
        ground = GroundSet(new_labels)
        perm = [ground.index(new_labels[i]) for i in range(self.n)]

        def remap(mask: Mask) -> Mask:
            out = 0
            for i in bits(mask):
                out |= 1 << perm[i]
            return out

        return type(self)(ground, tuple(remap(k) for k in self.closed))

    def __str__(self) -> str:
        sets = ",".join(self.ground.format_mask(k) for k in self.closed)
        return f"{{{sets}}}"


def validate(ground: GroundSet, family: Iterable[Mask]) -> ClosureOperator:
    """Check the closed-set axioms and build the operator.

    Raises MissingTop, NotLoopless, or NotIntersectionClosed (reporting a
    violating pair) when the family is not a loopless closure system.
    """
    masks = sorted(set(family), key=lambda m: (m.bit_count(), m))
    full = ground.full_mask
    if full not in masks:
        raise MissingTop("the full ground set must be closed")
    if 0 not in masks:
        raise NotLoopless("the empty set must be closed")
    present = frozenset(masks)
    for i, a in enumerate(masks):
        for b in masks[i + 1 :]:
            inter = a & b
            if inter not in present:
                raise NotIntersectionClosed(
                    ground.format_mask(a), ground.format_mask(b), ground.format_mask(inter)
                )
    return ClosureOperator(ground, tuple(masks))


def from_closed_labels(labels: Iterable[str], family: Iterable[Iterable[str]]) -> ClosureOperator:
    ground = GroundSet(tuple(labels))
    return validate(ground, [ground.mask_of(s) for s in family])


def empty_operator() -> ClosureOperator:
    return ClosureOperator(GroundSet(()), (0,))


def discrete_geometry(ground: GroundSet) -> "ConvexGeometry":
    return ConvexGeometry(ground, tuple(range(1 << ground.n)))


def direct_sum(c1: ClosureOperator, c2: ClosureOperator) -> ClosureOperator:
    """Closed sets are all unions of a closed set of each summand."""
    if set(c1.ground.labels) & set(c2.ground.labels):
        raise OverlappingGrounds(
            f"grounds share labels: {set(c1.ground.labels) & set(c2.ground.labels)}"
        )
    ground = GroundSet(c1.ground.labels + c2.ground.labels)

    def lift(cl: ClosureOperator, mask: Mask) -> Mask:
        return ground.mask_of(cl.ground.labels_of(mask))

    family = tuple(
        lift(c1, k1) | lift(c2, k2) for k1 in c1.closed for k2 in c2.closed
    )
    cls = ConvexGeometry if isinstance(c1, ConvexGeometry) and isinstance(c2, ConvexGeometry) else ClosureOperator
    return cls(ground, family)


def _anti_exchange(cl: ClosureOperator) -> bool:
    # Checking closed A suffices since g(A ∪ {b}) = g(g(A) ∪ {b}).
    for k in cl.closed:
        outside = cl.full_mask & ~k
        for a in bits(outside):
            ca = cl.close(k | (1 << a))
            for b in bits(outside & ~(1 << a)):
                if (ca >> b) & 1 and (cl.close(k | (1 << b)) >> a) & 1:
                    return False
    return True


def _one_element_extension(cl: ClosureOperator) -> bool:
    for k in cl.closed:
        if k == cl.full_mask:
            continue
        if not any(k | (1 << x) in cl.closed_set for x in bits(cl.full_mask & ~k)):
            return False
    return True


def is_convex_geometry(cl: ClosureOperator) -> bool:
    """Anti-exchange test, cross-checked against one-element extension.

    The two criteria are equivalent for loopless closure operators; a
    disagreement would mean a bug, so it raises InternalInconsistency.
    """
    anti = _anti_exchange(cl)
    ext = _one_element_extension(cl)
    if anti != ext:
        raise InternalInconsistency(
            f"anti-exchange ({anti}) and one-element extension ({ext}) disagree on {cl}"
        )
    return anti


@dataclass(frozen=True)
class ConvexGeometry(ClosureOperator):
    """A closure operator that satisfies anti-exchange; validated on construction."""

    def __post_init__(self):
        super().__post_init__()
        if not is_convex_geometry(self):
            raise NotConvexGeometry(f"anti-exchange fails for {self}")

    @classmethod
    def from_operator(cls, cl: ClosureOperator) -> "ConvexGeometry":
        return cls(cl.ground, cl.closed)
