"""Combinatorial substrate: ground sets, bitmask subsets, set and integer
compositions, linear orders, two-line descents/peaks, and the Tits product.

Subsets of a ground set are plain ``int`` bitmasks indexed by the position of
each label in the ground set's canonical (lexicographic) order.  Positions in
descent and peak sets are 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

from .errors import DegreeMismatch

Mask = int


@dataclass(frozen=True)
class GroundSet:
    """A finite set of distinct string labels, kept in lexicographic order."""

    labels: tuple[str, ...]

    def __post_init__(self):
        labels = tuple(sorted(self.labels))
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate labels: {self.labels!r}")
        object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return len(self.labels)

    @cached_property
    def full_mask(self) -> Mask:
        return (1 << self.n) - 1

    @cached_property
    def _index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def index(self, label: str) -> int:
        return self._index[label]

    def mask_of(self, labels: Iterable[str]) -> Mask:
        m = 0
        for lab in labels:
            m |= 1 << self._index[lab]
        return m

    def labels_of(self, mask: Mask) -> tuple[str, ...]:
        return tuple(self.labels[i] for i in bits(mask))

    def format_mask(self, mask: Mask) -> str:
        return "".join(self.labels_of(mask)) if mask else "{}"

    def subsets(self) -> Iterator[Mask]:
        return iter(range(1 << self.n))

    def restrict(self, mask: Mask) -> "GroundSet":
        return GroundSet(self.labels_of(mask))

    def compress(self, sub: Mask, mask: Mask) -> Mask:
        """Re-index ``mask`` (a subset of ``sub``) into restrict(sub) positions."""
        out = 0
        pos = 0
        while sub:
            low = sub & -sub
            if mask & low:
                out |= 1 << pos
            pos += 1
            sub &= sub - 1
        return out


def bits(mask: Mask) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask &= mask - 1


def submasks(mask: Mask) -> Iterator[Mask]:
    """All submasks of ``mask``, descending, ending with 0."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


@dataclass(frozen=True)
class IntegerComposition:
    """An ordered tuple of positive parts; composes n = sum(parts)."""

    parts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        if any(p < 1 for p in self.parts):
            raise ValueError(f"parts must be positive: {self.parts}")

    @property
    def n(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def b_positions(self) -> frozenset[int]:
        """Partial sums except the last; the b positions of the ab-monomial."""
        out = []
        acc = 0
        for p in self.parts[:-1]:
            acc += p
            out.append(acc)
        return frozenset(out)


@dataclass(frozen=True)
class SetComposition:
    """An ordered set partition of a ground set into nonempty blocks."""

    ground: GroundSet
    blocks: tuple[Mask, ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))
        seen = 0
        for b in self.blocks:
            if b == 0:
                raise ValueError("empty block in set composition")
            if seen & b:
                raise ValueError("blocks are not disjoint")
            seen |= b
        if seen != self.ground.full_mask:
            raise ValueError("blocks do not cover the ground set")

    def __len__(self) -> int:
        return len(self.blocks)

    def prefixes(self) -> tuple[Mask, ...]:
        """Unions of initial runs of blocks, from the empty set to full."""
        out = [0]
        acc = 0
        for b in self.blocks:
            acc |= b
            out.append(acc)
        return tuple(out)

    def __str__(self) -> str:
        return "|".join(self.ground.format_mask(b) for b in self.blocks)


def composition_type(comp: SetComposition) -> IntegerComposition:
    return IntegerComposition(tuple(b.bit_count() for b in comp.blocks))


def coarsens(beta: IntegerComposition, alpha: IntegerComposition) -> bool:
    """True iff beta is obtained by summing consecutive runs of alpha's parts."""
    if beta.n != alpha.n:
        raise ValueError("compositions must compose the same n")
    i = 0
    for part in beta.parts:
        acc = 0
        while acc < part:
            if i >= len(alpha.parts):
                return False
            acc += alpha.parts[i]
            i += 1
        if acc != part:
            return False
    return i == len(alpha.parts)


def integer_compositions(n: int) -> Iterator[IntegerComposition]:
    if n == 0:
        yield IntegerComposition(())
        return
    for first in range(1, n + 1):
        for rest in integer_compositions(n - first):
            yield IntegerComposition((first,) + rest.parts)


def tits_product(f: SetComposition, g: SetComposition) -> SetComposition:
    """Refine f by g: blocks F_i ∩ G_j in lexicographic (i, j) order."""
    if f.ground != g.ground:
        raise ValueError("set compositions live on different ground sets")
    blocks = []
    for fb in f.blocks:
        for gb in g.blocks:
            inter = fb & gb
            if inter:
                blocks.append(inter)
    return SetComposition(f.ground, tuple(blocks))


def set_compositions(ground: GroundSet) -> Iterator[SetComposition]:
    """All ordered set partitions of the ground set."""

    def rec(remaining: Mask):
        if remaining == 0:
            yield ()
            return
        for first in submasks(remaining):
            if first == 0:
                continue
            for rest in rec(remaining & ~first):
                yield (first,) + rest

    for blocks in rec(ground.full_mask):
        yield SetComposition(ground, blocks)


@dataclass(frozen=True)
class LinearOrder:
    """A total order on the ground set, written as a word of labels."""

    ground: GroundSet
    word: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(self.word))
        if sorted(self.word) != list(self.ground.labels):
            raise ValueError(f"word {self.word!r} is not a permutation of the ground set")

    @cached_property
    def _rank(self) -> dict[str, int]:
        return {lab: i + 1 for i, lab in enumerate(self.word)}

    def rank(self, label: str) -> int:
        """1-based position of the label in the word."""
        return self._rank[label]

    def reversed_order(self) -> "LinearOrder":
        return LinearOrder(self.ground, self.word[::-1])

    def to_composition(self) -> SetComposition:
        g = self.ground
        return SetComposition(g, tuple(1 << g.index(lab) for lab in self.word))

    def __str__(self) -> str:
        return "|".join(self.word)


def linear_orders(ground: GroundSet) -> Iterator[LinearOrder]:
    import itertools

    for word in itertools.permutations(ground.labels):
        yield LinearOrder(ground, word)


def descent_set(l0: LinearOrder, l: LinearOrder) -> frozenset[int]:
    """Positions i with rank_{l0}(l[i]) > rank_{l0}(l[i+1]), 1-based."""
    if l0.ground != l.ground:
        raise ValueError("linear orders live on different ground sets")
    ranks = [l0.rank(lab) for lab in l.word]
    return frozenset(i + 1 for i in range(len(ranks) - 1) if ranks[i] > ranks[i + 1])


def peak_set(l0: LinearOrder, l: LinearOrder) -> frozenset[int]:
    """Positions i (2 <= i <= n-1) where the rank word of l rises then falls."""
    if l0.ground != l.ground:
        raise ValueError("linear orders live on different ground sets")
    ranks = [l0.rank(lab) for lab in l.word]
    return frozenset(
        i + 1
        for i in range(1, len(ranks) - 1)
        if ranks[i - 1] < ranks[i] > ranks[i + 1]
    )


def lambda_map(j: Iterable[int]) -> frozenset[int]:
    """Λ(J) = {i in J : i >= 2 and i-1 not in J}; always a valid peak set."""
    js = frozenset(j)
    return frozenset(i for i in js if i >= 2 and i - 1 not in js)


def is_peak_set(s: Iterable[int], n: int) -> bool:
    ss = sorted(s)
    if any(i < 2 or i > n - 1 for i in ss):
        return False
    return all(b - a >= 2 for a, b in zip(ss, ss[1:]))


def cd_degree(monomial: str) -> int:
    deg = 0
    for ch in monomial:
        if ch == "c":
            deg += 1
        elif ch == "d":
            deg += 2
        else:
            raise ValueError(f"not a cd-monomial: {monomial!r}")
    return deg


def cd_monomials(degree: int) -> Iterator[str]:
    """All words in c (degree 1) and d (degree 2) of the given total degree."""
    if degree == 0:
        yield ""
        return
    for rest in cd_monomials(degree - 1):
        yield "c" + rest
    if degree >= 2:
        for rest in cd_monomials(degree - 2):
            yield "d" + rest


def cd_monomial_peakset(monomial: str, n: int) -> frozenset[int]:
    """Degrees of the initial segments of the monomial that end in d."""
    if cd_degree(monomial) != n - 1:
        raise DegreeMismatch(f"cd-monomial {monomial!r} does not have degree {n - 1}")
    out = []
    deg = 0
    for ch in monomial:
        deg += 1 if ch == "c" else 2
        if ch == "d":
            out.append(deg)
    return frozenset(out)


def peakset_cd_monomial(s: Iterable[int], n: int) -> str:
    """Inverse of cd_monomial_peakset on valid peak sets of [n]."""
    ss = sorted(s)
    if not is_peak_set(ss, n):
        raise DegreeMismatch(f"{sorted(s)} is not a peak set for n = {n}")
    word = []
    prev = 0
    for si in ss:
        word.append("c" * (si - prev - 2) + "d")
        prev = si
    word.append("c" * (n - 1 - prev))
    return "".join(word)
