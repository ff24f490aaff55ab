"""Supersolvability of convex geometries and closure operators.

Two independent routes are implemented and compared: the geometric route
(maximal convex subposets and an acyclic join of their relations) and the
lattice route (chief chains of the closed-set lattice).  The descent and
peak theorems for the ab- and cd-indices of supersolvable geometries are
verified against the enumerated chambers.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from .characters import ETA, PHI, PHI_PRIME, ZETA, Character
from .closure import ConvexGeometry
from .errors import NotSupersolvable
from .ground import (
    GroundSet,
    LinearOrder,
    Mask,
    cd_monomials,
    cd_monomial_peakset,
    descent_set,
    peak_set,
)
from .invariants import ab_index, cd_index, flag_f, flag_h
from .lattice import Chain, ClosedSetLattice, chief_chains
from .posets import Cyclic, Poset, acyclic_join, enumerate_posets, ideals, linear_extensions


@lru_cache(maxsize=None)
def _posets_with_ideals(ground: GroundSet) -> tuple[tuple[Poset, frozenset[Mask]], ...]:
    return tuple((p, frozenset(ideals(p))) for p in enumerate_posets(ground))


def maximal_convex_subposets(g: ConvexGeometry) -> tuple[Poset, ...]:
    """Posets whose order ideals are all closed, minimal in relations.

    Their top-cones are the maximal convex cones inside the order complex of
    the geometry.  Exhaustive over labeled posets, so guarded by the poset
    enumeration bound.
    """
    kept = [
        p
        for p, idl in _posets_with_ideals(g.ground)
        if idl <= g.closed_set
    ]
    return tuple(
        p
        for p in kept
        if not any(q.relation_pairs < p.relation_pairs for q in kept)
    )


def supersolvable_geometric(g: ConvexGeometry) -> Optional[Poset]:
    """The poset whose top-cone is the intersection of all maximal convex
    cones, when that intersection contains a chamber; None otherwise."""
    join = acyclic_join(maximal_convex_subposets(g))
    return None if isinstance(join, Cyclic) else join


@dataclass(frozen=True)
class SupersolvabilityReport:
    maximal_posets: tuple[Poset, ...]
    p0: Optional[Poset]
    supersolvable: bool
    chief: tuple[Chain, ...]
    method_agreement: bool


def analyze(g: ConvexGeometry) -> SupersolvabilityReport:
    """Run both supersolvability routes and record their agreement."""
    maximal = maximal_convex_subposets(g)
    join = acyclic_join(maximal)
    p0 = None if isinstance(join, Cyclic) else join
    chains = chief_chains(ClosedSetLattice(g))
    return SupersolvabilityReport(
        maximal_posets=maximal,
        p0=p0,
        supersolvable=p0 is not None,
        chief=chains,
        method_agreement=(p0 is not None) == bool(chains),
    )


def chain_to_order(ground: GroundSet, chain: Sequence[Mask]) -> LinearOrder:
    """A maximal chain with singleton steps, read off as a linear order."""
    word = []
    for lo, hi in zip(chain, chain[1:]):
        step = hi & ~lo
        if step.bit_count() != 1:
            raise ValueError("chain step is not a single element")
        word.append(ground.labels[step.bit_length() - 1])
    return LinearOrder(ground, tuple(word))


def chambers(g: ConvexGeometry) -> tuple[LinearOrder, ...]:
    """Maximal chains of the closed-set lattice as linear orders."""
    lattice = ClosedSetLattice(g)
    return tuple(chain_to_order(g.ground, c) for c in lattice.maximal_chains)


def valid_base_orders(p0: Poset, psi: Character) -> tuple[LinearOrder, ...]:
    """Base orders admitted by the theorems: linear extensions of the join
    poset for eta and phi, their reverses for zeta and phi-prime."""
    exts = linear_extensions(p0)
    if psi.name in ("eta", "phi"):
        return exts
    if psi.name in ("zeta", "phi-prime"):
        return tuple(l.reversed_order() for l in exts)
    raise ValueError(f"no descent/peak statement for character {psi.name!r}")


@dataclass(frozen=True)
class TheoremEntry:
    positions: frozenset[int]
    monomial: str
    coefficient: int
    chamber_count: int
    expected: int
    chambers: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return self.coefficient == self.expected


@dataclass(frozen=True)
class IndexTheoremReport:
    character: str
    base_order: str
    entries: tuple[TheoremEntry, ...]

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.entries)


def _require_p0(g: ConvexGeometry) -> Poset:
    p0 = supersolvable_geometric(g)
    if p0 is None:
        raise NotSupersolvable("geometry has no chamber in the cone intersection")
    return p0


def verify_descent_theorem(g: ConvexGeometry, psi: Character,
                           base_order: LinearOrder | None = None) -> IndexTheoremReport:
    """Compare ab-index coefficients of eta or zeta with descent-class counts."""
    if psi.name not in ("eta", "zeta"):
        raise ValueError("descent theorem applies to eta and zeta")
    if g.n < 1:
        raise ValueError("need a nonempty ground set")
    p0 = _require_p0(g)
    l0 = base_order if base_order is not None else valid_base_orders(p0, psi)[0]
    ab = ab_index(flag_h(flag_f(psi, g)))
    by_class: dict[frozenset[int], list[LinearOrder]] = {}
    for ell in chambers(g):
        by_class.setdefault(descent_set(l0, ell), []).append(ell)
    entries = []
    length = g.n - 1
    for bitsel in range(1 << length):
        positions = frozenset(i + 1 for i in range(length) if (bitsel >> i) & 1)
        word = "".join("b" if i + 1 in positions else "a" for i in range(length))
        members = by_class.get(positions, [])
        entries.append(
            TheoremEntry(
                positions=positions,
                monomial=word,
                coefficient=ab.coefficient(word),
                chamber_count=len(members),
                expected=len(members),
                chambers=tuple(sorted(str(l) for l in members)),
            )
        )
    return IndexTheoremReport(psi.name, str(l0), tuple(entries))


def verify_peak_theorem(g: ConvexGeometry, psi: Character,
                        base_order: LinearOrder | None = None) -> IndexTheoremReport:
    """Compare cd-index coefficients of phi or phi-prime with peak classes,
    scaled by 2^(|S|+1)."""
    if psi.name not in ("phi", "phi-prime"):
        raise ValueError("peak theorem applies to phi and phi-prime")
    if g.n < 1:
        raise ValueError("need a nonempty ground set")
    p0 = _require_p0(g)
    l0 = base_order if base_order is not None else valid_base_orders(p0, psi)[0]
    cd = cd_index(ab_index(flag_h(flag_f(psi, g))))
    by_class: dict[frozenset[int], list[LinearOrder]] = {}
    for ell in chambers(g):
        by_class.setdefault(peak_set(l0, ell), []).append(ell)
    entries = []
    for mono in cd_monomials(g.n - 1):
        positions = cd_monomial_peakset(mono, g.n)
        members = by_class.get(positions, [])
        entries.append(
            TheoremEntry(
                positions=positions,
                monomial=mono,
                coefficient=cd.coefficient(mono),
                chamber_count=len(members),
                expected=(1 << (len(positions) + 1)) * len(members),
                chambers=tuple(sorted(str(l) for l in members)),
            )
        )
    return IndexTheoremReport(psi.name, str(l0), tuple(entries))
