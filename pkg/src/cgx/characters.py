"""The four canonical characters and their convolution algebra.

Characters are closed evaluation rules on closure operators.  The canonical
ones: eta is constantly 1, zeta indicates discreteness, phi counts totally
convex sets, and phi-prime is 2 to the number of extreme points.  Convolution
inverses are never computed symbolically; the closed forms are definitions
and the inverse identities are verified by the test suite on the corpus.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .closure import ClosureOperator
from .errors import GroundTooLarge
from .ground import Mask

TAKEUCHI_GUARD = 8


@dataclass(frozen=True)
class Character:
    """A unital scalar evaluation rule on closure operators."""

    name: str
    rule: Callable[[ClosureOperator], int] = field(compare=False)

    def eval(self, cl: ClosureOperator) -> int:
        return self.rule(cl)

    def __str__(self) -> str:
        return self.name


ETA = Character("eta", lambda cl: 1)
ZETA = Character("zeta", lambda cl: 1 if cl.is_discrete() else 0)
PHI = Character("phi", lambda cl: len(cl.totally_convex_sets()))
PHI_PRIME = Character(
    "phi-prime", lambda cl: 1 << cl.extreme_points(cl.full_mask).bit_count()
)

CANONICAL = (ETA, ZETA, PHI, PHI_PRIME)


def by_name(name: str) -> Character:
    key = name.replace("_", "-")
    for psi in CANONICAL:
        if psi.name == key:
            return psi
    raise KeyError(f"unknown character {name!r}")


def convolve(psi1: Character, psi2: Character) -> Character:
    """(psi1 * psi2)(cl) = sum over closed S of psi1(cl|_S) psi2(cl/_S)."""

    def rule(cl: ClosureOperator) -> int:
        total = 0
        for s in cl.closed:
            left = psi1.eval(cl.restriction(s))
            if left:
                total += left * psi2.eval(cl.contraction(s))
        return total

    return Character(f"({psi1.name}*{psi2.name})", rule)


def bar(psi: Character) -> Character:
    """Sign twist: evaluates to (-1)^|ground| times psi."""

    def rule(cl: ClosureOperator) -> int:
        v = psi.eval(cl)
        return -v if cl.n & 1 else v

    return Character(f"bar({psi.name})", rule)


UNIT = Character("unit", lambda cl: 1 if cl.n == 0 else 0)


def antipode_eval(psi: Character, cl: ClosureOperator, guard: int = TAKEUCHI_GUARD,
                  force: bool = False) -> int:
    """Takeuchi sum: alternating sum over strict flags of closed sets.

    Only set compositions whose prefix unions are closed contribute (the
    coproduct vanishes otherwise), so the sum runs over strictly increasing
    chains of closed sets from the empty set to the full set.
    """
    if cl.n > guard and not force:
        raise GroundTooLarge(f"Takeuchi evaluation guarded at n <= {guard}")
    above: dict[Mask, list[Mask]] = {k: [] for k in cl.closed}
    for k in cl.closed:
        for m in cl.closed:
            if m != k and m & k == k:
                above[k].append(m)

    def rec(current: Mask, length: int, product: int) -> int:
        if current == cl.full_mask:
            return product if length % 2 == 0 else -product
        total = 0
        for nxt in above[current]:
            w = psi.eval(cl.minor(current, nxt))
            if w:
                total += rec(nxt, length + 1, product * w)
        return total

    return rec(0, 0, 1)


def is_odd_on(psi: Character, corpus: Iterable[ClosureOperator]) -> bool:
    """True iff psi * bar(psi) is the unit character on every corpus member."""
    conv = convolve(psi, bar(psi))
    return all(conv.eval(cl) == UNIT.eval(cl) for cl in corpus)
