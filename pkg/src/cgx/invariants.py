"""Polynomial invariants, brute-force function-counting oracles, flag f- and
h-vectors, and the ab- and cd-indices.

Polynomial invariants are extracted with a transfer matrix over closed sets
(multichains weighted by the character on consecutive minors), interpolated
exactly with Newton forward differences, and revalidated at one extra point.
All arithmetic is exact: integers and fractions.Fraction throughout.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .characters import Character
from .closure import ClosureOperator
from .errors import (
    CodomainTooLarge,
    InterpolationMismatch,
    NotAFlag,
    NotInCdSpan,
)
from .ground import (
    GroundSet,
    IntegerComposition,
    Mask,
    SetComposition,
    bits,
    cd_monomials,
    coarsens,
    composition_type,
    integer_compositions,
    set_compositions,
    submasks,
)

FUNCTION_SPACE_GUARD = 10**8

FUNCTION_CLASSES = (
    "extremal",
    "strictly_extremal",
    "convex",
    "strictly_convex",
    "enriched_convex",
    "enriched_extremal",
)


@dataclass(frozen=True)
class RationalPolynomial:
    """A one-variable polynomial with exact rational coefficients, ascending."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        cs = [Fraction(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def from_values(cls, values: Sequence[int | Fraction]) -> "RationalPolynomial":
        """Interpolate exactly from values at x = 0, 1, ..., len(values)-1."""
        diffs = [Fraction(v) for v in values]
        deltas = []
        while diffs:
            deltas.append(diffs[0])
            diffs = [b - a for a, b in zip(diffs, diffs[1:])]
        coeffs = [Fraction(0)] * len(deltas)
        basis = [Fraction(1)]  # binomial(x, k), built iteratively
        for k, delta in enumerate(deltas):
            if k > 0:
                shifted = [Fraction(0)] + basis
                basis = [
                    (shifted[i] - Fraction(k - 1) * (basis[i] if i < len(basis) else 0))
                    / k
                    for i in range(len(shifted))
                ]
            for i, b in enumerate(basis):
                coeffs[i] += delta * b
        return cls(tuple(coeffs))

    def evaluate(self, x: int | Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = str(abs(c))
            term = mag if k == 0 else (f"{mag}*n" if k == 1 else f"{mag}*n^{k}")
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)


def eval_poly(poly: RationalPolynomial, x: int | Fraction) -> Fraction:
    """Exact Horner evaluation, negative arguments included."""
    return poly.evaluate(x)


@lru_cache(maxsize=None)
def poly_invariant(psi: Character, cl: ClosureOperator) -> RationalPolynomial:
    """chi^psi of the operator, via transfer-matrix powers and interpolation.

    M is indexed by closed sets with M[A][B] = psi(minor A:B) for A contained
    in B; chi(n) = (M^n)[empty][full].  Values at n = 0..|I| determine the
    polynomial (degree is at most |I|); the value at |I|+1 is checked against
    the interpolant.
    """
    closed = cl.closed
    index = {k: i for i, k in enumerate(closed)}
    rows: list[list[tuple[int, int]]] = []
    for a in closed:
        row = []
        for b in closed:
            if a & ~b == 0:
                w = psi.eval(cl.minor(a, b))
                if w:
                    row.append((index[b], w))
        rows.append(row)
    degree = cl.n
    start = index[0]
    top = index[cl.full_mask]
    vec = [0] * len(closed)
    vec[start] = 1
    values = [vec[top]]
    for _ in range(degree + 1):
        new = [0] * len(closed)
        for i, vi in enumerate(vec):
            if vi:
                for j, w in rows[i]:
                    new[j] += vi * w
        vec = new
        values.append(vec[top])
    poly = RationalPolynomial.from_values(values[: degree + 1])
    if poly.evaluate(degree + 1) != values[degree + 1]:
        raise InterpolationMismatch(
            f"chi^{psi.name} of {cl} is not polynomial of degree {degree}"
        )
    return poly


# ---------------------------------------------------------------------------
# Brute-force function counting.
#
# Enriched codomain [[n]] = {1bar < 1 < 2bar < 2 < ... < nbar < n} is encoded
# as integer codes 0..2n-1 (code 2(i-1) is i-bar, code 2i-1 is i), so integer
# order equals the enriched order.  Signed output form: i-bar -> -i, i -> +i.


def _signed(code: int) -> int:
    i = code // 2 + 1
    return -i if code % 2 == 0 else i


def _closed_ex_tables(cl: ClosureOperator):
    closed_nonempty = [k for k in cl.closed if k]
    ex = [cl.extreme_points(k) for k in closed_nonempty]
    return closed_nonempty, ex


def enumerate_functions(cl: ClosureOperator, n: int, clazz: str,
                        force: bool = False) -> Iterator[tuple[int, ...]]:
    """Yield the functions of the given class, encoded per position.

    Plain classes yield tuples over 1..n; enriched classes yield signed
    tuples (negative = barred).  Positions follow the ground label order.
    """
    if clazz not in FUNCTION_CLASSES:
        raise ValueError(f"unknown function class {clazz!r}")
    if n < 1:
        raise ValueError("codomain size must be positive")
    size = cl.n
    enriched = clazz.startswith("enriched")
    base = 2 * n if enriched else n
    if base**size > FUNCTION_SPACE_GUARD and not force:
        raise CodomainTooLarge(f"{base}^{size} functions exceed the guard")

    closed_nonempty, ex_list = _closed_ex_tables(cl)
    close = cl.close
    closed_set = cl.closed_set
    positions = range(size)
    full = cl.full_mask

    def preimage_leq(f, bound) -> Mask:
        m = 0
        for i in positions:
            if f[i] <= bound:
                m |= 1 << i
        return m

    if clazz in ("extremal", "strictly_extremal"):
        strict = clazz == "strictly_extremal"
        for f in itertools.product(range(1, n + 1), repeat=size):
            ok = True
            for k, exk in zip(closed_nonempty, ex_list):
                fmax = max(f[i] for i in bits(k))
                argmax = 0
                for i in bits(k):
                    if f[i] == fmax:
                        argmax |= 1 << i
                if strict:
                    if argmax & ~exk:
                        ok = False
                        break
                elif not argmax & exk:
                    ok = False
                    break
            if ok:
                yield f
        return

    if clazz in ("convex", "strictly_convex"):
        strict = clazz == "strictly_convex"
        for f in itertools.product(range(1, n + 1), repeat=size):
            levels = [preimage_leq(f, t) for t in range(n + 1)]
            if any(lv not in closed_set for lv in levels):
                continue
            if strict:
                # every consecutive minor between level sets must be discrete
                good = True
                for t in range(1, n + 1):
                    lo, hi = levels[t - 1], levels[t]
                    for b in submasks(hi & ~lo):
                        if close(lo | b) != lo | b:
                            good = False
                            break
                    if not good:
                        break
                if not good:
                    continue
            yield f
        return

    if clazz == "enriched_convex":
        for f in itertools.product(range(2 * n), repeat=size):
            levels = [preimage_leq(f, t) for t in range(-1, 2 * n)]
            if any(lv not in closed_set for lv in levels):
                continue
            ok = True
            for i in range(1, n + 1):
                prev = levels[2 * (i - 1)]
                barred = levels[2 * i - 1] & ~prev
                for b in submasks(barred):
                    if close(prev | b) != prev | b:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                yield tuple(_signed(c) for c in f)
        return

    # enriched_extremal
    for f in itertools.product(range(2 * n), repeat=size):
        ok = True
        for k, exk in zip(closed_nonempty, ex_list):
            fmin = min(f[i] for i in bits(k))
            argmin = 0
            for i in bits(k):
                if f[i] == fmin:
                    argmin |= 1 << i
            if not argmin & exk:
                ok = False
                break
        if ok:
            for a in positions:
                if f[a] % 2 == 0:  # barred value
                    level = 0
                    for b in positions:
                        if f[b] >= f[a]:
                            level |= 1 << b
                    if (close(level & ~(1 << a)) >> a) & 1:
                        ok = False
                        break
        if ok:
            yield tuple(_signed(c) for c in f)


def count_functions(cl: ClosureOperator, n: int, clazz: str, force: bool = False) -> int:
    """Exhaustive count of the functions of the given class, per definition."""
    return sum(1 for _ in enumerate_functions(cl, n, clazz, force=force))


# ---------------------------------------------------------------------------
# Flag vectors and noncommutative indices.


@dataclass
class FlagVector:
    """Composition-indexed coefficients; by_composition is None for h-vectors."""

    n: int
    by_type: dict[IntegerComposition, int]
    by_composition: dict[SetComposition, int] | None = None

    def type_coefficient(self, parts: Iterable[int]) -> int:
        return self.by_type.get(IntegerComposition(tuple(parts)), 0)


def flag_f(psi: Character, cl: ClosureOperator) -> FlagVector:
    """f^psi: per set composition, the product of psi over consecutive minors
    when every prefix union is closed, else 0; aggregated by type."""
    by_comp: dict[SetComposition, int] = {}
    by_type: dict[IntegerComposition, int] = {
        alpha: 0 for alpha in integer_compositions(cl.n)
    }
    for comp in set_compositions(cl.ground):
        prefixes = comp.prefixes()
        value = 0
        if all(cl.is_closed(p) for p in prefixes):
            value = 1
            for lo, hi in zip(prefixes, prefixes[1:]):
                value *= psi.eval(cl.minor(lo, hi))
                if value == 0:
                    break
        by_comp[comp] = value
        alpha = composition_type(comp)
        by_type[alpha] = by_type.get(alpha, 0) + value
    return FlagVector(cl.n, by_type, by_comp)


def flag_h(f: FlagVector) -> FlagVector:
    """Moebius transform h_alpha = sum over coarsenings beta of alpha of
    (-1)^(len(alpha)-len(beta)) f_beta."""
    all_alpha = list(integer_compositions(f.n))
    by_type: dict[IntegerComposition, int] = {}
    for alpha in all_alpha:
        acc = 0
        for beta in all_alpha:
            if coarsens(beta, alpha):
                sign = -1 if (len(alpha) - len(beta)) % 2 else 1
                acc += sign * f.by_type.get(beta, 0)
        by_type[alpha] = acc
    return FlagVector(f.n, by_type)


def flag_f_from_h(h: FlagVector) -> FlagVector:
    """Inverse relation f_alpha = sum over coarsenings beta of h_beta."""
    all_alpha = list(integer_compositions(h.n))
    by_type = {
        alpha: sum(h.by_type.get(beta, 0) for beta in all_alpha if coarsens(beta, alpha))
        for alpha in all_alpha
    }
    return FlagVector(h.n, by_type)


def _normalize_terms(terms: Iterable[tuple[str, int]]) -> tuple[tuple[str, int], ...]:
    merged: dict[str, int] = {}
    for word, coeff in terms:
        merged[word] = merged.get(word, 0) + coeff
    return tuple(sorted((w, c) for w, c in merged.items() if c != 0))


@dataclass(frozen=True)
class AbPolynomial:
    """Homogeneous polynomial in noncommuting a, b; words have length n-1."""

    n: int
    terms: tuple[tuple[str, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", _normalize_terms(self.terms))
        for word, _ in self.terms:
            if len(word) != max(self.n - 1, 0) or set(word) - {"a", "b"}:
                raise ValueError(f"bad ab-word {word!r} for n = {self.n}")

    def coefficient(self, word: str) -> int:
        for w, c in self.terms:
            if w == word:
                return c
        return 0

    def as_dict(self) -> dict[str, int]:
        return dict(self.terms)

    def __str__(self) -> str:
        return format_word_polynomial(self.terms, unit="1")


@dataclass(frozen=True)
class CdPolynomial:
    """Homogeneous polynomial in noncommuting c (degree 1) and d (degree 2)."""

    n: int
    terms: tuple[tuple[str, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", _normalize_terms(self.terms))
        for word, _ in self.terms:
            deg = sum(1 if ch == "c" else 2 for ch in word)
            if deg != max(self.n - 1, 0) or set(word) - {"c", "d"}:
                raise ValueError(f"bad cd-word {word!r} for n = {self.n}")

    def coefficient(self, word: str) -> int:
        for w, c in self.terms:
            if w == word:
                return c
        return 0

    def as_dict(self) -> dict[str, int]:
        return dict(self.terms)

    def expand(self) -> AbPolynomial:
        """Substitute c = a+b, d = ab+ba and collect ab-words."""
        out: dict[str, int] = {}
        for word, coeff in self.terms:
            for ab_word, mult in _expand_cd_word(word).items():
                out[ab_word] = out.get(ab_word, 0) + coeff * mult
        return AbPolynomial(self.n, tuple(out.items()))

    def __str__(self) -> str:
        return format_word_polynomial(self.terms, unit="1")


def format_word_polynomial(terms: Sequence[tuple[str, int]], unit: str = "1") -> str:
    """Render as in 8*c^3 + 8*c*d + 24*d*c, with run-length powers."""
    if not terms:
        return "0"
    rendered = []
    for word, coeff in terms:
        factors = []
        for ch, grp in itertools.groupby(word):
            k = len(list(grp))
            factors.append(ch if k == 1 else f"{ch}^{k}")
        body = "*".join(factors) if factors else unit
        mag = abs(coeff)
        lead = body if mag == 1 and factors else (f"{mag}*{body}" if factors else str(mag))
        rendered.append((coeff < 0, lead))
    parts = []
    for i, (neg, lead) in enumerate(rendered):
        if i == 0:
            parts.append(f"-{lead}" if neg else lead)
        else:
            parts.append(f"- {lead}" if neg else f"+ {lead}")
    return " ".join(parts)


def ab_index(h: FlagVector) -> AbPolynomial:
    """Psi = sum over alpha of h_alpha times the word with b at the partial sums."""
    length = max(h.n - 1, 0)
    terms = []
    for alpha, coeff in h.by_type.items():
        if coeff == 0:
            continue
        positions = alpha.b_positions()
        word = "".join("b" if i in positions else "a" for i in range(1, length + 1))
        terms.append((word, coeff))
    return AbPolynomial(h.n, tuple(terms))


@lru_cache(maxsize=None)
def _expand_cd_word(word: str) -> dict[str, int]:
    out = {"": 1}
    for ch in word:
        pieces = ("a", "b") if ch == "c" else ("ab", "ba")
        out = {w + p: c for w, c in out.items() for p in pieces}
    return out


def cd_index(ab: AbPolynomial) -> CdPolynomial:
    """Exact linear solve for the cd-expansion; raises NotInCdSpan otherwise.

    The candidate coefficients come from Gaussian elimination over the full
    cd-monomial basis; the residual ab-polynomial is recomputed directly and
    must vanish, which certifies the result.
    """
    degree = max(ab.n - 1, 0)
    monos = list(cd_monomials(degree))
    columns = [_expand_cd_word(m) for m in monos]
    target = ab.as_dict()
    words = sorted(set(itertools.chain(target, *columns)))
    rows = [
        [Fraction(col.get(w, 0)) for col in columns] + [Fraction(target.get(w, 0))]
        for w in words
    ]
    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(len(monos)):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                factor = rows[i][c]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[r])]
        pivots.append((r, c))
        r += 1
    solution = {m: Fraction(0) for m in monos}
    for rr, cc in pivots:
        solution[monos[cc]] = rows[rr][-1]
    residual = dict(target)
    for m, coeff in solution.items():
        if coeff == 0:
            continue
        for w, mult in _expand_cd_word(m).items():
            residual[w] = residual.get(w, 0) - coeff * mult
    residual = {w: c for w, c in residual.items() if c != 0}
    if residual:
        raise NotInCdSpan(residual)
    terms = []
    for m, coeff in solution.items():
        if coeff != 0:
            if coeff.denominator != 1:
                raise NotInCdSpan({m: coeff})
            terms.append((m, int(coeff)))
    return CdPolynomial(ab.n, tuple(terms))


# ---------------------------------------------------------------------------
# Flag geometry helpers.


def interior_membership(cl: ClosureOperator, comp: SetComposition) -> bool:
    """True iff every prefix union is closed and every consecutive minor is
    discrete; this is membership of the composition in int(V)."""
    prefixes = comp.prefixes()
    if not all(cl.is_closed(p) for p in prefixes):
        return False
    for lo, hi in zip(prefixes, prefixes[1:]):
        span = hi & ~lo
        between = sum(1 for k in cl.closed if k & lo == lo and k & ~hi == 0)
        if between != 1 << span.bit_count():
            return False
    return True


def ex_vector(cl: ClosureOperator, comp: SetComposition) -> tuple[tuple[Mask, ...], int]:
    """Extreme points of each consecutive minor (in ground coordinates) and
    their total count."""
    prefixes = comp.prefixes()
    if not all(cl.is_closed(p) for p in prefixes):
        raise NotAFlag(f"{comp} is not a flag of closed sets")
    entries = []
    total = 0
    for lo, hi in zip(prefixes, prefixes[1:]):
        minor = cl.minor(lo, hi)
        ex_sub = minor.extreme_points(minor.full_mask)
        ex_parent = cl.ground.mask_of(minor.ground.labels_of(ex_sub))
        entries.append(ex_parent)
        total += ex_parent.bit_count()
    return tuple(entries), total
