"""Geometry files and generators.

The file format is JSON: {"ground": [labels...], "closed": [[labels...]...],
"meta": {...}?}.  Serialization is canonical (labels sorted, subsets sorted
by size then labels), so canonical files round-trip byte-identically.
"""

from __future__ import annotations

import json
import warnings
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .closure import ClosureOperator, ConvexGeometry, validate
from .errors import DuplicatePoints, ParseError
from .ground import GroundSet, Mask
from .posets import chain as chain_poset
from .posets import antichain as antichain_poset
from .posets import from_relations, to_convex_geometry

ALPHABET = "abcdefghijklmnopqrstuvwxyz"

Point = tuple[Fraction, Fraction]


def parse_geometry(data: bytes | str) -> ClosureOperator:
    """Parse and validate a GeometryFile; duplicates are dropped with a warning."""
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from exc
    if not isinstance(doc, dict):
        raise ParseError("geometry file must be a JSON object")
    if "ground" not in doc or "closed" not in doc:
        raise ParseError('geometry file needs "ground" and "closed" keys')
    labels = doc["ground"]
    if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
        raise ParseError('"ground" must be a list of strings')
    if len(set(labels)) != len(labels):
        raise ParseError("ground labels must be distinct")
    ground = GroundSet(tuple(labels))
    closed_lists = doc["closed"]
    if not isinstance(closed_lists, list) or not all(
        isinstance(s, list) and all(isinstance(x, str) for x in s) for s in closed_lists
    ):
        raise ParseError('"closed" must be a list of lists of labels')
    masks = []
    for subset in closed_lists:
        unknown = set(subset) - set(labels)
        if unknown:
            raise ParseError(f"closed set uses unknown labels {sorted(unknown)}")
        masks.append(ground.mask_of(subset))
    if len(set(masks)) != len(masks):
        warnings.warn("duplicate closed sets in geometry file; deduplicated")
    return validate(ground, masks)


def load_geometry(path) -> ClosureOperator:
    with open(path, "rb") as fh:
        return parse_geometry(fh.read())


def geometry_document(cl: ClosureOperator, meta: dict | None = None) -> dict:
    closed = sorted(
        (list(cl.ground.labels_of(k)) for k in cl.closed),
        key=lambda s: (len(s), s),
    )
    doc: dict = {"ground": list(cl.ground.labels), "closed": closed}
    if meta:
        doc["meta"] = meta
    return doc


def serialize_geometry(cl: ClosureOperator, meta: dict | None = None) -> str:
    return json.dumps(geometry_document(cl, meta), indent=2) + "\n"


def save_geometry(path, cl: ClosureOperator, meta: dict | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_geometry(cl, meta))


def default_labels(count: int) -> tuple[str, ...]:
    if count <= len(ALPHABET):
        return tuple(ALPHABET[:count])
    return tuple(f"e{i}" for i in range(1, count + 1))


def parse_edges(text: str) -> tuple[tuple[str, str], ...]:
    """Edge list of the form "x<y,x<z"."""
    edges = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if "<" not in item:
            raise ParseError(f"bad relation {item!r}; expected a<b")
        a, b = (part.strip() for part in item.split("<", 1))
        if not a or not b:
            raise ParseError(f"bad relation {item!r}; expected a<b")
        edges.append((a, b))
    return tuple(edges)


def parse_points(text: str) -> tuple[Point, ...]:
    """Point list of the form "0/1,0/1;1/1,0/1" with rational coordinates."""
    points = []
    for item in text.split(";"):
        item = item.strip()
        if not item:
            continue
        parts = item.split(",")
        if len(parts) != 2:
            raise ParseError(f"bad point {item!r}; expected x,y")
        try:
            points.append((Fraction(parts[0].strip()), Fraction(parts[1].strip())))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad coordinate in {item!r}: {exc}") from exc
    return tuple(points)


def _orient(p: Point, q: Point, r: Point) -> Fraction:
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])


def _on_segment(q: Point, a: Point, b: Point) -> bool:
    if _orient(a, b, q) != 0:
        return False
    return (
        min(a[0], b[0]) <= q[0] <= max(a[0], b[0])
        and min(a[1], b[1]) <= q[1] <= max(a[1], b[1])
    )


def _in_triangle(q: Point, a: Point, b: Point, c: Point) -> bool:
    if _orient(a, b, c) == 0:
        return _on_segment(q, a, b) or _on_segment(q, b, c) or _on_segment(q, a, c)
    s1 = _orient(a, b, q)
    s2 = _orient(b, c, q)
    s3 = _orient(c, a, q)
    return (s1 >= 0 and s2 >= 0 and s3 >= 0) or (s1 <= 0 and s2 <= 0 and s3 <= 0)


def point_in_hull(q: Point, pts: Sequence[Point]) -> bool:
    """Exact rational membership of q in conv(pts), via Caratheodory in 2D."""
    if q in pts:
        return True
    if len(pts) >= 2 and any(
        _on_segment(q, a, b) for a, b in combinations(pts, 2)
    ):
        return True
    return any(_in_triangle(q, a, b, c) for a, b, c in combinations(pts, 3))


def points2d_geometry(points: Sequence[Point],
                      labels: Sequence[str] | None = None) -> ConvexGeometry:
    """Closed sets are the point subsets whose convex hull traps no other point."""
    pts = [(Fraction(x), Fraction(y)) for x, y in points]
    if len(set(pts)) != len(pts):
        raise DuplicatePoints("points must be distinct")
    labs = tuple(labels) if labels is not None else default_labels(len(pts))
    if len(labs) != len(pts):
        raise ValueError("label count does not match point count")
    ground = GroundSet(labs)
    by_pos = {ground.index(lab): pt for lab, pt in zip(labs, pts)}
    family: list[Mask] = []
    for mask in range(1 << ground.n):
        inside = [by_pos[i] for i in range(ground.n) if (mask >> i) & 1]
        outside = [by_pos[i] for i in range(ground.n) if not (mask >> i) & 1]
        if not any(point_in_hull(q, inside) for q in outside):
            family.append(mask)
    return ConvexGeometry(ground, tuple(family))


def generate(kind: str, *, labels: Sequence[str] | None = None,
             edges: Iterable[tuple[str, str]] | None = None,
             n: int | None = None,
             points: Sequence[Point] | None = None) -> ConvexGeometry:
    """Build a geometry: from_poset, chain, antichain, or points2d."""
    if kind == "points2d":
        if points is None:
            raise ValueError("points2d needs points")
        return points2d_geometry(points, labels)
    if kind == "from_poset":
        if labels is None:
            raise ValueError("from_poset needs labels")
        ground = GroundSet(tuple(labels))
        return to_convex_geometry(from_relations(ground, tuple(edges or ())))
    if kind in ("chain", "antichain"):
        if labels is None:
            if n is None:
                raise ValueError(f"{kind} needs labels or n")
            labels = default_labels(n)
        ground = GroundSet(tuple(labels))
        if kind == "antichain":
            return to_convex_geometry(antichain_poset(ground))
        return to_convex_geometry(chain_poset(ground, tuple(labels)))
    raise ValueError(f"unknown generator kind {kind!r}")
