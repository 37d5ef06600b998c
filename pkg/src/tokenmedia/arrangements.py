"""Regions of finite line arrangements in the plane, with exact rationals.

Every comparison is exact: region enumeration flood-fills sign vectors from
a seeded generic point, validating each single-sign flip by Fourier-Motzkin
elimination of the strict inequality system.  Region adjacency additionally
checks the shared-facet condition on the separating line itself.  The token
system of regions under line crossings is always a medium; mosaic windows
provide finite stand-ins for the classical locally finite families.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .cubes import LabeledGraph
from .errors import InputError, ParseError
from .families import SetFamily, set_name
from .tokens import TokenSystem

MOSAIC_KINDS = ("triangular", "truncated-square")


@dataclass(frozen=True)
class Line:
    """The line a*x + b*y + c = 0 with rational coefficients; (a, b) != 0."""

    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        if self.a == 0 and self.b == 0:
            raise InputError("a line needs a nonzero normal vector")

    def evaluate(self, x: Fraction, y: Fraction) -> Fraction:
        return self.a * x + self.b * y + self.c

    def projective_key(self) -> tuple[Fraction, Fraction, Fraction]:
        lead = self.a if self.a != 0 else self.b
        return (self.a / lead, self.b / lead, self.c / lead)

    @classmethod
    def of(cls, a, b, c) -> "Line":
        return cls(Fraction(a), Fraction(b), Fraction(c))


@dataclass(frozen=True)
class Arrangement:
    lines: tuple[Line, ...]

    def __post_init__(self):
        if not self.lines:
            raise InputError("an arrangement needs at least one line")
        keys = [l.projective_key() for l in self.lines]
        if len(set(keys)) != len(keys):
            raise InputError("duplicate lines (projectively equal triples)")

    def to_json_dict(self) -> dict:
        return {"lines": [{"a": str(l.a), "b": str(l.b), "c": str(l.c)} for l in self.lines]}

    @classmethod
    def from_json_dict(cls, doc) -> "Arrangement":
        if not isinstance(doc, dict) or "lines" not in doc:
            raise ParseError("arrangement document needs a 'lines' field")
        lines = []
        for entry in doc["lines"]:
            try:
                lines.append(Line.of(Fraction(str(entry["a"])),
                                     Fraction(str(entry["b"])),
                                     Fraction(str(entry["c"]))))
            except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"bad line entry {entry!r}: {exc}") from None
            except InputError as exc:
                raise ParseError(str(exc)) from None
        try:
            return cls(tuple(lines))
        except InputError as exc:
            raise ParseError(str(exc)) from None


@dataclass(frozen=True)
class Region:
    """An open cell: its sign per line and a strictly interior rational witness."""

    signs: tuple[int, ...]
    witness: tuple[Fraction, Fraction]

    def positive_indices(self) -> frozenset[str]:
        """1-based indices of the lines with this region on their positive side."""
        return frozenset(str(i + 1) for i, s in enumerate(self.signs) if s > 0)

    def sign_string(self) -> str:
        return "".join("+" if s > 0 else "-" for s in self.signs)

    def to_json_dict(self) -> dict:
        return {
            "signs": self.sign_string(),
            "witness": [str(self.witness[0]), str(self.witness[1])],
            "positive": sorted(self.positive_indices(), key=int),
        }


# --- exact strict feasibility ----------------------------------------------


def _solve_interval(bounds):
    """Feasible point of a system of strict 1-d constraints a*t + c > 0, or None."""
    lo = hi = None
    for (a, c) in bounds:
        if a == 0:
            if c <= 0:
                return None
        elif a > 0:
            t = -c / a
            if lo is None or t > lo:
                lo = t
        else:
            t = -c / a
            if hi is None or t < hi:
                hi = t
    if lo is not None and hi is not None:
        if lo >= hi:
            return None
        return (lo + hi) / 2
    if lo is not None:
        return lo + 1
    if hi is not None:
        return hi - 1
    return Fraction(0)


def _feasible_point(constraints):
    """Interior point of the strict system [a*x + b*y + c > 0, ...], or None.

    Fourier-Motzkin elimination of y: with strict inequalities the projection
    is exact, so any x strictly inside the projected interval lifts to a
    feasible y.
    """
    lowers = []  # y > s*x + m
    uppers = []  # y < s*x + m
    xbounds = []
    for (a, b, c) in constraints:
        if b > 0:
            lowers.append((-a / b, -c / b))
        elif b < 0:
            uppers.append((-a / b, -c / b))
        else:
            xbounds.append((a, c))
    for (s1, m1) in lowers:
        for (s2, m2) in uppers:
            # s1*x + m1 < s2*x + m2
            xbounds.append((s2 - s1, m2 - m1))
    x = _solve_interval(xbounds)
    if x is None:
        return None
    ybounds = [(Fraction(1), -(s * x + m)) for (s, m) in lowers]
    ybounds += [(Fraction(-1), s * x + m) for (s, m) in uppers]
    y = _solve_interval(ybounds)
    if y is None:  # cannot happen: the projection is exact
        return None
    return (x, y)


def _region_constraints(arr, signs):
    return [(s * l.a, s * l.b, s * l.c) for l, s in zip(arr.lines, signs)]


def _generic_point(arr) -> tuple[Fraction, Fraction]:
    # every line meets the parabola y = x^2 + 1 at most twice, so some small
    # integer x gives a point off all lines
    k = 0
    while True:
        x, y = Fraction(k), Fraction(k * k + 1)
        if all(l.evaluate(x, y) != 0 for l in arr.lines):
            return (x, y)
        k += 1


def enumerate_regions(arr: Arrangement) -> tuple[Region, ...]:
    """All open full-dimensional cells, each with an interior witness point.

    Flood fill over single-sign flips starting from a generic seed point;
    two nonempty sign vectors at Hamming distance one always share a facet,
    so the fill reaches every cell.
    """
    seed = _generic_point(arr)
    signs0 = tuple(1 if l.evaluate(*seed) > 0 else -1 for l in arr.lines)
    first = Region(signs0, seed)
    found: dict[tuple[int, ...], Region] = {signs0: first}
    order = [first]
    queue = deque([signs0])
    while queue:
        signs = queue.popleft()
        for k in range(len(arr.lines)):
            flipped = signs[:k] + (-signs[k],) + signs[k + 1:]
            if flipped in found:
                continue
            point = _feasible_point(_region_constraints(arr, flipped))
            if point is None:
                continue
            region = Region(flipped, point)
            found[flipped] = region
            order.append(region)
            queue.append(flipped)
    return tuple(order)


def _facet_shared(arr, signs, k) -> bool:
    """Exact check that flipping line k crosses a genuine shared facet.

    Parametrizes line k and asks whether the other strict inequalities cut a
    nonempty (hence one-dimensional) piece out of it.
    """
    line = arr.lines[k]
    if line.b != 0:
        direction = (Fraction(1), -line.a / line.b)
        origin = (Fraction(0), -line.c / line.b)
    else:
        direction = (Fraction(0), Fraction(1))
        origin = (-line.c / line.a, Fraction(0))
    bounds = []
    for j, (l, s) in enumerate(zip(arr.lines, signs)):
        if j == k:
            continue
        slope = l.a * direction[0] + l.b * direction[1]
        offset = l.a * origin[0] + l.b * origin[1] + l.c
        bounds.append((s * slope, s * offset))
    return _solve_interval(bounds) is not None


def positive_token(k: int) -> str:
    return f"pos:{k + 1}"


def negative_token(k: int) -> str:
    return f"neg:{k + 1}"


def region_name(region: Region, ground: tuple[str, ...]) -> str:
    return set_name(region.positive_indices(), ground)


def _ground(arr) -> tuple[str, ...]:
    return tuple(str(i + 1) for i in range(len(arr.lines)))


def region_adjacency(arr: Arrangement, regions: Iterable[Region]) -> LabeledGraph:
    """Region graph: an edge when two cells share a facet on exactly one line.

    Regions at sign distance one are checked for the facet condition on the
    separating line; edge labels are the crossing token pair.
    """
    regions = tuple(regions)
    ground = _ground(arr)
    names = [region_name(r, ground) for r in regions]
    edges = []
    labels: dict[tuple[str, str], tuple[str, str]] = {}
    for i in range(len(regions)):
        si = regions[i].signs
        for j in range(i + 1, len(regions)):
            sj = regions[j].signs
            k = _single_flip(si, sj)
            if k is None or not _facet_shared(arr, si, k):
                continue
            u, v = names[i], names[j]
            e = (u, v) if u < v else (v, u)
            enter_pos = positive_token(k)
            enter_neg = negative_token(k)
            # label = (token along (e[0] -> e[1]), its reverse)
            first_positive = (sj[k] > 0) == (e == (u, v))
            labels[e] = (enter_pos, enter_neg) if first_positive else (enter_neg, enter_pos)
            edges.append(e)
    return LabeledGraph(tuple(names), tuple(edges), edge_labels=labels)


def _single_flip(si, sj):
    k = None
    for idx, (a, b) in enumerate(zip(si, sj)):
        if a != b:
            if k is not None:
                return None
            k = idx
    return k


def region_family(arr: Arrangement, regions: Iterable[Region]) -> SetFamily:
    """The family of the regions' positive index sets over the line indices."""
    return SetFamily(_ground(arr), tuple(r.positive_indices() for r in regions))


def arrangement_medium(arr: Arrangement,
                       regions: tuple[Region, ...] | None = None,
                       graph: LabeledGraph | None = None) -> TokenSystem:
    """The medium of regions: pos:k / neg:k cross line k at shared facets."""
    if regions is None:
        regions = enumerate_regions(arr)
    if graph is None:
        graph = region_adjacency(arr, regions)
    ground = _ground(arr)
    names = tuple(region_name(r, ground) for r in regions)
    by_name: Mapping[str, Region] = dict(zip(names, regions))
    tokens: list[str] = []
    action: dict[str, dict[str, str]] = {}
    reverse: dict[str, str] = {}
    for k in range(len(arr.lines)):
        pos_id, neg_id = positive_token(k), negative_token(k)
        tokens += [pos_id, neg_id]
        action[pos_id] = {s: s for s in names}
        action[neg_id] = {s: s for s in names}
        reverse[pos_id] = neg_id
        reverse[neg_id] = pos_id
    for (u, v) in graph.edges:
        k = _single_flip(by_name[u].signs, by_name[v].signs)
        plus, minus = (u, v) if by_name[u].signs[k] > 0 else (v, u)
        action[positive_token(k)][minus] = plus
        action[negative_token(k)][plus] = minus
    return TokenSystem(names, tuple(tokens), action, reverse)


# --- mosaic windows ----------------------------------------------------------


def mosaic_window(kind: str, radius: int) -> Arrangement:
    """Finite sub-arrangement of a classical mosaic family meeting a disk.

    triangular: pencils y = t, y - x = t, 2y - x = t (integer offsets); the
    third normal is the sum of the first two, so every crossing of two
    pencils is a triple point and all cells are triangles, exactly the
    combinatorics of the three-directions triangle mosaic.  The region graph
    is the hexagonal lattice pattern.

    truncated-square: the square grid x = t, y = t plus both diagonal
    pencils x + y = t, x - y = t; cells are the four right triangles of each
    grid square and the region graph is the squares-and-octagons pattern.
    """
    if radius < 1:
        raise InputError("radius must be at least 1")
    if kind == "triangular":
        pencils = [(0, 1), (-1, 1), (-1, 2)]
    elif kind == "truncated-square":
        pencils = [(1, 0), (0, 1), (1, 1), (1, -1)]
    else:
        raise InputError(f"unknown mosaic kind {kind!r}; choose from {MOSAIC_KINDS}")
    lines = []
    for (a, b) in pencils:
        norm2 = a * a + b * b
        t = 0
        while t * t <= radius * radius * norm2:
            lines.append(Line.of(a, b, -t))
            if t:
                lines.append(Line.of(a, b, t))
            t += 1
    return Arrangement(tuple(lines))
