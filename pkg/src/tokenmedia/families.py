"""Families of finite sets under the symmetric-difference metric.

Well-gradedness (every pair of member sets joined by a unit-step geodesic
inside the family) is exactly what makes the family's add/remove token
system a medium; see ``tokenmedia.represent``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import InputError, ParseError
from .tokens import TokenSystem

ADD_PREFIX = "add:"
REMOVE_PREFIX = "rem:"


@dataclass(frozen=True)
class SetFamily:
    """An ordered ground set and a tuple of distinct member subsets."""

    ground: tuple[str, ...]
    sets: tuple[frozenset[str], ...]

    def __post_init__(self):
        if len(set(self.ground)) != len(self.ground):
            raise InputError("duplicate ground elements")
        if not self.sets:
            raise InputError("a set family needs at least one member set")
        if len(set(self.sets)) != len(self.sets):
            raise InputError("member sets must be pairwise distinct")
        universe = frozenset(self.ground)
        for s in self.sets:
            if not s <= universe:
                raise InputError("member sets must live inside the ground set")

    @classmethod
    def of(cls, ground: Iterable[str], sets: Iterable[Iterable[str]]) -> "SetFamily":
        return cls(tuple(ground), tuple(frozenset(s) for s in sets))

    def to_json_dict(self) -> dict:
        return {
            "ground": list(self.ground),
            "sets": [[x for x in self.ground if x in s] for s in self.sets],
        }

    @classmethod
    def from_json_dict(cls, doc) -> "SetFamily":
        if not isinstance(doc, dict) or "ground" not in doc or "sets" not in doc:
            raise ParseError("set family document needs 'ground' and 'sets' fields")
        try:
            fam = cls.of([str(x) for x in doc["ground"]],
                         [[str(x) for x in s] for s in doc["sets"]])
        except (TypeError, InputError) as exc:
            raise ParseError(f"bad set family: {exc}") from None
        return fam


def distance(p: frozenset, q: frozenset) -> int:
    """Symmetric-difference cardinality."""
    return len(p ^ q)


def between(p: frozenset, r: frozenset, q: frozenset) -> bool:
    """True iff r lies in the interval [p, q], i.e. p & q <= r <= p | q.

    Equivalent to d(p, r) + d(r, q) == d(p, q).
    """
    return (p & q) <= r <= (p | q)


def set_name(s: Iterable[str], ground: Iterable[str]) -> str:
    """Canonical printable name of a subset, elements in ground order."""
    members = set(s)
    return "{" + ",".join(x for x in ground if x in members) + "}"


def _masks(fam: SetFamily) -> list[int]:
    bit = {x: 1 << i for i, x in enumerate(fam.ground)}
    out = []
    for s in fam.sets:
        m = 0
        for x in s:
            m |= bit[x]
        out.append(m)
    return out


def well_graded_witness(fam: SetFamily) -> tuple[frozenset, frozenset] | None:
    """None when well graded, else an ordered pair with no first geodesic step.

    The family is well graded iff from every member P toward every other Q
    some element of P ^ Q can be toggled without leaving the family; the
    scan is O(|F|^2 * |X|) on integer bitmasks.
    """
    masks = _masks(fam)
    present = set(masks)
    n = len(masks)
    for i in range(n):
        mi = masks[i]
        for j in range(n):
            if i == j:
                continue
            d = mi ^ masks[j]
            ok = False
            while d:
                b = d & -d
                if mi ^ b in present:
                    ok = True
                    break
                d ^= b
            if not ok:
                return fam.sets[i], fam.sets[j]
    return None


def is_well_graded(fam: SetFamily) -> bool:
    return well_graded_witness(fam) is None


def line_segment(fam: SetFamily, p: Iterable[str], q: Iterable[str]):
    """A unit-step geodesic inside the family from p to q, or None.

    Ties between admissible steps break by ground-set order, so output is
    deterministic; all monotone paths are explored before giving up.
    """
    p = frozenset(p)
    q = frozenset(q)
    members = set(fam.sets)
    if p not in members or q not in members:
        raise InputError("segment endpoints must belong to the family")
    if p == q:
        return (p,)
    path = [p]

    def walk(cur):
        if cur == q:
            return True
        gap = cur ^ q
        for x in fam.ground:
            if x not in gap:
                continue
            nxt = cur ^ {x}
            if nxt in members:
                path.append(nxt)
                if walk(nxt):
                    return True
                path.pop()
        return False

    return tuple(path) if walk(p) else None


def family_medium(fam: SetFamily) -> TokenSystem:
    """The token system of add/remove reductions to the family.

    One token pair ``add:x`` / ``rem:x`` per ground element whose reduction
    is not the identity; states are named by ``set_name``.  The result is a
    medium exactly when the family is well graded.
    """
    if len(fam.sets) < 2:
        raise InputError("need at least two member sets to form a token system")
    names = {s: set_name(s, fam.ground) for s in fam.sets}
    members = set(fam.sets)
    states = tuple(names[s] for s in fam.sets)
    tokens: list[str] = []
    action: dict[str, dict[str, str]] = {}
    reverse: dict[str, str] = {}
    for x in fam.ground:
        add_row = {}
        rem_row = {}
        moved = False
        for s in fam.sets:
            up = s | {x}
            if x not in s and up in members:
                add_row[names[s]] = names[up]
                moved = True
            else:
                add_row[names[s]] = names[s]
            down = s - {x}
            if x in s and down in members:
                rem_row[names[s]] = names[down]
                moved = True
            else:
                rem_row[names[s]] = names[s]
        if not moved:
            continue
        add_id = ADD_PREFIX + x
        rem_id = REMOVE_PREFIX + x
        tokens += [add_id, rem_id]
        action[add_id] = add_row
        action[rem_id] = rem_row
        reverse[add_id] = rem_id
        reverse[rem_id] = add_id
    return TokenSystem(states, tuple(tokens), action, reverse)


def is_complete(fam: SetFamily) -> bool:
    """True iff every single-element toggle of every member stays in the family.

    For a normalized finite family this holds exactly when the family is the
    full power set of its ground.
    """
    members = set(fam.sets)
    for s in fam.sets:
        for x in fam.ground:
            if x in s:
                if s - {x} not in members:
                    return False
            elif s | {x} not in members:
                return False
    return True


def translate(fam: SetFamily, a: Iterable[str]) -> SetFamily:
    """Image of the family under S -> S ^ a; a distance-preserving involution."""
    a = frozenset(a)
    extra = tuple(sorted(a - set(fam.ground)))
    return SetFamily(fam.ground + extra, tuple(s ^ a for s in fam.sets))


@dataclass(frozen=True)
class NormalizationResult:
    family: SetFamily
    removed_common: tuple[str, ...]
    removed_unused: tuple[str, ...]


def normalize(fam: SetFamily) -> NormalizationResult:
    """Drop elements common to all members and elements used by none.

    The normalized family has empty intersection and ground equal to its
    union; the removed elements are reported for provenance.
    """
    common = frozenset.intersection(*fam.sets)
    union = frozenset().union(*fam.sets)
    keep = tuple(x for x in fam.ground if x in union and x not in common)
    removed_common = tuple(x for x in fam.ground if x in common)
    removed_unused = tuple(x for x in fam.ground if x not in union)
    sets = tuple(s - common for s in fam.sets)
    return NormalizationResult(SetFamily(keep, sets), removed_common, removed_unused)
