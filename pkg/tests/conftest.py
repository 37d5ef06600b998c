"""Shared builders: canonical small media and random well-graded families."""

from __future__ import annotations

import random

import pytest

from tokenmedia.families import SetFamily, family_medium, well_graded_witness
from tokenmedia.tokens import TokenSystem


def two_state() -> TokenSystem:
    return TokenSystem(
        ("S", "T"),
        ("t", "t~"),
        {"t": {"S": "T", "T": "T"}, "t~": {"T": "S", "S": "S"}},
        {"t": "t~", "t~": "t"},
    )


def path3() -> TokenSystem:
    """P - Q - R, the three-state chain medium."""
    return TokenSystem(
        ("P", "Q", "R"),
        ("f1", "b1", "f2", "b2"),
        {
            "f1": {"P": "Q", "Q": "Q", "R": "R"},
            "b1": {"Q": "P", "P": "P", "R": "R"},
            "f2": {"Q": "R", "P": "P", "R": "R"},
            "b2": {"R": "Q", "P": "P", "Q": "Q"},
        },
        {"f1": "b1", "b1": "f1", "f2": "b2", "b2": "f2"},
    )


def hexagon_family() -> SetFamily:
    """The six middle layers of the 3-cube; its medium graph is a 6-cycle."""
    return SetFamily.of("abc", [{"a"}, {"b"}, {"c"}, {"a", "b"}, {"a", "c"}, {"b", "c"}])


def hexagon_variant_family() -> SetFamily:
    """Same state and token counts as the hexagon but a different graph."""
    return SetFamily.of("abc", [{"a"}, {"c"}, {"a", "b"}, {"a", "c"}, {"b", "c"}, {"a", "b", "c"}])


def staircase_family() -> SetFamily:
    """A well graded family with ranks 1, 1, 3."""
    return SetFamily.of("abc", [set(), {"a"}, {"b"}, {"a", "b"}, {"a", "b", "c"}])


def power_set_family(ground: str) -> SetFamily:
    sets = []
    for mask in range(1 << len(ground)):
        sets.append({x for i, x in enumerate(ground) if mask >> i & 1})
    return SetFamily.of(ground, sets)


def random_subsets(rng: random.Random, ground, count) -> SetFamily:
    universe = list(ground)
    seen: set[frozenset] = set()
    while len(seen) < count:
        seen.add(frozenset(x for x in universe if rng.random() < 0.5))
    return SetFamily(tuple(ground), tuple(sorted(seen, key=lambda s: (len(s), sorted(s)))))


def random_wg_family(rng: random.Random, ground, size) -> SetFamily:
    """Grow a well graded family by unit steps, reverting growth that breaks it."""
    ground = tuple(ground)
    base = frozenset(x for x in ground if rng.random() < 0.5)
    sets = [base]
    attempts = 0
    while len(sets) < size and attempts < 40 * size:
        attempts += 1
        anchor = sets[rng.randrange(len(sets))]
        cand = anchor ^ {ground[rng.randrange(len(ground))]}
        if cand in sets:
            continue
        trial = SetFamily(ground, tuple(sets) + (cand,))
        if well_graded_witness(trial) is None:
            sets.append(cand)
    return SetFamily(ground, tuple(sets))


def corpus_media():
    """Named verified media used by the cross-module property tests."""
    out = [
        ("two-state", two_state()),
        ("path3", path3()),
        ("hexagon", family_medium(hexagon_family())),
        ("hexagon-variant", family_medium(hexagon_variant_family())),
        ("staircase", family_medium(staircase_family())),
        ("cube3", family_medium(power_set_family("abc"))),
    ]
    rng = random.Random(1105)
    for i in range(3):
        fam = random_wg_family(rng, "abcde", 9)
        out.append((f"random-wg-{i}", family_medium(fam)))
    return out


@pytest.fixture(scope="session")
def corpus():
    return corpus_media()
