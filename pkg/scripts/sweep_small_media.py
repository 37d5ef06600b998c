#!/usr/bin/env python3
"""Exhaustive sweep of small token systems: falsifier vs exact decision.

Enumerates every token system on three states with one or two declared
reverse pairs (all non-identity action tables), runs the bounded axiom
checker and the exact decision procedure, and reports agreement statistics
plus a census of which axiom rules each non-medium out first.
"""

import itertools
import pathlib
import sys
import time
from collections import Counter

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))

from tokenmedia import TokenSystem, check_axioms, decide_medium

STATES = ("A", "B", "C")
BOUND = 8


def non_identity_actions():
    out = []
    for img in itertools.product(STATES, repeat=3):
        row = dict(zip(STATES, img))
        if any(row[s] != s for s in STATES):
            out.append(row)
    return out


def main():
    actions = non_identity_actions()
    start = time.time()
    census = Counter()
    disagreements = 0
    total = 0

    def inspect(tokens, act, rev):
        nonlocal disagreements, total
        ts = TokenSystem(STATES, tokens, act, rev)
        report = check_axioms(ts, bound=BOUND)
        decision = decide_medium(ts)
        total += 1
        if report.ok != decision.is_medium:
            disagreements += 1
            print("DISAGREEMENT:", ts.to_json_dict())
        if decision.is_medium:
            census["medium"] += 1
        else:
            first = next(c.axiom for c in report.checks if c.verdict == "fails")
            census[f"fails {first}"] += 1

    rev2 = {"t": "u", "u": "t"}
    for a0, a1 in itertools.product(actions, repeat=2):
        inspect(("t", "u"), {"t": a0, "u": a1}, rev2)
    rev4 = {"t": "u", "u": "t", "v": "w", "w": "v"}
    for a in itertools.product(actions, repeat=4):
        inspect(("t", "u", "v", "w"),
                {"t": a[0], "u": a[1], "v": a[2], "w": a[3]}, rev4)

    elapsed = time.time() - start
    print(f"{total} systems in {elapsed:.1f}s, {disagreements} disagreements")
    for key, count in sorted(census.items()):
        print(f"  {key}: {count}")


if __name__ == "__main__":
    main()
