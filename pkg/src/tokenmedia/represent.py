"""Contents, orientations, the positive-content representation, and the
exact medium decision procedure.

``decide_medium`` is the exact finite decision: it verifies the reverse
pairing, recognizes the state graph as a partial cube, and checks that each
token acts exactly as the add/remove reduction of its hypercube coordinate,
fixed points included.  A yes verdict returns the canonical well-graded
set-family representation with explicit state and token bijections.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Mapping

from .cubes import LabeledGraph, is_partial_cube
from .errors import InputError
from .families import SetFamily
from .tokens import TokenSystem, reverse_defect


@dataclass(frozen=True)
class Orientation:
    """Partition of the tokens into positive and negative classes, closed
    under reversal: a token is positive iff its reverse is negative."""

    positive: frozenset[str]
    negative: frozenset[str]


def orientation_from_positive(ts: TokenSystem, positive) -> Orientation:
    positive = frozenset(positive)
    rev = ts.reverse
    if rev is None:
        raise InputError("orientation needs a reverse pairing")
    all_tokens = frozenset(ts.tokens)
    if not positive <= all_tokens:
        raise InputError("positive class contains unknown tokens")
    negative = all_tokens - positive
    for t in positive:
        if rev[t] in positive:
            raise InputError(f"tokens {t!r} and {rev[t]!r} cannot both be positive")
    return Orientation(positive, negative)


@dataclass(frozen=True)
class ContentTable:
    """Content of every state: the tokens occurring in straight messages into it.

    For every token pair exactly one member belongs to each content, all
    contents share one cardinality, and states are determined by their
    contents.
    """

    base: str
    contents: Mapping[str, frozenset[str]]


def contents(ts: TokenSystem, base: str | None = None) -> ContentTable:
    """Reconstruct all contents from geodesics out of one base state.

    Along a shortest-path tree the content difference across an edge is the
    edge's token, so one breadth-first pass plus the one-per-pair rule
    determines every content in O(states * token pairs).  The result does
    not depend on the base state.  Expects a verified medium; violations of
    the content invariants raise InputError.
    """
    rev = ts.reverse
    if rev is None:
        raise InputError("contents need a reverse pairing")
    if base is None:
        base = ts.states[0]
    elif not ts.has_state(base):
        raise InputError(f"unknown state id {base!r}")
    gained: dict[str, frozenset[str]] = {base: frozenset()}
    queue = deque([base])
    while queue:
        cur = queue.popleft()
        for t in ts.tokens:
            v = ts.action[t][cur]
            if v != cur and v not in gained:
                gained[v] = gained[cur] | {t}
                queue.append(v)
    if len(gained) != len(ts.states):
        raise InputError("state graph is not connected; not a medium")
    outward = frozenset().union(*gained.values())
    for t in outward:
        if rev[t] in outward:
            raise InputError("content pair rule violated; not a medium")
    for t in ts.tokens:
        if t not in outward and rev[t] not in outward:
            raise InputError(f"token pair {t!r}/{rev[t]!r} unreachable from base")
    base_content = frozenset(rev[t] for t in outward)
    table = {
        s: g | frozenset(o for o in base_content if rev[o] not in g)
        for s, g in gained.items()
    }
    if len(set(table.values())) != len(ts.states):
        raise InputError("two states share a content; not a medium")
    return ContentTable(base, table)


def orient_from_state(ts: TokenSystem, s0: str) -> Orientation:
    """The orientation whose negative class is the content of s0."""
    table = contents(ts, base=s0)
    negative = table.contents[s0]
    return Orientation(frozenset(ts.tokens) - negative, negative)


@dataclass(frozen=True)
class FamilyRepresentation:
    """A positive-content family with its state and token bijections.

    ``alpha`` maps each state to its positive content; ``beta`` maps each
    token to the (ground element, polarity) of the add/remove token acting
    on the family.
    """

    family: SetFamily
    alpha: Mapping[str, frozenset[str]]
    beta: Mapping[str, tuple[str, str]]

    def to_json_dict(self) -> dict:
        return {
            "family": self.family.to_json_dict(),
            "alpha": {s: [x for x in self.family.ground if x in self.alpha[s]]
                      for s in self.alpha},
            "beta": {t: {"element": x, "polarity": pol}
                     for t, (x, pol) in self.beta.items()},
        }


def positive_content_family(ts: TokenSystem, orientation: Orientation) -> FamilyRepresentation:
    """The family of positive contents, isomorphic to the medium itself.

    Ground set is the positive token class; the intersection of the family
    is empty and its union is the whole ground.  The isomorphism property
    (s.t = v iff alpha(s).beta(t) = alpha(v)) is verified exhaustively.
    """
    rev = ts.reverse
    table = contents(ts)
    pos = orientation.positive
    if pos | orientation.negative != frozenset(ts.tokens) or pos & orientation.negative:
        raise InputError("orientation must partition this system's tokens")
    if any(rev[t] in pos for t in pos):
        raise InputError("orientation must separate every token from its reverse")
    ground = tuple(t for t in ts.tokens if t in pos)
    alpha = {s: table.contents[s] & pos for s in ts.states}
    family = SetFamily(ground, tuple(alpha[s] for s in ts.states))
    beta = {
        t: (t, "add") if t in pos else (rev[t], "remove")
        for t in ts.tokens
    }
    members = set(family.sets)
    for t in ts.tokens:
        x, pol = beta[t]
        for s in ts.states:
            image = alpha[s]
            if pol == "add":
                moved = image | {x}
            else:
                moved = image - {x}
            expected = moved if moved != image and moved in members else image
            if alpha[ts.action[t][s]] != expected:
                raise AssertionError("positive contents do not transport the action; not a medium")
    if frozenset.intersection(*family.sets):
        raise AssertionError("positive content family has nonempty intersection")
    if frozenset().union(*family.sets) != frozenset(ground):
        raise AssertionError("positive content family does not cover its ground")
    return FamilyRepresentation(family, alpha, beta)


# --- the decision procedure -------------------------------------------------


@dataclass(frozen=True)
class MediumDecision:
    is_medium: bool
    family: SetFamily | None = None
    alpha: Mapping[str, frozenset[str]] | None = None
    beta: Mapping[str, tuple[str, str]] | None = None
    witness: Mapping | None = None

    def to_json_dict(self) -> dict:
        if not self.is_medium:
            return {"medium": False, "witness": dict(self.witness)}
        return {
            "medium": True,
            "family": self.family.to_json_dict(),
            "alpha": {s: [x for x in self.family.ground if x in self.alpha[s]]
                      for s in self.alpha},
            "beta": {t: {"element": x, "polarity": pol}
                     for t, (x, pol) in self.beta.items()},
        }


def decide_medium(ts: TokenSystem) -> MediumDecision:
    """Exact decision: is this token system a medium?

    Route: exact reverse-pairing check, connectivity, partial-cube
    recognition of the state graph, then a per-token match against the
    add/remove reduction of its coordinate (the fixed-point direction of
    this match is what rules out systems whose graph is a partial cube but
    whose action is wrong).  On yes, the partial-cube labeling is returned
    as the canonical set-family representation with explicit bijections.
    """
    defect = reverse_defect(ts)
    if defect is not None:
        return MediumDecision(False, witness=defect)
    edges = set()
    for t in ts.tokens:
        for (s, v) in ts.moves(t):
            edges.add((s, v) if s < v else (v, s))
    reached = {ts.states[0]}
    queue = deque(reached)
    adj: dict[str, list[str]] = {s: [] for s in ts.states}
    for (u, v) in edges:
        adj[u].append(v)
        adj[v].append(u)
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in reached:
                reached.add(w)
                queue.append(w)
    if len(reached) != len(ts.states):
        stranded = next(s for s in ts.states if s not in reached)
        return MediumDecision(
            False,
            witness={"axiom": "M2", "source": ts.states[0], "target": stranded},
        )
    graph = LabeledGraph(ts.states, tuple(edges))
    pc = is_partial_cube(graph)
    if not pc.accepted:
        return MediumDecision(False, witness={"kind": "not-partial-cube", "graph": dict(pc.witness)})
    labels = pc.labels
    realized = {labels[s] for s in ts.states}
    beta: dict[str, tuple[str, str]] = {}
    for t in ts.tokens:
        coord = None
        polarity = None
        for (s, v) in ts.moves(t):
            delta = labels[v] ^ labels[s]
            x = next(iter(delta))
            pol = "add" if x in labels[v] else "remove"
            if coord is None:
                coord, polarity = x, pol
            elif (coord, polarity) != (x, pol):
                return MediumDecision(
                    False,
                    witness={"kind": "action-mismatch", "token": t,
                             "detail": "moves cross several cube coordinates"},
                )
        for s in ts.states:
            if ts.action[t][s] != s:
                continue
            lab = labels[s]
            if polarity == "add":
                stuck = coord not in lab and (lab | {coord}) in realized
            else:
                stuck = coord in lab and (lab - {coord}) in realized
            if stuck:
                return MediumDecision(
                    False,
                    witness={"kind": "action-mismatch", "token": t, "state": s,
                             "detail": "token fixes a state its coordinate reduction moves"},
                )
        beta[t] = (coord, polarity)
    ground = tuple(sorted({cid for cid in pc.edge_classes.values()}, key=int))
    family = SetFamily(ground, tuple(labels[s] for s in ts.states))
    alpha = {s: labels[s] for s in ts.states}
    return MediumDecision(True, family=family, alpha=alpha, beta=beta)


# --- embeddings -------------------------------------------------------------


@dataclass(frozen=True)
class EmbeddingReport:
    embedding: bool
    mismatch: Mapping | None = None
    reduction_isomorphic: bool | None = None


def verify_embedding(ts1: TokenSystem, ts2: TokenSystem,
                     alpha: Mapping[str, str], beta: Mapping[str, str]) -> EmbeddingReport:
    """Check that (alpha, beta) embeds ts1 into ts2.

    The embedding property is s.t = v iff alpha(s).beta(t) = alpha(v) for
    all states and tokens, which for total injective maps collapses to
    alpha(s.t) == alpha(s).beta(t).  Additionally reports whether the
    reduction of ts2 to the alpha-image is isomorphic to ts1 under the same
    state map (true whenever both systems are media).
    """
    from .tokens import reduction

    if set(alpha) != set(ts1.states) or set(beta) != set(ts1.tokens):
        raise InputError("alpha and beta must be total on the source system")
    if len(set(alpha.values())) != len(ts1.states) or len(set(beta.values())) != len(ts1.tokens):
        raise InputError("alpha and beta must be injective")
    for s in alpha.values():
        if not ts2.has_state(s):
            raise InputError(f"alpha image {s!r} is not a state of the target")
    for t in beta.values():
        if not ts2.has_token(t):
            raise InputError(f"beta image {t!r} is not a token of the target")
    for t in ts1.tokens:
        for s in ts1.states:
            if alpha[ts1.action[t][s]] != ts2.action[beta[t]][alpha[s]]:
                return EmbeddingReport(
                    False,
                    mismatch={"state": s, "token": t,
                              "source_result": ts1.action[t][s],
                              "target_result": ts2.action[beta[t]][alpha[s]]},
                )
    red = reduction(ts2, alpha.values())
    by_action = {}
    for u in red.tokens:
        sig = tuple(red.action[u][alpha[s]] for s in ts1.states)
        by_action[sig] = u
    matched = set()
    ok = True
    for t in ts1.tokens:
        sig = tuple(alpha[ts1.action[t][s]] for s in ts1.states)
        u = by_action.get(sig)
        if u is None:
            ok = False
            break
        matched.add(u)
    if ok and matched != set(red.tokens):
        ok = False
    return EmbeddingReport(True, reduction_isomorphic=ok)
