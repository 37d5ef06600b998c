"""Graphs of media, partial-cube recognition, isomorphism, and cube isometries.

Recognition follows the Djokovic-Winkler route: a connected bipartite graph
is a partial cube iff the relation Theta on its edges (uv Theta xy when
d(u,x) + d(v,y) != d(u,y) + d(v,x)) is transitive.  Accepted graphs get a
canonical isometric labeling by subsets of the Theta classes, which is then
verified exhaustively against the distance matrix.
"""

from __future__ import annotations

import sys
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import CapError, InputError, ParseError
from .families import SetFamily
from .tokens import TokenSystem

DEFAULT_ISO_CAP = 2000


@dataclass(frozen=True)
class LabeledGraph:
    """A finite simple graph with optional vertex-set and edge-token labels.

    Edges are canonicalized to lexicographically ordered pairs and sorted.
    When vertex labels are present, each edge must flip exactly one label
    element.
    """

    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]
    vertex_labels: Mapping[str, frozenset[str]] | None = None
    edge_labels: Mapping[tuple[str, str], tuple[str, str]] | None = None

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("duplicate vertex ids")
        vset = frozenset(self.vertices)
        canon = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise InputError(f"loop at vertex {u!r}")
            if u not in vset or v not in vset:
                raise InputError(f"edge {e!r} uses unknown vertices")
            canon.add((u, v) if u < v else (v, u))
        object.__setattr__(self, "edges", tuple(sorted(canon)))
        if self.vertex_labels is not None:
            for (u, v) in self.edges:
                d = self.vertex_labels[u] ^ self.vertex_labels[v]
                if len(d) != 1:
                    raise InputError(f"edge {u!r}-{v!r} does not flip exactly one label element")

    def to_json_dict(self) -> dict:
        out: dict = {
            "vertices": list(self.vertices),
            "edges": [[u, v] for (u, v) in self.edges],
        }
        if self.vertex_labels is not None:
            out["labels"] = {v: sorted(self.vertex_labels[v]) for v in self.vertices}
        return out

    @classmethod
    def from_json_dict(cls, doc) -> "LabeledGraph":
        if not isinstance(doc, dict) or "vertices" not in doc or "edges" not in doc:
            raise ParseError("graph document needs 'vertices' and 'edges' fields")
        try:
            vertices = tuple(str(v) for v in doc["vertices"])
            edges = tuple((str(u), str(v)) for (u, v) in doc["edges"])
            labels = None
            if "labels" in doc:
                labels = {str(v): frozenset(str(x) for x in xs) for v, xs in doc["labels"].items()}
            return cls(vertices, edges, labels)
        except (TypeError, ValueError, InputError) as exc:
            raise ParseError(f"bad graph: {exc}") from None

    @classmethod
    def from_edge_list(cls, text: str) -> "LabeledGraph":
        """Whitespace edge-list: one 'u v' pair per line; vertex order is first appearance."""
        vertices: list[str] = []
        seen = set()
        edges = []
        for line in text.splitlines():
            parts = line.split()
            if not parts:
                continue
            if len(parts) != 2:
                raise ParseError(f"edge line needs exactly two vertex ids: {line!r}")
            for v in parts:
                if v not in seen:
                    seen.add(v)
                    vertices.append(v)
            edges.append((parts[0], parts[1]))
        return cls(tuple(vertices), tuple(edges))


def adjacency(g: LabeledGraph) -> dict[str, tuple[str, ...]]:
    adj: dict[str, list[str]] = {v: [] for v in g.vertices}
    for (u, v) in g.edges:
        adj[u].append(v)
        adj[v].append(u)
    return {v: tuple(sorted(ws)) for v, ws in adj.items()}


def bfs_distances(adj: Mapping[str, tuple[str, ...]], source: str) -> dict[str, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def to_dot(g: LabeledGraph) -> str:
    """Deterministic DOT export; vertex labels become tooltips."""
    lines = ["graph g {"]
    for v in g.vertices:
        attrs = ""
        if g.vertex_labels is not None:
            inner = ",".join(sorted(g.vertex_labels[v]))
            attrs = f' [tooltip="{{{inner}}}"]'
        lines.append(f'  "{v}"{attrs};')
    for (u, v) in g.edges:
        attrs = ""
        if g.edge_labels is not None and (u, v) in g.edge_labels:
            a, b = g.edge_labels[(u, v)]
            attrs = f' [label="{a} / {b}"]'
        lines.append(f'  "{u}" -- "{v}"{attrs};')
    lines.append("}")
    return "\n".join(lines) + "\n"


# --- graphs of media -------------------------------------------------------


def medium_graph(ts: TokenSystem) -> LabeledGraph:
    """Graph on the states with an edge per adjacent pair, labeled by its token pair.

    Assumes a verified medium: each edge must be traversed by exactly one
    token pair.
    """
    rev = ts.reverse
    if rev is None:
        raise InputError("medium graph needs a reverse pairing")
    pair_of: dict[tuple[str, str], tuple[str, str]] = {}
    for t in ts.tokens:
        for (s, v) in ts.moves(t):
            e = (s, v) if s < v else (v, s)
            label = (t, rev[t]) if e == (s, v) else (rev[t], t)
            old = pair_of.get(e)
            if old is not None and old != label and old != (label[1], label[0]):
                raise InputError(f"edge {e!r} carries two token pairs; not a medium")
            if old is None:
                pair_of[e] = label
    return LabeledGraph(ts.states, tuple(pair_of), edge_labels=pair_of)


@dataclass(frozen=True)
class PartialCubeResult:
    accepted: bool
    labels: Mapping[str, frozenset[str]] | None = None
    edge_classes: Mapping[tuple[str, str], str] | None = None
    witness: Mapping | None = None

    @property
    def class_count(self) -> int:
        if self.labels is None:
            return 0
        return len(set(self.edge_classes.values())) if self.edge_classes else 0

    def to_json_dict(self) -> dict:
        if self.accepted:
            return {
                "partial_cube": True,
                "labels": {v: sorted(l) for v, l in self.labels.items()},
            }
        return {"partial_cube": False, "witness": dict(self.witness)}


def is_partial_cube(g: LabeledGraph) -> PartialCubeResult:
    """Accept with a verified isometric hypercube labeling, or reject with a witness.

    Witness kinds: "odd-cycle" (graph not bipartite), "theta-violation"
    (three edges breaking transitivity), "isometry-failure" (vertex pair
    whose label distance disagrees with graph distance; cannot occur when
    the first two tests pass, kept as a hard guarantee).
    """
    if not g.vertices:
        raise InputError("empty graph")
    adj = adjacency(g)
    s0 = min(g.vertices)
    # single BFS: connectivity, bipartition, parents for odd-cycle extraction
    parent: dict[str, str | None] = {s0: None}
    depth = {s0: 0}
    queue = deque([s0])
    odd = None
    while queue and odd is None:
        u = queue.popleft()
        for w in adj[u]:
            if w not in depth:
                depth[w] = depth[u] + 1
                parent[w] = u
                queue.append(w)
            elif (depth[w] ^ depth[u]) & 1 == 0:
                odd = (u, w)
                break
    if len(depth) != len(g.vertices):
        raise InputError("graph must be connected")
    if odd is not None:
        return PartialCubeResult(False, witness={"kind": "odd-cycle", "cycle": _odd_cycle(parent, depth, *odd)})

    dist = {v: bfs_distances(adj, v) for v in g.vertices}
    edges = g.edges
    m = len(edges)
    masks = [0] * m
    for i in range(m):
        x, y = edges[i]
        dx, dy = dist[x], dist[y]
        masks[i] |= 1 << i  # Theta is reflexive
        for j in range(i + 1, m):
            u, v = edges[j]
            if dx[u] + dy[v] != dx[v] + dy[u]:
                masks[i] |= 1 << j
                masks[j] |= 1 << i

    for i in range(m):
        mi = masks[i]
        rest = mi & ~((1 << (i + 1)) - 1)  # check each related pair once
        while rest:
            b = rest & -rest
            rest ^= b
            j = b.bit_length() - 1
            if masks[j] != mi:
                d = masks[j] ^ mi
                k = (d & -d).bit_length() - 1
                if masks[j] >> k & 1:
                    triple = (edges[i], edges[j], edges[k])
                else:
                    triple = (edges[j], edges[i], edges[k])
                return PartialCubeResult(
                    False,
                    witness={"kind": "theta-violation", "edges": [list(e) for e in triple]},
                )

    # classes ordered by least edge; coordinate k sits on the side away from s0
    class_id: dict[int, str] = {}
    edge_classes: dict[tuple[str, str], str] = {}
    for i in range(m):
        cid = class_id.setdefault(masks[i], str(len(class_id)))
        edge_classes[edges[i]] = cid
    labels: dict[str, frozenset[str]] = {s0: frozenset()}
    order = [s0]
    queue = deque([s0])
    seen = {s0}
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                e = (u, w) if u < w else (w, u)
                labels[w] = labels[u] ^ {edge_classes[e]}
                order.append(w)
                queue.append(w)

    bit = {cid: 1 << n for n, cid in enumerate(dict.fromkeys(edge_classes.values()))}
    lab_mask = {v: _or_bits(labels[v], bit) for v in g.vertices}
    verts = sorted(g.vertices)
    for a in range(len(verts)):
        da = dist[verts[a]]
        ma = lab_mask[verts[a]]
        for b in range(a + 1, len(verts)):
            if (ma ^ lab_mask[verts[b]]).bit_count() != da[verts[b]]:
                return PartialCubeResult(
                    False,
                    witness={
                        "kind": "isometry-failure",
                        "pair": [verts[a], verts[b]],
                        "graph_distance": da[verts[b]],
                        "label_distance": (ma ^ lab_mask[verts[b]]).bit_count(),
                    },
                )
    return PartialCubeResult(True, labels=labels, edge_classes=edge_classes)


def _or_bits(s, bit):
    m = 0
    for x in s:
        m |= bit[x]
    return m


def _odd_cycle(parent, depth, u, w):
    pu, pw = u, w
    left, right = [u], [w]
    while depth[pu] > depth[pw]:
        pu = parent[pu]
        left.append(pu)
    while depth[pw] > depth[pu]:
        pw = parent[pw]
        right.append(pw)
    while pu != pw:
        pu = parent[pu]
        pw = parent[pw]
        left.append(pu)
        right.append(pw)
    # left ends at the meeting vertex; right's copy of it is dropped
    return left + right[-2::-1]


class NotPartialCube(InputError):
    def __init__(self, witness):
        super().__init__(f"graph is not a partial cube: {witness.get('kind')}")
        self.witness = witness


def graph_to_medium(g: LabeledGraph) -> TokenSystem:
    """Medium on the graph's own vertices, via its partial-cube labeling.

    Tokens ``add:k`` / ``rem:k`` per Theta class k toggle the coordinate
    when the toggled label is realized by a vertex.  Raises NotPartialCube
    (carrying the witness) on rejection.
    """
    pc = is_partial_cube(g)
    if not pc.accepted:
        raise NotPartialCube(pc.witness)
    labels = pc.labels
    where = {labels[v]: v for v in g.vertices}
    classes = sorted(set(pc.edge_classes.values()), key=int)
    tokens: list[str] = []
    action: dict[str, dict[str, str]] = {}
    reverse: dict[str, str] = {}
    for k in classes:
        up: dict[str, str] = {}
        down: dict[str, str] = {}
        for v in g.vertices:
            lab = labels[v]
            if k not in lab and (lab | {k}) in where:
                up[v] = where[lab | {k}]
            else:
                up[v] = v
            if k in lab and (lab - {k}) in where:
                down[v] = where[lab - {k}]
            else:
                down[v] = v
        a, r = f"add:{k}", f"rem:{k}"
        tokens += [a, r]
        action[a] = up
        action[r] = down
        reverse[a] = r
        reverse[r] = a
    return TokenSystem(g.vertices, tuple(tokens), action, reverse)


# --- isomorphism -----------------------------------------------------------


def media_isomorphic(ts1: TokenSystem, ts2: TokenSystem,
                     max_vertices: int = DEFAULT_ISO_CAP):
    """A state/token isomorphism between two verified media, or None.

    Media are isomorphic iff their graphs are, so this runs invariant-guided
    backtracking graph isomorphism (degree refinement plus Theta-class size
    multiset) and then reads the token bijection off the matched edges.
    """
    n = len(ts1.states)
    if n > max_vertices or len(ts2.states) > max_vertices:
        raise CapError(f"isomorphism search capped at {max_vertices} states")
    if n != len(ts2.states) or len(ts1.tokens) != len(ts2.tokens):
        return None
    g1, g2 = medium_graph(ts1), medium_graph(ts2)
    if len(g1.edges) != len(g2.edges):
        return None
    pc1, pc2 = is_partial_cube(g1), is_partial_cube(g2)
    if not (pc1.accepted and pc2.accepted):
        raise InputError("media_isomorphic expects verified media")
    if _class_sizes(pc1) != _class_sizes(pc2):
        return None
    adj1 = {v: frozenset(ws) for v, ws in adjacency(g1).items()}
    adj2 = {v: frozenset(ws) for v, ws in adjacency(g2).items()}
    col1, col2 = _joint_refinement(g1, adj1, g2, adj2)
    if col1 is None:
        return None
    alpha = _find_graph_iso(g1, adj1, col1, g2, adj2, col2)
    if alpha is None:
        return None
    beta: dict[str, str] = {}
    for t in ts1.tokens:
        s, v = next(iter(ts1.moves(t)))
        image = None
        for u in ts2.tokens:
            if ts2.action[u][alpha[s]] == alpha[v]:
                image = u
                break
        if image is None:
            raise InputError("graph isomorphism does not transport tokens; not media")
        beta[t] = image
    # the theory guarantees this verification passes for genuine media
    for t in ts1.tokens:
        for s in ts1.states:
            if alpha[ts1.action[t][s]] != ts2.action[beta[t]][alpha[s]]:
                raise AssertionError("token transport failed; inputs are not media")
    if len(set(beta.values())) != len(ts2.tokens):
        raise AssertionError("token transport not bijective; inputs are not media")
    return alpha, beta


def _class_sizes(pc: PartialCubeResult):
    counts: dict[str, int] = {}
    for cid in pc.edge_classes.values():
        counts[cid] = counts.get(cid, 0) + 1
    return sorted(counts.values())


def _joint_refinement(g1, adj1, g2, adj2):
    palette: dict = {}

    def colorize(graph, adj, colors):
        new = {}
        for v in graph.vertices:
            sig = (colors[v], tuple(sorted(colors[w] for w in adj[v])))
            new[v] = palette.setdefault(sig, len(palette))
        return new

    col1 = {v: len(adj1[v]) for v in g1.vertices}
    col2 = {v: len(adj2[v]) for v in g2.vertices}
    for _ in range(len(g1.vertices)):
        if sorted(col1.values()) != sorted(col2.values()):
            return None, None
        palette.clear()
        n1, n2 = colorize(g1, adj1, col1), colorize(g2, adj2, col2)
        if len(set(n1.values())) == len(set(col1.values())):
            return n1, n2
        col1, col2 = n1, n2
    return col1, col2


def _find_graph_iso(g1, adj1, col1, g2, adj2, col2):
    n = len(g1.vertices)
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 4 * n + 100))
    mapping: dict[str, str] = {}
    inverse: dict[str, str] = {}
    vs2 = sorted(g2.vertices)

    def pick():
        best, best_key = None, None
        for u in g1.vertices:
            if u in mapping:
                continue
            k = sum(1 for w in adj1[u] if w in mapping)
            key = (-k, u)
            if best_key is None or key < best_key:
                best, best_key = u, key
        return best

    def extend():
        if len(mapping) == n:
            return True
        u = pick()
        anchored = [mapping[w] for w in adj1[u] if w in mapping]
        if anchored:
            cands = set(adj2[anchored[0]])
            for a in anchored[1:]:
                cands &= adj2[a]
            cands = sorted(cands)
        else:
            cands = vs2
        deg = len(adj1[u])
        want = len(anchored)
        for v in cands:
            if v in inverse or col2[v] != col1[u] or len(adj2[v]) != deg:
                continue
            if sum(1 for w in adj2[v] if w in inverse) != want:
                continue
            mapping[u] = v
            inverse[v] = u
            if extend():
                return True
            del mapping[u]
            del inverse[v]
        return False

    return dict(mapping) if extend() else None


# --- element ranks and isometry extension ----------------------------------


@dataclass(frozen=True)
class RankTable:
    """Minimal member-set cardinality per element, for families containing the empty set."""

    rank: Mapping[str, int]
    witness: Mapping[str, frozenset[str]]

    def strata(self) -> dict[int, tuple[str, ...]]:
        out: dict[int, list[str]] = {}
        for x, k in self.rank.items():
            out.setdefault(k, []).append(x)
        return {k: tuple(sorted(xs)) for k, xs in sorted(out.items())}


def rank_table(fam: SetFamily) -> RankTable:
    from .families import well_graded_witness

    if frozenset() not in fam.sets:
        raise InputError("rank table needs the empty set in the family")
    if well_graded_witness(fam) is not None:
        raise InputError("rank table needs a well graded family")
    rank: dict[str, int] = {}
    witness: dict[str, frozenset] = {}
    for x in fam.ground:
        best = None
        for s in fam.sets:
            if x in s and (best is None or _set_key(s, fam.ground) < _set_key(best, fam.ground)):
                best = s
        if best is not None:
            rank[x] = len(best)
            witness[x] = best
    return RankTable(rank, witness)


def _set_key(s, ground):
    return (len(s), tuple(x in s for x in ground))


@dataclass(frozen=True)
class CubeIsometry:
    """An isometry of the cube of finite subsets: S -> perm(S ^ translation).

    Composition and inversion stay inside the type; every isometry of the
    cube factors this way.
    """

    ground: tuple[str, ...]
    translation: frozenset[str]
    perm: Mapping[str, str]

    def __post_init__(self):
        gset = frozenset(self.ground)
        if not self.translation <= gset:
            raise InputError("translation set must live inside the ground set")
        if set(self.perm) != set(gset) or set(self.perm.values()) != set(gset):
            raise InputError("perm must be a permutation of the ground set")

    @classmethod
    def identity(cls, ground: Iterable[str]) -> "CubeIsometry":
        ground = tuple(ground)
        return cls(ground, frozenset(), {x: x for x in ground})

    def apply(self, s: Iterable[str]) -> frozenset[str]:
        s = frozenset(s)
        if not s <= frozenset(self.ground):
            raise InputError("set uses elements outside the ground set")
        return frozenset(self.perm[x] for x in s ^ self.translation)

    def compose(self, other: "CubeIsometry") -> "CubeIsometry":
        """self after other: (self.compose(other)).apply(s) == self.apply(other.apply(s))."""
        if self.ground != other.ground:
            raise InputError("ground set mismatch")
        inv_other = {v: k for k, v in other.perm.items()}
        translation = other.translation ^ frozenset(inv_other[x] for x in self.translation)
        perm = {x: self.perm[other.perm[x]] for x in self.ground}
        return CubeIsometry(self.ground, translation, perm)

    def invert(self) -> "CubeIsometry":
        inv = {v: k for k, v in self.perm.items()}
        translation = frozenset(self.perm[x] for x in self.translation)
        return CubeIsometry(self.ground, translation, inv)


def extend_isometry(f1: SetFamily, f2: SetFamily,
                    alpha: Mapping[frozenset, frozenset]) -> CubeIsometry:
    """Extend a distance-preserving bijection between two well graded families
    on a common ground set to an isometry of the whole cube.

    After translating both families so the first member of f1 and its image
    go to the empty set, each element is matched through its minimal-rank
    witness sets; rank strata must map bijectively, elements untouched by f1
    are matched to the lexicographically least remaining targets.  The
    result is verified to reproduce alpha on all of f1; internal failures
    raise AssertionError since the construction cannot fail on valid input.
    """
    from .families import distance, translate, well_graded_witness

    if tuple(f1.ground) != tuple(f2.ground):
        raise InputError("families must share one ground set")
    if well_graded_witness(f1) is not None or well_graded_witness(f2) is not None:
        raise InputError("both families must be well graded")
    if set(alpha) != set(f1.sets) or set(alpha.values()) != set(f2.sets):
        raise InputError("alpha must be a bijection between the two families")
    sets1 = f1.sets
    for i in range(len(sets1)):
        for j in range(i + 1, len(sets1)):
            if distance(alpha[sets1[i]], alpha[sets1[j]]) != distance(sets1[i], sets1[j]):
                raise InputError("alpha is not distance-preserving")

    b1 = f1.sets[0]
    b2 = alpha[b1]
    shifted1 = translate(f1, b1)
    shifted2 = translate(f2, b2)
    lam = {p ^ b1: alpha[p] ^ b2 for p in f1.sets}

    ranks1 = rank_table(shifted1)
    ranks2 = rank_table(shifted2)
    perm: dict[str, str] = {}
    for x, a in ranks1.witness.items():
        smaller = a - {x}
        if smaller not in lam:
            raise AssertionError("minimal witness chain broken; construction defect")
        diff = lam[a] - lam[smaller]
        if len(diff) != 1 or not lam[smaller] <= lam[a]:
            raise AssertionError("image of a unit extension is not a unit extension")
        perm[x] = next(iter(diff))
    strata1 = ranks1.strata()
    strata2 = ranks2.strata()
    if sorted(strata1) != sorted(strata2):
        raise AssertionError("rank strata of the two families disagree")
    for k, xs in strata1.items():
        if tuple(sorted(perm[x] for x in xs)) != strata2[k]:
            raise AssertionError(f"stratum {k} does not map bijectively")
    untouched = [x for x in f1.ground if x not in perm]
    free = [y for y in f1.ground if y not in set(perm.values())]
    for x, y in zip(sorted(untouched), sorted(free)):
        perm[x] = y

    inv_perm = {v: k for k, v in perm.items()}
    translation = b1 ^ frozenset(inv_perm[y] for y in b2)
    iso = CubeIsometry(tuple(f1.ground), translation, perm)
    for p in f1.sets:
        if iso.apply(p) != alpha[p]:
            raise AssertionError("extension fails to reproduce alpha on the family")
    return iso
