import itertools
import random

import pytest

from tokenmedia.cubes import (
    CubeIsometry,
    LabeledGraph,
    NotPartialCube,
    extend_isometry,
    graph_to_medium,
    is_partial_cube,
    media_isomorphic,
    medium_graph,
    rank_table,
    to_dot,
)
from tokenmedia.errors import InputError
from tokenmedia.families import SetFamily, distance, family_medium, is_well_graded, translate
from tokenmedia.linorders import linear_medium
from tokenmedia.represent import decide_medium
from tokenmedia.tokens import straight_message

from conftest import (
    hexagon_family,
    hexagon_variant_family,
    power_set_family,
    random_wg_family,
    staircase_family,
    two_state,
)


def k3():
    return LabeledGraph(("a", "b", "c"), (("a", "b"), ("b", "c"), ("a", "c")))


def c5():
    vs = tuple("abcde")
    return LabeledGraph(vs, tuple((vs[i], vs[(i + 1) % 5]) for i in range(5)))


def k23():
    left, right = ("a1", "a2"), ("b1", "b2", "b3")
    return LabeledGraph(left + right, tuple((a, b) for a in left for b in right))


class TestMediumGraph:
    def test_two_state_single_edge(self):
        g = medium_graph(two_state())
        assert g.edges == (("S", "T"),)
        assert g.edge_labels[("S", "T")] == ("t", "t~")

    def test_hexagon_is_a_six_cycle(self):
        g = medium_graph(family_medium(hexagon_family()))
        degrees = sorted(sum(1 for e in g.edges if v in e) for v in g.vertices)
        assert degrees == [2] * 6
        assert is_partial_cube(g).accepted

    def test_variant_graph_differs(self):
        g = medium_graph(family_medium(hexagon_variant_family()))
        degrees = sorted(sum(1 for e in g.edges if v in e) for v in g.vertices)
        assert degrees == [2, 2, 2, 2, 3, 3]

    def test_linear_medium_3_is_a_six_cycle(self):
        ts, _ = linear_medium(3)
        g = medium_graph(ts)
        assert len(g.edges) == 6
        assert all(sum(1 for e in g.edges if v in e) == 2 for v in g.vertices)


class TestPartialCubeRecognition:
    def test_six_cycle_accepts_with_three_classes(self):
        g = medium_graph(family_medium(hexagon_family()))
        pc = is_partial_cube(g)
        assert pc.accepted
        assert len(set(pc.edge_classes.values())) == 3
        sizes = sorted(len(pc.labels[v]) for v in g.vertices)
        assert sizes == [0, 1, 1, 2, 2, 3]
        assert is_well_graded(SetFamily(("0", "1", "2"), tuple({pc.labels[v] for v in g.vertices})))

    def test_k3_rejected_with_odd_cycle(self):
        pc = is_partial_cube(k3())
        assert not pc.accepted
        cycle = pc.witness["cycle"]
        assert len(cycle) % 2 == 1
        edges = set(k3().edges)
        for u, v in zip(cycle, cycle[1:] + cycle[:1]):
            assert ((u, v) if u < v else (v, u)) in edges

    def test_c5_rejected(self):
        pc = is_partial_cube(c5())
        assert not pc.accepted and pc.witness["kind"] == "odd-cycle"

    def test_k23_rejected_with_verifiable_theta_violation(self):
        g = k23()
        pc = is_partial_cube(g)
        assert not pc.accepted
        assert pc.witness["kind"] == "theta-violation"
        e, f, h = (tuple(x) for x in pc.witness["edges"])
        from tokenmedia.cubes import adjacency, bfs_distances

        adj = adjacency(g)
        dist = {v: bfs_distances(adj, v) for v in g.vertices}

        def theta(e1, e2):
            (x, y), (u, v) = e1, e2
            return dist[x][u] + dist[y][v] != dist[x][v] + dist[y][u]

        assert theta(e, f) and theta(f, h) and not theta(e, h)

    def test_k23_has_no_small_isometric_labeling(self):
        # independent brute force: anchor one vertex at the empty set and try
        # every assignment of labels over five coordinates
        verts = ("b1", "a1", "a2", "b2", "b3")
        d = {}
        for u in verts:
            for v in verts:
                if u == v:
                    dd = 0
                elif u[0] == v[0]:
                    dd = 2
                else:
                    dd = 1
                d[(u, v)] = dd
        coords = list(range(5))
        singles = [frozenset([c]) for c in coords]
        pairs = [frozenset(p) for p in itertools.combinations(coords, 2)]
        found = False
        for la1, la2 in itertools.product(singles, repeat=2):
            for lb2, lb3 in itertools.product(pairs, repeat=2):
                labels = {"b1": frozenset(), "a1": la1, "a2": la2, "b2": lb2, "b3": lb3}
                if all(
                    len(labels[u] ^ labels[v]) == d[(u, v)]
                    for u, v in itertools.combinations(verts, 2)
                ):
                    found = True
        assert not found

    def test_disconnected_rejected(self):
        g = LabeledGraph(("a", "b", "c", "d"), (("a", "b"), ("c", "d")))
        with pytest.raises(InputError, match="connected"):
            is_partial_cube(g)

    def test_corpus_graphs_are_partial_cubes(self, corpus):
        for name, ts in corpus:
            assert is_partial_cube(medium_graph(ts)).accepted, name


class TestGraphToMedium:
    def test_single_edge(self):
        ts = graph_to_medium(LabeledGraph(("u", "v"), (("u", "v"),)))
        assert len(ts.states) == 2 and len(ts.tokens) == 2

    def test_path_of_length_two(self):
        ts = graph_to_medium(LabeledGraph(("u", "v", "w"), (("u", "v"), ("v", "w"))))
        assert len(ts.states) == 3 and len(ts.tokens) == 4
        assert decide_medium(ts).is_medium

    def test_reject_carries_witness(self):
        with pytest.raises(NotPartialCube) as err:
            graph_to_medium(k3())
        assert err.value.witness["kind"] == "odd-cycle"

    def test_round_trip_is_isomorphic(self, corpus):
        for name, ts in corpus:
            g = medium_graph(ts)
            again = graph_to_medium(LabeledGraph(g.vertices, g.edges))
            assert decide_medium(again).is_medium, name
            assert media_isomorphic(ts, again) is not None, name


class TestMediaIsomorphism:
    def test_hexagon_vs_variant(self):
        a = family_medium(hexagon_family())
        b = family_medium(hexagon_variant_family())
        assert media_isomorphic(a, b) is None

    def test_identity(self):
        ts = family_medium(staircase_family())
        alpha, beta = media_isomorphic(ts, ts)
        for t in ts.tokens:
            for s in ts.states:
                assert alpha[ts.action[t][s]] == ts.action[beta[t]][alpha[s]]

    def test_translated_power_set_media(self):
        fam = power_set_family("ab")
        shifted = translate(fam, {"a"})
        found = media_isomorphic(family_medium(fam), family_medium(shifted))
        assert found is not None

    def test_token_bijection_respects_reverses(self):
        ts, _ = linear_medium(3)
        other = family_medium(hexagon_family())
        found = media_isomorphic(ts, other)
        assert found is not None
        alpha, beta = found
        for t in ts.tokens:
            assert beta[ts.reverse[t]] == other.reverse[beta[t]]


class TestEdgeLabelsAndGeodesics:
    def test_edge_token_pairs_are_theta_constant(self, corpus):
        for name, ts in corpus:
            g = medium_graph(ts)
            pc = is_partial_cube(g)
            by_pair = {}
            for e, (t, tr) in g.edge_labels.items():
                by_pair.setdefault(frozenset((t, tr)), set()).add(pc.edge_classes[e])
            # same token pair <-> same class
            classes = [v for v in by_pair.values()]
            assert all(len(v) == 1 for v in classes), name
            flat = [next(iter(v)) for v in classes]
            assert len(set(flat)) == len(flat), name

    def test_straight_messages_realize_graph_distance(self, corpus):
        from tokenmedia.cubes import adjacency, bfs_distances

        rng = random.Random(31)
        for name, ts in corpus:
            g = medium_graph(ts)
            adj = adjacency(g)
            states = list(ts.states)
            for _ in range(15):
                s, v = rng.sample(states, 2)
                msg = straight_message(ts, s, v)
                assert len(msg) == bfs_distances(adj, s)[v], name


class TestRankTable:
    def test_staircase(self):
        table = rank_table(staircase_family())
        assert table.rank == {"a": 1, "b": 1, "c": 3}
        assert table.strata() == {1: ("a", "b"), 3: ("c",)}

    def test_singleton(self):
        table = rank_table(SetFamily.of("a", [set(), {"a"}]))
        assert table.rank == {"a": 1}

    def test_chain(self):
        fam = SetFamily.of("abc", [set(), {"a"}, {"a", "b"}, {"a", "b", "c"}])
        table = rank_table(fam)
        assert table.rank == {"a": 1, "b": 2, "c": 3}
        assert table.witness["b"] == frozenset("ab")

    def test_needs_empty_set(self):
        with pytest.raises(InputError):
            rank_table(hexagon_family())


class TestCubeIsometry:
    def test_identity_apply(self):
        iso = CubeIsometry.identity(("a", "b"))
        assert iso.apply({"a"}) == frozenset("a")

    def test_translation_apply(self):
        iso = CubeIsometry(("a", "b"), frozenset("a"), {"a": "a", "b": "b"})
        assert iso.apply({"a", "b"}) == frozenset("b")

    def test_compose_with_inverse_is_identity(self):
        rng = random.Random(3)
        ground = tuple("abcde")
        iso = CubeIsometry(ground, frozenset("bd"), dict(zip(ground, rng.sample(ground, 5))))
        both = iso.compose(iso.invert())
        for _ in range(20):
            s = frozenset(x for x in ground if rng.random() < 0.5)
            assert both.apply(s) == s
            assert iso.invert().apply(iso.apply(s)) == s

    def test_compose_order(self):
        ground = ("a", "b")
        f = CubeIsometry(ground, frozenset("a"), {"a": "b", "b": "a"})
        g = CubeIsometry(ground, frozenset("b"), {"a": "a", "b": "b"})
        s = frozenset("a")
        assert g.compose(f).apply(s) == g.apply(f.apply(s))

    def test_ground_mismatch(self):
        f = CubeIsometry.identity(("a",))
        g = CubeIsometry.identity(("b",))
        with pytest.raises(InputError):
            f.compose(g)


class TestExtendIsometry:
    def test_tiny_relabeling(self):
        ground = ("a", "b")
        f1 = SetFamily.of(ground, [set(), {"a"}])
        f2 = SetFamily.of(ground, [set(), {"b"}])
        alpha = {frozenset(): frozenset(), frozenset("a"): frozenset("b")}
        iso = extend_isometry(f1, f2, alpha)
        assert iso.perm["a"] == "b"
        assert iso.apply(frozenset("a")) == frozenset("b")

    def test_identity_on_staircase(self):
        fam = staircase_family()
        alpha = {s: s for s in fam.sets}
        iso = extend_isometry(fam, fam, alpha)
        assert iso.translation == frozenset()
        assert all(iso.perm[x] == x for x in fam.ground)

    def test_random_isometries_reconstructed(self):
        rng = random.Random(2024)
        ground = tuple("abcde")
        for _ in range(60):
            fam = random_wg_family(rng, ground, rng.randint(2, 9))
            shift = frozenset(x for x in ground if rng.random() < 0.5)
            perm = dict(zip(ground, rng.sample(ground, len(ground))))
            sigma = CubeIsometry(ground, shift, perm)
            image = SetFamily(ground, tuple(sigma.apply(s) for s in fam.sets))
            alpha = {s: sigma.apply(s) for s in fam.sets}
            iso = extend_isometry(fam, image, alpha)
            for s in fam.sets:
                assert iso.apply(s) == alpha[s]
            probes = [frozenset(x for x in ground if rng.random() < 0.5) for _ in range(12)]
            for p in probes:
                for q in probes:
                    assert distance(iso.apply(p), iso.apply(q)) == distance(p, q)

    def test_rejects_non_isometry(self):
        ground = ("a", "b")
        f1 = SetFamily.of(ground, [set(), {"a"}, {"a", "b"}])
        f2 = SetFamily.of(ground, [set(), {"a"}, {"b"}])
        alpha = dict(zip(f1.sets, f2.sets))
        with pytest.raises(InputError, match="distance"):
            extend_isometry(f1, f2, alpha)

    def test_rejects_ground_mismatch(self):
        f1 = SetFamily.of("ab", [set(), {"a"}])
        f2 = SetFamily.of("ac", [set(), {"a"}])
        with pytest.raises(InputError, match="ground"):
            extend_isometry(f1, f2, dict(zip(f1.sets, f2.sets)))


def test_dot_export_mentions_labels():
    g = medium_graph(two_state())
    pc = is_partial_cube(g)
    labeled = LabeledGraph(g.vertices, g.edges, pc.labels, g.edge_labels)
    dot = to_dot(labeled)
    assert '"S" -- "T"' in dot
    assert "tooltip" in dot
