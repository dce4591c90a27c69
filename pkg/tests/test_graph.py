import io

import networkx as nx
import numpy as np
import pytest

from absorbclust.graph import (Graph, GraphFormatError, builtin_karate, gen_caveman, gen_gnp,
                               is_bipartite, is_connected, load_edge_list, write_edge_list)


def assert_symmetric(g):
    for i, nbrs in enumerate(g.adjacency):
        for j in nbrs:
            assert i in g.adjacency[j]


class TestLoadEdgeList:
    def test_basic(self):
        g = load_edge_list("1 2\n2 3")
        assert g.n == 3
        assert g.edges() == [(0, 1), (1, 2)]
        assert g.labels == (1, 2, 3)

    def test_duplicates_collapse(self):
        g = load_edge_list("1 2\n1 2\n2 1")
        assert g.edges() == [(0, 1)]

    def test_first_appearance_order(self):
        g = load_edge_list("# header\n\n30 10\n10 20\n")
        assert g.labels == (30, 10, 20)
        assert g.edges() == [(0, 1), (1, 2)]

    def test_self_loop_rejected_with_line(self):
        with pytest.raises(GraphFormatError) as err:
            load_edge_list("5 5")
        assert err.value.lineno == 1

    def test_non_integer_rejected_with_line(self):
        with pytest.raises(GraphFormatError) as err:
            load_edge_list("1 2\n# c\n1 x\n")
        assert err.value.lineno == 3

    def test_wrong_arity(self):
        with pytest.raises(GraphFormatError):
            load_edge_list("1 2 3")

    def test_stream_roundtrip(self, karate):
        g = karate[0]
        buf = io.StringIO()
        write_edge_list(g, buf, header="karate")
        buf.seek(0)
        h = load_edge_list(buf)
        assert h.n == g.n and h.n_edges == g.n_edges
        def labelled(x):
            return sorted(tuple(sorted((x.label_of(i), x.label_of(j)))) for i, j in x.edges())

        assert labelled(h) == labelled(g)


class TestGraphInvariants:
    def test_rejects_asymmetric(self):
        with pytest.raises(ValueError):
            Graph(2, ((1,), ()))

    def test_rejects_self_loop(self):
        with pytest.raises(ValueError):
            Graph(1, ((0,),))

    def test_degrees_readonly(self, path3):
        assert path3.degrees.tolist() == [1, 2, 1]
        with pytest.raises(ValueError):
            path3.degrees[0] = 5


class TestCaveman:
    def test_six_by_five(self, caveman):
        assert caveman.n == 30
        assert caveman.n_edges == 60
        assert is_connected(caveman)

    def test_two_by_three(self):
        g = gen_caveman(2, 3)
        assert (g.n, g.n_edges) == (6, 6)

    @pytest.mark.parametrize("caves", range(2, 7))
    @pytest.mark.parametrize("size", range(3, 8))
    def test_edge_count_sweep(self, caves, size):
        g = gen_caveman(caves, size)
        assert g.n_edges == caves * (size * (size - 1) // 2 - 1) + caves
        assert_symmetric(g)

    def test_opened_edge_and_links(self):
        g = gen_caveman(3, 4)
        assert 1 not in g.adjacency[0]
        assert 4 in g.adjacency[1] and 8 in g.adjacency[5] and 0 in g.adjacency[9]

    @pytest.mark.parametrize("args", [(1, 5), (6, 2)])
    def test_preconditions(self, args):
        with pytest.raises(ValueError):
            gen_caveman(*args)


class TestGnp:
    def test_edge_count_band(self):
        # mean C(100,2)*0.1 = 495, sd ~ 21.1; +-6 sd band
        for seed in range(5):
            assert 350 <= gen_gnp(100, 0.1, seed).n_edges <= 650

    def test_two_vertices(self):
        outcomes = {tuple(gen_gnp(2, 0.5, s).edges()) for s in range(40)}
        assert outcomes == {(), ((0, 1),)}

    def test_deterministic(self):
        assert gen_gnp(50, 0.2, 3) == gen_gnp(50, 0.2, 3)
        assert gen_gnp(50, 0.2, 3) != gen_gnp(50, 0.2, 4)

    @pytest.mark.parametrize("args", [(1, 0.5), (10, 0.0), (10, 1.0)])
    def test_preconditions(self, args):
        with pytest.raises(ValueError):
            gen_gnp(*args, rng_seed=0)


class TestKarate:
    def test_counts(self, karate):
        g, truth = karate
        assert g.n == 34 and g.n_edges == 78
        assert sorted(np.bincount(truth.as_array()).tolist()) == [17, 17]

    def test_matches_networkx(self, karate):
        g, truth = karate
        ref = nx.karate_club_graph()
        ref_edges = sorted((min(u, v) + 1, max(u, v) + 1) for u, v in ref.edges())
        ours = sorted((g.label_of(i), g.label_of(j)) for i, j in g.edges())
        assert ours == ref_edges
        officer = [int(ref.nodes[v]["club"] != "Mr. Hi") for v in range(34)]
        assert list(truth.labels) == officer

    def test_labels_one_based(self, karate):
        g = karate[0]
        assert g.index_of(1) == 0 and g.index_of(34) == 33
        with pytest.raises(KeyError):
            g.index_of(0)


class TestConnectivity:
    def test_caveman_connected(self, caveman):
        assert is_connected(caveman)
        assert not is_bipartite(caveman)

    def test_disjoint_edges(self):
        assert not is_connected(load_edge_list("1 2\n3 4"))

    def test_single_edge_bipartite(self, edge):
        assert is_bipartite(edge)

    def test_odd_cycle(self):
        assert not is_bipartite(load_edge_list("1 2\n2 3\n3 1"))
        assert is_bipartite(load_edge_list("1 2\n2 3\n3 4\n4 1"))
