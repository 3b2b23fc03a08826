from fractions import Fraction

import pytest

import mobagent


def test_graph_basics():
    k3 = mobagent.load_graph("0 1\n1 2\n0 2")
    assert (k3.node_count, k3.edge_count, k3.max_degree) == (3, 3, 2)
    assert k3.diameter() == 1
    assert k3.edges() == [(0, 1), (0, 2), (1, 2)]
    assert mobagent.load_graph(k3.serialize()) == k3


def test_bad_graph_raises():
    with pytest.raises(ValueError):
        mobagent.load_graph("0 1\n0 1")
    with pytest.raises(ValueError):
        mobagent.generate("gnp:8:0")


def test_triangles_match_oracle():
    g = mobagent.generate("gnp:16:0.3:seed=7")
    sim = mobagent.simulate(g, "triangles", ids="random", id_seed=3)
    want = mobagent.oracle_triangles(g)
    assert sim["per_node"] == want["per_node"]
    assert sim["per_edge"] == want["per_edge"]
    assert sim["total"] == want["total"]
    assert sim["rounds"] == (sim["d_param"] + 2) * sim["schedule_length"]


def test_k4_spot_values():
    k4 = mobagent.generate("complete:4")
    assert mobagent.simulate(k4, "triangles")["total"] == 4
    assert set(mobagent.simulate(k4, "truss")["trussness"].values()) == {4}
    assert mobagent.simulate(k4, "centrality")["per_node"] == [Fraction(1)] * 4
    assert mobagent.simulate(k4, "lcc")["per_node"] == [Fraction(1, 2)] * 4
    assert mobagent.simulate(k4, "lcc", lcc="standard")["per_node"] == [Fraction(1)] * 4


def test_truss_and_centrality_oracles():
    diamond = mobagent.generate("diamond")
    assert set(mobagent.oracle_truss(diamond).values()) == {3}
    assert mobagent.oracle_truss(diamond) == mobagent.oracle_truss_hindex(diamond)
    defined, values = mobagent.oracle_centrality(mobagent.generate("petersen"))
    assert not defined and values == [Fraction(0)] * 10
    assert mobagent.h_index([5, 4, 3, 2, 1]) == 3


def test_port_shuffle_does_not_change_truss():
    g = mobagent.generate("gnp:12:0.5:seed=2")
    base = mobagent.simulate(g, "truss")
    shuffled = mobagent.simulate(g.with_shuffled_ports(9), "truss", order_seed=4)
    assert base["trussness"] == shuffled["trussness"]
    assert base["trussness"] == mobagent.oracle_truss(g)


def test_run_report():
    doc = mobagent.run_report("petersen", "truss")
    assert doc["verdict"] == "pass"
    assert doc["graph"]["n"] == 10
    with pytest.raises(ValueError):
        mobagent.run_report("complete:4", "squares")
