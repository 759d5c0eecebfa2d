import random
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from boxtopo.families import random_relabeling, star_rrbb
from boxtopo.filtration import (EdgeFiltration, FiltrationError, VertexFiltration, betweenness, closeness,
                                filtration_steps, forman_ricci, generate_filtration, generic_product_times,
                                max_edge_from_vertex, product_edge_filtration, product_vertex_filtration,
                                structural_values, sublevel)
from boxtopo.graph import box_product
from strategies import colored_graphs, edge_filtrations, vertex_filtrations
from test_graph import to_nx


@given(st.integers(1, 3).flatmap(lambda k: st.tuples(colored_graphs(7, k), vertex_filtrations(k))))
def test_vertex_sublevels_are_nested_subgraphs(data):
    g, f = data
    prev = None
    for t in f.critical_values():
        s = sublevel(g, f, t)
        assert all(u in s.vertices and v in s.vertices for u, v in s.edges)
        if prev is not None:
            assert prev.vertices <= s.vertices and prev.edges <= s.edges
        prev = s
    if g.n:
        assert len(prev.vertices) == g.n and len(prev.edges) == g.m


@given(st.integers(1, 3).flatmap(lambda k: st.tuples(colored_graphs(7, k), edge_filtrations(k))))
def test_edge_filtration_starts_with_all_vertices(data):
    g, f = data
    s = sublevel(g, f, f.floor)
    assert len(s.vertices) == g.n and not s.edges


def test_edge_values_must_exceed_floor():
    with pytest.raises(FiltrationError):
        EdgeFiltration({(0, 0): 1.0}, floor=1.0)


def test_missing_color_is_reported():
    with pytest.raises(FiltrationError, match="missing"):
        VertexFiltration({0: 1.0}).vertex_times(star_rrbb())


@given(st.integers(1, 3).flatmap(lambda k: st.tuples(colored_graphs(7, k), vertex_filtrations(k))))
def test_max_edge_filtration_matches_vertex_edges(data):
    g, f = data
    _, et_v = f.times(g)
    _, et_e = max_edge_from_vertex(f).times(g)
    assert et_v == et_e


@st.composite
def product_case(draw, level):
    k = draw(st.integers(1, 3))
    strat = vertex_filtrations(k) if level == "vertex" else edge_filtrations(k)
    return (draw(colored_graphs(4, k)), draw(strat), draw(colored_graphs(4, k)), draw(strat))


@pytest.mark.parametrize("level", ["vertex", "edge"])
@given(data=st.data())
def test_product_sublevel_is_product_of_sublevels(level, data):
    g, fg, h, fh = data.draw(product_case(level))
    maker = product_vertex_filtration if level == "vertex" else product_edge_filtration
    p, fp = box_product(g, h), maker(fg, fh)
    for t in filtration_steps(fg, fh):
        assert sublevel(p, fp, t) == sublevel(g, fg, t).box(sublevel(h, fh, t), h.n)
    assert generic_product_times(g, fg, h, fh) == fp.times(p)


def test_ordered_product_filtration_uses_factor_side():
    g = star_rrbb()
    fg = VertexFiltration({0: 1.0, 1: 2.0})
    fh = VertexFiltration({0: 3.0, 1: 1.0})
    p = box_product(g, g)
    vt, _ = product_vertex_filtration(fg, fh).times(p)
    for v, (a, b) in enumerate(p.factor_colors):
        assert vt[v] == max(fg.values[a], fh.values[b])


@given(colored_graphs(9, min_n=1))
def test_centralities_match_networkx(g):
    G = to_nx(g)
    ref_b = nx.betweenness_centrality(G, normalized=False)
    ref_c = nx.closeness_centrality(G, wf_improved=True)
    for v, x in enumerate(betweenness(g)):
        assert float(x) == pytest.approx(ref_b[v])
        assert isinstance(x, Fraction)
    for v, x in enumerate(closeness(g)):
        assert float(x) == pytest.approx(ref_c[v])


def test_forman_ricci_formula():
    g = star_rrbb()
    deg = g.degrees()
    assert forman_ricci(g) == [4 - deg[u] - deg[v] for u, v in g.edges]
    assert forman_ricci(g) == [0, 0, 0]


@pytest.mark.parametrize("kind", ["degree", "betweenness", "closeness", "forman-ricci"])
@given(g=colored_graphs(7, min_n=1))
def test_generated_filtrations_are_relabeling_invariant(kind, g):
    h = random_relabeling(g, random.Random(7))
    g2, fg = generate_filtration(g, kind)
    h2, fh = generate_filtration(h, kind)
    assert sorted(fg.times(g2)[0]) == sorted(fh.times(h2)[0])
    assert sorted(fg.times(g2)[1]) == sorted(fh.times(h2)[1])


def test_generator_recolors_by_value():
    g = star_rrbb()
    g2, f = generate_filtration(g, "degree")
    assert f.times(g2)[0] == structural_values(g, "degree")


def test_unknown_generator():
    with pytest.raises(FiltrationError, match="unknown"):
        generate_filtration(star_rrbb(), "pagerank")
