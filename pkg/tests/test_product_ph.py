import pytest
from hypothesis import given, strategies as st

from boxtopo.families import BLUE, RED, erdos_renyi, path_brrb, path_rrb
from boxtopo.filtration import EdgeFiltration, VertexFiltration
from boxtopo.persistence import INF
from boxtopo.product_ph import (ProductBudgetExceeded, naive_prod_ph, prod_edge_ph0, prod_ph, prod_ph1,
                                prod_vertex_ph0, prod_vertex_ph0_symmetric)
from strategies import colored_graphs, edge_filtrations, vertex_filtrations


@st.composite
def factors(draw, level, max_n=7):
    k = draw(st.integers(1, 3))
    f = vertex_filtrations(k) if level == "vertex" else edge_filtrations(k)
    return draw(colored_graphs(max_n, k)), draw(f), draw(colored_graphs(max_n, k)), draw(f)


@given(factors("vertex"))
def test_vertex_ph0_matches_naive(case):
    g, fg, h, fh = case
    ref = naive_prod_ph(g, fg, h, fh).restrict(0)
    assert prod_vertex_ph0(g, fg, h, fh) == ref
    assert prod_vertex_ph0_symmetric(g, fg, h, fh) == ref
    assert prod_vertex_ph0(g, fg, h, fh, representatives=True) == ref


@given(factors("edge"))
def test_edge_ph0_matches_naive(case):
    g, fg, h, fh = case
    assert prod_edge_ph0(g, fg, h, fh) == naive_prod_ph(g, fg, h, fh).restrict(0)


@pytest.mark.parametrize("level", ["vertex", "edge"])
@given(data=st.data())
def test_ph1_and_full_diagram_match_naive(level, data):
    g, fg, h, fh = data.draw(factors(level))
    ref = naive_prod_ph(g, fg, h, fh)
    assert prod_ph1(g, fg, h, fh) == ref.restrict(1)
    assert prod_ph(g, fg, h, fh) == ref


def test_vertex_product_of_blue_first_path():
    g = path_brrb()
    f = VertexFiltration({BLUE: 1.0, RED: 2.0})
    d = prod_vertex_ph0(g, f, g, f)
    assert d.pairs(0).count((1.0, 2.0)) == 3
    assert d.pairs(0).count((2.0, 2.0)) == 12
    assert d.pairs(0).count((1.0, INF)) == 1


def test_edge_product_of_red_red_blue_path():
    g = path_rrb()
    f = EdgeFiltration({(RED, RED): 2.0, (RED, BLUE): 1.0, (BLUE, BLUE): 2.0}, 0.0)
    counts = prod_edge_ph0(g, f, g, f).counts
    assert counts[(0, 0.0, 1.0)] == 5 and counts[(0, 0.0, 2.0)] == 3 and counts[(0, 0.0, INF)] == 1


def test_representatives_carry_factor_vertices():
    g = path_brrb()
    f = VertexFiltration({BLUE: 1.0, RED: 2.0})
    d = prod_vertex_ph0(g, f, g, f, representatives=True)
    pairs = d.representatives
    # one record per non-trivial component, each named by a G vertex and an H vertex
    assert len(pairs) == 4
    assert all(0 <= w < g.n and 0 <= v < g.n for w, v in (p.factor_reps for p in pairs))
    assert sorted((p.birth, p.death) for p in pairs) == [(1.0, 2.0)] * 3 + [(1.0, INF)]


def test_mixed_levels_rejected():
    g = path_rrb()
    with pytest.raises(TypeError):
        prod_ph(g, VertexFiltration({RED: 1.0, BLUE: 2.0}), g,
                EdgeFiltration({(RED, RED): 1.0, (RED, BLUE): 1.0, (BLUE, BLUE): 1.0}))


def test_naive_budget_guard():
    g = erdos_renyi(30, 2, seed=1)
    f = VertexFiltration({0: 1.0, 1: 2.0})
    with pytest.raises(ProductBudgetExceeded):
        naive_prod_ph(g, f, g, f, max_vertices=100)
    # the fast path never builds the product
    assert prod_vertex_ph0(g, f, g, f).size(0) == 900


def test_empty_factor():
    from boxtopo.graph import ColoredGraph
    e = ColoredGraph(0, (), (), ("red", "blue"))
    f = VertexFiltration({RED: 1.0, BLUE: 2.0})
    assert prod_ph(path_rrb(), f, e, f).size() == 0
