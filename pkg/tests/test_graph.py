import random

import networkx as nx
import pytest
from hypothesis import given

from boxtopo.families import cycle, is_isomorphic, path, random_relabeling, rook_4x4, shrikhande, star_rrbb
from boxtopo.graph import (ColoredGraph, ColorTableMismatch, add_virtual, betti, betti1_product, box_product,
                           disjoint_union, ec_signature, is_virtual, product_color, product_edges)
from strategies import colored_graphs, graph_pair


def to_nx(g):
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges)
    return G


def test_from_edges_normalizes():
    g = ColoredGraph.from_edges(3, [(2, 0), (1, 0)])
    assert g.edges == ((0, 1), (0, 2))
    assert g.degrees() == [2, 1, 1]


@pytest.mark.parametrize("edges", [[(0, 0)], [(0, 3)]])
def test_rejects_bad_edges(edges):
    with pytest.raises(ValueError):
        ColoredGraph(3, tuple(edges), (0, 0, 0))


def test_rejects_duplicate_edge():
    with pytest.raises(ValueError, match="duplicate"):
        ColoredGraph(3, ((0, 1), (0, 1)), (0, 0, 0))


@given(graph_pair())
def test_box_product_counts(data):
    _, g, h = data
    p = box_product(g, h)
    assert p.n == g.n * h.n
    assert p.m == g.n * h.m + h.n * g.m
    assert list(p.edges) == product_edges(g, h)


@given(graph_pair(max_n=5))
def test_box_product_matches_networkx(data):
    _, g, h = data
    ref = nx.cartesian_product(to_nx(g), to_nx(h))
    ref = nx.relabel_nodes(ref, {(i, j): i * h.n + j for i in range(g.n) for j in range(h.n)})
    assert sorted(map(tuple, map(sorted, ref.edges()))) == list(box_product(g, h).edges)


@given(graph_pair(max_n=5))
def test_product_colors_are_unordered_pairs(data):
    _, g, h = data
    p = box_product(g, h)
    for v, (cg, ch) in enumerate(p.factor_colors):
        assert p.colors[v] == product_color(cg, ch)
        assert cg == g.colors[v // h.n] and ch == h.colors[v % h.n]


@given(graph_pair(max_n=5))
def test_betti_of_product_from_factor_counts(data):
    _, g, h = data
    assert betti(box_product(g, h))[1] == betti1_product(g, h)


@given(colored_graphs())
def test_betti_matches_networkx(g):
    G = to_nx(g)
    b0 = nx.number_connected_components(G) if g.n else 0
    assert betti(g) == (b0, g.m - g.n + b0)


@given(colored_graphs())
def test_signature_invariant_under_relabeling(g):
    h = random_relabeling(g, random.Random(g.n))
    assert ec_signature(g) == ec_signature(h)
    assert is_isomorphic(g, h)


def test_product_commutes_up_to_isomorphism():
    g, h = star_rrbb(), path(3, 0, ("red", "blue"))
    gh, hg = box_product(g, h), box_product(h, g)
    assert nx.is_isomorphic(to_nx(gh), to_nx(hg))
    assert sorted(gh.colors) == sorted(hg.colors)


def test_product_needs_shared_table():
    with pytest.raises(ColorTableMismatch):
        box_product(cycle(3), cycle(3, 0, ("other",)))


def test_disjoint_union():
    u = disjoint_union(cycle(3), path(2))
    assert (u.n, u.m) == (5, 4)
    assert betti(u) == (2, 1)


def test_virtual_node_is_isolated_and_reserved():
    g = add_virtual(star_rrbb())
    assert g.n == 5 and g.degrees()[-1] == 0
    assert is_virtual(g.colors[-1], g.color_table)
    assert not any(is_virtual(c, g.color_table) for c in g.colors[:-1])
    # adding twice reuses the same reserved color
    assert add_virtual(g).color_table == g.color_table


def test_strongly_regular_pair():
    for g in (shrikhande(), rook_4x4()):
        G = to_nx(g)
        assert set(g.degrees()) == {6}
        for u in G:
            for v in G:
                if u < v:
                    common = len(set(G[u]) & set(G[v]))
                    assert common == 2
    assert not is_isomorphic(shrikhande(), rook_4x4())


def test_label_roundtrip_for_product_colors():
    p = box_product(star_rrbb(), star_rrbb())
    for c in set(p.colors):
        assert p.color_id(p.label_of(c)) == c
