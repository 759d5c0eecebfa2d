import random

import pytest
from hypothesis import given, strategies as st

from boxtopo import io as tio
from boxtopo.ec import ec_diagram
from boxtopo.families import complete, star_rrbb
from boxtopo.filtration import FiltrationSpec
from boxtopo.graph import box_product
from boxtopo.persistence import persistence
from boxtopo.simplicial import random_complex, simplex_signature
from strategies import colored_graphs, edge_filtrations, vertex_filtrations


@given(colored_graphs(8))
def test_edge_list_roundtrip(g):
    text = tio.write_edge_list(g)
    back = tio.parse_edge_list(text, color_table=g.color_table)
    assert back == g


@given(colored_graphs(10, n_colors=1, min_n=1))
def test_graph6_roundtrip(g):
    g = g.recolor([0] * g.n, ("default",))
    assert tio.parse_graph6(tio.write_graph6(g)) == [g]


def test_graph6_known_value():
    (k4,) = tio.parse_graph6("C~\n")
    assert k4 == complete(4)
    assert tio.write_graph6(k4) == "C~"


@pytest.mark.parametrize("text, line, msg", [
    ("v 0 red\nv 0 red\n", 2, "twice"),
    ("v 0 red\ne 0 3\n", 2, "undeclared"),
    ("v 0 red\nv 1 red\ne 1 1\n", 3, "self-loop"),
    ("v 0 red\nv 1 red\ne 0 1\ne 1 0\n", 4, "duplicate"),
    ("v 0 red\nx 1\n", 2, "unknown"),
    ("v zero red\n", 1, "integer"),
])
def test_edge_list_errors_carry_line_numbers(text, line, msg):
    with pytest.raises(tio.ParseError, match=msg) as exc:
        tio.parse_edge_list(text, "g.el")
    assert exc.value.line == line
    assert f"g.el:{line}" in str(exc.value)


def test_bad_graph6_line():
    with pytest.raises(tio.ParseError) as exc:
        tio.parse_graph6("C~\n~~~~~~~~\n", "pairs.g6")
    assert exc.value.line == 2


def test_shared_table_across_files():
    a = "v 0 red\nv 1 red\ne 0 1\n"
    b = "v 0 blue\n"
    table = sorted(set(tio.edge_list_labels(a)) | set(tio.edge_list_labels(b)))
    ga, gb = tio.parse_edge_list(a, color_table=table), tio.parse_edge_list(b, color_table=table)
    assert ga.color_table == gb.color_table == ("blue", "red")


@given(st.integers(1, 3).flatmap(lambda k: st.tuples(colored_graphs(5, k), vertex_filtrations(k),
                                                     edge_filtrations(k))))
def test_filtration_roundtrip(data):
    g, fv, fe = data
    spec = FiltrationSpec(fv, fe)
    back = tio.parse_filtration(tio.dump_filtration(spec, g), g)
    assert back.vertex.values == fv.values
    assert back.edge.values == fe.values and back.edge.floor == fe.floor


def test_product_color_labels_in_filtrations():
    g = star_rrbb()
    p = box_product(g, g)
    spec = tio.parse_filtration('{"edge": {"(blue,blue)|(red,blue)": 1, "(red,red)|(red,red)": 2}}', p)
    assert spec.edge.values == {((0, 1), (1, 1)): 1.0, ((0, 0), (0, 0)): 2.0}


@pytest.mark.parametrize("text, msg", [("{", "invalid JSON"), ("[]", "vertex"),
                                       ('{"vertex": {"green": 1}}', "green"),
                                       ('{"edge": {"red": 1}}', "a|b")])
def test_filtration_errors(text, msg):
    with pytest.raises(tio.ParseError, match=msg):
        tio.parse_filtration(text, star_rrbb(), "f.json")


@given(st.integers(1, 3).flatmap(lambda k: st.tuples(colored_graphs(6, k), edge_filtrations(k))))
def test_diagram_and_ec_roundtrip(data):
    g, f = data
    d, _ = persistence(g, f)
    assert tio.load_diagram(tio.dump_diagram(d)) == d
    e = ec_diagram(g, None, f)
    assert tio.load_ec(tio.dump_ec(e)) == e


def test_complex_roundtrip():
    rng = random.Random(2)
    for _ in range(20):
        k = random_complex(5, 2, rng)
        m = tio.parse_complex(tio.write_complex(k), color_table=k.color_table)
        assert m.f_vector() == k.f_vector()
        assert simplex_signature(m) == simplex_signature(k)


def test_simplex_family_parsing():
    k = tio.parse_complex("v 0 a\nv 1 b\nv 2 b\ns 0 1 2\n")
    fam = tio.parse_simplex_family('{"f0": {"a": 1, "b": 2}, "f1": {"a|b": 3, "b": 1}, "f2": {"a|b": 2}}', k)
    assert fam.f0 == {0: 1.0, 1: 2.0}
    assert fam.higher[1] == {(0, 1): 3.0, (1,): 1.0}
    with pytest.raises(tio.ParseError):
        tio.parse_simplex_family('{"f0": {"c": 1}}', k)
