import random

import pytest
from hypothesis import given, settings, strategies as st

from boxtopo import io as tio
from boxtopo.expressivity import (ConfigError, DescriptorConfig, PairVerdict, distinguish, read_manifest,
                                  run_pairs)
from boxtopo.families import (BLUE, RED, c6_vs_two_triangles, cycle, path_brrb, random_colored_graph,
                              random_relabeling, star_rrbb)
from boxtopo.filtration import EdgeFiltration, FiltrationSpec, VertexFiltration
from boxtopo.product_ph import ProductBudgetExceeded


def test_verdict_invariant():
    with pytest.raises(ValueError):
        PairVerdict(True, "inconclusive")
    with pytest.raises(ValueError):
        PairVerdict(False, "direct")


@pytest.mark.parametrize("kwargs", [dict(descriptor="PH"), dict(filtration="pagerank"),
                                    dict(descriptor="PH^V", filtration="forman-ricci"),
                                    dict(topo="betti"), dict(filtration=3)])
def test_bad_configs(kwargs):
    with pytest.raises(ConfigError):
        DescriptorConfig(**kwargs)


def test_components_separate_c6_from_two_triangles():
    g, h = c6_vs_two_triangles()
    assert distinguish(g, h, DescriptorConfig("PH^V", "degree")).stage == "direct"


def test_ec_cannot_separate_signature_equal_graphs():
    g, h = c6_vs_two_triangles()
    for cfg in (DescriptorConfig("EC", "degree"), DescriptorConfig("max-EC", "degree"),
                DescriptorConfig("GProd^V", "degree", topo="ec"),
                DescriptorConfig("GProd^E", "forman-ricci", virtual_node=True, topo="ec")):
        assert not distinguish(g, h, cfg).distinguished


def test_squares_separate_what_factor_ph_cannot():
    g, h = star_rrbb(), path_brrb()
    fv = VertexFiltration({RED: 2.0, BLUE: 1.0})
    fe = EdgeFiltration({(RED, RED): 1.0, (RED, BLUE): 2.0, (BLUE, BLUE): 3.0})
    assert not distinguish(g, h, DescriptorConfig("PH^V", FiltrationSpec(vertex=fv))).distinguished
    assert not distinguish(g, h, DescriptorConfig("PH^E", FiltrationSpec(edge=fe))).distinguished
    early = ((0, 1), (1, 1))
    pcs = [(0, 0), (0, 1), (1, 1)]
    fp = EdgeFiltration({(a, b): 1.0 if (a, b) == early else 2.0
                         for i, a in enumerate(pcs) for b in pcs[i:]})
    v = distinguish(g, h, DescriptorConfig("GProd^E", FiltrationSpec(edge=fp)))
    assert v.distinguished and v.stage.startswith("product")


def test_factor_differences_survive_the_virtual_node():
    # the virtual vertex enters first, so copies of each factor sit inside the product filtration
    g, h = c6_vs_two_triangles()
    spec = FiltrationSpec(vertex=VertexFiltration({0: 1.0}))
    assert distinguish(g, h, DescriptorConfig("PH^V", spec)).distinguished
    for f in (spec, "degree", "closeness"):
        assert distinguish(g, h, DescriptorConfig("GProd^V", f, virtual_node=True)).distinguished


@given(st.integers(0, 10**6))
@settings(max_examples=25)
def test_relabeling_is_never_distinguished(seed):
    rng = random.Random(seed)
    g = random_colored_graph(rng.randint(1, 5), 0.5, 2, rng)
    h = random_relabeling(g, rng)
    for d, f in (("PH^V", "closeness"), ("PH^E", "forman-ricci"), ("EC", "betweenness"),
                 ("GProd^V", "betweenness"), ("GProd^E", "forman-ricci")):
        for virtual in (False, True):
            cfg = DescriptorConfig(d, f, virtual_node=virtual)
            assert not distinguish(g, h, cfg).distinguished


def test_product_budget():
    g = cycle(20)
    with pytest.raises(ProductBudgetExceeded):
        distinguish(g, g, DescriptorConfig("GProd^V", "degree", max_product_vertices=100))


def write_pair(path, g, h):
    with open(path, "w") as fh:
        fh.write(tio.write_graph6(g) + "\n" + tio.write_graph6(h) + "\n")


def test_run_pairs_with_manifest(tmp_path, caplog):
    g, h = c6_vs_two_triangles()
    write_pair(tmp_path / "a.g6", g, h)
    write_pair(tmp_path / "b.g6", g, random_relabeling(g, random.Random(1)))
    write_pair(tmp_path / "c.g6", h, h)
    (tmp_path / "broken.g6").write_text("C~\n")
    (tmp_path / "manifest.csv").write_text("file,category\na.g6,basic\nb.g6,basic\nc.g6,other\n")
    assert read_manifest(str(tmp_path))["c.g6"] == "other"
    rep = run_pairs(str(tmp_path), DescriptorConfig("PH^V", "degree"))
    rows = {r.category: (r.pairs, r.distinguished) for r in rep.rows}
    assert rows == {"basic": (2, 1), "other": (1, 0)}
    assert rep.skipped == 1
    assert "skipping" in caplog.text
    assert rep.to_csv().splitlines()[0] == "category,pairs,distinguished,accuracy"


def test_run_pairs_parallel_matches_serial(tmp_path):
    rng = random.Random(5)
    for i in range(6):
        g = random_colored_graph(6, 0.4, 1, rng).recolor([0] * 6, ("default",))
        h = random_colored_graph(6, 0.4, 1, rng).recolor([0] * 6, ("default",))
        write_pair(tmp_path / f"p{i}.g6", g, h)
    cfg = DescriptorConfig("GProd^V", "degree")
    serial = run_pairs(str(tmp_path), cfg)
    parallel = run_pairs(str(tmp_path), cfg, jobs=2)
    assert serial.to_csv() == parallel.to_csv()
