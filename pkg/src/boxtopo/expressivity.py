"""Product-based discrimination of graph pairs and the dataset runner.

A pair (G, H) is compared through G □ G against G □ H and then G □ G
against H □ H; any difference proves G and H non-isomorphic. The plain
descriptors compare G and H directly.
"""

from __future__ import annotations

import csv
import io as _io
import logging
import os
from collections import OrderedDict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .ec import ec_diagram
from .filtration import (EdgeFiltration, FiltrationError, FiltrationSpec, VertexFiltration,
                         generate_filtration, max_edge_from_vertex, product_edge_filtration,
                         product_vertex_filtration, GENERATORS, VERTEX_GENERATORS)
from .graph import ColoredGraph, add_virtual, box_product, is_virtual, virtual_color
from .persistence import INF, persistence
from .product_ph import DEFAULT_MAX_VERTICES, ProductBudgetExceeded

log = logging.getLogger(__name__)

DESCRIPTORS = ("PH^V", "PH^E", "EC", "max-EC", "GProd^V", "GProd^E")
STAGES = ("direct", "product-GG-vs-GH", "product-GG-vs-HH", "inconclusive")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class DescriptorConfig:
    """What to compare and how.

    ``filtration`` is a generator name or a FiltrationSpec. Generated
    filtrations are recomputed on every graph compared (on the product
    itself for GProd); a FiltrationSpec is color based, keyed either on the
    factor colors (lifted to the product) or directly on product colors.
    ``topo`` picks persistence or Euler characteristic on the products.
    """

    descriptor: str = "GProd^V"
    filtration: object = "degree"
    virtual_node: bool = False
    topo: str = "ph"
    max_product_vertices: int = DEFAULT_MAX_VERTICES

    def __post_init__(self):
        if self.descriptor not in DESCRIPTORS:
            raise ConfigError(f"unknown descriptor {self.descriptor!r}; expected one of {DESCRIPTORS}")
        if self.topo not in ("ph", "ec"):
            raise ConfigError("topo must be 'ph' or 'ec'")
        f = self.filtration
        if isinstance(f, str):
            if f not in GENERATORS:
                raise ConfigError(f"unknown generator {f!r}; expected one of {GENERATORS}")
            if self.level == "vertex" and f not in VERTEX_GENERATORS:
                raise ConfigError(f"{self.descriptor} needs a vertex-level generator, got {f!r}")
        elif not isinstance(f, FiltrationSpec):
            raise ConfigError("filtration must be a generator name or a FiltrationSpec")

    @property
    def is_product(self) -> bool:
        return self.descriptor.startswith("GProd")

    @property
    def level(self) -> str:
        if self.descriptor in ("PH^V", "GProd^V", "max-EC"):
            return "vertex"
        if self.descriptor in ("PH^E", "GProd^E"):
            return "edge"
        return "both"

    @property
    def uses_ec(self) -> bool:
        return self.descriptor in ("EC", "max-EC") or (self.is_product and self.topo == "ec")


@dataclass(frozen=True)
class PairVerdict:
    distinguished: bool
    stage: str

    def __post_init__(self):
        if self.distinguished == (self.stage == "inconclusive"):
            raise ValueError("a verdict is distinguished exactly when its stage is not inconclusive")


# --- filtrations on the compared graphs --------------------------------------------

def _span_bound(kind: str, n: int) -> float:
    """Upper bound on (max - min) of a generator's values on any graph with ``n`` vertices."""
    if kind == "degree":
        return float(n)
    if kind == "betweenness":
        return float(n * n)
    if kind == "closeness":
        return 1.0
    return float(2 * n)


def _generated(g: ColoredGraph, kind: str, level: str, offsets=None):
    """Structural filtration(s) of ``g`` for the requested level.

    Edge-level filtrations built here put every vertex at -inf so graphs
    are compared on a common floor.
    """
    g2, f = generate_filtration(g, kind, offsets)
    fv = fe = None
    if isinstance(f, VertexFiltration):
        if level in ("vertex", "both"):
            fv = f
        if level in ("edge", "max"):
            fe = max_edge_from_vertex(f, floor=-INF)
        if level == "max":
            fv = f
    else:
        fe = EdgeFiltration(f.values, -INF, injective_inputs=False)
    return g2, fv, fe


def _is_product_keyed(spec: FiltrationSpec) -> bool:
    if spec.vertex is not None and spec.vertex.values:
        return isinstance(next(iter(spec.vertex.values)), tuple)
    if spec.edge is not None and spec.edge.values:
        return isinstance(next(iter(spec.edge.values))[0], tuple)
    return False


def _with_virtual_value(spec: FiltrationSpec, virtual: int) -> FiltrationSpec:
    """Give the virtual color a vertex value below every other one."""
    if spec.vertex is None:
        return spec
    vals = dict(spec.vertex.values)
    vals[virtual] = min(vals.values(), default=1.0) - 1.0
    return FiltrationSpec(VertexFiltration(vals, spec.vertex.ordered), spec.edge)


def _spec_parts(spec: FiltrationSpec, level: str):
    fv, fe = spec.vertex, spec.edge
    if level == "vertex":
        fe = None
    elif level == "edge":
        if fe is None and fv is not None:
            fe = max_edge_from_vertex(fv)
        fv = None
    elif level == "max":
        if fv is None:
            raise ConfigError("max-EC needs a vertex filtration")
        fe = max_edge_from_vertex(fv)
    if fv is None and fe is None:
        raise ConfigError(f"filtration spec has no part usable at level {level!r}")
    return fv, fe


def _level(cfg: DescriptorConfig) -> str:
    if cfg.descriptor == "max-EC":
        return "max"
    return cfg.level


# --- descriptors -----------------------------------------------------------

@dataclass
class _Filtered:
    graph: ColoredGraph
    fv: object
    fe: object


def _direct(g: ColoredGraph, cfg: DescriptorConfig) -> _Filtered:
    lvl = _level(cfg)
    if isinstance(cfg.filtration, str):
        return _Filtered(*_generated(g, cfg.filtration, lvl))
    return _Filtered(g, *_spec_parts(cfg.filtration, lvl))


def _strip(g: ColoredGraph) -> ColoredGraph:
    return g.recolor([0] * g.n, ("default",))


def _tiers(p: ColoredGraph) -> list[int]:
    table = p.color_table
    return [2 - is_virtual(a, table) - is_virtual(b, table) for a, b in p.factor_colors]


def _product(a: ColoredGraph, b: ColoredGraph, cfg: DescriptorConfig, n_max: int) -> _Filtered:
    lvl = _level(cfg)
    generated = isinstance(cfg.filtration, str)
    if generated:
        a, b = _strip(a), _strip(b)
    if cfg.virtual_node:
        a, b = add_virtual(a), add_virtual(b)
    if a.n * b.n > cfg.max_product_vertices:
        raise ProductBudgetExceeded(
            f"product has {a.n * b.n} vertices, budget is {cfg.max_product_vertices}")
    p = box_product(a, b)
    if generated:
        offsets = None
        if cfg.virtual_node:
            # virtual corner first, then the two factor copies, then the core product
            unit = _span_bound(cfg.filtration, n_max) + 1.0
            offsets = [t * unit for t in _tiers(p)]
        return _Filtered(*_generated(p, cfg.filtration, lvl, offsets))
    spec = cfg.filtration
    if _is_product_keyed(spec):
        return _Filtered(p, *_spec_parts(spec, lvl))
    if cfg.virtual_node:
        spec = _with_virtual_value(spec, virtual_color(a.color_table))
    fv, fe = _spec_parts(spec, lvl)
    if fv is not None:
        fv = product_vertex_filtration(fv, fv)
    if fe is not None:
        fe = product_edge_filtration(fe, fe)
    return _Filtered(p, fv, fe)


def _ph_key(x: _Filtered):
    out = []
    for f in (x.fv, x.fe):
        out.append(None if f is None else persistence(x.graph, f, trace=False)[0])
    return tuple(out)


def _differ(x: _Filtered, y: _Filtered, use_ec: bool) -> bool:
    if not use_ec:
        return _ph_key(x) != _ph_key(y)
    vv = ev = None
    if x.fv is not None:
        vv = sorted(set(x.fv.critical_values()) | set(y.fv.critical_values()))
    if x.fe is not None:
        ev = sorted(set(x.fe.critical_values()) | set(y.fe.critical_values()))
    dx = ec_diagram(x.graph, x.fv, x.fe, vertex_values=vv, edge_values=ev)
    dy = ec_diagram(y.graph, y.fv, y.fe, vertex_values=vv, edge_values=ev)
    return dx != dy


def distinguish(g: ColoredGraph, h: ColoredGraph, cfg: DescriptorConfig) -> PairVerdict:
    """Compare ``g`` and ``h`` under ``cfg``; a difference at any stage proves non-isomorphism."""
    if not cfg.is_product:
        if _differ(_direct(g, cfg), _direct(h, cfg), cfg.uses_ec):
            return PairVerdict(True, "direct")
        return PairVerdict(False, "inconclusive")
    n_max = max(g.n, h.n) + cfg.virtual_node
    n_max *= n_max
    gg = _product(g, g, cfg, n_max)
    if _differ(gg, _product(g, h, cfg, n_max), cfg.uses_ec):
        return PairVerdict(True, "product-GG-vs-GH")
    if _differ(gg, _product(h, h, cfg, n_max), cfg.uses_ec):
        return PairVerdict(True, "product-GG-vs-HH")
    return PairVerdict(False, "inconclusive")


# --- dataset runner --------------------------------------------------------------

@dataclass
class CategoryRow:
    category: str
    pairs: int
    distinguished: int

    @property
    def accuracy(self) -> float:
        return self.distinguished / self.pairs if self.pairs else 0.0


@dataclass
class PairsReport:
    rows: list[CategoryRow]
    skipped: int = 0

    def to_csv(self) -> str:
        buf = _io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["category", "pairs", "distinguished", "accuracy"])
        for r in self.rows:
            w.writerow([r.category, r.pairs, r.distinguished, f"{r.accuracy:.4f}"])
        return buf.getvalue()


def read_manifest(directory: str) -> dict[str, str]:
    """``manifest.csv`` with columns ``file,category``; missing manifest means one category."""
    path = os.path.join(directory, "manifest.csv")
    if not os.path.exists(path):
        return {}
    with open(path, newline="", encoding="utf-8") as fh:
        return {row["file"].strip(): row["category"].strip() for row in csv.DictReader(fh)}


def _load_pair(path: str):
    from .io import ParseError, parse_graph6
    try:
        with open(path, encoding="ascii") as fh:
            graphs = parse_graph6(fh.read(), path)
    except (OSError, UnicodeDecodeError, ParseError) as exc:
        log.warning("skipping %s: %s", path, exc)
        return None
    if len(graphs) != 2:
        log.warning("skipping %s: expected 2 graphs, found %d", path, len(graphs))
        return None
    return graphs


def _verdict_job(args):
    g, h, cfg = args
    return distinguish(g, h, cfg).distinguished


def run_pairs(directory: str, cfg: DescriptorConfig, jobs: int = 1) -> PairsReport:
    """Distinguish every pair file in ``directory`` and aggregate accuracy per category."""
    manifest = read_manifest(directory)
    files = sorted(f for f in os.listdir(directory) if f.endswith(".g6"))
    todo, cats, skipped = [], [], 0
    for f in files:
        pair = _load_pair(os.path.join(directory, f))
        if pair is None:
            skipped += 1
            continue
        todo.append((pair[0], pair[1], cfg))
        cats.append(manifest.get(f, "all"))
    if jobs > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_verdict_job, todo))
    else:
        results = [_verdict_job(t) for t in todo]
    agg: OrderedDict[str, CategoryRow] = OrderedDict()
    for c, ok in zip(cats, results):
        row = agg.setdefault(c, CategoryRow(c, 0, 0))
        row.pairs += 1
        row.distinguished += bool(ok)
    return PairsReport(sorted(agg.values(), key=lambda r: r.category), skipped)


__all__ = ["DescriptorConfig", "PairVerdict", "distinguish", "run_pairs", "PairsReport",
           "ConfigError", "FiltrationError", "DESCRIPTORS", "STAGES"]
