"""Command-line entry point.

Exit codes: 0 success, 1 usage error, 2 input error, 3 product size budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import io as tio
from .bench import bench_run, rows_to_csv
from .ec import ec_diagram, max_ec
from .expressivity import ConfigError, DescriptorConfig, distinguish, run_pairs, DESCRIPTORS
from .filtration import (GENERATORS, EdgeFiltration, FiltrationError, FiltrationSpec,
                         VertexFiltration, generate_filtration, max_edge_from_vertex)
from .graph import ColorTableMismatch, box_product
from .persistence import PersistenceDiagram, persistence
from .product_ph import (DEFAULT_MAX_VERTICES, ProductBudgetExceeded, naive_prod_ph, prod_ph)
from .simplicial import ComplexError, ec_diagram_simplicial, max_ec_simplicial

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _emit(text: str, out: str | None) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load(paths, filtration: str | None):
    """Graphs re-expressed on one shared color table, plus the filtration file text if any."""
    graphs = [tio.read_graph(p) for p in paths]
    ftext = None
    labels = set()
    for g in graphs:
        labels.update(g.color_table)
    if filtration is not None and filtration not in GENERATORS:
        ftext = _read(filtration)
        try:
            labels |= tio.filtration_labels(json.loads(ftext))
        except (json.JSONDecodeError, ValueError, AttributeError) as exc:
            raise tio.ParseError(f"bad filtration file: {exc}", None, filtration) from None
    table = tuple(sorted(labels))
    return [tio.retable(g, table) for g in graphs], ftext


def _filtration(g, arg: str, ftext: str | None, level: str):
    """Filtration for one graph; generators recolor the graph by value class."""
    if arg in GENERATORS:
        g2, f = generate_filtration(g, arg)
        if level == "edge" and isinstance(f, VertexFiltration):
            f = max_edge_from_vertex(f)
        if level == "vertex" and isinstance(f, EdgeFiltration):
            raise FiltrationError(f"{arg} is an edge-level generator")
        return g2, FiltrationSpec(f if isinstance(f, VertexFiltration) else None,
                                  f if isinstance(f, EdgeFiltration) else None)
    return g, tio.parse_filtration(ftext, g, arg)


def _pick(spec: FiltrationSpec, level: str):
    if level == "vertex":
        if spec.vertex is None:
            raise FiltrationError("filtration has no vertex part")
        return spec.vertex
    if spec.edge is None:
        if spec.vertex is None:
            raise FiltrationError("filtration has no edge part")
        return max_edge_from_vertex(spec.vertex)
    return spec.edge


def _restrict(d: PersistenceDiagram, dim: str) -> PersistenceDiagram:
    return d if dim == "both" else d.restrict(int(dim))


def cmd_ph(a):
    (g,), ftext = _load([a.graph], a.filtration)
    g, spec = _filtration(g, a.filtration, ftext, a.level)
    d, _ = persistence(g, _pick(spec, a.level), trace=False)
    _emit(tio.dump_diagram(_restrict(d, a.dim)), a.out)


def cmd_ec(a):
    (g,), ftext = _load([a.graph], a.filtration)
    g, spec = _filtration(g, a.filtration, ftext, "both")
    if a.max:
        if spec.vertex is None:
            raise FiltrationError("max-EC needs a vertex filtration")
        d = max_ec(g, spec.vertex)
    else:
        d = ec_diagram(g, spec.vertex, spec.edge)
    _emit(tio.dump_ec(d), a.out)


def cmd_product(a):
    (g, h), _ = _load([a.g, a.h], None)
    if g.n * h.n > a.max_vertices:
        raise ProductBudgetExceeded(f"product has {g.n * h.n} vertices, budget is {a.max_vertices}")
    _emit(tio.write_edge_list(box_product(g, h)), a.out)


def cmd_prod_ph(a):
    fh_arg = a.filtration_h or a.filtration
    (g, h), ftext = _load([a.g, a.h], a.filtration)
    if fh_arg in GENERATORS or a.filtration in GENERATORS:
        raise FiltrationError("prod-ph needs color-based filtration files shared by both factors")
    fh_text = _read(fh_arg) if a.filtration_h else ftext
    fg = _pick(tio.parse_filtration(ftext, g, a.filtration), a.level)
    fh = _pick(tio.parse_filtration(fh_text, h, fh_arg), a.level)
    if a.algo == "fast":
        d = prod_ph(g, fg, h, fh)
    else:
        d = naive_prod_ph(g, fg, h, fh, max_vertices=a.max_vertices)
    _emit(tio.dump_diagram(_restrict(d, a.dim)), a.out)


def _config(a) -> DescriptorConfig:
    if getattr(a, "config", None):
        try:
            obj = json.loads(_read(a.config))
        except json.JSONDecodeError as exc:
            raise tio.ParseError(f"invalid JSON: {exc.msg}", exc.lineno, a.config) from None
        filt = obj.get("filtration", "degree")
        if not isinstance(filt, str):
            raise ConfigError("config files take a generator name as filtration")
        return DescriptorConfig(obj.get("descriptor", "GProd^V"), filt,
                                bool(obj.get("virtual_node", False)), obj.get("topo", "ph"),
                                int(obj.get("max_product_vertices", a.max_vertices)))
    return DescriptorConfig(a.descriptor, a.filtration, a.virtual, a.topo, a.max_vertices)


def cmd_distinguish(a):
    if a.filtration in GENERATORS:
        (g, h), _ = _load([a.g, a.h], None)
        cfg = _config(a)
    else:
        (g, h), ftext = _load([a.g, a.h], a.filtration)
        spec = tio.parse_filtration(ftext, g, a.filtration)
        cfg = DescriptorConfig(a.descriptor, spec, a.virtual, a.topo, a.max_vertices)
    v = distinguish(g, h, cfg)
    _emit(json.dumps({"distinguished": v.distinguished, "stage": v.stage}), a.out)


def cmd_pairs(a):
    rep = run_pairs(a.directory, _config(a), jobs=a.jobs)
    if rep.skipped:
        print(f"warning: skipped {rep.skipped} unreadable pair file(s)", file=sys.stderr)
    _emit(rep.to_csv(), a.out)


def cmd_bench(a):
    try:
        sizes = [int(x) for x in a.sizes.split(",") if x.strip()]
    except ValueError:
        raise UsageError("--sizes takes a comma-separated list of integers") from None
    levels = ("vertex", "edge") if a.level == "both" else (a.level,)
    rows = bench_run(sizes, a.reps, levels, seed=a.seed, max_vertices=a.max_vertices)
    _emit(rows_to_csv(rows), a.out)


def cmd_simplicial_ec(a):
    k = tio.parse_complex(_read(a.complex), a.complex)
    text = _read(a.filtration)
    if a.max:
        try:
            f0 = {k.color_table.index(c): float(v) for c, v in json.loads(text)["f0"].items()}
        except (KeyError, ValueError, json.JSONDecodeError) as exc:
            raise tio.ParseError(f"bad vertex function: {exc}", None, a.filtration) from None
        lists = max_ec_simplicial(k, f0)
    else:
        lists = ec_diagram_simplicial(k, tio.parse_simplex_family(text, k, a.filtration))
    _emit(json.dumps({"lists": lists}), a.out)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="boxtopo", description="Topological descriptors of colored graphs and box products.")
    sub = p.add_subparsers(dest="cmd", parser_class=_Parser)
    sub.required = True

    def common(sp, out=True):
        if out:
            sp.add_argument("--out", help="write to this file instead of stdout")
        sp.add_argument("--max-vertices", type=int, default=DEFAULT_MAX_VERTICES,
                        help="product vertex budget")

    s = sub.add_parser("ph", help="persistence diagram of one graph")
    s.add_argument("graph")
    s.add_argument("--filtration", required=True, help="filtration JSON file or generator name")
    s.add_argument("--level", choices=("vertex", "edge"), default="vertex")
    s.add_argument("--dim", choices=("0", "1", "both"), default="both")
    common(s)
    s.set_defaults(fn=cmd_ph)

    s = sub.add_parser("ec", help="Euler characteristic diagram of one graph")
    s.add_argument("graph")
    s.add_argument("--filtration", required=True)
    s.add_argument("--max", action="store_true", help="max-EC from the vertex part")
    common(s)
    s.set_defaults(fn=cmd_ec)

    s = sub.add_parser("product", help="write the box product as an edge list")
    s.add_argument("g")
    s.add_argument("h")
    common(s)
    s.set_defaults(fn=cmd_product)

    s = sub.add_parser("prod-ph", help="persistence of a product filtration")
    s.add_argument("g")
    s.add_argument("h")
    s.add_argument("--filtration", required=True, help="filtration JSON for G (and H)")
    s.add_argument("--filtration-h", help="separate filtration JSON for H")
    s.add_argument("--algo", choices=("fast", "naive"), default="fast")
    s.add_argument("--level", choices=("vertex", "edge"), default="vertex")
    s.add_argument("--dim", choices=("0", "1", "both"), default="both")
    common(s)
    s.set_defaults(fn=cmd_prod_ph)

    def descriptor_args(sp, positional_filtration=False):
        sp.add_argument("--descriptor", choices=DESCRIPTORS, default="GProd^V")
        sp.add_argument("--filtration", default="degree", help="generator name or filtration JSON")
        sp.add_argument("--virtual", action="store_true", help="adjoin a virtual node to each factor")
        sp.add_argument("--topo", choices=("ph", "ec"), default="ph")

    s = sub.add_parser("distinguish", help="try to prove two graphs non-isomorphic")
    s.add_argument("g")
    s.add_argument("h")
    descriptor_args(s)
    common(s)
    s.set_defaults(fn=cmd_distinguish)

    s = sub.add_parser("pairs", help="run distinguish over a directory of graph6 pair files")
    s.add_argument("directory")
    s.add_argument("--config", help="JSON with descriptor, filtration, virtual_node, topo")
    descriptor_args(s)
    s.add_argument("--jobs", type=int, default=1)
    common(s)
    s.set_defaults(fn=cmd_pairs)

    s = sub.add_parser("bench", help="time fast against naive product persistence")
    s.add_argument("--sizes", default="50,100,200,400")
    s.add_argument("--reps", type=int, default=3)
    s.add_argument("--level", choices=("vertex", "edge", "both"), default="both")
    s.add_argument("--seed", type=int, default=0)
    common(s)
    s.set_defaults(fn=cmd_bench)

    s = sub.add_parser("simplicial-ec", help="EC diagram of a colored simplicial complex")
    s.add_argument("complex")
    s.add_argument("--filtration", required=True, help="JSON with f0 and optional f1, f2, ...")
    s.add_argument("--max", action="store_true", help="max-EC from f0 only")
    common(s, out=True)
    s.set_defaults(fn=cmd_simplicial_ec)
    return p


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        args = build_parser().parse_args(argv)
        args.fn(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except ProductBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except FileNotFoundError as exc:
        print(f"error: file not found: {exc.filename}", file=sys.stderr)
        return EXIT_INPUT
    except (OSError, tio.ParseError, FiltrationError, ConfigError, ColorTableMismatch,
            ComplexError, ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
