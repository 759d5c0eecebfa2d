"""Text formats: edge lists, graph6, filtration/diagram/EC JSON and complex files."""

from __future__ import annotations

import json
from typing import Sequence

import networkx as nx

from .ec import ECDiagram
from .filtration import EdgeFiltration, FiltrationSpec, VertexFiltration
from .graph import ColoredGraph, pair_key
from .persistence import INF, PersistenceDiagram
from .simplicial import ColoredComplex, ComplexError


class ParseError(ValueError):
    def __init__(self, msg: str, line: int | None = None, source: str = "<input>"):
        self.line = line
        where = f"{source}:{line}" if line is not None else source
        super().__init__(f"{where}: {msg}")


# --- edge lists ---------------------------------------------------------------

def _content_lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line.split()


def _parse_int(tok: str, no: int, source: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", no, source) from None


def edge_list_labels(text: str, source: str = "<input>") -> list[str]:
    return sorted({toks[2] for _, toks in _content_lines(text) if toks[0] == "v" and len(toks) == 3})


def parse_edge_list(text: str, source: str = "<input>", color_table: Sequence[str] | None = None) -> ColoredGraph:
    """Parse ``v <idx> <label>`` / ``e <u> <v>`` lines.

    The color table is the sorted set of labels unless ``color_table`` (a
    superset) is given, which lets several files share one table.
    """
    labels: dict[int, str] = {}
    edges: list[tuple[int, int, int]] = []
    for no, toks in _content_lines(text):
        kind = toks[0]
        if kind == "v":
            if len(toks) != 3:
                raise ParseError("vertex line needs 'v <idx> <color>'", no, source)
            v = _parse_int(toks[1], no, source)
            if v in labels:
                raise ParseError(f"vertex {v} declared twice", no, source)
            labels[v] = toks[2]
        elif kind == "e":
            if len(toks) != 3:
                raise ParseError("edge line needs 'e <u> <v>'", no, source)
            edges.append((_parse_int(toks[1], no, source), _parse_int(toks[2], no, source), no))
        else:
            raise ParseError(f"unknown record type {kind!r}", no, source)
    n = len(labels)
    if sorted(labels) != list(range(n)):
        raise ParseError("vertex indices must be dense from 0", None, source)
    table = tuple(color_table) if color_table is not None else tuple(sorted(set(labels.values())))
    missing = set(labels.values()) - set(table)
    if missing:
        raise ParseError(f"labels {sorted(missing)} not in the color table", None, source)
    seen = set()
    norm = []
    for u, v, no in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"edge ({u}, {v}) references an undeclared vertex (n={n})", no, source)
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", no, source)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(f"duplicate edge {key}", no, source)
        seen.add(key)
        norm.append(key)
    colors = [table.index(labels[v]) for v in range(n)]
    return ColoredGraph.from_edges(n, norm, colors, table or ("default",))


def write_edge_list(g: ColoredGraph) -> str:
    lines = [f"v {v} {g.label_of(c)}" for v, c in enumerate(g.colors)]
    lines += [f"e {u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def retable(g: ColoredGraph, table: Sequence[str]) -> ColoredGraph:
    """Re-express ``g``'s colors as indices into the superset ``table``."""
    table = tuple(table)
    return g.recolor([table.index(g.color_table[c]) for c in g.colors], table)


# --- graph6 -----------------------------------------------------------------------

def parse_graph6(text: str, source: str = "<input>") -> list[ColoredGraph]:
    """One graph per non-blank line; every vertex gets the single default color."""
    out = []
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line.startswith(">>graph6<<"):
            line = line[len(">>graph6<<"):]
        if not line:
            continue
        try:
            G = nx.from_graph6_bytes(line.encode("ascii"))
        except (ValueError, nx.NetworkXError, UnicodeEncodeError) as exc:
            raise ParseError(f"bad graph6 data: {exc}", no, source) from None
        out.append(ColoredGraph.from_edges(G.number_of_nodes(), G.edges()))
    return out


def write_graph6(g: ColoredGraph) -> str:
    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from(g.edges)
    return nx.to_graph6_bytes(G, header=False).decode("ascii").strip()


def read_graph(path: str, color_table: Sequence[str] | None = None) -> ColoredGraph:
    """Load a single graph; ``.g6`` files use graph6, anything else the edge-list format."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if path.endswith(".g6"):
        graphs = parse_graph6(text, path)
        if len(graphs) != 1:
            raise ParseError(f"expected one graph, found {len(graphs)}", None, path)
        return graphs[0]
    return parse_edge_list(text, path, color_table)


# --- filtrations ----------------------------------------------------------------

def _split_pair(key: str) -> tuple[str, str]:
    depth = 0
    for i, ch in enumerate(key):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "|" and depth == 0:
            return key[:i].strip(), key[i + 1:].strip()
    raise ValueError(f"edge key {key!r} must look like 'a|b'")


def filtration_labels(obj: dict) -> set[str]:
    labels = set(obj.get("vertex", {}))
    for k in obj.get("edge", {}):
        labels.update(_split_pair(k))
    return {x for x in labels if not x.startswith("(")}


def parse_filtration(text: str, g: ColoredGraph, source: str = "<input>") -> FiltrationSpec:
    """Read ``{"vertex": {label: value}, "edge": {"a|b": value}, "floor": x}`` against ``g``'s colors."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, source) from None
    if not isinstance(obj, dict) or not ({"vertex", "edge"} & set(obj)):
        raise ParseError("filtration needs a 'vertex' and/or 'edge' object", None, source)
    spec = FiltrationSpec()
    try:
        if "vertex" in obj:
            spec.vertex = VertexFiltration({g.color_id(k): float(v) for k, v in obj["vertex"].items()})
        if "edge" in obj:
            vals = {}
            for k, v in obj["edge"].items():
                a, b = _split_pair(k)
                vals[pair_key(g.color_id(a), g.color_id(b))] = float(v)
            floor = obj.get("floor")
            spec.edge = EdgeFiltration(vals, None if floor is None else float(floor))
    except (KeyError, ValueError, TypeError) as exc:
        raise ParseError(str(exc), None, source) from None
    return spec


def dump_filtration(spec: FiltrationSpec, g: ColoredGraph) -> str:
    obj = {}
    if spec.vertex is not None:
        obj["vertex"] = {g.label_of(c): v for c, v in sorted(spec.vertex.values.items())}
    if spec.edge is not None:
        obj["edge"] = {f"{g.label_of(a)}|{g.label_of(b)}": v
                       for (a, b), v in sorted(spec.edge.values.items())}
        obj["floor"] = spec.edge.floor
    return json.dumps(obj, indent=2)


# --- diagrams -------------------------------------------------------------------

def _num(x: float) -> str:
    if x == INF:
        return "inf"
    if x == -INF:
        return "-inf"
    return repr(float(x))


def _unnum(s) -> float:
    if isinstance(s, (int, float)):
        return float(s)
    if s in ("inf", "+inf"):
        return INF
    if s == "-inf":
        return -INF
    return float(s)


def diagram_to_obj(d: PersistenceDiagram) -> dict:
    return {f"dim{k}": [[_num(b), _num(x)] for b, x in d.pairs(k)] for k in (0, 1)}


def dump_diagram(d: PersistenceDiagram) -> str:
    return json.dumps(diagram_to_obj(d))


def load_diagram(text: str) -> PersistenceDiagram:
    obj = json.loads(text)
    d = PersistenceDiagram()
    for key, pairs in obj.items():
        dim = int(key[3:])
        for b, x in pairs:
            d.add(dim, _unnum(b), _unnum(x))
    return d


def ec_to_obj(d: ECDiagram) -> dict:
    return {"vertex": d.vertex, "edge": d.edge,
            "vertex_values": [float(x) for x in d.vertex_values],
            "edge_values": [float(x) for x in d.edge_values]}


def dump_ec(d: ECDiagram) -> str:
    return json.dumps(ec_to_obj(d))


def load_ec(text: str) -> ECDiagram:
    obj = json.loads(text)
    return ECDiagram(list(obj.get("vertex", [])), list(obj.get("edge", [])),
                     [float(x) for x in obj.get("vertex_values", [])],
                     [float(x) for x in obj.get("edge_values", [])])


# --- simplicial complexes -------------------------------------------------------

def parse_complex(text: str, source: str = "<input>", color_table: Sequence[str] | None = None) -> ColoredComplex:
    """``v <idx> <color>`` declarations plus ``s <v0> ... <vk>`` maximal simplices."""
    labels: dict[int, str] = {}
    tops = []
    for no, toks in _content_lines(text):
        if toks[0] == "v":
            if len(toks) != 3:
                raise ParseError("vertex line needs 'v <idx> <color>'", no, source)
            labels[_parse_int(toks[1], no, source)] = toks[2]
        elif toks[0] == "s":
            if len(toks) < 2:
                raise ParseError("simplex line needs at least one vertex", no, source)
            tops.append((no, [_parse_int(t, no, source) for t in toks[1:]]))
        else:
            raise ParseError(f"unknown record type {toks[0]!r}", no, source)
    n = len(labels)
    if sorted(labels) != list(range(n)):
        raise ParseError("vertex indices must be dense from 0", None, source)
    table = tuple(color_table) if color_table is not None else tuple(sorted(set(labels.values())))
    missing = set(labels.values()) - set(table)
    if missing:
        raise ParseError(f"labels {sorted(missing)} not in the color table", None, source)
    colors = [table.index(labels[v]) for v in range(n)]
    for no, s in tops:
        if any(not 0 <= v < n for v in s):
            raise ParseError(f"simplex {s} references an undeclared vertex (n={n})", no, source)
    try:
        return ColoredComplex.from_maximal([s for _, s in tops], colors, table or ("default",))
    except ComplexError as exc:
        raise ParseError(str(exc), None, source) from None


def write_complex(k: ColoredComplex) -> str:
    lines = [f"v {v} {k.color_table[c]}" for v, c in enumerate(k.colors)]
    present = set(k.all_simplices())
    maximal = [s for s in present
               if not any(set(s) < set(t) for t in present if len(t) == len(s) + 1)]
    lines += ["s " + " ".join(map(str, s)) for s in sorted(maximal) if len(s) > 1]
    return "\n".join(lines) + "\n"


def parse_simplex_family(text: str, k: ColoredComplex, source: str = "<input>"):
    """``{"f0": {color: v}, "f1": {"a|b": v}, "f2": {"a|b|c": v}}``; keys are color sets."""
    from .simplicial import SimplexFiltrationFamily
    try:
        obj = json.loads(text)
        table = list(k.color_table)
        f0 = {table.index(c): float(v) for c, v in obj["f0"].items()}
        higher = {}
        for key, vals in obj.items():
            if key == "f0":
                continue
            i = int(key[1:])
            higher[i] = {tuple(sorted({table.index(x.strip()) for x in cs.split("|")})): float(v)
                         for cs, v in vals.items()}
        return SimplexFiltrationFamily(f0, higher)
    except (KeyError, ValueError, TypeError, json.JSONDecodeError) as exc:
        raise ParseError(f"bad simplex filtration: {exc}", None, source) from None

