"""Euler-characteristic diagrams and the signature characterization of their power."""

from __future__ import annotations

import random
from bisect import bisect_right
from dataclasses import dataclass, field
from itertools import combinations_with_replacement, permutations

from .filtration import EdgeFiltration, FiltrationSpec, VertexFiltration, max_edge_from_vertex
from .graph import ColoredGraph, ColorTableMismatch, ec_signature


@dataclass
class ECDiagram:
    vertex: list[int] = field(default_factory=list)
    edge: list[int] = field(default_factory=list)
    vertex_values: list[float] = field(default_factory=list)
    edge_values: list[float] = field(default_factory=list)


def euler_curve(g: ColoredGraph, f, values) -> list[int]:
    """``|V_t| - |E_t|`` of the sublevel graph at each ``t`` in ``values``."""
    vt, et = f.times(g)
    vt, et = sorted(vt), sorted(et)
    return [bisect_right(vt, t) - bisect_right(et, t) for t in values]


def ec_diagram(g: ColoredGraph, fv: VertexFiltration | None = None, fe: EdgeFiltration | None = None,
               *, vertex_values=None, edge_values=None) -> ECDiagram:
    """EC diagram sampled at every value the filtrations can produce, ascending.

    The edge part skips the vertex floor, where the sublevel is just the
    vertex set. ``vertex_values``/``edge_values`` override the sample points.
    """
    d = ECDiagram()
    if fv is not None:
        d.vertex_values = sorted(vertex_values if vertex_values is not None else fv.critical_values())
        d.vertex = euler_curve(g, fv, d.vertex_values)
    if fe is not None:
        vals = edge_values if edge_values is not None else fe.critical_values()
        d.edge_values = sorted(x for x in vals if x > fe.floor)
        d.edge = euler_curve(g, fe, d.edge_values)
    return d


def max_ec(g: ColoredGraph, f: VertexFiltration) -> ECDiagram:
    return ec_diagram(g, f, max_edge_from_vertex(f))


def signatures_equal(g: ColoredGraph, h: ColoredGraph) -> bool:
    if tuple(g.color_table) != tuple(h.color_table):
        raise ColorTableMismatch("signature comparison needs a shared color table")
    if g.n != h.n:
        return False
    return ec_signature(g) == ec_signature(h)


def _rank_filtration(order, colors) -> VertexFiltration:
    """Injective vertex filtration listing ``order`` first, then the remaining colors."""
    rest = [c for c in colors if c not in order]
    return VertexFiltration({c: float(i + 1) for i, c in enumerate(list(order) + rest)})


def _edge_rank_filtration(first, colors) -> EdgeFiltration:
    pairs = list(combinations_with_replacement(colors, 2))
    pairs.remove(first)
    return EdgeFiltration({p: float(i + 1) for i, p in enumerate([first] + pairs)})


def _witness_candidates(g: ColoredGraph, h: ColoredGraph):
    colors = list(range(len(g.color_table)))
    sg, sh = ec_signature(g), ec_signature(h)
    ev, eh = sg.edges, sh.edges
    # an edge-count difference shows at the first edge step when that pair comes first
    for p in sorted(set(ev) | set(eh)):
        if ev.get(p, 0) != eh.get(p, 0):
            f = _rank_filtration(p, colors)
            yield FiltrationSpec(f, _edge_rank_filtration(p, colors))
            if p[0] != p[1]:
                yield FiltrationSpec(f, max_edge_from_vertex(f))
                f2 = _rank_filtration(p[::-1], colors)
                yield FiltrationSpec(f2, max_edge_from_vertex(f2))
    for c in colors:
        if sg.chi_of_color(c) != sh.chi_of_color(c):
            f = _rank_filtration((c,), colors)
            yield FiltrationSpec(f, max_edge_from_vertex(f))
    # unequal vertex counts: every ordering of the colors, then constant functions
    for order in permutations(colors):
        f = _rank_filtration(order, colors)
        yield FiltrationSpec(f, max_edge_from_vertex(f))
    for p in combinations_with_replacement(colors, 2):
        f = _rank_filtration(p, colors)
        yield FiltrationSpec(f, _edge_rank_filtration(p, colors))


def spec_distinguishes(g: ColoredGraph, h: ColoredGraph, spec: FiltrationSpec) -> bool:
    return ec_diagram(g, spec.vertex, spec.edge) != ec_diagram(h, spec.vertex, spec.edge)


def find_ec_witness(g: ColoredGraph, h: ColoredGraph, *, max_orders: int = 5040) -> FiltrationSpec | None:
    """A filtration under which the EC diagrams of ``g`` and ``h`` differ, or None.

    Candidates follow the ordering arguments behind the signature
    characterization and each one is checked before it is returned. For
    equal vertex counts a witness exists exactly when the signatures
    differ. Graphs of different sizes may have identical EC diagrams for
    every filtration (a point and a path on three vertices, say), so there
    the result can be None even though the signatures differ.
    """
    if tuple(g.color_table) != tuple(h.color_table):
        raise ColorTableMismatch("witness search needs a shared color table")
    if g.n == h.n and ec_signature(g) == ec_signature(h):
        return None
    for k, spec in enumerate(_witness_candidates(g, h)):
        if k > max_orders:
            break
        if spec_distinguishes(g, h, spec):
            return spec
    return None


def random_filtration(n_colors: int, rng: random.Random, *, max_value: int = 4) -> FiltrationSpec:
    """Random full filtration on ``n_colors`` colors with small integer values (ties allowed)."""
    colors = range(n_colors)
    fv = VertexFiltration({c: float(rng.randint(1, max_value)) for c in colors})
    fe = EdgeFiltration({p: float(rng.randint(1, max_value))
                         for p in combinations_with_replacement(colors, 2)})
    return FiltrationSpec(fv, fe)


def battery(n_colors: int, size: int, seed: int = 0) -> list[FiltrationSpec]:
    rng = random.Random(seed)
    return [random_filtration(n_colors, rng) for _ in range(size)]


def battery_agrees(g, h, specs, *, use_max: bool = False) -> bool:
    """True if every filtration in ``specs`` gives ``g`` and ``h`` the same (max) EC diagram."""
    for s in specs:
        if use_max:
            if max_ec(g, s.vertex) != max_ec(h, s.vertex):
                return False
        elif spec_distinguishes(g, h, s):
            return False
    return True
