"""Color-based filtrations, sublevel graphs, product filtrations and generators."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Sequence

from .graph import ColoredGraph, pair_key

GENERATORS = ("degree", "betweenness", "closeness", "forman-ricci")
VERTEX_GENERATORS = ("degree", "betweenness", "closeness")


class FiltrationError(ValueError):
    pass


def _default_floor(values) -> float:
    lo = min(values, default=1.0)
    return 0.0 if lo > 0 else float(lo) - 1.0


@dataclass
class VertexFiltration:
    """Vertex-level filtration ``color -> value``; an edge enters with its later endpoint.

    With ``ordered=True`` the keys are ordered ``(color in G, color in H)``
    pairs, looked up through a product graph's ``factor_colors``.
    """

    values: dict
    ordered: bool = False
    injective_inputs: bool = True

    level = "vertex"

    def value(self, c) -> float:
        try:
            return self.values[c]
        except KeyError:
            raise FiltrationError(f"color {c!r} missing from vertex filtration") from None

    def vertex_times(self, g: ColoredGraph) -> list[float]:
        if self.ordered:
            if g.factor_colors is None:
                raise FiltrationError("ordered product filtration needs a product graph")
            return [self.value(c) for c in g.factor_colors]
        return [self.value(c) for c in g.colors]

    def times(self, g: ColoredGraph) -> tuple[list[float], list[float]]:
        vt = self.vertex_times(g)
        return vt, [max(vt[u], vt[v]) for u, v in g.edges]

    def critical_values(self) -> list[float]:
        return sorted(set(self.values.values()))

    def is_injective(self) -> bool:
        return len(set(self.values.values())) == len(self.values)


@dataclass
class EdgeFiltration:
    """Edge-level filtration keyed on unordered color pairs.

    Every vertex enters at ``floor``, which sits strictly below all edge values.
    """

    values: dict
    floor: float | None = None
    injective_inputs: bool = True

    level = "edge"

    def __post_init__(self):
        self.values = {pair_key(*k): float(v) for k, v in self.values.items()}
        if self.floor is None:
            self.floor = _default_floor(self.values.values())
        if self.values and min(self.values.values()) <= self.floor:
            raise FiltrationError("edge values must lie strictly above the vertex floor")

    def value(self, a, b) -> float:
        try:
            return self.values[pair_key(a, b)]
        except KeyError:
            raise FiltrationError(f"color pair {(a, b)!r} missing from edge filtration") from None

    def times(self, g: ColoredGraph) -> tuple[list[float], list[float]]:
        c = g.colors
        return [self.floor] * g.n, [self.value(c[u], c[v]) for u, v in g.edges]

    def critical_values(self) -> list[float]:
        return sorted(set(self.values.values()))

    def is_injective(self) -> bool:
        return len(set(self.values.values())) == len(self.values)


@dataclass
class ProductEdgeFiltration(EdgeFiltration):
    """Edge filtration on ``G □ H`` induced by edge filtrations of the factors.

    An edge moving along H takes the H value of its two H colors, and
    symmetrically for G; all product vertices enter at the common floor.
    """

    fg: EdgeFiltration = None
    fh: EdgeFiltration = None

    def __post_init__(self):
        self.values = {}
        if self.floor is None:
            self.floor = min(self.fg.floor, self.fh.floor)

    def times(self, g: ColoredGraph) -> tuple[list[float], list[float]]:
        if g.factor_shape is None:
            raise FiltrationError("product edge filtration needs a product graph")
        _, nh = g.factor_shape
        fc = g.factor_colors
        et = []
        for u, v in g.edges:
            (cg1, ch1), (cg2, ch2) = fc[u], fc[v]
            if u // nh == v // nh:
                et.append(self.fh.value(ch1, ch2))
            else:
                et.append(self.fg.value(cg1, cg2))
        return [self.floor] * g.n, et

    def critical_values(self) -> list[float]:
        return sorted(set(self.fg.values.values()) | set(self.fh.values.values()))


@dataclass
class FiltrationSpec:
    """A vertex part and/or an edge part, as read from a filtration file."""

    vertex: VertexFiltration | None = None
    edge: EdgeFiltration | None = None


@dataclass(frozen=True)
class SublevelGraph:
    vertices: frozenset
    edges: frozenset

    @property
    def chi(self) -> int:
        return len(self.vertices) - len(self.edges)

    def box(self, other: "SublevelGraph", n_other: int) -> "SublevelGraph":
        """Box product of two sublevel graphs, in the row-major indexing of the full product."""
        vs = frozenset(a * n_other + b for a in self.vertices for b in other.vertices)
        es = set()
        for a in self.vertices:
            for u, v in other.edges:
                es.add((a * n_other + u, a * n_other + v))
        for u, v in self.edges:
            for b in other.vertices:
                es.add((u * n_other + b, v * n_other + b))
        return SublevelGraph(vs, frozenset(es))


def sublevel(g: ColoredGraph, f, t: float) -> SublevelGraph:
    """The subgraph of ``g`` made of simplices with filtration value ``<= t``."""
    vt, et = f.times(g)
    verts = frozenset(v for v in range(g.n) if vt[v] <= t)
    edges = frozenset(e for e, x in zip(g.edges, et) if x <= t)
    return SublevelGraph(verts, edges)


def filtration_steps(*filtrations) -> list[float]:
    return sorted(set().union(*(f.critical_values() for f in filtrations)))


def max_edge_from_vertex(f: VertexFiltration, floor: float | None = None) -> EdgeFiltration:
    """Edge filtration whose value on ``(a, b)`` is the larger of the two vertex values."""
    keys = sorted(f.values)
    vals = {(a, b): max(f.values[a], f.values[b])
            for a, b in combinations_with_replacement(keys, 2)}
    if floor is None:
        floor = _default_floor(f.values.values())
    return EdgeFiltration(vals, floor)


def product_vertex_filtration(fg: VertexFiltration, fh: VertexFiltration) -> VertexFiltration:
    """Vertex filtration on ``G □ H``: a product vertex enters with its later factor.

    Keys are ordered factor-color pairs. Non-injective factor functions are
    accepted; the result then carries ``injective_inputs=False``.
    """
    vals = {(a, b): max(fg.values[a], fh.values[b]) for a in fg.values for b in fh.values}
    injective = fg.is_injective() and fh.is_injective()
    return VertexFiltration(vals, ordered=True, injective_inputs=injective)


def product_edge_filtration(fg: EdgeFiltration, fh: EdgeFiltration) -> ProductEdgeFiltration:
    injective = fg.is_injective() and fh.is_injective()
    positive = min(fg.values.values(), default=1) > 0 and min(fh.values.values(), default=1) > 0
    return ProductEdgeFiltration({}, min(fg.floor, fh.floor), injective and positive, fg=fg, fh=fh)


def generic_product_times(g: ColoredGraph, fg, h: ColoredGraph, fh) -> tuple[list[float], list[float]]:
    """Simplex times on ``g □ h`` whose sublevel at every ``t`` is ``g_t □ h_t``.

    Works for any mix of vertex- and edge-level factor filtrations.
    """
    vg, eg = fg.times(g)
    vh, eh = fh.times(h)
    nh = h.n
    vt = [max(a, b) for a in vg for b in vh]
    edges = []
    for i in range(g.n):
        for (a, b), t in zip(h.edges, eh):
            edges.append(((i * nh + a, i * nh + b), max(vg[i], t)))
    for (a, b), t in zip(g.edges, eg):
        for j in range(nh):
            edges.append(((a * nh + j, b * nh + j), max(t, vh[j])))
    edges.sort()
    return vt, [t for _, t in edges]


# --- structural generators -------------------------------------------------

def _bfs_order(adj, s):
    dist = [-1] * len(adj)
    sigma = [0] * len(adj)
    preds = [[] for _ in adj]
    dist[s], sigma[s] = 0, 1
    order = []
    q = deque([s])
    while q:
        v = q.popleft()
        order.append(v)
        for w in adj[v]:
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                q.append(w)
            if dist[w] == dist[v] + 1:
                sigma[w] += sigma[v]
                preds[w].append(v)
    return order, sigma, preds, dist


def betweenness(g: ColoredGraph) -> list[Fraction]:
    """Unnormalized betweenness centrality (Brandes), exact rationals."""
    adj = g.adjacency
    bc = [Fraction(0)] * g.n
    for s in range(g.n):
        order, sigma, preds, _ = _bfs_order(adj, s)
        delta = [Fraction(0)] * g.n
        for w in reversed(order):
            coeff = (1 + delta[w]) / sigma[w]
            for v in preds[w]:
                delta[v] += sigma[v] * coeff
            if w != s:
                bc[w] += delta[w]
    return [x / 2 for x in bc]


def closeness(g: ColoredGraph) -> list[Fraction]:
    """Closeness centrality with the reachable-fraction scaling for disconnected graphs."""
    adj = g.adjacency
    out = []
    for s in range(g.n):
        _, _, _, dist = _bfs_order(adj, s)
        reach = [d for d in dist if d >= 0]
        total = sum(reach)
        r = len(reach)
        if total > 0 and g.n > 1:
            out.append(Fraction(r - 1, total) * Fraction(r - 1, g.n - 1))
        else:
            out.append(Fraction(0))
    return out


def forman_ricci(g: ColoredGraph) -> list[int]:
    deg = g.degrees()
    return [4 - deg[u] - deg[v] for u, v in g.edges]


def structural_values(g: ColoredGraph, kind: str) -> list[float]:
    """Per-vertex values (per-edge for ``forman-ricci``) of a structural generator."""
    if kind == "degree":
        return [float(d) for d in g.degrees()]
    if kind == "betweenness":
        return [float(x) for x in betweenness(g)]
    if kind == "closeness":
        return [float(x) for x in closeness(g)]
    if kind == "forman-ricci":
        return [float(x) for x in forman_ricci(g)]
    raise FiltrationError(f"unknown filtration generator {kind!r}; expected one of {GENERATORS}")


def filtration_from_vertex_values(g: ColoredGraph, values: Sequence[float]):
    """Recolor ``g`` by value class and return it with the matching vertex filtration."""
    classes = sorted(set(values))
    cid = {x: i for i, x in enumerate(classes)}
    graph = g.recolor([cid[x] for x in values], [repr(x) for x in classes])
    return graph, VertexFiltration({i: x for i, x in enumerate(classes)},
                                   injective_inputs=len(classes) == g.n)


def filtration_from_edge_classes(g: ColoredGraph, vertex_class: Sequence, edge_value) -> tuple:
    """Recolor ``g`` by ``vertex_class`` and build the edge filtration ``edge_value(a, b)``."""
    classes = sorted(set(vertex_class))
    cid = {x: i for i, x in enumerate(classes)}
    graph = g.recolor([cid[x] for x in vertex_class], [repr(x) for x in classes])
    vals = {}
    for u, v in graph.edges:
        key = pair_key(graph.colors[u], graph.colors[v])
        vals[key] = edge_value(classes[key[0]], classes[key[1]])
    floor = _default_floor(vals.values())
    return graph, EdgeFiltration(vals, floor, injective_inputs=False)


def generate_filtration(g: ColoredGraph, kind: str, offsets: Sequence[float] | None = None):
    """Structure-derived filtration of ``g``.

    Returns ``(recolored graph, filtration)``: vertices are recolored by
    value class so the result is an ordinary color-based filtration.
    ``offsets`` shifts each vertex (or, for Forman-Ricci, each edge through
    its endpoints) by a per-vertex amount; the virtual-node construction
    uses it to order the filtration by tier.
    """
    if g.n == 0:
        raise FiltrationError("cannot generate a filtration on an empty graph")
    if kind in VERTEX_GENERATORS:
        vals = structural_values(g, kind)
        if offsets is not None:
            vals = [x + o for x, o in zip(vals, offsets)]
        return filtration_from_vertex_values(g, vals)
    if kind == "forman-ricci":
        deg = g.degrees()
        off = offsets if offsets is not None else [0.0] * g.n
        # an edge's value depends only on its endpoint classes (degree, offset)
        cls = list(zip(deg, off))
        return filtration_from_edge_classes(
            g, cls, lambda a, b: float(4 - a[0] - b[0]) + max(a[1], b[1]))
    raise FiltrationError(f"unknown filtration generator {kind!r}; expected one of {GENERATORS}")


def check_positive(f: VertexFiltration) -> None:
    if any(v <= 0 for v in f.values.values()):
        raise FiltrationError("max PH/EC needs a strictly positive vertex filtration")

