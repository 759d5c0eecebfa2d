"""Colored graphs, box products and basic topology."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

VIRTUAL_LABEL = "__virtual__"

Color = Hashable


def product_color(c1: Color, c2: Color) -> tuple:
    """Unordered color of a product vertex, canonical form ``(min, max)``."""
    return (c1, c2) if c1 <= c2 else (c2, c1)


def pair_key(a: Color, b: Color) -> tuple:
    """Canonical key for an unordered pair of colors."""
    return (a, b) if a <= b else (b, a)


class ColorTableMismatch(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class ColoredGraph:
    """Finite simple graph with one color per vertex.

    ``colors[v]`` is a ColorId (an index into ``color_table``) for plain
    graphs and a canonical product color ``(min, max)`` for box products.
    Product graphs also keep the ordered factor colors and the factor shape,
    which product filtrations need to tell the two edge directions apart.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    colors: tuple
    color_table: tuple = ("default",)
    factor_colors: tuple | None = None
    factor_shape: tuple[int, int] | None = None
    _adj: tuple = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if len(self.colors) != self.n:
            raise ValueError(f"expected {self.n} colors, got {len(self.colors)}")
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < v < self.n):
                raise ValueError(f"edge ({u}, {v}) not a normalized pair in range 0..{self.n - 1}")
            if (u, v) in seen:
                raise ValueError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], colors: Sequence | None = None,
                   color_table: Sequence | None = None) -> "ColoredGraph":
        """Build a graph, normalizing and sorting the edge list.

        Without ``colors`` every vertex gets color 0 of a one-entry table.
        """
        norm = sorted({(min(u, v), max(u, v)) for u, v in edges})
        if colors is None:
            colors = [0] * n
            color_table = color_table or ("default",)
        if color_table is None:
            color_table = ("default",) if not colors else tuple(
                str(c) for c in range(max(colors) + 1))
        return cls(n, tuple(norm), tuple(colors), tuple(color_table))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        if self._adj is None:
            adj = [[] for _ in range(self.n)]
            for u, v in self.edges:
                adj[u].append(v)
                adj[v].append(u)
            object.__setattr__(self, "_adj", tuple(tuple(sorted(a)) for a in adj))
        return self._adj

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def recolor(self, colors: Sequence, color_table: Sequence) -> "ColoredGraph":
        return ColoredGraph(self.n, self.edges, tuple(colors), tuple(color_table),
                            self.factor_colors, self.factor_shape)

    def relabel(self, perm: Sequence[int]) -> "ColoredGraph":
        """Isomorphic copy in which old vertex ``v`` becomes ``perm[v]``."""
        colors = [None] * self.n
        for v, c in enumerate(self.colors):
            colors[perm[v]] = c
        edges = sorted((min(perm[u], perm[v]), max(perm[u], perm[v])) for u, v in self.edges)
        return ColoredGraph(self.n, tuple(edges), tuple(colors), self.color_table)

    def color_labels(self) -> list[str]:
        return [self.label_of(c) for c in self.colors]

    def label_of(self, c) -> str:
        if isinstance(c, tuple):
            return "(" + ",".join(self.label_of(x) for x in c) + ")"
        return str(self.color_table[c])

    def color_id(self, label: str):
        """ColorId for a label, or a product color for a ``(a,b)`` label."""
        label = label.strip()
        if label.startswith("(") and label.endswith(")"):
            a, b = _split_product_label(label[1:-1])
            return product_color(self.color_id(a), self.color_id(b))
        try:
            return self.color_table.index(label)
        except ValueError:
            raise KeyError(f"unknown color label {label!r}") from None

    def __eq__(self, other):
        if not isinstance(other, ColoredGraph):
            return NotImplemented
        return (self.n, self.edges, self.colors, self.color_table) == (
            other.n, other.edges, other.colors, other.color_table)

    def __hash__(self):
        return hash((self.n, self.edges, self.colors))


def _split_product_label(body: str) -> tuple[str, str]:
    depth = 0
    for i, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            return body[:i], body[i + 1:]
    raise KeyError(f"malformed product color label ({body})")


def empty_graph(color_table: Sequence = ("default",)) -> ColoredGraph:
    return ColoredGraph(0, (), (), tuple(color_table))


def box_product(g: ColoredGraph, h: ColoredGraph) -> ColoredGraph:
    """Cartesian product ``g □ h`` with row-major vertex indices ``i * h.n + j``."""
    if tuple(g.color_table) != tuple(h.color_table):
        raise ColorTableMismatch("box product needs a shared color table")
    nh = h.n
    edges = product_edges(g, h)
    factor_colors = tuple((cg, ch) for cg in g.colors for ch in h.colors)
    colors = tuple(product_color(cg, ch) for cg, ch in factor_colors)
    return ColoredGraph(g.n * nh, tuple(edges), colors, g.color_table,
                        factor_colors, (g.n, nh))


def product_edges(g: ColoredGraph, h: ColoredGraph) -> list[tuple[int, int]]:
    """Sorted edge list of ``g □ h`` in row-major indexing; colors are ignored."""
    nh = h.n
    edges = []
    for i in range(g.n):
        base = i * nh
        for a, b in h.edges:
            edges.append((base + a, base + b))
    for a, b in g.edges:
        for j in range(nh):
            edges.append((a * nh + j, b * nh + j))
    edges.sort()
    return edges


def virtual_color(color_table: Sequence) -> int:
    table = tuple(color_table)
    if VIRTUAL_LABEL in table:
        return table.index(VIRTUAL_LABEL)
    return len(table)


def with_virtual_color(color_table: Sequence) -> tuple:
    table = tuple(color_table)
    return table if VIRTUAL_LABEL in table else table + (VIRTUAL_LABEL,)


def add_virtual(g: ColoredGraph) -> ColoredGraph:
    """Append one isolated vertex carrying the reserved virtual color."""
    table = with_virtual_color(g.color_table)
    vc = table.index(VIRTUAL_LABEL)
    return ColoredGraph(g.n + 1, g.edges, g.colors + (vc,), table)


def is_virtual(c, color_table: Sequence) -> bool:
    return VIRTUAL_LABEL in color_table and c == tuple(color_table).index(VIRTUAL_LABEL)


def components(n: int, edges: Iterable[tuple[int, int]]) -> list[int]:
    """Component root of every vertex (union-find with path halving)."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
    return [find(x) for x in range(n)]


def betti(g: ColoredGraph) -> tuple[int, int]:
    b0 = len(set(components(g.n, g.edges)))
    return b0, g.m - g.n + b0


def euler_characteristic(g: ColoredGraph) -> int:
    return g.n - g.m


def betti1_product(a: ColoredGraph, b: ColoredGraph) -> int:
    """First Betti number of ``a □ b`` from factor counts alone."""
    return betti1_product_counts(a.n, a.m, betti(a)[0], b.n, b.m, betti(b)[0])


def betti1_product_counts(na, ma, b0a, nb, mb, b0b) -> int:
    return ma * mb + b0a * b0b - (na - ma) * (nb - mb)


@dataclass(frozen=True)
class ECSignature:
    """Vertex counts per color and edge counts per unordered color pair."""

    vertex_counts: tuple[tuple, ...]
    edge_counts: tuple[tuple, ...]

    @classmethod
    def from_counters(cls, vc: Counter, ec: Counter) -> "ECSignature":
        return cls(tuple(sorted(vc.items())), tuple(sorted(ec.items())))

    @property
    def vertices(self) -> dict:
        return dict(self.vertex_counts)

    @property
    def edges(self) -> dict:
        return dict(self.edge_counts)

    def chi_of_color(self, c) -> int:
        """Euler characteristic of the subgraph induced by color ``c``."""
        return self.vertices.get(c, 0) - self.edges.get((c, c), 0)


def ec_signature(g: ColoredGraph) -> ECSignature:
    vc = Counter(g.colors)
    ec = Counter(pair_key(g.colors[u], g.colors[v]) for u, v in g.edges)
    return ECSignature.from_counters(vc, ec)


def disjoint_union(*graphs: ColoredGraph) -> ColoredGraph:
    if not graphs:
        return empty_graph()
    table = graphs[0].color_table
    if any(tuple(x.color_table) != tuple(table) for x in graphs):
        raise ColorTableMismatch("disjoint union needs a shared color table")
    edges, colors, off = [], [], 0
    for x in graphs:
        edges.extend((u + off, v + off) for u, v in x.edges)
        colors.extend(x.colors)
        off += x.n
    return ColoredGraph(off, tuple(sorted(edges)), tuple(colors), table)


def census(g: ColoredGraph) -> tuple:
    """Isomorphism-invariant summary: sizes, color histogram, edge-color histogram, degrees."""
    sig = ec_signature(g)
    degs = Counter(zip(g.colors, g.degrees()))
    return g.n, g.m, sig, tuple(sorted(degs.items()))
