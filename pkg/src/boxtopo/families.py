"""Named graphs, small colored fixtures and random generators used by tests and the bench."""

from __future__ import annotations

import random
from typing import Sequence

import networkx as nx

from .graph import ColoredGraph, disjoint_union

RB = ("red", "blue")
RED, BLUE = 0, 1


def _mono(n, edges, color=0, table=("default",)) -> ColoredGraph:
    return ColoredGraph.from_edges(n, edges, [color] * n, table)


def cycle(n: int, color=0, table=("default",)) -> ColoredGraph:
    return _mono(n, [(i, (i + 1) % n) for i in range(n)], color, table)


def path(n: int, color=0, table=("default",)) -> ColoredGraph:
    return _mono(n, [(i, i + 1) for i in range(n - 1)], color, table)


def star(leaves: int, color=0, table=("default",)) -> ColoredGraph:
    return _mono(leaves + 1, [(0, i) for i in range(1, leaves + 1)], color, table)


def complete(n: int, color=0, table=("default",)) -> ColoredGraph:
    return _mono(n, [(u, v) for u in range(n) for v in range(u + 1, n)], color, table)


def discrete(n: int, color=0, table=("default",)) -> ColoredGraph:
    return _mono(n, [], color, table)


def _cayley_z4z4(gens) -> ColoredGraph:
    idx = lambda a, b: 4 * (a % 4) + (b % 4)
    edges = set()
    for a in range(4):
        for b in range(4):
            for da, db in gens:
                u, v = idx(a, b), idx(a + da, b + db)
                edges.add((min(u, v), max(u, v)))
    return ColoredGraph.from_edges(16, edges)


def shrikhande() -> ColoredGraph:
    """Cayley graph of Z4 x Z4 with connection set {±(1,0), ±(0,1), ±(1,1)}: srg(16,6,2,2)."""
    return _cayley_z4z4([(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1)])


def rook_4x4() -> ColoredGraph:
    """Line graph of K_{4,4} (same row or same column): also srg(16,6,2,2)."""
    return _cayley_z4z4([(d, 0) for d in (1, 2, 3)] + [(0, d) for d in (1, 2, 3)])


# --- small colored fixtures (colors index RB = ("red", "blue")) -----------

def star_rrbb() -> ColoredGraph:
    """Red center with one red leaf and two blue leaves."""
    # vertices: 0=A red leaf, 1=B blue, 2=C red center, 3=D blue
    return ColoredGraph.from_edges(4, [(0, 2), (1, 2), (2, 3)], [RED, BLUE, RED, BLUE], RB)


def path_brrb() -> ColoredGraph:
    """Path blue-red-red-blue."""
    return ColoredGraph.from_edges(4, [(0, 1), (1, 2), (2, 3)], [BLUE, RED, RED, BLUE], RB)


def path_rrb() -> ColoredGraph:
    return ColoredGraph.from_edges(3, [(0, 1), (1, 2)], [RED, RED, BLUE], RB)


def triangle_with_tail() -> ColoredGraph:
    """Red triangle 0,1,2 with vertex 0 joined to a blue edge 3-4."""
    return ColoredGraph.from_edges(5, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)],
                                   [RED, RED, RED, BLUE, BLUE], RB)


def c6_vs_two_triangles(color=0, table=("default",)) -> tuple[ColoredGraph, ColoredGraph]:
    return cycle(6, color, table), disjoint_union(cycle(3, color, table), cycle(3, color, table))


# --- random generators ------------------------------------------------------

def random_colored_graph(n: int, p: float, n_colors: int, rng: random.Random,
                         table: Sequence | None = None) -> ColoredGraph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    colors = [rng.randrange(n_colors) for _ in range(n)]
    if table is None:
        table = tuple(f"c{i}" for i in range(n_colors))
    return ColoredGraph.from_edges(n, edges, colors, table)


def erdos_renyi(n: int, n_colors: int, seed: int) -> ColoredGraph:
    """G(n, 3/n) with uniformly random colors from a ``n_colors`` table; deterministic in ``seed``."""
    rng = random.Random(seed)
    p = min(1.0, 3.0 / n) if n else 0.0
    return random_colored_graph(n, p, n_colors, rng)


def random_relabeling(g: ColoredGraph, rng: random.Random) -> ColoredGraph:
    perm = list(range(g.n))
    rng.shuffle(perm)
    return g.relabel(perm)


def random_tree(n: int, rng: random.Random) -> ColoredGraph:
    if n <= 2:
        return path(n)
    t = nx.from_prufer_sequence([rng.randrange(n) for _ in range(n - 2)])
    return ColoredGraph.from_edges(n, t.edges())


def signature_preserving_swap(g: ColoredGraph, rng: random.Random, swaps: int = 10) -> ColoredGraph:
    """Random double edge swaps that keep every color-pair edge count.

    Edges ``(a, b)``, ``(c, d)`` with ``color(b) == color(d)`` become
    ``(a, d)``, ``(c, b)``; simplicity is preserved by rejecting clashes.
    """
    edges = set(g.edges)
    col = g.colors
    for _ in range(swaps * 20):
        if swaps <= 0 or len(edges) < 2:
            break
        (a, b), (c, d) = rng.sample(sorted(edges), 2)
        if rng.random() < 0.5:
            a, b = b, a
        if col[b] != col[d]:
            continue
        e1, e2 = (min(a, d), max(a, d)), (min(c, b), max(c, b))
        if a == d or c == b or e1 == e2 or e1 in edges or e2 in edges:
            continue
        edges -= {(min(a, b), max(a, b)), (min(c, d), max(c, d))}
        edges |= {e1, e2}
        swaps -= 1
    return ColoredGraph.from_edges(g.n, edges, g.colors, g.color_table)


def signature_equal_pair(rng: random.Random, n_colors: int = 2, n: int = 7) -> tuple[ColoredGraph, ColoredGraph]:
    """A same-size pair with equal EC signatures, usually non-isomorphic."""
    table = tuple(f"c{i}" for i in range(n_colors))
    base = random_colored_graph(n, 0.4, n_colors, rng, table)
    mode = rng.randrange(3)
    if mode == 0:
        c = rng.randrange(n_colors)
        a, b = c6_vs_two_triangles(c, table)
        return disjoint_union(base, a), disjoint_union(base, b)
    if mode == 1:
        return base, signature_preserving_swap(base, rng)
    return base, random_relabeling(signature_preserving_swap(base, rng), rng)


def is_isomorphic(g: ColoredGraph, h: ColoredGraph) -> bool:
    """Color-preserving isomorphism test via networkx VF2."""
    if g.n != h.n or g.m != h.m:
        return False

    def nxg(x):
        G = nx.Graph()
        G.add_nodes_from((v, {"c": x.colors[v]}) for v in range(x.n))
        G.add_edges_from(x.edges)
        return G
    return nx.is_isomorphic(nxg(g), nxg(h), node_match=lambda p, q: p["c"] == q["c"])
