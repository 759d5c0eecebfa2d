"""Union-find persistent homology of filtered graphs.

Dimension 0 follows the elder rule: when two components merge, the one
with the later birth dies, ties going against the larger representative
vertex. Equal-valued edges are processed in ascending ``(u, v)`` order.
Dimension 1 pairs are cycle births, which never die on a graph.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .filtration import VertexFiltration, check_positive, max_edge_from_vertex
from .graph import ColoredGraph

INF = math.inf


@dataclass(frozen=True)
class PersistencePair:
    dim: int
    birth: float
    death: float
    representative: object = None


@dataclass
class PersistenceDiagram:
    """Multiset of ``(dim, birth, death)`` triples."""

    counts: Counter = field(default_factory=Counter)
    representatives: list = field(default_factory=list, repr=False)

    @classmethod
    def from_pairs(cls, pairs: Iterable) -> "PersistenceDiagram":
        c = Counter()
        for p in pairs:
            if isinstance(p, PersistencePair):
                p = (p.dim, p.birth, p.death)
            c[(int(p[0]), float(p[1]), float(p[2]))] += 1
        return cls(c)

    def add(self, dim: int, birth: float, death: float, mult: int = 1) -> None:
        if mult:
            self.counts[(dim, float(birth), float(death))] += mult

    def restrict(self, dim: int) -> "PersistenceDiagram":
        return PersistenceDiagram(Counter({k: v for k, v in self.counts.items() if k[0] == dim}))

    def __add__(self, other: "PersistenceDiagram") -> "PersistenceDiagram":
        return PersistenceDiagram(self.counts + other.counts)

    def __eq__(self, other):
        if not isinstance(other, PersistenceDiagram):
            return NotImplemented
        return +self.counts == +other.counts

    def size(self, dim: int | None = None) -> int:
        return sum(v for k, v in self.counts.items() if dim is None or k[0] == dim)

    def pairs(self, dim: int) -> list[tuple[float, float]]:
        """Sorted, expanded ``(birth, death)`` list for one dimension."""
        out = []
        for (d, b, x), m in sorted(self.counts.items()):
            if d == dim:
                out.extend([(b, x)] * m)
        return out

    def deaths(self, dim: int = 0, finite_only: bool = False) -> Counter:
        c = Counter()
        for (d, b, x), m in self.counts.items():
            if d == dim and not (finite_only and x == INF):
                c[x] += m
        return c

    def births(self, dim: int) -> Counter:
        c = Counter()
        for (d, b, _), m in self.counts.items():
            if d == dim:
                c[b] += m
        return c

    def real_holes(self) -> int:
        return sum(m for (d, _, x), m in self.counts.items() if d == 0 and x == INF)


def diagrams_equal(d1: PersistenceDiagram, d2: PersistenceDiagram) -> bool:
    return d1 == d2


@dataclass
class AlgorithmTrace:
    """Per-step bookkeeping of one union-find run.

    Index ``i`` refers to ``steps[i]``; the last step is ``+inf``, where the
    surviving components are stamped dead. ``betti[i]`` lists component
    representatives after step ``i`` and ``births``/``deaths`` the vertices
    born or killed non-trivially at that step. ``nv``/``ne``/``b0`` are the
    sublevel sizes after each step.
    """

    steps: list[float]
    births: list[tuple[int, ...]]
    deaths: list[tuple[int, ...]]
    betti: list[tuple[int, ...]]
    nv: list[int]
    ne: list[int]
    b0: list[int]
    death_counts: list[int]

    def index_at(self, t: float) -> int:
        """Index of the last step ``<= t``, or -1 before the first step."""
        return bisect_right(self.steps, t) - 1

    def still_alive(self, i: int) -> int:
        return len(self.betti[i]) if i >= 0 else 0

    def aligned(self, steps: Sequence[float]) -> "AlignedTrace":
        return AlignedTrace(self, list(steps))


class AlignedTrace:
    """A trace re-indexed onto a finer list of steps; index -1 means before everything."""

    def __init__(self, trace: AlgorithmTrace, steps: list[float]):
        self.steps = steps
        idx = {t: i for i, t in enumerate(trace.steps)}
        self._births, self._deaths, self._betti, self._dc = [], [], [], []
        self._sizes = []
        for t in steps:
            i = idx.get(t)
            if i is not None:
                self._births.append(trace.births[i])
                self._deaths.append(trace.deaths[i])
                self._dc.append(trace.death_counts[i])
            else:
                self._births.append(())
                self._deaths.append(())
                self._dc.append(0)
            j = trace.index_at(t)
            self._betti.append(trace.betti[j] if j >= 0 else ())
            self._sizes.append((trace.nv[j], trace.ne[j], trace.b0[j]) if j >= 0 else (0, 0, 0))

    def births(self, i):
        return self._births[i] if i >= 0 else ()

    def deaths(self, i):
        return self._deaths[i] if i >= 0 else ()

    def betti(self, i):
        return self._betti[i] if i >= 0 else ()

    def death_count(self, i):
        return self._dc[i] if i >= 0 else 0

    def still_alive(self, i):
        return len(self._betti[i]) if i >= 0 else 0

    def sizes(self, i):
        return self._sizes[i] if i >= 0 else (0, 0, 0)


def persistence_from_times(n: int, edges: Sequence[tuple[int, int]], vt: Sequence[float],
                           et: Sequence[float], *, trace: bool = True,
                           representatives: bool = False,
                           ) -> tuple[PersistenceDiagram, AlgorithmTrace | None]:
    """Dimension 0 and 1 persistence of a filtered graph given simplex times.

    ``trace=False`` skips the per-step bookkeeping (used on large products).
    """
    for (u, v), t in zip(edges, et):
        if t < vt[u] or t < vt[v]:
            raise ValueError(f"edge ({u}, {v}) enters at {t} before one of its endpoints")
    steps = sorted(set(vt) | set(et))
    vby, eby = {}, {}
    for v, t in enumerate(vt):
        vby.setdefault(t, []).append(v)
    order = sorted(range(len(edges)), key=lambda k: (et[k], edges[k]))
    for k in order:
        eby.setdefault(et[k], []).append(k)

    parent = list(range(n))
    birth = [INF] * n

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    diagram = PersistenceDiagram()
    counts = diagram.counts
    reps = diagram.representatives if representatives else None
    roots: set[int] = set()
    tr = AlgorithmTrace([], [], [], [], [], [], [], []) if trace else None
    nv = ne = 0
    for a in steps:
        new = vby.get(a, ())
        for v in new:
            birth[v] = a
            roots.add(v)
        nv += len(new)
        killed_nt = []
        trivial = 0
        for k in eby.get(a, ()):
            u, v = edges[k]
            ne += 1
            ru, rv = find(u), find(v)
            if ru == rv:
                counts[(1, a, INF)] += 1
                if reps is not None:
                    reps.append(PersistencePair(1, a, INF, edges[k]))
                continue
            if (birth[ru], ru) < (birth[rv], rv):
                keep, die = ru, rv
            else:
                keep, die = rv, ru
            parent[die] = keep
            roots.discard(die)
            counts[(0, birth[die], a)] += 1
            if reps is not None:
                reps.append(PersistencePair(0, birth[die], a, die))
            if birth[die] < a:
                killed_nt.append(die)
            else:
                trivial += 1
        if tr is not None:
            tr.steps.append(a)
            tr.births.append(tuple(sorted(v for v in new if v in roots)))
            tr.deaths.append(tuple(sorted(killed_nt)))
            tr.death_counts.append(len(killed_nt) + trivial)
            tr.betti.append(tuple(sorted(roots)))
            tr.nv.append(nv)
            tr.ne.append(ne)
            tr.b0.append(len(roots))
    survivors = tuple(sorted(roots))
    for r in survivors:
        counts[(0, birth[r], INF)] += 1
        if reps is not None:
            reps.append(PersistencePair(0, birth[r], INF, r))
    if tr is not None:
        tr.steps.append(INF)
        tr.births.append(())
        tr.deaths.append(survivors)
        tr.death_counts.append(len(survivors))
        tr.betti.append(())
        tr.nv.append(nv)
        tr.ne.append(ne)
        tr.b0.append(0)
    return diagram, tr


def persistence(g: ColoredGraph, f, **kw) -> tuple[PersistenceDiagram, AlgorithmTrace | None]:
    vt, et = f.times(g)
    return persistence_from_times(g.n, g.edges, vt, et, **kw)


def ph0(g: ColoredGraph, f) -> tuple[PersistenceDiagram, AlgorithmTrace]:
    d, trace = persistence(g, f, representatives=True)
    return d.restrict(0), trace


def ph1(g: ColoredGraph, f) -> PersistenceDiagram:
    return persistence(g, f)[0].restrict(1)


def max_ph(g: ColoredGraph, f: VertexFiltration) -> tuple[PersistenceDiagram, PersistenceDiagram]:
    """Vertex-level diagram under ``f`` and edge-level diagram under its max-induced edge filtration."""
    check_positive(f)
    return persistence(g, f)[0], persistence(g, max_edge_from_vertex(f))[0]
