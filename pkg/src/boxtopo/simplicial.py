"""Colored simplicial complexes: EC and max-EC diagrams and the simplex-count signature."""

from __future__ import annotations

import random
from bisect import bisect_right
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Iterable, Sequence

MAX_DIM = 3
MAX_SIMPLICES = 200


class ComplexError(ValueError):
    pass


def colorset(colors: Sequence, simplex: Iterable[int]) -> tuple:
    """Sorted, duplicate-free colors of a simplex: order and multiplicity are forgotten."""
    return tuple(sorted({colors[v] for v in simplex}))


@dataclass(frozen=True)
class ColoredComplex:
    """Downward-closed complex; ``simplices[j]`` holds the sorted j-simplices."""

    n_vertices: int
    simplices: tuple[tuple[tuple[int, ...], ...], ...]
    colors: tuple
    color_table: tuple = ("default",)

    @classmethod
    def from_maximal(cls, maximal: Iterable[Sequence[int]], colors: Sequence,
                     color_table: Sequence | None = None, *, n_vertices: int | None = None,
                     max_dim: int = MAX_DIM, max_simplices: int = MAX_SIMPLICES) -> "ColoredComplex":
        maximal = [tuple(sorted(s)) for s in maximal]
        n = len(colors) if n_vertices is None else n_vertices
        if len(colors) != n:
            raise ComplexError(f"expected {n} colors, got {len(colors)}")
        faces: set[tuple[int, ...]] = {(v,) for v in range(n)}
        for s in maximal:
            if not s:
                raise ComplexError("empty simplex")
            if len(set(s)) != len(s):
                raise ComplexError(f"repeated vertex in simplex {s}")
            if s[0] < 0 or s[-1] >= n:
                raise ComplexError(f"simplex {s} uses a vertex outside 0..{n - 1}")
            if len(s) - 1 > max_dim:
                raise ComplexError(f"simplex {s} exceeds dimension cap {max_dim}")
            for k in range(1, len(s) + 1):
                faces.update(combinations(s, k))
        if len(faces) > max_simplices:
            raise ComplexError(f"complex has {len(faces)} simplices, cap is {max_simplices}")
        dim = max((len(s) - 1 for s in faces), default=-1)
        by_dim = tuple(tuple(sorted(s for s in faces if len(s) == j + 1)) for j in range(dim + 1))
        if color_table is None:
            color_table = tuple(str(c) for c in range(max(colors, default=0) + 1))
        return cls(n, by_dim, tuple(colors), tuple(color_table))

    @classmethod
    def from_graph(cls, g) -> "ColoredComplex":
        return cls.from_maximal(g.edges, g.colors, g.color_table, n_vertices=g.n)

    @property
    def dim(self) -> int:
        return len(self.simplices) - 1

    def all_simplices(self):
        for level in self.simplices:
            yield from level

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.simplices)

    def euler_characteristic(self) -> int:
        return sum((-1) ** j * len(s) for j, s in enumerate(self.simplices))

    def relabel(self, perm: Sequence[int]) -> "ColoredComplex":
        colors = [None] * self.n_vertices
        for v, c in enumerate(self.colors):
            colors[perm[v]] = c
        top = [tuple(perm[v] for v in s) for s in self.all_simplices()]
        return ColoredComplex.from_maximal(top, colors, self.color_table,
                                           max_simplices=max(MAX_SIMPLICES, len(top)))

    def is_closed(self) -> bool:
        present = set(self.all_simplices())
        return all(f in present for s in present for k in range(1, len(s))
                   for f in combinations(s, k))


def disjoint_union(k: ColoredComplex, m: ColoredComplex) -> ColoredComplex:
    off = k.n_vertices
    tops = list(k.all_simplices()) + [tuple(v + off for v in s) for s in m.all_simplices()]
    return ColoredComplex.from_maximal(tops, k.colors + m.colors, k.color_table,
                                       max_simplices=len(tops))


@dataclass(frozen=True)
class SimplexSignature:
    """Count of j-simplices per exact color set, plus the f-vector."""

    counts: tuple[tuple[tuple[int, tuple], int], ...]
    f_vector: tuple[int, ...]

    def as_dict(self) -> dict:
        return dict(self.counts)

    def count(self, j: int, colors: Iterable) -> int:
        return self.as_dict().get((j, tuple(sorted(set(colors)))), 0)


def simplex_signature(k: ColoredComplex) -> SimplexSignature:
    c = Counter((j, colorset(k.colors, s)) for j, level in enumerate(k.simplices) for s in level)
    return SimplexSignature(tuple(sorted(c.items())), k.f_vector())


@dataclass
class SimplexFiltrationFamily:
    """``f0`` maps colors to values; ``higher[i]`` maps color sets to values in (0, inf)."""

    f0: dict
    higher: dict = field(default_factory=dict)

    def __post_init__(self):
        for i, table in self.higher.items():
            if i <= 0:
                raise ComplexError("higher simplex functions start at dimension 1")
            if any(v <= 0 for v in table.values()):
                raise ComplexError(f"dimension-{i} simplex function must be positive")

    def value(self, i: int, cs: tuple) -> float:
        try:
            if i == 0:
                return self.f0[cs[0]]
            return self.higher[i][cs]
        except KeyError:
            raise ComplexError(f"no value for color set {cs} in dimension {i}") from None

    def values(self, i: int) -> list[float]:
        """Sample points of the i-th list: every value the i-th simplex function takes.

        For ``i > 0`` that includes 0, the entry time of all lower-dimensional simplices.
        """
        if i == 0:
            return sorted(set(self.f0.values()))
        return sorted({0.0} | set(self.higher.get(i, {}).values()))


def simplex_times(k: ColoredComplex, fam: SimplexFiltrationFamily, i: int) -> list[tuple[int, float]]:
    """``(dimension, entry time)`` of every simplex under the i-th simplex filtration."""
    out = []
    for j, level in enumerate(k.simplices):
        for s in level:
            if j < i:
                t = 0.0
            elif j == i:
                t = fam.value(i, colorset(k.colors, s))
            else:
                t = max(fam.value(i, colorset(k.colors, f)) for f in combinations(s, i + 1))
            out.append((j, t))
    return out


def ec_diagram_simplicial(k: ColoredComplex, fam: SimplexFiltrationFamily) -> list[list[int]]:
    """One Euler-characteristic list per dimension, sampled at the values of that function."""
    out = []
    for i in range(k.dim + 1):
        by_dim = [[] for _ in k.simplices]
        for j, t in simplex_times(k, fam, i):
            by_dim[j].append(t)
        for ts in by_dim:
            ts.sort()
        out.append([sum((-1) ** j * bisect_right(ts, a) for j, ts in enumerate(by_dim))
                    for a in fam.values(i)])
    return out


def max_family(f0: dict, dim: int, color_table_size: int) -> SimplexFiltrationFamily:
    """The family whose i-th function is the largest vertex value on the color set."""
    if any(v <= 0 for v in f0.values()):
        raise ComplexError("max-EC needs a strictly positive vertex function")
    higher = {}
    cols = range(color_table_size)
    for i in range(1, dim + 1):
        higher[i] = {cs: max(f0[c] for c in cs)
                     for r in range(1, min(i + 1, color_table_size) + 1)
                     for cs in combinations(cols, r)}
    return SimplexFiltrationFamily(dict(f0), higher)


def max_ec_simplicial(k: ColoredComplex, f0: dict) -> list[list[int]]:
    return ec_diagram_simplicial(k, max_family(f0, k.dim, len(k.color_table)))


def random_family(dim: int, n_colors: int, rng: random.Random, max_value: int = 4) -> SimplexFiltrationFamily:
    cols = range(n_colors)
    f0 = {c: float(rng.randint(1, max_value)) for c in cols}
    higher = {i: {cs: float(rng.randint(1, max_value))
                  for r in range(1, min(i + 1, n_colors) + 1) for cs in combinations(cols, r)}
              for i in range(1, dim + 1)}
    return SimplexFiltrationFamily(f0, higher)


def find_simplicial_witness(k: ColoredComplex, m: ColoredComplex) -> dict | None:
    """An injective vertex function separating the max-EC diagrams, or None.

    Tries every ordering of the colors, which covers the smallest-first
    orderings used to recover the signature from max-EC. Returns None
    when the signatures already agree.
    """
    if simplex_signature(k) == simplex_signature(m) and k.dim == m.dim:
        return None
    cols = range(len(k.color_table))
    for order in permutations(cols):
        f0 = {c: float(r + 1) for r, c in enumerate(order)}
        if max_ec_simplicial(k, f0) != max_ec_simplicial(m, f0):
            return f0
    return None


def random_complex(n: int, n_colors: int, rng: random.Random, *, p_edge: float = 0.5,
                   p_triangle: float = 0.5, max_simplices: int = MAX_SIMPLICES) -> ColoredComplex:
    """Random colored complex of dimension at most 2: a random graph plus some of its triangles."""
    colors = [rng.randrange(n_colors) for _ in range(n)]
    edges = [e for e in combinations(range(n), 2) if rng.random() < p_edge]
    es = set(edges)
    tris = [t for t in combinations(range(n), 3)
            if all(f in es for f in combinations(t, 2)) and rng.random() < p_triangle]
    return ColoredComplex.from_maximal(edges + tris, colors, tuple(f"c{i}" for i in range(n_colors)),
                                       n_vertices=n, max_dim=2, max_simplices=max_simplices)
