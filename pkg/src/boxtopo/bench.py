"""Runtime comparison of the factor-trace algorithms against union-find on the full product."""

from __future__ import annotations

import csv
import io
import random
import statistics
import time
from dataclasses import dataclass
from itertools import combinations_with_replacement

from .families import erdos_renyi
from .filtration import EdgeFiltration, VertexFiltration
from .product_ph import (DEFAULT_MAX_VERTICES, naive_prod_ph, prod_edge_ph0, prod_ph1,
                         prod_vertex_ph0)

N_COLORS = 4
LEVELS = ("vertex", "edge")


@dataclass(frozen=True)
class BenchRow:
    impl: str
    n_g: int
    n_h: int
    seconds: float


def bench_inputs(n: int, level: str, seed: int = 0):
    """Two G(n, 3/n) graphs on four colors and matching random filtrations."""
    g = erdos_renyi(n, N_COLORS, seed * 1000 + 2 * n)
    h = erdos_renyi(n, N_COLORS, seed * 1000 + 2 * n + 1)
    rng = random.Random(seed * 1000 + n)
    if level == "vertex":
        f = lambda: VertexFiltration({c: float(rng.randint(1, 8)) for c in range(N_COLORS)})
    else:
        pairs = list(combinations_with_replacement(range(N_COLORS), 2))
        f = lambda: EdgeFiltration({p: float(rng.randint(1, 8)) for p in pairs}, 0.0)
    return g, f(), h, f()


def _fast(level):
    if level == "vertex":
        return lambda g, fg, h, fh: prod_vertex_ph0(g, fg, h, fh) + prod_ph1(g, fg, h, fh)
    return lambda g, fg, h, fh: prod_edge_ph0(g, fg, h, fh) + prod_ph1(g, fg, h, fh)


def _median_time(fn, args, reps: int) -> float:
    times = []
    for _ in range(reps):
        t0 = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t0)
    return max(statistics.median(times), 1e-9)


def bench_run(sizes, reps: int = 3, levels=("vertex",), seed: int = 0,
              max_vertices: int = DEFAULT_MAX_VERTICES) -> list[BenchRow]:
    """Median wall time of fast and naive product persistence for each size and level.

    Both sides compute the full diagram (dimensions 0 and 1). Raises if a
    size exceeds the naive path's vertex budget, so no cell goes missing.
    """
    if reps < 3:
        raise ValueError("need at least 3 repetitions")
    rows = []
    for level in levels:
        if level not in LEVELS:
            raise ValueError(f"unknown level {level!r}")
        fast = _fast(level)
        naive = lambda g, fg, h, fh: naive_prod_ph(g, fg, h, fh, max_vertices=max_vertices)
        for n in sizes:
            args = bench_inputs(n, level, seed)
            rows.append(BenchRow(f"fast-{level}", n, n, _median_time(fast, args, reps)))
            rows.append(BenchRow(f"naive-{level}", n, n, _median_time(naive, args, reps)))
    return rows


def speedups(rows: list[BenchRow], level: str) -> dict[int, float]:
    """naive / fast time ratio per size for one level."""
    t = {(r.impl, r.n_g): r.seconds for r in rows}
    sizes = sorted({r.n_g for r in rows if r.impl.endswith(level)})
    return {n: t[(f"naive-{level}", n)] / t[(f"fast-{level}", n)] for n in sizes}


def rows_to_csv(rows: list[BenchRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["impl", "n_G", "n_H", "seconds"])
    for r in rows:
        w.writerow([r.impl, r.n_g, r.n_h, f"{r.seconds:.6g}"])
    return buf.getvalue()
