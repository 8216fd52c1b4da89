"""Locality benchmark: cost of one expansion as the host graph grows."""

from __future__ import annotations

import gc
import random
import signal
import statistics
import time
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Iterator

from .decomposition import ExtendedSkeletonDecomposition
from .generators import complete_graph, host_inserted_graph, random_phi
from .spqr import build_spqr, insert_graph_spqr

HOST_CHUNK = 24  # unmarked vertices added per growth step


class BudgetExceeded(Exception):
    pass


@contextmanager
def _budget(seconds: float) -> Iterator[None]:
    def alarm(signum: int, frame: object) -> None:
        raise BudgetExceeded

    old = signal.signal(signal.SIGALRM, alarm)
    signal.setitimer(signal.ITIMER_REAL, seconds)
    try:
        yield
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)
        signal.signal(signal.SIGALRM, old)


@dataclass
class BenchRow:
    size: int
    k: int
    trials: int
    touched_mean: float
    seconds_mean: float
    baseline_seconds: float
    baseline_complete: bool

    @property
    def speedup(self) -> float:
        return self.baseline_seconds / self.seconds_mean if self.seconds_mean else float("inf")


def _expand(rng: random.Random, S: ExtendedSkeletonDecomposition, u: int, unmarked: int, deg: int) -> None:
    nbrs = S.represented.neighbors(u)
    g_nu, marked = host_inserted_graph(rng, len(nbrs), unmarked, deg)
    insert_graph_spqr(S, u, g_nu, random_phi(rng, marked, nbrs))


def grow_host(rng: random.Random, size: int, deg: int = 8) -> ExtendedSkeletonDecomposition:
    """SPQR-tree of a host with about ``size`` vertices, built by expansions from K9."""
    S = build_spqr(complete_graph(deg + 1))
    live = list(S.represented.vertices)
    g = S.represented
    while g.num_vertices() < size:
        i = rng.randrange(len(live))
        u = live[i]
        fresh = g._next_vertex  # expansions hand out consecutive new ids
        _expand(rng, S, u, max(3, min(HOST_CHUNK, size - g.num_vertices() + 1)), deg)
        live[i] = live[-1]
        live.pop()
        live.extend(range(fresh, g._next_vertex))
    return S


def bench_size(
    rng: random.Random, size: int, k: int = 8, trials: int = 30, unmarked: int = 8, baseline_budget: float = 60.0
) -> BenchRow:
    S = grow_host(rng, size, k)
    g = S.represented
    touched: list[int] = []
    seconds: list[float] = []
    gc.collect()
    gc.disable()
    try:
        for _ in range(trials):
            cands = [v for v in g.vertices if len(g.incident(v)) == k]
            u = rng.choice(cands)
            nbrs = g.neighbors(u)
            g_nu, marked = host_inserted_graph(rng, k, unmarked, k)
            phi = random_phi(rng, marked, nbrs)
            t0 = S.touched
            start = time.perf_counter()
            insert_graph_spqr(S, u, g_nu, phi)
            seconds.append(time.perf_counter() - start)
            touched.append(S.touched - t0)
    finally:
        gc.enable()
    complete = True
    start = time.perf_counter()
    try:
        with _budget(baseline_budget):
            build_spqr(g.copy())
    except BudgetExceeded:
        complete = False
    base = time.perf_counter() - start
    return BenchRow(size, k, trials, statistics.fmean(touched), statistics.fmean(seconds), base, complete)


def bench_locality(
    sizes: list[int], k: int = 8, trials: int = 30, seed: int = 0, baseline_budget: float = 60.0
) -> list[BenchRow]:
    rng = random.Random(seed)
    return [bench_size(rng, n, k, trials, baseline_budget=baseline_budget) for n in sizes]


def format_rows(rows: list[BenchRow], tsv: bool = False) -> str:
    head = ["size", "k", "trials", "touched_mean", "seconds_mean", "baseline_seconds", "baseline_complete", "speedup"]
    body = [
        [
            str(r.size),
            str(r.k),
            str(r.trials),
            f"{r.touched_mean:.1f}",
            f"{r.seconds_mean:.6f}",
            f"{r.baseline_seconds:.3f}" + ("" if r.baseline_complete else "+"),
            "yes" if r.baseline_complete else "no",
            f"{r.speedup:.1f}" + ("" if r.baseline_complete else "+"),
        ]
        for r in rows
    ]
    if tsv:
        return "\n".join("\t".join(line) for line in [head, *body]) + "\n"
    widths = [max(len(line[i]) for line in [head, *body]) for i in range(len(head))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(line, widths)) for line in [head, *body]) + "\n"
