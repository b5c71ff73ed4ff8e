"""Full-graph sequential greedy coloring baselines.

These are the quality/memory reference points: unlike the palette engine
they materialize the whole adjacency of the graph being colored (that is
the point -- the stored-entry counter is the memory proxy the palette
engine is compared against).  Orderings:

* NAT -- natural (ascending id)
* LF  -- largest degree first (static)
* SL  -- smallest degree last (degeneracy order, colored in reverse removal)
* DLF -- dynamic largest degree first within the uncolored subgraph
* ID  -- incidence degree: most already-colored neighbors first, seeded
  from a maximum-degree vertex

Ties always break toward the smallest vertex id.
"""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass

import numpy as np

from .errors import BadParamsError, TooLargeForBaselineError
from .graph import EdgeOracleView, ExplicitGraph, iter_pair_blocks

ORDERINGS = ("LF", "SL", "DLF", "ID", "NAT")
BASELINE_CAP = 20_000


@dataclass
class GreedyResult:
    color: np.ndarray
    colors_used: int
    ordering: str
    runtime_s: float
    adjacency_entries: int  # CSR entries materialized = 2m

    @property
    def n(self) -> int:
        return int(self.color.size)


def materialize_adjacency(view: EdgeOracleView) -> ExplicitGraph:
    """Store the view's full adjacency as CSR over compact active indices.

    Plain explicit views reuse their backing CSR; complement and implicit
    views pay the O(n^2) oracle scan, which is why the baseline has a cap.
    """
    n = view.n_active
    if view.mode == "explicit" and n == view.backing.n:
        return view.backing
    if n > BASELINE_CAP:
        raise TooLargeForBaselineError(
            f"{n} vertices exceeds the baseline cap {BASELINE_CAP}"
        )
    parts_u, parts_v = [], []
    for i_loc, j_loc in iter_pair_blocks(view.active):
        mask = view.pair_mask(view.active[i_loc], view.active[j_loc])
        parts_u.append(i_loc[mask])
        parts_v.append(j_loc[mask])
    u = np.concatenate(parts_u) if parts_u else np.zeros(0, dtype=np.int64)
    v = np.concatenate(parts_v) if parts_v else np.zeros(0, dtype=np.int64)
    return ExplicitGraph.from_edges(n, u, v)


def _smallest_free_color(adj_colors: np.ndarray) -> int:
    used = np.zeros(adj_colors.size + 1, dtype=bool)
    valid = adj_colors[(adj_colors >= 0) & (adj_colors <= adj_colors.size)]
    used[valid] = True
    return int(np.argmin(used))


def _order_nat(g: ExplicitGraph) -> list[int]:
    return list(range(g.n))


def _order_lf(g: ExplicitGraph) -> list[int]:
    deg = g.degrees()
    return list(np.lexsort((np.arange(g.n), -deg)))


def _order_sl(g: ExplicitGraph) -> list[int]:
    deg = g.degrees().copy()
    removed = np.zeros(g.n, dtype=bool)
    heap = [(int(deg[v]), v) for v in range(g.n)]
    heapq.heapify(heap)
    removal = []
    while heap:
        d, v = heapq.heappop(heap)
        if removed[v] or d != deg[v]:
            continue
        removed[v] = True
        removal.append(v)
        for u in g.row(v):
            u = int(u)
            if not removed[u]:
                deg[u] -= 1
                heapq.heappush(heap, (int(deg[u]), u))
    removal.reverse()
    return removal


def greedy_color(view: EdgeOracleView, ordering: str = "LF", seed: int = 0) -> GreedyResult:
    """Sequential greedy coloring of the whole view under one ordering.

    The seed parameter is accepted for interface symmetry with the palette
    driver; all five orderings here are deterministic.
    """
    if ordering not in ORDERINGS:
        raise BadParamsError(f"unknown ordering {ordering!r}; choose from {ORDERINGS}")
    t0 = time.perf_counter()
    g = materialize_adjacency(view)
    n = g.n
    color = np.full(n, -1, dtype=np.int64)

    if ordering in ("NAT", "LF", "SL"):
        sequence = {"NAT": _order_nat, "LF": _order_lf, "SL": _order_sl}[ordering](g)
        for v in sequence:
            color[v] = _smallest_free_color(color[g.row(v)])
    elif ordering == "DLF":
        # max current degree within the uncolored subgraph; lazy max-heap
        deg = g.degrees().copy()
        heap = [(-int(deg[v]), v) for v in range(n)]
        heapq.heapify(heap)
        while heap:
            nd, v = heapq.heappop(heap)
            if color[v] != -1 or -nd != deg[v]:
                continue
            color[v] = _smallest_free_color(color[g.row(v)])
            for u in g.row(v):
                u = int(u)
                if color[u] == -1:
                    deg[u] -= 1
                    heapq.heappush(heap, (-int(deg[u]), u))
    elif ordering == "ID":
        # most already-colored neighbors first, started from a max-degree vertex
        inc = np.zeros(n, dtype=np.int64)
        heap = [(0, v) for v in range(n)]
        if n:
            heap.append((-n, _order_lf(g)[0]))  # seed entry, beats any real count
        heapq.heapify(heap)
        while heap:
            ni, v = heapq.heappop(heap)
            if color[v] != -1:
                continue
            if ni != -n and -ni != inc[v]:
                continue  # stale entry
            color[v] = _smallest_free_color(color[g.row(v)])
            for u in g.row(v):
                u = int(u)
                if color[u] == -1:
                    inc[u] += 1
                    heapq.heappush(heap, (-int(inc[u]), u))

    # map compact colors back to original ids when the view is a subset
    if view.n_active != view.backing.n or not np.array_equal(
        view.active, np.arange(view.backing.n)
    ):
        full = np.full(view.backing.n, -1, dtype=np.int64)
        full[view.active] = color
        color = full
    return GreedyResult(
        color=color,
        colors_used=int(np.unique(color[color >= 0]).size),
        ordering=ordering,
        runtime_s=time.perf_counter() - t0,
        adjacency_entries=int(g.neighbors.size),
    )
