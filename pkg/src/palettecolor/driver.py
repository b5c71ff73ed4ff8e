"""The iterative palette-coloring loop.

Each iteration opens a fresh palette sized as a fixed percentage of the
surviving vertex count, hands every vertex a random list of candidate
colors, builds the conflict graph (edges whose endpoints' lists
intersect), colors conflict-free vertices directly, list-colors the
conflict graph, and recurses on whatever could not be colored.  Palettes
of different iterations are disjoint, so colors never collide across
rounds.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import conflict as conflict_mod
from . import list_coloring
from .errors import BadParamsError, IterationLimitError
from .graph import EdgeOracleView
from .rng import sample_distinct, stream_keys

UNCOLORED = -1


@dataclass(frozen=True)
class PaletteParams:
    """Run knobs: palette percentage, list-size coefficient, seed, safeguards."""

    palette_pct: float = 12.5
    alpha: float = 2.0
    seed: int = 0
    max_iterations: int = 64
    stall_escalation_factor: float = 2.0

    def __post_init__(self):
        if not 0 < self.palette_pct <= 100:
            raise BadParamsError(f"palette_pct must be in (0, 100], got {self.palette_pct}")
        if self.alpha <= 0:
            raise BadParamsError(f"alpha must be positive, got {self.alpha}")
        if self.max_iterations < 1:
            raise BadParamsError("max_iterations must be >= 1")
        if self.stall_escalation_factor < 1.0:
            raise BadParamsError("stall_escalation_factor must be >= 1")


@dataclass(frozen=True)
class IterationPlan:
    """Palette geometry of one iteration; palette ids are [base, base+size)."""

    iteration: int  # 1-based
    palette_size: int
    palette_base: int
    list_size: int


def plan_iteration(
    iteration: int,
    n_active: int,
    params: PaletteParams,
    *,
    palette_base: int = 0,
    stall_count: int = 0,
) -> IterationPlan:
    """Size the palette and color lists for the current subproblem.

    Palette: ceil(palette_pct% of n_active), escalated by
    stall_escalation_factor per prior zero-progress iteration.  List size:
    round(alpha * ln n_active), clamped to [1, palette].
    """
    if n_active < 1:
        raise BadParamsError("n_active must be >= 1")
    base_size = max(1, math.ceil(params.palette_pct / 100.0 * n_active))
    if stall_count > 0:
        base_size = max(1, math.ceil(base_size * params.stall_escalation_factor**stall_count))
    list_size = min(base_size, max(1, round(params.alpha * math.log(n_active))))
    return IterationPlan(
        iteration=iteration,
        palette_size=base_size,
        palette_base=palette_base,
        list_size=list_size,
    )


class ColorLists:
    """Per-vertex candidate color lists for one iteration.

    The regular case is a rectangular (n_active, list_size) int64 array of
    sorted rows, aligned with ``active_ids``.  Ragged lists (used by the
    standalone list-coloring entry points and tests) are supported through
    :meth:`from_dict`.
    """

    def __init__(
        self,
        active_ids: np.ndarray,
        rows: list[np.ndarray],
        palette_base: int,
        palette_size: int,
        array: Optional[np.ndarray] = None,
    ):
        self.active_ids = np.asarray(active_ids, dtype=np.int64)
        self.rows = rows
        self.palette_base = palette_base
        self.palette_size = palette_size
        self.array = array  # set when rectangular
        self._index = {int(v): k for k, v in enumerate(self.active_ids)}

    @classmethod
    def from_array(
        cls, active_ids: np.ndarray, array: np.ndarray, palette_base: int, palette_size: int
    ) -> "ColorLists":
        rows = [array[k] for k in range(array.shape[0])]
        return cls(active_ids, rows, palette_base, palette_size, array=array)

    @classmethod
    def from_dict(
        cls,
        lists: dict[int, "list[int] | np.ndarray"],
        palette_base: Optional[int] = None,
        palette_size: Optional[int] = None,
    ) -> "ColorLists":
        ids = np.array(sorted(lists), dtype=np.int64)
        rows = [np.unique(np.asarray(lists[int(v)], dtype=np.int64)) for v in ids]
        if any(r.size == 0 for r in rows):
            raise BadParamsError("color lists must be non-empty")
        lo = min(int(r[0]) for r in rows)
        hi = max(int(r[-1]) for r in rows)
        base = lo if palette_base is None else palette_base
        size = (hi - base + 1) if palette_size is None else palette_size
        return cls(ids, rows, base, size)

    def __len__(self) -> int:
        return len(self.rows)

    def colors_for(self, vertex_id: int) -> np.ndarray:
        return self.rows[self._index[int(vertex_id)]]

    def local_index(self, vertex_id: int) -> int:
        return self._index[int(vertex_id)]

    def first_colors(self) -> np.ndarray:
        """Smallest color of every list, aligned with active_ids."""
        if self.array is not None:
            return self.array[:, 0]
        return np.array([r[0] for r in self.rows], dtype=np.int64)

    def mask_matrix(self) -> np.ndarray:
        """(n_active, ceil(palette/64)) uint64 bitmasks relative to palette_base."""
        nwords = max(1, (self.palette_size + 63) // 64)
        masks = np.zeros((len(self.rows), nwords), dtype=np.uint64)
        if self.array is not None:
            rel = (self.array - self.palette_base).astype(np.uint64)
            rows_idx = np.repeat(
                np.arange(self.array.shape[0]), self.array.shape[1]
            )
            words = (rel >> np.uint64(6)).astype(np.int64).ravel()
            bits = np.uint64(1) << (rel & np.uint64(63))
            np.bitwise_or.at(masks, (rows_idx, words), bits.ravel())
        else:
            for k, row in enumerate(self.rows):
                rel = (row - self.palette_base).astype(np.uint64)
                np.bitwise_or.at(
                    masks[k],
                    (rel >> np.uint64(6)).astype(np.int64),
                    np.uint64(1) << (rel & np.uint64(63)),
                )
        return masks


def assign_random_lists(
    plan: IterationPlan, active_ids: np.ndarray, seed: int
) -> ColorLists:
    """Give each active vertex ``list_size`` distinct colors from the palette.

    Sampling is uniform without replacement and keyed by
    (seed, iteration, original vertex id): a vertex's list never depends
    on which other vertices survived or on evaluation order.
    """
    active_ids = np.asarray(active_ids, dtype=np.int64)
    keys = stream_keys(seed, plan.iteration, active_ids)
    local = sample_distinct(keys, plan.palette_size, plan.list_size)
    array = local + np.int64(plan.palette_base)
    return ColorLists.from_array(active_ids, array, plan.palette_base, plan.palette_size)


@dataclass
class IterationRecord:
    """Bookkeeping for one iteration of the loop."""

    iteration: int
    n_active: int
    palette_size: int
    palette_base: int
    list_size: int
    conflict_vertices: int
    conflict_edges: int
    colored_unconflicted: int
    colored_in_conflict: int
    uncolored: int
    memory_proxy_entries: int
    stalled: bool
    duration_s: float = 0.0


@dataclass
class ColoringResult:
    """Final colors plus the per-iteration trace of one run."""

    n: int
    color: np.ndarray  # int64, UNCOLORED where never colored
    colored_at: np.ndarray  # iteration index that colored each vertex, 0 if none
    iterations: list[IterationRecord]
    params: PaletteParams
    strategy: str
    completed: bool
    oracle_edges: Optional[int] = None  # |E| of the graph being colored, if known
    wall_time_s: float = 0.0

    @property
    def total_colors(self) -> int:
        used = self.color[self.color != UNCOLORED]
        return int(np.unique(used).size)

    @property
    def palette_total(self) -> int:
        return sum(r.palette_size for r in self.iterations)

    @property
    def peak_conflict_edges(self) -> int:
        return max((r.conflict_edges for r in self.iterations), default=0)

    @property
    def peak_memory_proxy(self) -> int:
        return max((r.memory_proxy_entries for r in self.iterations), default=0)


def color_unconflicted(
    lists: ColorLists,
    conflict_members: np.ndarray,
    color: np.ndarray,
    colored_at: np.ndarray,
    iteration: int,
) -> int:
    """Color every active vertex with no conflict edge: smallest list color.

    Returns the number of vertices colored.  The smallest-color rule makes
    the step deterministic; any list color would be proper here because no
    neighbor shares one.
    """
    members = np.asarray(conflict_members, dtype=np.int64)
    free_mask = np.ones(lists.active_ids.size, dtype=bool)
    if members.size:
        pos = np.searchsorted(lists.active_ids, members)
        free_mask[pos] = False
    free_ids = lists.active_ids[free_mask]
    color[free_ids] = lists.first_colors()[free_mask]
    colored_at[free_ids] = iteration
    return int(free_ids.size)


def _memory_proxy(n_active: int, list_size: int, conflict_edges: int) -> int:
    # Tracked entries this iteration: CSR stores each conflict edge twice,
    # plus the per-vertex arrays (color lists and two id/color slots).
    return 2 * conflict_edges + n_active * (list_size + 2)


def run(
    view: EdgeOracleView,
    params: PaletteParams,
    *,
    strategy: str = "dynamic",
    threads: int = 1,
    edge_budget: Optional[int] = None,
    block_pairs: int = 1 << 20,
) -> ColoringResult:
    """Color everything the view can see; returns the full trace.

    Iterates until no vertex is left uncolored.  A zero-progress iteration
    bumps a stall counter that escalates the next palette; exceeding
    ``params.max_iterations`` raises :class:`IterationLimitError` with the
    partial result attached.
    """
    if view.n_active == 0:
        raise BadParamsError("view has no active vertices")
    t_start = time.perf_counter()
    total_n = (
        view.backing.n if hasattr(view.backing, "n") else int(view.active.max()) + 1
    )
    color = np.full(total_n, UNCOLORED, dtype=np.int64)
    colored_at = np.zeros(total_n, dtype=np.int64)
    records: list[IterationRecord] = []
    current = view
    palette_base = 0
    stall_count = 0
    oracle_edges: Optional[int] = None

    for iteration in range(1, params.max_iterations + 1):
        t0 = time.perf_counter()
        n_active = current.n_active
        plan = plan_iteration(
            iteration,
            n_active,
            params,
            palette_base=palette_base,
            stall_count=stall_count,
        )
        lists = assign_random_lists(plan, current.active, params.seed)
        gc = conflict_mod.build(
            current,
            lists,
            edge_budget=edge_budget,
            threads=threads,
            block_pairs=block_pairs,
        )
        if iteration == 1:
            oracle_edges = gc.view_edges_scanned
        # the reported memory proxy must match what was actually allocated
        assert gc.graph.neighbors.size == 2 * gc.edge_count
        n_unconflicted = color_unconflicted(
            lists, gc.members, color, colored_at, iteration
        )
        outcome = list_coloring.color_conflict_graph(
            gc, lists, strategy=strategy, seed=params.seed, iteration=iteration
        )
        for vid, c in outcome.colored.items():
            color[vid] = c
            colored_at[vid] = iteration
        progress = n_unconflicted + len(outcome.colored)
        stalled = progress == 0
        records.append(
            IterationRecord(
                iteration=iteration,
                n_active=n_active,
                palette_size=plan.palette_size,
                palette_base=plan.palette_base,
                list_size=plan.list_size,
                conflict_vertices=int(gc.members.size),
                conflict_edges=gc.edge_count,
                colored_unconflicted=n_unconflicted,
                colored_in_conflict=len(outcome.colored),
                uncolored=int(outcome.uncolored.size),
                memory_proxy_entries=_memory_proxy(
                    n_active, plan.list_size, gc.edge_count
                ),
                stalled=stalled,
                duration_s=time.perf_counter() - t0,
            )
        )
        palette_base += plan.palette_size
        if stalled:
            stall_count += 1
        if outcome.uncolored.size == 0:
            return ColoringResult(
                n=total_n,
                color=color,
                colored_at=colored_at,
                iterations=records,
                params=params,
                strategy=strategy,
                completed=True,
                oracle_edges=oracle_edges,
                wall_time_s=time.perf_counter() - t_start,
            )
        current = current.induce(outcome.uncolored)

    partial = ColoringResult(
        n=total_n,
        color=color,
        colored_at=colored_at,
        iterations=records,
        params=params,
        strategy=strategy,
        completed=False,
        oracle_edges=oracle_edges,
        wall_time_s=time.perf_counter() - t_start,
    )
    raise IterationLimitError(
        f"{current.n_active} vertices uncolored after {params.max_iterations} iterations",
        partial_result=partial,
    )
