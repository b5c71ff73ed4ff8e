"""List-coloring of the conflict graph.

The dynamic scheme colors the currently most-constrained vertex first: a
bucket array keyed by remaining list size gives O(1) removal and
reinsertion, and a moving lower-bound pointer finds the lowest non-empty
bucket in amortized O(list size).  Static schemes walk a fixed vertex
order and take the first list color no colored neighbor holds.  Either
way a vertex whose options run out lands in the uncolored residue, to be
retried next iteration with a fresh palette.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .errors import BadParamsError

if TYPE_CHECKING:  # pragma: no cover
    from .conflict import ConflictGraph
    from .driver import ColorLists

STRATEGIES = ("dynamic", "natural", "ldf", "sdl", "random")


@dataclass
class ConflictColoringOutcome:
    """Result of list-coloring one conflict graph.

    ``colored`` maps original vertex id -> color; ``uncolored`` holds the
    residue (sorted original ids).  Together they partition the members.
    """

    colored: dict[int, int]
    uncolored: np.ndarray
    colors_used: int
    empties: int
    removal_ops: int


def _finish(colored: dict[int, int], uncolored: list[int], removal_ops: int) -> ConflictColoringOutcome:
    return ConflictColoringOutcome(
        colored=colored,
        uncolored=np.array(sorted(uncolored), dtype=np.int64),
        colors_used=len(set(colored.values())),
        empties=len(uncolored),
        removal_ops=removal_ops,
    )


def color_dynamic(
    gc: "ConflictGraph", lists: "ColorLists", rng: np.random.Generator
) -> ConflictColoringOutcome:
    """Bucket-based dynamic greedy list-coloring.

    Repeatedly pick a uniformly random vertex from the lowest non-empty
    bucket, color it with a uniformly random color from its current list,
    and strike that color from all uncolored neighbors' lists (dropping
    them one bucket).  A vertex whose list empties is moved to the
    residue.  Total work is O((|Vc| + |Ec|) * L).
    """
    nm = gc.graph.n
    colored: dict[int, int] = {}
    uncolored: list[int] = []
    if nm == 0:
        return _finish(colored, uncolored, 0)

    # Per-vertex mutable lists with O(1) removal: value list + position map.
    cols: list[list[int]] = []
    colpos: list[dict[int, int]] = []
    for k in range(nm):
        row = [int(c) for c in lists.colors_for(int(gc.members[k]))]
        cols.append(row)
        colpos.append({c: i for i, c in enumerate(row)})

    max_size = max(len(r) for r in cols)
    buckets: list[list[int]] = [[] for _ in range(max_size + 1)]
    bucket_of = np.empty(nm, dtype=np.int64)
    slot_of = np.empty(nm, dtype=np.int64)
    for k in range(nm):
        b = len(cols[k])
        bucket_of[k] = b
        slot_of[k] = len(buckets[b])
        buckets[b].append(k)

    processed = np.zeros(nm, dtype=bool)
    remaining = nm
    lowest = 0
    removal_ops = 0
    offsets, neighbors = gc.graph.offsets, gc.graph.neighbors

    def bucket_remove(k: int) -> None:
        b, s = int(bucket_of[k]), int(slot_of[k])
        last = buckets[b][-1]
        buckets[b][s] = last
        slot_of[last] = s
        buckets[b].pop()

    while remaining:
        while not buckets[lowest]:
            lowest += 1
        bucket = buckets[lowest]
        v = bucket[int(rng.integers(len(bucket)))]
        bucket_remove(v)
        processed[v] = True
        remaining -= 1
        row = cols[v]
        c = row[int(rng.integers(len(row)))]
        colored[int(gc.members[v])] = c
        for u in neighbors[offsets[v] : offsets[v + 1]]:
            u = int(u)
            if processed[u]:
                continue
            pos = colpos[u].pop(c, None)
            if pos is None:
                continue
            removal_ops += 1
            urow = cols[u]
            last = urow[-1]
            urow[pos] = last
            urow.pop()
            if last != c:
                colpos[u][last] = pos
            bucket_remove(u)
            if not urow:
                processed[u] = True
                remaining -= 1
                uncolored.append(int(gc.members[u]))
                continue
            b = len(urow)
            bucket_of[u] = b
            slot_of[u] = len(buckets[b])
            buckets[b].append(u)
            if b < lowest:
                lowest = b
    assert removal_ops <= gc.edge_count * max_size
    return _finish(colored, uncolored, removal_ops)


def _degeneracy_order(gc: "ConflictGraph") -> list[int]:
    """Smallest-degree-last order: remove min-degree (tie: smallest id), reverse."""
    import heapq

    nm = gc.graph.n
    deg = gc.graph.degrees().copy()
    removed = np.zeros(nm, dtype=bool)
    heap = [(int(deg[k]), k) for k in range(nm)]
    heapq.heapify(heap)
    removal = []
    offsets, neighbors = gc.graph.offsets, gc.graph.neighbors
    while heap:
        d, v = heapq.heappop(heap)
        if removed[v] or d != deg[v]:
            continue
        removed[v] = True
        removal.append(v)
        for u in neighbors[offsets[v] : offsets[v + 1]]:
            u = int(u)
            if not removed[u]:
                deg[u] -= 1
                heapq.heappush(heap, (int(deg[u]), u))
    removal.reverse()
    return removal


def color_static(
    gc: "ConflictGraph",
    lists: "ColorLists",
    order: str,
    rng: np.random.Generator,
) -> ConflictColoringOutcome:
    """Fixed-order list-coloring: first list color absent among colored neighbors.

    Orders: natural (ascending id), ldf (largest conflict-degree first),
    sdl (smallest-degree-last / degeneracy), random (seeded shuffle).
    """
    nm = gc.graph.n
    colored: dict[int, int] = {}
    uncolored: list[int] = []
    if nm == 0:
        return _finish(colored, uncolored, 0)
    if order == "natural":
        sequence = list(range(nm))
    elif order == "ldf":
        deg = gc.graph.degrees()
        sequence = list(np.lexsort((np.arange(nm), -deg)))
    elif order == "sdl":
        sequence = _degeneracy_order(gc)
    elif order == "random":
        sequence = list(rng.permutation(nm))
    else:
        raise BadParamsError(f"unknown static order {order!r}")

    assigned = np.full(nm, -1, dtype=np.int64)
    offsets, neighbors = gc.graph.offsets, gc.graph.neighbors
    for v in sequence:
        v = int(v)
        taken = {
            int(assigned[u])
            for u in neighbors[offsets[v] : offsets[v + 1]]
            if assigned[u] != -1
        }
        choice = -1
        for c in lists.colors_for(int(gc.members[v])):
            if int(c) not in taken:
                choice = int(c)
                break
        if choice == -1:
            uncolored.append(int(gc.members[v]))
        else:
            assigned[v] = choice
            colored[int(gc.members[v])] = choice
    return _finish(colored, uncolored, 0)


def color_conflict_graph(
    gc: "ConflictGraph",
    lists: "ColorLists",
    strategy: str = "dynamic",
    seed: int = 0,
    iteration: int = 1,
) -> ConflictColoringOutcome:
    """Strategy dispatcher used by the driver; rng is keyed by (seed, iteration)."""
    if strategy not in STRATEGIES:
        raise BadParamsError(
            f"unknown conflict strategy {strategy!r}; choose from {STRATEGIES}"
        )
    rng = np.random.default_rng(np.random.SeedSequence([seed & (2**63 - 1), iteration, 0xC01]))
    if strategy == "dynamic":
        return color_dynamic(gc, lists, rng)
    return color_static(gc, lists, strategy, rng)
