"""Conflict-graph construction.

A pair of active vertices is a conflict edge when it is an edge of the
oracle view AND the two candidate color lists intersect.  The builder
scans all n(n-1)/2 active pairs in fixed-size blocks (block geometry is a
function of n alone, never of worker count), counts first, then fills a
canonical CSR -- the count/offset/fill shape keeps peak memory at the
size of the conflict graph, not the full graph.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import TYPE_CHECKING, Optional

import numpy as np

from .errors import EdgeBudgetExceededError
from .graph import EdgeOracleView, ExplicitGraph, iter_pair_blocks

if TYPE_CHECKING:  # pragma: no cover
    from .driver import ColorLists

__all__ = ["ConflictGraph", "lists_intersect", "build", "build_reference"]


def lists_intersect(a, b) -> bool:
    """Two-pointer intersection test on sorted color lists, O(len) time."""
    i = j = 0
    na, nb = len(a), len(b)
    while i < na and j < nb:
        if a[i] == b[j]:
            return True
        if a[i] < b[j]:
            i += 1
        else:
            j += 1
    return False


@dataclass
class ConflictGraph:
    """The per-iteration conflict graph in compact CSR form.

    ``members`` lists the original ids of vertices with at least one
    conflict edge, sorted ascending; ``graph`` is the CSR over their
    compact re-indexing (graph vertex k is members[k]).
    """

    members: np.ndarray
    graph: ExplicitGraph
    edge_count: int
    view_edges_scanned: int  # oracle edges seen during the scan (= |E| on a full view)

    def original_edges(self) -> tuple[np.ndarray, np.ndarray]:
        """Each conflict edge once, as (u, v) original-id arrays with u < v."""
        u = np.repeat(
            np.arange(self.graph.n, dtype=np.int64), self.graph.degrees()
        )
        v = self.graph.neighbors
        keep = u < v
        return self.members[u[keep]], self.members[v[keep]]

    def to_edge_list_text(self) -> str:
        """Debug dump: one 'u v' line per conflict edge, original ids."""
        u, v = self.original_edges()
        lines = [f"{a} {b}" for a, b in zip(u, v)]
        return "\n".join(lines) + ("\n" if lines else "")


def _block_masks(
    view: EdgeOracleView, masks: np.ndarray, i_loc: np.ndarray, j_loc: np.ndarray
) -> tuple[np.ndarray, int]:
    """(admitted mask, oracle-edge count) for one pair block."""
    edge = view.pair_mask(view.active[i_loc], view.active[j_loc])
    inter = (masks[i_loc] & masks[j_loc]).any(axis=1)
    return edge & inter, int(edge.sum())


def _map_blocks(fn, blocks, threads: int):
    """Apply fn to each block, returning results in block order."""
    if threads <= 1:
        return [fn(b) for b in blocks]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, blocks))


def build(
    view: EdgeOracleView,
    lists: "ColorLists",
    *,
    edge_budget: Optional[int] = None,
    threads: int = 1,
    block_pairs: int = 1 << 20,
    two_phase: bool = True,
) -> ConflictGraph:
    """Scan all active pairs and assemble the conflict CSR.

    Two-phase mode (the default) counts admitted edges per block, checks
    the budget, then re-scans to fill exactly-sized arrays; blocks are
    recomputed rather than cached so no O(n^2) intermediate ever exists.
    Results are identical for any worker count because blocks are merged
    in block order.
    """
    n = view.n_active
    masks = lists.mask_matrix()
    blocks = list(iter_pair_blocks(view.active, block_pairs))

    if two_phase:
        counted = _map_blocks(
            lambda blk: _block_masks(view, masks, *blk), blocks, threads
        )
        block_counts = [int(adm.sum()) for adm, _ in counted]
        edges_scanned = sum(seen for _, seen in counted)
        total = sum(block_counts)
        if edge_budget is not None and total > edge_budget:
            raise EdgeBudgetExceededError(total, edge_budget)
        u_arr = np.empty(total, dtype=np.int64)
        v_arr = np.empty(total, dtype=np.int64)
        offsets = np.concatenate([[0], np.cumsum(block_counts)])

        def fill(k_blk):
            k, blk = k_blk
            adm, _ = _block_masks(view, masks, *blk)
            lo, hi = offsets[k], offsets[k + 1]
            u_arr[lo:hi] = blk[0][adm]
            v_arr[lo:hi] = blk[1][adm]

        _map_blocks(fill, list(enumerate(blocks)), threads)
    else:
        counted = _map_blocks(
            lambda blk: (_block_masks(view, masks, *blk), blk), blocks, threads
        )
        edges_scanned = 0
        parts_u, parts_v = [], []
        total = 0
        for (adm, seen), blk in counted:
            edges_scanned += seen
            total += int(adm.sum())
            if edge_budget is not None and total > edge_budget:
                raise EdgeBudgetExceededError(total, edge_budget)
            parts_u.append(blk[0][adm])
            parts_v.append(blk[1][adm])
        u_arr = np.concatenate(parts_u) if parts_u else np.zeros(0, dtype=np.int64)
        v_arr = np.concatenate(parts_v) if parts_v else np.zeros(0, dtype=np.int64)

    # u_arr/v_arr hold local indices into view.active with u < v.
    touched = np.union1d(u_arr, v_arr)
    members = view.active[touched] if touched.size else np.zeros(0, dtype=np.int64)
    cu = np.searchsorted(touched, u_arr)
    cv = np.searchsorted(touched, v_arr)
    nm = int(touched.size)
    uu = np.concatenate([cu, cv])
    vv = np.concatenate([cv, cu])
    order = np.lexsort((vv, uu))
    uu, vv = uu[order], vv[order]
    csr_offsets = np.zeros(max(nm, 0) + 1, dtype=np.int64)
    np.add.at(csr_offsets, uu + 1, 1)
    np.cumsum(csr_offsets, out=csr_offsets)
    graph = ExplicitGraph(n=nm, offsets=csr_offsets, neighbors=vv)
    return ConflictGraph(
        members=members,
        graph=graph,
        edge_count=int(u_arr.size),
        view_edges_scanned=int(edges_scanned),
    )


def build_reference(view: EdgeOracleView, lists: "ColorLists") -> ConflictGraph:
    """Naive O(n^2 * L) construction used as the equivalence oracle.

    Deliberately shares no kernel with :func:`build`: per-pair Python
    calls into has_edge plus the two-pointer list check.
    """
    active = view.active
    n = active.size
    us, vs = [], []
    edges_seen = 0
    rows = [lists.colors_for(int(v)) for v in active]
    for a in range(n):
        for b in range(a + 1, n):
            if view.has_edge(int(active[a]), int(active[b])):
                edges_seen += 1
                if lists_intersect(rows[a], rows[b]):
                    us.append(a)
                    vs.append(b)
    u_arr = np.array(us, dtype=np.int64)
    v_arr = np.array(vs, dtype=np.int64)
    touched = np.union1d(u_arr, v_arr)
    members = active[touched] if touched.size else np.zeros(0, dtype=np.int64)
    cu = np.searchsorted(touched, u_arr)
    cv = np.searchsorted(touched, v_arr)
    if touched.size:
        graph = ExplicitGraph.from_edges(int(touched.size), cu, cv)
    else:
        graph = ExplicitGraph(
            n=0, offsets=np.zeros(1, dtype=np.int64), neighbors=np.zeros(0, dtype=np.int64)
        )
    return ConflictGraph(
        members=members,
        graph=graph,
        edge_count=int(u_arr.size),
        view_edges_scanned=edges_seen,
    )
