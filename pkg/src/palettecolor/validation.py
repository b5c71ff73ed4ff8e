"""Independent correctness checks and reported metrics.

The validator re-derives everything from the oracle view and the final
color array; it never trusts the driver's own bookkeeping.  Metrics follow
the engine's two headline ratios: color percentage (colors / vertices) and
peak conflicting-edge percentage (peak |Ec| / |E| of the graph colored).
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from .driver import UNCOLORED, ColoringResult, IterationPlan, assign_random_lists
from .errors import TooLargeForExactError
from .graph import EXACT_ENUMERATION_CAP, EdgeOracleView, iter_pair_blocks
from .pauli import PauliSet

VIOLATION_CAP = 100


@dataclass
class ValidationReport:
    proper: bool
    violations: list[tuple[int, int]]  # capped sample of offending edges
    violation_count: int  # total found, not capped
    colors_used: int
    color_pct: float
    ec_max_pct: Optional[float]
    n: int
    oracle_edges: Optional[int]  # |E| used for ec_max_pct
    oracle_edges_exact: bool
    mode: str
    pairs_checked: int
    sample_seed: Optional[int] = None
    iteration_table: list[dict] = field(default_factory=list)


def validate(
    view: EdgeOracleView,
    result: ColoringResult,
    mode: str = "exhaustive",
    *,
    sample_pairs: int = 200_000,
    seed: int = 0,
) -> ValidationReport:
    """Check that no view edge joins two equally colored vertices.

    Exhaustive mode enumerates every active pair through the oracle
    (capped at EXACT_ENUMERATION_CAP vertices) and also counts |E|
    exactly.  Sampled mode checks a seeded uniform pair sample and
    estimates |E|.
    """
    color = result.color
    n = view.n_active
    violations: list[tuple[int, int]] = []
    violation_count = 0
    edges_seen = 0
    pairs_checked = 0

    if mode == "exhaustive":
        if n > EXACT_ENUMERATION_CAP:
            raise TooLargeForExactError(
                f"{n} vertices exceeds the exhaustive cap {EXACT_ENUMERATION_CAP}"
            )
        for i_loc, j_loc in iter_pair_blocks(view.active):
            u_ids, v_ids = view.active[i_loc], view.active[j_loc]
            edge = view.pair_mask(u_ids, v_ids)
            edges_seen += int(edge.sum())
            pairs_checked += int(edge.size)
            same = (color[u_ids] == color[v_ids]) & (color[u_ids] != UNCOLORED)
            bad = edge & same
            k = int(bad.sum())
            if k:
                violation_count += k
                for a, b in zip(u_ids[bad], v_ids[bad]):
                    if len(violations) < VIOLATION_CAP:
                        violations.append((int(a), int(b)))
        m_exact = True
        oracle_edges = edges_seen
    elif mode == "sampled":
        if n >= 2:
            rng = np.random.default_rng(np.random.SeedSequence([seed, n, 0x5A11]))
            i = rng.integers(0, n, sample_pairs)
            j = rng.integers(0, n - 1, sample_pairs)
            j = np.where(j >= i, j + 1, j)
            u_ids, v_ids = view.active[i], view.active[j]
            edge = view.pair_mask(u_ids, v_ids)
            edges_seen = int(edge.sum())
            pairs_checked = sample_pairs
            same = (color[u_ids] == color[v_ids]) & (color[u_ids] != UNCOLORED)
            bad = edge & same
            violation_count = int(bad.sum())
            for a, b in zip(u_ids[bad], v_ids[bad]):
                if len(violations) < VIOLATION_CAP:
                    violations.append((int(a), int(b)))
        m_exact = False
        total_pairs = n * (n - 1) // 2
        oracle_edges = (
            int(round(edges_seen / pairs_checked * total_pairs))
            if pairs_checked
            else 0
        )
    else:
        raise ValueError(f"unknown validation mode {mode!r}")

    active_colors = color[view.active]
    colors_used = int(np.unique(active_colors[active_colors != UNCOLORED]).size)
    peak = result.peak_conflict_edges
    ec_max_pct = None
    if oracle_edges:
        ec_max_pct = 100.0 * peak / oracle_edges
    elif oracle_edges == 0:
        ec_max_pct = 0.0
    return ValidationReport(
        proper=violation_count == 0,
        violations=violations,
        violation_count=violation_count,
        colors_used=colors_used,
        color_pct=100.0 * colors_used / n if n else 0.0,
        ec_max_pct=ec_max_pct,
        n=n,
        oracle_edges=oracle_edges,
        oracle_edges_exact=m_exact,
        mode=mode,
        pairs_checked=pairs_checked,
        sample_seed=seed if mode == "sampled" else None,
        iteration_table=[asdict(r) for r in result.iterations],
    )


def verify_palette_discipline(result: ColoringResult) -> None:
    """Assert the palette-bookkeeping invariants of a completed run.

    Every color must fall in the palette range of the iteration that
    assigned it, must be regenerable as a member of that vertex's list
    (lists are a pure function of seed, iteration, and vertex id), and the
    total color count must not exceed the summed palette sizes.  Raises
    AssertionError with a description on the first violation.
    """
    plans = {
        r.iteration: IterationPlan(
            iteration=r.iteration,
            palette_size=r.palette_size,
            palette_base=r.palette_base,
            list_size=r.list_size,
        )
        for r in result.iterations
    }
    colored = np.nonzero(result.color != UNCOLORED)[0]
    for v in colored:
        it = int(result.colored_at[v])
        plan = plans.get(it)
        assert plan is not None, f"vertex {v} colored at unknown iteration {it}"
        c = int(result.color[v])
        lo, hi = plan.palette_base, plan.palette_base + plan.palette_size
        assert lo <= c < hi, f"vertex {v}: color {c} outside palette [{lo}, {hi})"
    # regenerate lists per iteration in bulk
    by_iter: dict[int, list[int]] = {}
    for v in colored:
        by_iter.setdefault(int(result.colored_at[v]), []).append(int(v))
    for it, vids in sorted(by_iter.items()):
        lists = assign_random_lists(
            plans[it], np.array(vids, dtype=np.int64), result.params.seed
        )
        for v in vids:
            row = lists.colors_for(v)
            c = int(result.color[v])
            assert c in row, f"vertex {v}: color {c} not in its iteration-{it} list"
    assert result.total_colors <= result.palette_total, (
        f"{result.total_colors} colors exceed the palette total {result.palette_total}"
    )


def partition_groups(result: ColoringResult) -> list[tuple[int, list[int]]]:
    """Color classes as (color, sorted vertex ids), ordered by color id."""
    groups: dict[int, list[int]] = {}
    for v in range(result.n):
        c = int(result.color[v])
        if c != UNCOLORED:
            groups.setdefault(c, []).append(v)
    return [(c, groups[c]) for c in sorted(groups)]


def partition_export(result: ColoringResult, pauli: PauliSet) -> str:
    """Color classes as text: one Pauli string per line, blank line between groups.

    Each group is a mutually anticommuting set -- the candidate unitaries
    of the application.  Group count equals the number of colors used.
    """
    blocks = []
    for _, vids in partition_groups(result):
        blocks.append("\n".join(pauli.strings[v] for v in vids))
    return "\n\n".join(blocks) + ("\n" if blocks else "")
