import numpy as np
import pytest

import palettecolor as pc
from palettecolor import validation as validate_mod
from palettecolor.errors import TooLargeForExactError
from conftest import brute_force_proper, make_gnp_view, make_pauli_view


def result_with_colors(n, colors, iterations=None):
    return pc.ColoringResult(
        n=n,
        color=np.asarray(colors, dtype=np.int64),
        colored_at=np.ones(n, dtype=np.int64),
        iterations=iterations or [],
        params=pc.PaletteParams(),
        strategy="dynamic",
        completed=True,
    )


def test_all_distinct_is_proper():
    view, _ = make_gnp_view(12, 0.6, seed=0)
    res = result_with_colors(12, np.arange(12))
    rep = pc.validate(view, res)
    assert rep.proper and rep.violation_count == 0
    assert rep.colors_used == 12
    assert rep.color_pct == 100.0


def test_violation_listed():
    g = pc.load_edge_list("0 1")
    view = pc.graph_view(g)
    res = result_with_colors(2, [5, 5])
    rep = pc.validate(view, res)
    assert not rep.proper
    assert rep.violations == [(0, 1)]
    assert rep.violation_count == 1


def test_k5_complement_single_color():
    # complement of K5 is empty: one color for everything is proper
    view, _ = make_gnp_view(5, 1.0, seed=0, complement=True)
    res = result_with_colors(5, [3, 3, 3, 3, 3])
    rep = pc.validate(view, res)
    assert rep.proper
    assert rep.colors_used == 1
    assert rep.color_pct == 20.0


def test_validator_agrees_with_independent_loop():
    for seed in range(3):
        view, _ = make_pauli_view(120, 5, seed=seed)
        res = pc.run(view, pc.PaletteParams(15, 2, seed=seed))
        rep = pc.validate(view, res)
        assert rep.proper == (not brute_force_proper(view, res.color))
        # plant a violation and check both flag it
        bad = res.color.copy()
        u, v = None, None
        for a in range(120):
            for b in range(a + 1, 120):
                if view.has_edge(a, b):
                    u, v = a, b
                    break
            if u is not None:
                break
        bad[v] = bad[u]
        res_bad = result_with_colors(120, bad)
        rep_bad = pc.validate(view, res_bad)
        loop_bad = brute_force_proper(view, bad)
        assert not rep_bad.proper
        assert len(loop_bad) == rep_bad.violation_count


def test_violation_list_capped():
    g = pc.gnp_graph(40, 1.0, seed=0)  # K40, all same color: C(40,2) violations
    view = pc.graph_view(g)
    res = result_with_colors(40, np.zeros(40))
    rep = pc.validate(view, res)
    assert rep.violation_count == 40 * 39 // 2
    assert len(rep.violations) == validate_mod.VIOLATION_CAP


def test_exhaustive_counts_oracle_edges():
    view, g = make_gnp_view(50, 0.4, seed=2)
    res = pc.run(view, pc.PaletteParams(20, 2, seed=1))
    rep = pc.validate(view, res)
    assert rep.oracle_edges == g.m
    assert rep.oracle_edges_exact
    assert rep.ec_max_pct == pytest.approx(100.0 * res.peak_conflict_edges / g.m)
    assert rep.iteration_table[0]["n_active"] == 50


def test_sampled_mode():
    view, _ = make_pauli_view(400, 6, seed=3)
    res = pc.run(view, pc.PaletteParams(12.5, 2, seed=3))
    rep = pc.validate(view, res, mode="sampled", sample_pairs=30_000, seed=5)
    assert rep.proper
    assert not rep.oracle_edges_exact
    assert rep.pairs_checked == 30_000
    assert rep.sample_seed == 5
    # sampled edge estimate lands near the exact count
    exact = pc.validate(view, res).oracle_edges
    assert abs(rep.oracle_edges - exact) / exact < 0.15
    # planted violation is caught with an adequate sample
    bad = res.color.copy()
    bad[:] = bad[0]
    rep_bad = pc.validate(view, result_with_colors(400, bad), mode="sampled", seed=5)
    assert not rep_bad.proper


def test_exhaustive_cap():
    view, _ = make_pauli_view(pc.graph.EXACT_ENUMERATION_CAP + 1, 4, seed=0)
    res = result_with_colors(view.n_active, np.arange(view.n_active))
    with pytest.raises(TooLargeForExactError):
        pc.validate(view, res)


def test_palette_discipline_detects_corruption():
    view, _ = make_pauli_view(100, 5, seed=4)
    res = pc.run(view, pc.PaletteParams(20, 2, seed=4))
    pc.verify_palette_discipline(res)
    res.color[0] = 10**9  # outside any palette
    with pytest.raises(AssertionError):
        pc.verify_palette_discipline(res)


def test_partition_single_string():
    ps = pc.PauliSet.from_strings(["XY"])
    res = pc.run(pc.pauli_view(ps), pc.PaletteParams(100, 1, seed=0))
    text = pc.partition_export(res, ps)
    assert text == "XY\n"


def test_partition_anticommuting_triple_one_group():
    # full lists (alpha large) make unconflicted vertices share the smallest color
    ps = pc.PauliSet.from_strings(["X", "Y", "Z"])  # pairwise anticommuting
    res = pc.run(pc.pauli_view(ps), pc.PaletteParams(100, 50, seed=1))
    groups = pc.partition_groups(res)
    assert len(groups) == 1
    assert groups[0][1] == [0, 1, 2]
    assert res.total_colors == 1


def test_partition_commuting_pair_two_groups():
    ps = pc.PauliSet.from_strings(["XX", "YY"])  # commute -> complement edge
    res = pc.run(pc.pauli_view(ps), pc.PaletteParams(100, 2, seed=1))
    groups = pc.partition_groups(res)
    assert len(groups) == 2
    assert all(len(g) == 1 for _, g in groups)


def test_partition_groups_are_cliques():
    view, ps = make_pauli_view(200, 6, seed=5)
    res = pc.run(view, pc.PaletteParams(12.5, 2, seed=5))
    groups = pc.partition_groups(res)
    assert len(groups) == res.total_colors
    for _, vids in groups:
        for a in range(len(vids)):
            for b in range(a + 1, len(vids)):
                assert pc.anticommutes_fast(ps.encoded[vids[a]], ps.encoded[vids[b]])
    text = pc.partition_export(res, ps)
    blocks = text.strip().split("\n\n")
    assert len(blocks) == res.total_colors
    assert sum(len(b.splitlines()) for b in blocks) == 200
