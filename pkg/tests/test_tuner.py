import io

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from palettecolor import tuner
from palettecolor.errors import EmptyRecordsError, UntrainedModelError
from conftest import make_pauli_view


def rec(p, a, colors, ec, n=100, m=1000, seed=0, instance="t"):
    return tuner.SweepRecord(
        instance=instance, n=n, m=m, palette_pct=p, alpha=a,
        colors=colors, ec_max=ec, runtime_s=0.0, seed=seed,
    )


def test_default_grids_shape():
    assert len(tuner.DEFAULT_GRID_P) == 9
    assert len(tuner.DEFAULT_GRID_A) == 9
    assert tuner.DEFAULT_GRID_P[0] == 1.0 and tuner.DEFAULT_GRID_P[-1] == 20.0
    assert tuner.DEFAULT_GRID_A == (0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5)


def test_sweep_single_cell():
    view, _ = make_pauli_view(60, 5, seed=1)
    records = tuner.sweep(view, [10.0], [2.0], [3], instance="one")
    assert len(records) == 1
    r = records[0]
    assert (r.palette_pct, r.alpha, r.seed) == (10.0, 2.0, 3)
    assert r.colors >= 1 and r.ec_max >= 0 and r.n == 60


def test_sweep_records_per_seed():
    view, _ = make_pauli_view(50, 5, seed=2)
    records = tuner.sweep(view, [10.0, 20.0], [1.0], [0, 1, 2], instance="x")
    assert len(records) == 6  # one record per (cell, seed)


def test_select_optimal_degenerate_betas():
    records = [rec(1, 1, colors=20, ec=900), rec(2, 2, colors=90, ec=100)]
    assert tuner.select_optimal(records, beta=1.0) == (1, 1)  # colors only
    assert tuner.select_optimal(records, beta=0.0) == (2, 2)  # conflict edges only


def test_select_optimal_two_cell_arithmetic():
    # cells (C_hat, E_hat) = (0.2, 0.5) and (0.3, 0.1); beta=0.5 -> second wins
    records = [rec(1, 1, colors=20, ec=500), rec(2, 2, colors=30, ec=100)]
    assert tuner.select_optimal(records, beta=0.5) == (2, 2)


def test_select_optimal_averages_seeds_and_breaks_ties():
    records = [
        rec(1, 1, colors=10, ec=100, seed=0),
        rec(1, 1, colors=30, ec=100, seed=1),  # cell mean colors 20
        rec(2, 2, colors=20, ec=100, seed=0),
    ]
    # equal objectives -> tie broken by smaller E_hat (equal) then smaller pct
    assert tuner.select_optimal(records, beta=1.0) == (1, 1)


def test_select_optimal_empty():
    with pytest.raises(EmptyRecordsError):
        tuner.select_optimal([], beta=0.5)


def test_sweep_failed_cell_skipped(caplog):
    # K40 under a 1-iteration cap: the 2-color cell cannot finish, the
    # full-palette cell can; the sweep logs the failure and keeps going
    import palettecolor as pc

    view = pc.graph_view(pc.gnp_graph(40, 1.0, seed=0))
    records = tuner.sweep(
        view, [5.0, 100.0], [50.0], [0], instance="k40", max_iterations=1
    )
    assert [r.palette_pct for r in records] == [100.0]
    assert records[0].colors == 40


def brute_force_argmin(records, beta):
    cells = {}
    for r in records:
        cells.setdefault((r.palette_pct, r.alpha), []).append(r)
    best, best_key = None, None
    for key in cells:
        rs = cells[key]
        c = float(np.mean([x.colors / x.n for x in rs]))
        e = float(np.mean([x.ec_max / x.m for x in rs]))
        obj = beta * c + (1 - beta) * e
        tup = (obj, e, key[0], key[1])
        if best is None or tup < best:
            best, best_key = tup, key
    return best_key


@given(st.integers(0, 10_000), st.floats(0.0, 1.0))
@settings(max_examples=40)
def test_select_matches_brute_force(seed, beta):
    rng = np.random.default_rng(seed)
    records = []
    for p in (1.0, 5.0, 10.0):
        for a in (0.5, 2.0):
            for s in range(int(rng.integers(1, 3))):
                records.append(
                    rec(p, a, colors=int(rng.integers(1, 80)), ec=int(rng.integers(0, 900)), seed=s)
                )
    assert tuner.select_optimal(records, beta) == brute_force_argmin(records, beta)


def test_normalization_unit_invariance():
    # counting each conflict edge twice (scaling ec and m together) is a
    # unit change; the normalized objective must pick the same cell
    rng = np.random.default_rng(7)
    records = [
        rec(p, a, colors=int(rng.integers(1, 80)), ec=int(rng.integers(0, 900)))
        for p in (1.0, 5.0, 10.0)
        for a in (0.5, 2.0)
    ]
    scaled = [
        tuner.SweepRecord(
            instance=r.instance, n=r.n, m=2 * r.m, palette_pct=r.palette_pct,
            alpha=r.alpha, colors=r.colors, ec_max=2 * r.ec_max,
            runtime_s=r.runtime_s, seed=r.seed,
        )
        for r in records
    ]
    for beta in (0.0, 0.3, 0.7, 1.0):
        assert tuner.select_optimal(records, beta) == tuner.select_optimal(scaled, beta)


def test_alpha_trend_colors_non_increasing():
    # larger alpha at fixed palette -> fewer colors on a dense instance
    view, _ = make_pauli_view(300, 8, seed=4)
    records = tuner.sweep(view, [12.5], [0.5, 2.0, 4.5], seeds=[0, 1, 2, 3, 4], instance="d")
    means = {}
    for a in (0.5, 2.0, 4.5):
        means[a] = np.mean([r.colors for r in records if r.alpha == a])
    assert means[4.5] < means[0.5]
    assert means[2.0] <= means[0.5] * 1.05 and means[4.5] <= means[2.0] * 1.05


def test_train_single_point_always_returned():
    pt = tuner.TrainingPoint(beta=0.5, n=100, m=1000, palette_pct=7.5, alpha=3.0)
    model = tuner.train([pt])
    assert tuner.predict(model, 0.9, 5000, 2_000_000) == (7.5, 3.0)


def test_predict_exact_match_returns_target():
    points = [
        tuner.TrainingPoint(0.1, 100, 1000, 1.0, 0.5),
        tuner.TrainingPoint(0.5, 1000, 50_000, 10.0, 2.0),
        tuner.TrainingPoint(0.9, 5000, 900_000, 20.0, 4.5),
        tuner.TrainingPoint(0.3, 300, 9000, 5.0, 1.5),
    ]
    model = tuner.train(points)
    assert tuner.predict(model, 0.5, 1000, 50_000) == (10.0, 2.0)


def test_predict_lands_on_grid_and_in_neighbor_hull():
    rng = np.random.default_rng(3)
    points = [
        tuner.TrainingPoint(
            beta=float(rng.uniform(0, 1)),
            n=int(rng.integers(50, 5000)),
            m=int(rng.integers(100, 10**6)),
            palette_pct=float(rng.choice(tuner.DEFAULT_GRID_P)),
            alpha=float(rng.choice(tuner.DEFAULT_GRID_A)),
        )
        for _ in range(12)
    ]
    model = tuner.train(points)
    for _ in range(20):
        beta, n, m = float(rng.uniform(0, 1)), int(rng.integers(50, 5000)), int(rng.integers(100, 10**6))
        p, a = tuner.predict(model, beta, n, m)
        assert p in tuner.DEFAULT_GRID_P
        assert a in tuner.DEFAULT_GRID_A
        # weighted average stays within the span of training targets
        assert min(x.palette_pct for x in points) <= p <= max(x.palette_pct for x in points)
        assert min(x.alpha for x in points) <= a <= max(x.alpha for x in points)


def test_untrained_model():
    model = tuner.PredictorModel(
        features=np.zeros((0, 3)), targets=np.zeros((0, 2)),
        mean=np.zeros(3), std=np.ones(3),
        grid_p=tuner.DEFAULT_GRID_P, grid_a=tuner.DEFAULT_GRID_A,
    )
    with pytest.raises(UntrainedModelError):
        tuner.predict(model, 0.5, 100, 1000)
    with pytest.raises(EmptyRecordsError):
        tuner.train([])


def test_build_training_points_and_pipeline():
    view, _ = make_pauli_view(80, 5, seed=6)
    records = tuner.sweep(view, [5.0, 12.5], [1.0, 3.0], [0, 1], instance="inst1")
    points = tuner.build_training_points(records, betas=(0.2, 0.8))
    assert len(points) == 2
    assert all(
        (pt.palette_pct, pt.alpha) in {(5.0, 1.0), (5.0, 3.0), (12.5, 1.0), (12.5, 3.0)}
        for pt in points
    )
    model = tuner.train(points, grid_p=(5.0, 12.5), grid_a=(1.0, 3.0))
    p, a = tuner.predict(model, 0.2, 80, records[0].m)
    assert p in (5.0, 12.5) and a in (1.0, 3.0)


def test_csv_roundtrip():
    view, _ = make_pauli_view(40, 5, seed=8)
    records = tuner.sweep(view, [10.0], [1.5], [0, 1], instance="csvcheck")
    buf = io.StringIO()
    tuner.write_sweep_csv(records, buf)
    text = buf.getvalue()
    assert text.splitlines()[0] == tuner.SWEEP_CSV_HEADER
    back = tuner.read_sweep_csv(io.StringIO(text))
    assert back == [
        tuner.SweepRecord(**{**r.__dict__, "runtime_s": float(f"{r.runtime_s:.6f}")})
        for r in records
    ]


def test_model_roundtrip():
    points = [
        tuner.TrainingPoint(0.1, 100, 1000, 1.0, 0.5),
        tuner.TrainingPoint(0.5, 1000, 50_000, 10.0, 2.0),
        tuner.TrainingPoint(0.9, 5000, 900_000, 20.0, 4.5),
    ]
    model = tuner.train(points)
    buf = io.StringIO()
    tuner.save_model(model, buf)
    back = tuner.load_model(io.StringIO(buf.getvalue()))
    for beta, n, m in ((0.2, 200, 5000), (0.7, 3000, 400_000)):
        assert tuner.predict(model, beta, n, m) == tuner.predict(back, beta, n, m)


def test_estimate_oracle_edges_exact():
    view, ps = make_pauli_view(100, 6, seed=9)
    m, exact = tuner.estimate_oracle_edges(view)
    assert exact
    # cross-check against a direct pair count
    count = sum(
        1 for i in range(100) for j in range(i + 1, 100) if view.has_edge(i, j)
    )
    assert m == count
