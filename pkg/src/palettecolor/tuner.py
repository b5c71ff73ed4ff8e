"""Parameter tuning: grid sweep, weighted bi-objective selection, kNN prediction.

The workflow: sweep (palette_pct, alpha) cells over seeds, normalize the
two competing outcomes per instance (colors / n and peak conflict edges /
m), pick the argmin of beta*colors_hat + (1-beta)*ec_hat per beta, collect
(beta, n, m) -> (palette_pct, alpha) training points across instances, and
answer new queries by inverse-distance-weighted 3-nearest-neighbor lookup
snapped back onto the sweep grid.  The predictor is deliberately a small
pluggable table -- swap in any regressor with the same fit/predict shape.
"""

from __future__ import annotations

import csv
import io
import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import driver
from .errors import EmptyRecordsError, UntrainedModelError
from .graph import EXACT_ENUMERATION_CAP, EdgeOracleView, degree_stats

log = logging.getLogger(__name__)

SWEEP_CSV_HEADER = "instance,n,m,palette_pct,alpha,colors,ec_max,runtime_s,seed"

DEFAULT_GRID_P = (1.0, 2.5, 5.0, 7.5, 10.0, 12.5, 15.0, 17.5, 20.0)
DEFAULT_GRID_A = (0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5)
DEFAULT_BETAS = tuple(round(0.1 * k, 1) for k in range(1, 10))


@dataclass
class SweepRecord:
    """One driver run: instance identity, cell, seed, and outcomes."""

    instance: str
    n: int
    m: int
    palette_pct: float
    alpha: float
    colors: int
    ec_max: int
    runtime_s: float
    seed: int


@dataclass
class TrainingPoint:
    """Features (beta, n, m) and the per-beta optimal cell for one instance."""

    beta: float
    n: int
    m: int
    palette_pct: float
    alpha: float


@dataclass
class PredictorModel:
    """Standardized feature table for inverse-distance kNN regression."""

    features: np.ndarray  # (k, 3) standardized (beta, log n, log m)
    targets: np.ndarray  # (k, 2) raw (palette_pct, alpha)
    mean: np.ndarray
    std: np.ndarray
    grid_p: tuple[float, ...]
    grid_a: tuple[float, ...]
    k: int = 3


def estimate_oracle_edges(view: EdgeOracleView, seed: int = 0) -> tuple[int, bool]:
    """(|E| of the view, exact flag); sampled above the exact-enumeration cap."""
    n = view.n_active
    if n <= EXACT_ENUMERATION_CAP:
        stats = degree_stats(view, exact=True)
        return int(round(stats.avg_degree * n / 2)), True
    stats = degree_stats(view, exact=False, seed=seed)
    return int(round(stats.avg_degree * n / 2)), False


def sweep(
    view: EdgeOracleView,
    grid_p: Sequence[float],
    grid_a: Sequence[float],
    seeds: Sequence[int],
    *,
    instance: str = "",
    m: Optional[int] = None,
    strategy: str = "dynamic",
    threads: int = 1,
    cell_workers: int = 1,
    max_iterations: int = 64,
) -> list[SweepRecord]:
    """Run the palette driver for every (palette_pct, alpha, seed) cell.

    Emits one record per run.  A cell whose run aborts (iteration limit /
    budget) is logged and skipped; the sweep continues.
    """
    if not grid_p or not grid_a or not seeds:
        raise EmptyRecordsError("sweep needs non-empty grids and seeds")
    n = view.n_active
    if m is None:
        m, _ = estimate_oracle_edges(view)

    cells = [
        (p, a, s) for p in grid_p for a in grid_a for s in seeds
    ]

    def run_cell(cell):
        p, a, s = cell
        params = driver.PaletteParams(
            palette_pct=p, alpha=a, seed=s, max_iterations=max_iterations
        )
        t0 = time.perf_counter()
        try:
            result = driver.run(view, params, strategy=strategy, threads=threads)
        except Exception as exc:  # mark failed, keep sweeping
            log.warning("sweep cell (p=%s, a=%s, seed=%s) failed: %s", p, a, s, exc)
            return None
        return SweepRecord(
            instance=instance,
            n=n,
            m=int(m),
            palette_pct=float(p),
            alpha=float(a),
            colors=result.total_colors,
            ec_max=result.peak_conflict_edges,
            runtime_s=time.perf_counter() - t0,
            seed=int(s),
        )

    if cell_workers > 1:
        with ThreadPoolExecutor(max_workers=cell_workers) as pool:
            out = list(pool.map(run_cell, cells))
    else:
        out = [run_cell(c) for c in cells]
    return [r for r in out if r is not None]


def select_optimal(records: Sequence[SweepRecord], beta: float) -> tuple[float, float]:
    """Grid argmin of beta * (colors/n) + (1-beta) * (ec_max/m).

    Records of one instance, any number of seeds per cell; per-cell
    objectives are seed means.  Ties break toward smaller normalized
    conflict edges, then smaller palette_pct, then smaller alpha.
    """
    if not records:
        raise EmptyRecordsError("no sweep records to select from")
    if not 0.0 <= beta <= 1.0:
        raise ValueError(f"beta must be in [0, 1], got {beta}")
    cells: dict[tuple[float, float], list[tuple[float, float]]] = {}
    for r in records:
        c_hat = r.colors / r.n
        e_hat = r.ec_max / r.m if r.m else 0.0
        cells.setdefault((r.palette_pct, r.alpha), []).append((c_hat, e_hat))
    best_key, best = None, None
    for (p, a), vals in cells.items():
        c_hat = sum(v[0] for v in vals) / len(vals)
        e_hat = sum(v[1] for v in vals) / len(vals)
        objective = beta * c_hat + (1.0 - beta) * e_hat
        key = (objective, e_hat, p, a)
        if best is None or key < best:
            best = key
            best_key = (p, a)
    return best_key


def build_training_points(
    records: Sequence[SweepRecord],
    betas: Sequence[float] = DEFAULT_BETAS,
) -> list[TrainingPoint]:
    """Per-beta optima for every instance present in the records."""
    by_instance: dict[str, list[SweepRecord]] = {}
    for r in records:
        by_instance.setdefault(r.instance, []).append(r)
    points = []
    for name in sorted(by_instance):
        recs = by_instance[name]
        for beta in betas:
            p, a = select_optimal(recs, beta)
            points.append(
                TrainingPoint(
                    beta=float(beta),
                    n=recs[0].n,
                    m=recs[0].m,
                    palette_pct=p,
                    alpha=a,
                )
            )
    return points


def _featurize(beta: float, n: int, m: int) -> np.ndarray:
    return np.array([beta, math.log(max(n, 1)), math.log(max(m, 1))], dtype=np.float64)


def train(
    points: Sequence[TrainingPoint],
    grid_p: Sequence[float] = DEFAULT_GRID_P,
    grid_a: Sequence[float] = DEFAULT_GRID_A,
) -> PredictorModel:
    """Fit the kNN table: standardize (beta, log n, log m), keep raw targets."""
    if not points:
        raise EmptyRecordsError("need at least one training point")
    feats = np.stack([_featurize(pt.beta, pt.n, pt.m) for pt in points])
    targets = np.array([[pt.palette_pct, pt.alpha] for pt in points], dtype=np.float64)
    mean = feats.mean(axis=0)
    std = feats.std(axis=0)
    std[std == 0] = 1.0
    return PredictorModel(
        features=(feats - mean) / std,
        targets=targets,
        mean=mean,
        std=std,
        grid_p=tuple(float(x) for x in grid_p),
        grid_a=tuple(float(x) for x in grid_a),
    )


def _snap(value: float, grid: Sequence[float]) -> float:
    return min(grid, key=lambda g: (abs(g - value), g))


def predict(model: PredictorModel, beta: float, n: int, m: int) -> tuple[float, float]:
    """Inverse-distance-weighted average of the 3 nearest neighbors, snapped to the grid.

    A zero-distance match returns (the mean of) the matching targets
    exactly.
    """
    if model is None or model.features.size == 0:
        raise UntrainedModelError("predictor has no training points")
    q = (_featurize(beta, n, m) - model.mean) / model.std
    d = np.sqrt(((model.features - q) ** 2).sum(axis=1))
    k = min(model.k, d.size)
    nearest = np.argsort(d, kind="stable")[:k]
    dn = d[nearest]
    if np.any(dn == 0):
        hits = nearest[dn == 0]
        raw = model.targets[hits].mean(axis=0)
    else:
        w = 1.0 / dn
        w /= w.sum()
        raw = (model.targets[nearest] * w[:, None]).sum(axis=0)
    return _snap(float(raw[0]), model.grid_p), _snap(float(raw[1]), model.grid_a)


# ---------------------------------------------------------------------------
# serialization: sweep CSV and the flat-text model table
# ---------------------------------------------------------------------------


def write_sweep_csv(records: Sequence[SweepRecord], fh) -> None:
    writer = csv.writer(fh)
    writer.writerow(SWEEP_CSV_HEADER.split(","))
    for r in records:
        writer.writerow(
            [
                r.instance,
                r.n,
                r.m,
                r.palette_pct,
                r.alpha,
                r.colors,
                r.ec_max,
                f"{r.runtime_s:.6f}",
                r.seed,
            ]
        )


def read_sweep_csv(fh) -> list[SweepRecord]:
    if isinstance(fh, str):
        fh = io.StringIO(fh)
    reader = csv.DictReader(fh)
    out = []
    for row in reader:
        out.append(
            SweepRecord(
                instance=row["instance"],
                n=int(row["n"]),
                m=int(row["m"]),
                palette_pct=float(row["palette_pct"]),
                alpha=float(row["alpha"]),
                colors=int(row["colors"]),
                ec_max=int(row["ec_max"]),
                runtime_s=float(row["runtime_s"]),
                seed=int(row["seed"]),
            )
        )
    return out


def save_model(model: PredictorModel, fh) -> None:
    """Flat text table: one header line per array section, whitespace rows."""
    fh.write(f"knn k={model.k}\n")
    fh.write("grid_p " + " ".join(repr(x) for x in model.grid_p) + "\n")
    fh.write("grid_a " + " ".join(repr(x) for x in model.grid_a) + "\n")
    fh.write("mean " + " ".join(repr(float(x)) for x in model.mean) + "\n")
    fh.write("std " + " ".join(repr(float(x)) for x in model.std) + "\n")
    fh.write(f"rows {model.features.shape[0]}\n")
    for f, t in zip(model.features, model.targets):
        vals = list(f) + list(t)
        fh.write(" ".join(repr(float(x)) for x in vals) + "\n")


def load_model(fh) -> PredictorModel:
    lines = [ln.strip() for ln in fh.read().splitlines() if ln.strip()]
    head = dict(kv.split("=") for kv in lines[0].split()[1:])
    k = int(head.get("k", 3))
    grid_p = tuple(float(x) for x in lines[1].split()[1:])
    grid_a = tuple(float(x) for x in lines[2].split()[1:])
    mean = np.array([float(x) for x in lines[3].split()[1:]])
    std = np.array([float(x) for x in lines[4].split()[1:]])
    nrows = int(lines[5].split()[1])
    feats, targets = [], []
    for ln in lines[6 : 6 + nrows]:
        vals = [float(x) for x in ln.split()]
        feats.append(vals[:3])
        targets.append(vals[3:])
    return PredictorModel(
        features=np.array(feats, dtype=np.float64).reshape(nrows, 3),
        targets=np.array(targets, dtype=np.float64).reshape(nrows, 2),
        mean=mean,
        std=std,
        grid_p=grid_p,
        grid_a=grid_a,
        k=k,
    )
