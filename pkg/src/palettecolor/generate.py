"""Synthetic instance generation: random Pauli sets and G(n, p) graphs.

Random Pauli strings give the dense regime the engine targets: two
uniform strings anticommute with probability (1 - 4^-N)/2, so the
complement graph sits at ~50% density for any N >= 4.
"""

from __future__ import annotations

import numpy as np

from .errors import BadParamsError
from .graph import ExplicitGraph

_SYMBOLS = np.array(list("IXYZ"))


def random_pauli_strings(
    n: int, num_qubits: int, seed: int = 0, exclude_identity: bool = False
) -> list[str]:
    """n uniform strings over {I,X,Y,Z}^num_qubits; reproducible per seed."""
    if n < 1 or num_qubits < 1:
        raise BadParamsError("need n >= 1 and num_qubits >= 1")
    rng = np.random.default_rng(np.random.SeedSequence([seed, n, num_qubits]))
    out: list[str] = []
    while len(out) < n:
        draw = rng.integers(0, 4, size=(n - len(out), num_qubits))
        for row in draw:
            if exclude_identity and not row.any():
                continue
            out.append("".join(_SYMBOLS[row]))
    return out


def pauli_file_text(strings: list[str]) -> str:
    return "\n".join(strings) + "\n"


def gnp_graph(n: int, p: float, seed: int = 0) -> ExplicitGraph:
    """Erdos-Renyi G(n, p), deterministic per seed; rows are sampled in batches."""
    if n < 1:
        raise BadParamsError(f"need n >= 1, got {n}")
    if not 0.0 <= p <= 1.0:
        raise BadParamsError(f"need 0 <= p <= 1, got {p}")
    rng = np.random.default_rng(np.random.SeedSequence([seed, n, 0x6E70]))
    parts_u, parts_v = [], []
    batch_rows = max(1, (1 << 22) // max(n, 1))
    for r0 in range(0, n - 1, batch_rows):
        r1 = min(n - 1, r0 + batch_rows)
        rows = np.arange(r0, r1, dtype=np.int64)
        counts = n - 1 - rows
        total = int(counts.sum())
        stops = np.cumsum(counts)
        starts = stops - counts
        idx = np.arange(total, dtype=np.int64)
        i = np.repeat(rows, counts)
        j = idx - np.repeat(starts, counts) + i + 1
        keep = rng.random(total) < p
        parts_u.append(i[keep])
        parts_v.append(j[keep])
    u = np.concatenate(parts_u) if parts_u else np.zeros(0, dtype=np.int64)
    v = np.concatenate(parts_v) if parts_v else np.zeros(0, dtype=np.int64)
    return ExplicitGraph.from_edges(n, u, v)
