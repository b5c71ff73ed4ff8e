import numpy as np
import pytest
from hypothesis import settings

import palettecolor as pc

settings.register_profile("pkg", deadline=None, max_examples=60)
settings.load_profile("pkg")


def make_pauli_view(n, num_qubits, seed=0):
    ps = pc.PauliSet.from_strings(pc.random_pauli_strings(n, num_qubits, seed=seed))
    return pc.pauli_view(ps), ps


def make_gnp_view(n, p, seed=0, complement=False):
    g = pc.gnp_graph(n, p, seed=seed)
    return pc.graph_view(g, complement=complement), g


def brute_force_proper(view, color):
    """Independent O(n^2) properness loop (no shared kernels with validate)."""
    active = list(view.active)
    bad = []
    for a in range(len(active)):
        for b in range(a + 1, len(active)):
            u, v = int(active[a]), int(active[b])
            if color[u] != pc.UNCOLORED and color[u] == color[v]:
                if view.has_edge(u, v):
                    bad.append((u, v))
    return bad


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
