"""Edge oracles: explicit CSR graphs and implicit complement views.

The coloring engine never materializes the complement graph.  Every
consumer goes through :class:`EdgeOracleView`, which answers adjacency
queries in one of three modes:

* ``implicit-complement`` -- backed by a :class:`~.pauli.PauliSet`; an
  edge joins every commuting (non-anticommuting) pair.
* ``explicit`` -- backed by a stored CSR graph.
* ``explicit-complement`` -- logical negation of a stored graph; the
  complement itself is never built.
"""

from __future__ import annotations

import io
import struct
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .errors import (
    BadIndexError,
    EdgeListParseError,
    EmptyInputError,
    InactiveVertexError,
    NotSubsetError,
    SameVertexError,
    TooLargeForExactError,
)
from .pauli import PauliSet, anticommute_pairs

EXACT_ENUMERATION_CAP = 20_000

_CSR_MAGIC = b"CSRG"


@dataclass
class ExplicitGraph:
    """Undirected simple graph in CSR form.

    ``offsets`` has length n+1; ``neighbors[offsets[v]:offsets[v+1]]`` is
    the strictly increasing neighbor row of v.  Each undirected edge is
    stored twice; ``m`` counts it once.
    """

    n: int
    offsets: np.ndarray
    neighbors: np.ndarray
    self_loops_dropped: int = 0
    duplicates_dropped: int = 0
    _pair_keys: Optional[np.ndarray] = field(
        default=None, repr=False, compare=False
    )

    @property
    def m(self) -> int:
        return int(self.neighbors.size) // 2

    def degree(self, v: int) -> int:
        return int(self.offsets[v + 1] - self.offsets[v])

    def row(self, v: int) -> np.ndarray:
        return self.neighbors[self.offsets[v] : self.offsets[v + 1]]

    def degrees(self) -> np.ndarray:
        return np.diff(self.offsets)

    def pair_keys(self) -> np.ndarray:
        """Sorted u*n+v keys of all directed edges, for vectorized membership."""
        if self._pair_keys is None:
            u = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees())
            self._pair_keys = u * np.int64(self.n) + self.neighbors.astype(np.int64)
        return self._pair_keys

    def has_edge(self, u: int, v: int) -> bool:
        row = self.row(u)
        k = np.searchsorted(row, v)
        return bool(k < row.size and row[k] == v)

    @classmethod
    def empty(cls, n: int) -> "ExplicitGraph":
        if n < 1:
            raise BadIndexError(f"need n >= 1, got {n}")
        return cls(
            n=n,
            offsets=np.zeros(n + 1, dtype=np.int64),
            neighbors=np.zeros(0, dtype=np.int64),
        )

    @classmethod
    def from_edges(cls, n: int, u, v) -> "ExplicitGraph":
        """Build a canonical CSR from (possibly duplicated, unordered) pairs.

        Self-loops are dropped and counted; duplicates are collapsed and
        counted; rows come out sorted.
        """
        u = np.asarray(u, dtype=np.int64)
        v = np.asarray(v, dtype=np.int64)
        if u.size and (u.min() < 0 or v.min() < 0):
            raise BadIndexError("negative vertex index")
        if u.size and max(int(u.max()), int(v.max())) >= n:
            raise BadIndexError(
                f"vertex index {max(int(u.max()), int(v.max()))} out of range for n={n}"
            )
        loops = u == v
        n_loops = int(loops.sum())
        u, v = u[~loops], v[~loops]
        lo = np.minimum(u, v)
        hi = np.maximum(u, v)
        keys = lo * np.int64(n) + hi
        uniq = np.unique(keys)
        n_dups = int(keys.size - uniq.size)
        lo = (uniq // n).astype(np.int64)
        hi = (uniq % n).astype(np.int64)
        uu = np.concatenate([lo, hi])
        vv = np.concatenate([hi, lo])
        order = np.lexsort((vv, uu))
        uu, vv = uu[order], vv[order]
        offsets = np.zeros(n + 1, dtype=np.int64)
        np.add.at(offsets, uu + 1, 1)
        np.cumsum(offsets, out=offsets)
        return cls(
            n=n,
            offsets=offsets,
            neighbors=vv,
            self_loops_dropped=n_loops,
            duplicates_dropped=n_dups,
        )

    def validate(self) -> None:
        """Check CSR invariants; raises ValueError on violation."""
        if self.offsets.shape != (self.n + 1,):
            raise ValueError("offsets length must be n+1")
        if self.offsets[0] != 0 or self.offsets[-1] != self.neighbors.size:
            raise ValueError("offsets must span the neighbor array")
        if np.any(np.diff(self.offsets) < 0):
            raise ValueError("offsets must be non-decreasing")
        for v in range(self.n):
            row = self.row(v)
            if row.size and (np.any(np.diff(row) <= 0)):
                raise ValueError(f"row {v} not strictly increasing")
            if np.any(row == v):
                raise ValueError(f"self-loop at {v}")
        u = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees())
        fwd = np.sort(u * self.n + self.neighbors)
        bwd = np.sort(self.neighbors * self.n + u)
        if not np.array_equal(fwd, bwd):
            raise ValueError("adjacency not symmetric")

    def to_edge_list_text(self) -> str:
        """Each undirected edge once, as 'u v' with u < v, row-major order."""
        u = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees())
        keep = u < self.neighbors
        lines = [f"{a} {b}" for a, b in zip(u[keep], self.neighbors[keep])]
        return "\n".join(lines) + ("\n" if lines else "")

    def save_csr(self, path) -> None:
        """Binary CSR dump.

        Layout (all little-endian): magic b"CSRG", u64 n, u64 m, then
        (n+1) u64 offsets, then 2m u64 neighbor ids.
        """
        with open(path, "wb") as f:
            f.write(_CSR_MAGIC)
            f.write(struct.pack("<QQ", self.n, self.m))
            f.write(self.offsets.astype("<u8").tobytes())
            f.write(self.neighbors.astype("<u8").tobytes())

    @classmethod
    def load_csr(cls, path) -> "ExplicitGraph":
        with open(path, "rb") as f:
            magic = f.read(4)
            if magic != _CSR_MAGIC:
                raise EdgeListParseError(f"bad CSR magic {magic!r}")
            n, m = struct.unpack("<QQ", f.read(16))
            offsets = np.frombuffer(f.read(8 * (n + 1)), dtype="<u8").astype(np.int64)
            neighbors = np.frombuffer(f.read(8 * 2 * m), dtype="<u8").astype(np.int64)
        return cls(n=int(n), offsets=offsets, neighbors=neighbors)


def load_edge_list(text: Union[str, io.TextIOBase], n: Optional[int] = None) -> ExplicitGraph:
    """Parse 'u v' lines (zero-based) into a deduplicated symmetric CSR.

    ``#`` and ``%`` comment lines are skipped.  Self-loops are dropped with
    a count on the result.  n defaults to max index + 1.
    """
    if hasattr(text, "read"):
        text = text.read()
    us, vs = [], []
    for lineno, raw in enumerate(str(text).splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#") or line.startswith("%"):
            continue
        parts = line.split()
        if len(parts) < 2:
            raise EdgeListParseError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListParseError(
                f"line {lineno}: non-integer vertex in {line!r}"
            ) from None
        if u < 0 or v < 0:
            raise BadIndexError(f"line {lineno}: negative vertex index in {line!r}")
        us.append(u)
        vs.append(v)
    if not us and n is None:
        raise EmptyInputError("edge list has no edges and no vertex count given")
    inferred = (max(max(us), max(vs)) + 1) if us else 0
    if n is None:
        n = inferred
    elif inferred > n:
        raise BadIndexError(f"vertex index {inferred - 1} out of range for n={n}")
    return ExplicitGraph.from_edges(n, us, vs)


def load_mtx(text: Union[str, io.TextIOBase]) -> ExplicitGraph:
    """Parse a MatrixMarket coordinate *pattern* file (1-based indices)."""
    if hasattr(text, "read"):
        text = text.read()
    lines = str(text).splitlines()
    if not lines or not lines[0].startswith("%%MatrixMarket"):
        raise EdgeListParseError("missing MatrixMarket header")
    header = lines[0].lower().split()
    if "coordinate" not in header:
        raise EdgeListParseError("only coordinate format is supported")
    body = [ln for ln in lines[1:] if ln.strip() and not ln.lstrip().startswith("%")]
    if not body:
        raise EdgeListParseError("missing size line")
    size_parts = body[0].split()
    if len(size_parts) != 3:
        raise EdgeListParseError(f"bad size line {body[0]!r}")
    rows, cols, nnz = (int(x) for x in size_parts)
    n = max(rows, cols)
    us, vs = [], []
    for entry in body[1 : nnz + 1]:
        parts = entry.split()
        if len(parts) < 2:
            raise EdgeListParseError(f"bad entry line {entry!r}")
        u, v = int(parts[0]) - 1, int(parts[1]) - 1
        if u < 0 or v < 0 or u >= n or v >= n:
            raise BadIndexError(f"entry {entry!r} out of range for n={n}")
        us.append(u)
        vs.append(v)
    if len(us) != nnz:
        raise EdgeListParseError(f"expected {nnz} entries, found {len(us)}")
    if not us:
        raise EmptyInputError("MatrixMarket file has no entries")
    return ExplicitGraph.from_edges(n, us, vs)


@dataclass
class DegreeStats:
    """Degree summary of an oracle view.

    Sampled mode estimates only the average degree; max_degree and
    histogram are then None, and sample bookkeeping is recorded.
    """

    avg_degree: float
    max_degree: Optional[int] = None
    histogram: Optional[np.ndarray] = None
    exact: bool = True
    sample_pairs: Optional[int] = None
    sample_seed: Optional[int] = None


class EdgeOracleView:
    """A mode-dispatched adjacency oracle over an active vertex subset.

    Queries use ORIGINAL vertex ids (indices into the backing set/graph).
    Views are immutable; :meth:`induce` returns a new restricted view.
    """

    MODES = ("implicit-complement", "explicit", "explicit-complement")

    def __init__(self, backing, mode: str, active: Optional[np.ndarray] = None):
        if mode not in self.MODES:
            raise ValueError(f"unknown mode {mode!r}")
        if mode == "implicit-complement":
            if not isinstance(backing, PauliSet):
                raise TypeError("implicit-complement mode needs a PauliSet")
            total = backing.n
        else:
            if not isinstance(backing, ExplicitGraph):
                raise TypeError(f"{mode} mode needs an ExplicitGraph")
            total = backing.n
        if active is None:
            active = np.arange(total, dtype=np.int64)
        else:
            active = np.asarray(active, dtype=np.int64)
            if active.size:
                if active.min() < 0 or active.max() >= total:
                    raise BadIndexError("active vertex out of range")
            if np.unique(active).size != active.size:
                raise BadIndexError("active vertex list has duplicates")
            active = np.sort(active)
        self.backing = backing
        self.mode = mode
        self.active = active
        self.active.setflags(write=False)

    @property
    def n_active(self) -> int:
        return int(self.active.size)

    def is_active(self, v: int) -> bool:
        k = np.searchsorted(self.active, v)
        return k < self.active.size and self.active[k] == v

    def _check_pair(self, u: int, v: int) -> None:
        if u == v:
            raise SameVertexError(f"self-pair query on vertex {u}")
        for x in (u, v):
            if not self.is_active(x):
                raise InactiveVertexError(f"vertex {x} not in the active set")

    def has_edge(self, u: int, v: int) -> bool:
        self._check_pair(u, v)
        if self.mode == "implicit-complement":
            return self.backing.complement_edge(u, v)
        stored = self.backing.has_edge(u, v)
        return stored if self.mode == "explicit" else not stored

    def pair_mask(self, u_ids, v_ids) -> np.ndarray:
        """Vectorized has_edge over parallel original-id arrays.

        Callers guarantee u != v elementwise and active membership; this
        is the hot path for the pair-scan kernels.
        """
        u_ids = np.asarray(u_ids, dtype=np.int64)
        v_ids = np.asarray(v_ids, dtype=np.int64)
        if self.mode == "implicit-complement":
            return ~anticommute_pairs(self.backing.words, u_ids, v_ids)
        keys = self.backing.pair_keys()
        want = u_ids * np.int64(self.backing.n) + v_ids
        if keys.size:
            pos = np.minimum(np.searchsorted(keys, want), keys.size - 1)
            hit = keys[pos] == want
        else:
            hit = np.zeros(want.shape, dtype=bool)
        return hit if self.mode == "explicit" else ~hit

    def neighbor_mask(self, v: int) -> np.ndarray:
        """Boolean adjacency of v against the whole active set (self False)."""
        if not self.is_active(v):
            raise InactiveVertexError(f"vertex {v} not in the active set")
        others = self.active
        mask = np.zeros(others.size, dtype=bool)
        not_self = others != v
        idx = np.nonzero(not_self)[0]
        mask[idx] = self.pair_mask(np.full(idx.size, v, dtype=np.int64), others[idx])
        return mask

    def induce(self, vertices) -> "EdgeOracleView":
        vertices = np.asarray(vertices, dtype=np.int64)
        if vertices.size:
            pos = np.searchsorted(self.active, vertices)
            ok = (pos < self.active.size) & (
                self.active[np.minimum(pos, self.active.size - 1)] == vertices
            )
            if not bool(np.all(ok)):
                raise NotSubsetError("induced vertices must be active")
        return EdgeOracleView(self.backing, self.mode, active=vertices)


def pauli_view(pauli: PauliSet) -> EdgeOracleView:
    """The implicit complement view over a Pauli set (the graph to color)."""
    return EdgeOracleView(pauli, "implicit-complement")


def graph_view(graph: ExplicitGraph, complement: bool = False) -> EdgeOracleView:
    """An explicit graph as-is, or its never-materialized complement."""
    return EdgeOracleView(graph, "explicit-complement" if complement else "explicit")


def _pair_chunks(n: int, target_pairs: int):
    """Row ranges [r0, r1) covering the upper triangle in ~target_pairs chunks."""
    r0 = 0
    while r0 < n - 1:
        r1, pairs = r0, 0
        while r1 < n - 1 and pairs < target_pairs:
            pairs += n - 1 - r1
            r1 += 1
        yield r0, r1
        r0 = r1


def iter_pair_blocks(active: np.ndarray, target_pairs: int = 1 << 20):
    """Yield (i_local, j_local) index arrays covering all unordered pairs.

    Chunk boundaries depend only on (n, target_pairs), never on worker
    count, so any per-chunk computation can merge deterministically.
    """
    n = active.size
    for r0, r1 in _pair_chunks(n, target_pairs):
        rows = np.arange(r0, r1, dtype=np.int64)
        counts = n - 1 - rows
        total = int(counts.sum())
        i_loc = np.repeat(rows, counts)
        stops = np.cumsum(counts)
        starts = stops - counts
        idx = np.arange(total, dtype=np.int64)
        j_loc = idx - np.repeat(starts, counts) + i_loc + 1
        yield i_loc, j_loc


def degree_stats(
    view: EdgeOracleView,
    exact: bool = True,
    sample_pairs: int = 50_000,
    seed: int = 0,
) -> DegreeStats:
    """Degree summary of a view.

    Exact mode enumerates all active pairs through the oracle (capped at
    EXACT_ENUMERATION_CAP vertices).  Sampled mode estimates the average
    degree from uniformly sampled pairs, recording sample size and seed.
    """
    n = view.n_active
    if n == 0:
        return DegreeStats(avg_degree=0.0, max_degree=0, histogram=np.zeros(1, dtype=np.int64))
    if exact:
        if n > EXACT_ENUMERATION_CAP:
            raise TooLargeForExactError(
                f"{n} vertices exceeds the exact enumeration cap {EXACT_ENUMERATION_CAP}"
            )
        deg = np.zeros(n, dtype=np.int64)
        for i_loc, j_loc in iter_pair_blocks(view.active):
            mask = view.pair_mask(view.active[i_loc], view.active[j_loc])
            np.add.at(deg, i_loc[mask], 1)
            np.add.at(deg, j_loc[mask], 1)
        hist = np.bincount(deg, minlength=1)
        return DegreeStats(
            avg_degree=float(deg.mean()),
            max_degree=int(deg.max()),
            histogram=hist,
        )
    if n == 1:
        return DegreeStats(avg_degree=0.0, exact=False, sample_pairs=0, sample_seed=seed)
    rng = np.random.default_rng(np.random.SeedSequence([seed, n]))
    i = rng.integers(0, n, sample_pairs)
    j = rng.integers(0, n - 1, sample_pairs)
    j = np.where(j >= i, j + 1, j)
    frac = float(view.pair_mask(view.active[i], view.active[j]).mean())
    return DegreeStats(
        avg_degree=frac * (n - 1),
        exact=False,
        sample_pairs=sample_pairs,
        sample_seed=seed,
    )
