"""Pauli strings: parsing, packed encoding, and anticommutation checks.

A Pauli string is a word over {I, X, Y, Z}; position i names the operator
acting on qubit i.  Two strings anticommute iff the number of positions
holding distinct non-identity letters is odd.

The packed encoding assigns 3 bits per position (X -> 110, Y -> 101,
Z -> 011, I -> 000).  ANDing two encoded strings leaves an odd popcount
exactly when the mismatch count is odd, so the anticommutation test
becomes one AND plus one parity check.  Codes are packed consecutively,
least-significant-bit first: position i occupies bits [3i, 3i+3) of the
bit stream, and the stream is split little-endian into 64-bit words
(bit b of the stream lives at bit b%64 of word b//64).  Unused trailing
bits of the last word are zero.

Three independent routes answer the same question:

* :func:`anticommutes_fast` -- packed parity (the production path).
* :func:`anticommutes_chars` -- per-character loop (the speed baseline).
* :func:`anticommutes_oracle` -- dense 2^N matrices (the testing oracle).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BadSymbolError,
    EmptyInputError,
    LengthMismatchError,
    MixedLengthError,
    OracleTooLargeError,
    SameVertexError,
)

__all__ = [
    "PAULI_CODES",
    "ORACLE_MAX_QUBITS",
    "EncodedPauli",
    "PauliSet",
    "encode",
    "decode",
    "anticommutes_fast",
    "anticommutes_chars",
    "anticommutes_oracle",
    "complement_edge",
    "parse_pauli_text",
    "anticommute_pairs",
]

PAULI_CODES = {"I": 0b000, "X": 0b110, "Y": 0b101, "Z": 0b011}
_CODE_TO_CHAR = {0b000: "I", 0b110: "X", 0b101: "Y", 0b011: "Z"}
_WORD_BITS = 64
_WORD_MASK = (1 << _WORD_BITS) - 1

# Dense-matrix oracle cap: 2^12 x 2^12 complex128 is ~256 MB; the oracle
# exists for testing, not production.
ORACLE_MAX_QUBITS = 12

_PAULI_MATRICES = {
    "I": np.eye(2, dtype=np.complex128),
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}


def _check_symbols(s: str) -> None:
    for ch in s:
        if ch not in PAULI_CODES:
            raise BadSymbolError(f"invalid Pauli symbol {ch!r} in {s!r}")


@dataclass(frozen=True)
class EncodedPauli:
    """Packed 3-bit-per-position encoding of one Pauli string.

    ``words`` is the little-endian 64-bit word sequence described in the
    module docstring; ``nbits`` equals 3 * qubit count.
    """

    words: tuple[int, ...]
    nbits: int
    value: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        v = 0
        for w, word in enumerate(self.words):
            if not 0 <= word <= _WORD_MASK:
                raise ValueError("encoded word out of 64-bit range")
            v |= word << (_WORD_BITS * w)
        if v >> self.nbits:
            raise ValueError("trailing bits beyond nbits must be zero")
        object.__setattr__(self, "value", v)

    @property
    def num_qubits(self) -> int:
        return self.nbits // 3


def encode(p: str) -> EncodedPauli:
    """Pack a Pauli string into its 3-bit-per-position encoding.

    >>> bin(encode("X").value)
    '0b110'
    >>> bin(encode("I").value)
    '0b0'
    >>> bin(encode("XYZI").value)   # 110 101 011 000, lsb-first packing
    '0b11101110'
    """
    if not p:
        raise EmptyInputError("empty Pauli string")
    _check_symbols(p)
    v = 0
    for i, ch in enumerate(p):
        v |= PAULI_CODES[ch] << (3 * i)
    nbits = 3 * len(p)
    nwords = (nbits + _WORD_BITS - 1) // _WORD_BITS
    words = tuple((v >> (_WORD_BITS * w)) & _WORD_MASK for w in range(nwords))
    return EncodedPauli(words=words, nbits=nbits)


def decode(e: EncodedPauli) -> str:
    """Inverse of :func:`encode`."""
    out = []
    for i in range(e.num_qubits):
        code = (e.value >> (3 * i)) & 0b111
        try:
            out.append(_CODE_TO_CHAR[code])
        except KeyError:
            raise ValueError(f"invalid 3-bit code {code:03b} at position {i}") from None
    return "".join(out)


def anticommutes_fast(a: EncodedPauli, b: EncodedPauli) -> bool:
    """Parity test on the packed encodings.

    True iff popcount(a AND b) is odd, which holds iff the strings
    anticommute.

    >>> anticommutes_fast(encode("X"), encode("Y"))
    True
    >>> anticommutes_fast(encode("XX"), encode("YY"))
    False
    >>> anticommutes_fast(encode("XI"), encode("IX"))
    False
    """
    if a.nbits != b.nbits:
        raise LengthMismatchError(
            f"encodings have {a.num_qubits} vs {b.num_qubits} qubits"
        )
    return ((a.value & b.value).bit_count() & 1) == 1


def anticommutes_chars(a: str, b: str) -> bool:
    """Per-character mismatch count; the baseline the packed path is benchmarked against."""
    if len(a) != len(b):
        raise LengthMismatchError(f"strings have length {len(a)} vs {len(b)}")
    mismatches = 0
    for ca, cb in zip(a, b):
        if ca != "I" and cb != "I" and ca != cb:
            mismatches += 1
    return mismatches % 2 == 1


def _dense_matrix(p: str) -> np.ndarray:
    mat = _PAULI_MATRICES[p[0]]
    for ch in p[1:]:
        mat = np.kron(mat, _PAULI_MATRICES[ch])
    return mat


def anticommutes_oracle(a: str, b: str) -> bool:
    """Dense-matrix ground truth: build both 2^N x 2^N operators and test AB + BA == 0.

    Exact because every entry of AB and BA is a product of exactly
    representable unit values.  Capped at ``ORACLE_MAX_QUBITS``.
    """
    if len(a) != len(b):
        raise LengthMismatchError(f"strings have length {len(a)} vs {len(b)}")
    if len(a) > ORACLE_MAX_QUBITS:
        raise OracleTooLargeError(
            f"oracle capped at {ORACLE_MAX_QUBITS} qubits, got {len(a)}"
        )
    _check_symbols(a)
    _check_symbols(b)
    ma, mb = _dense_matrix(a), _dense_matrix(b)
    return not np.any(ma @ mb + mb @ ma)


def complement_edge(a: EncodedPauli, b: EncodedPauli) -> bool:
    """Edge test for the graph being colored: commuting pairs are adjacent.

    Anticommuting pairs form the cliques we want, so the complement graph
    (where a proper coloring yields the clique partition) connects exactly
    the pairs that do NOT anticommute.  Identical strings commute, so
    duplicates at distinct indices are complement-adjacent; self-pairs are
    the caller's responsibility (see :meth:`PauliSet.complement_edge`).
    """
    return not anticommutes_fast(a, b)


@dataclass
class PauliSet:
    """An indexed set of same-length Pauli strings with packed encodings.

    ``strings`` and ``encoded`` are parallel; ``words`` stacks the packed
    words row-per-string for vectorized pair kernels.  Duplicates are kept
    as distinct vertices.  Immutable after construction.
    """

    strings: list[str]
    encoded: list[EncodedPauli]
    words: np.ndarray  # (n, nwords) uint64

    @property
    def n(self) -> int:
        return len(self.strings)

    @property
    def num_qubits(self) -> int:
        return len(self.strings[0])

    @classmethod
    def from_strings(cls, strings: Iterable[str]) -> "PauliSet":
        strings = list(strings)
        if not strings:
            raise EmptyInputError("no Pauli strings given")
        nq = len(strings[0])
        encoded = []
        for s in strings:
            if len(s) != nq:
                raise MixedLengthError(
                    f"string {s!r} has length {len(s)}, expected {nq}"
                )
            encoded.append(encode(s))
        nwords = (3 * nq + _WORD_BITS - 1) // _WORD_BITS
        words = np.zeros((len(strings), nwords), dtype=np.uint64)
        for i, e in enumerate(encoded):
            for w, word in enumerate(e.words):
                words[i, w] = word
        words.setflags(write=False)
        return cls(strings=strings, encoded=encoded, words=words)

    def anticommutes(self, i: int, j: int) -> bool:
        return anticommutes_fast(self.encoded[i], self.encoded[j])

    def complement_edge(self, i: int, j: int) -> bool:
        """Complement-graph adjacency between vertex indices i and j."""
        if i == j:
            raise SameVertexError(f"self-pair query on vertex {i}")
        return not self.anticommutes(i, j)


def anticommute_pairs(words: np.ndarray, i, j) -> np.ndarray:
    """Vectorized anticommutation over index arrays into a packed word matrix.

    Returns a bool array: True where pair (i[k], j[k]) anticommutes.
    """
    i = np.asarray(i)
    j = np.asarray(j)
    parity = np.zeros(i.shape, dtype=np.uint8)
    for w in range(words.shape[1]):
        parity ^= np.bitwise_count(words[i, w] & words[j, w]).astype(np.uint8)
    return (parity & 1).astype(bool)


def parse_pauli_text(text: str | Sequence[str]) -> PauliSet:
    """Parse the Pauli text format into a :class:`PauliSet`.

    One record per line; ``#`` starts a comment line; blank lines are
    skipped.  An optional leading real coefficient (separated by
    whitespace) is parsed and discarded -- the partition is structural
    and coefficient-agnostic.
    """
    if isinstance(text, str):
        lines = text.splitlines()
    else:
        lines = list(text)
    strings: list[str] = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) == 2:
            coeff, s = parts
            try:
                float(coeff)
            except ValueError:
                raise BadSymbolError(
                    f"line {lineno}: expected a real coefficient, got {coeff!r}"
                ) from None
        elif len(parts) == 1:
            s = parts[0]
        else:
            raise BadSymbolError(
                f"line {lineno}: expected 'string' or 'coeff string', got {line!r}"
            )
        s = s.upper()
        for ch in s:
            if ch not in PAULI_CODES:
                raise BadSymbolError(
                    f"line {lineno}: invalid Pauli symbol {ch!r} in {s!r}"
                )
        strings.append(s)
    if not strings:
        raise EmptyInputError("no Pauli strings in input")
    return PauliSet.from_strings(strings)
