"""Pauli-correlation encodings: m binary variables as signs of k-body Pauli
expectations on n qubits.

The canonical string set interleaves the three commuting families over the
k-subsets of qubits in lexicographic order: vertex i is measured on support
i // 3 with axis (X, Y, Z)[i % 3]. All strings within one axis family commute
and are estimated from a single measurement setting.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

__all__ = [
    "PauliString",
    "Encoding",
    "build_encoding",
    "min_qubits",
    "capacity",
    "assignment_from_expectations",
    "estimate_expectations",
    "encodability_witness",
    "format_encoding",
]

AXES = ("X", "Y", "Z")


@dataclass(frozen=True)
class PauliString:
    """A uniform-axis Pauli string: `axis` on every qubit in `support`."""

    axis: str
    support: tuple[int, ...]

    def __post_init__(self):
        if self.axis not in AXES:
            raise ValueError(f"axis must be one of {AXES}, got {self.axis!r}")
        sup = tuple(sorted(int(q) for q in self.support))
        if len(sup) == 0:
            raise ValueError("empty support")
        if len(set(sup)) != len(sup):
            raise ValueError("repeated qubit in support")
        if sup[0] < 0:
            raise ValueError("negative qubit index")
        object.__setattr__(self, "support", sup)

    @property
    def weight(self) -> int:
        return len(self.support)

    @property
    def mask(self) -> int:
        m = 0
        for q in self.support:
            m |= 1 << q
        return m


@dataclass(frozen=True)
class Encoding:
    """An ordered list of distinct Pauli strings on n qubits, one per variable."""

    n: int
    k: int
    strings: tuple[PauliString, ...]

    def __post_init__(self):
        if not (1 <= self.k <= self.n):
            raise ValueError("need 1 <= k <= n")
        seen = set()
        for p in self.strings:
            if p.support[-1] >= self.n:
                raise ValueError(f"string {p} exceeds n={self.n} qubits")
            key = (p.axis, p.support)
            if key in seen:
                raise ValueError(f"duplicate string {key}")
            seen.add(key)

    @property
    def m(self) -> int:
        return len(self.strings)

    def family(self, axis: str) -> list[int]:
        """Vertex indices measured in the given axis family."""
        return [i for i, p in enumerate(self.strings) if p.axis == axis]

    def axis_codes(self) -> np.ndarray:
        return np.array([AXES.index(p.axis) for p in self.strings], dtype=np.int64)

    def masks(self) -> np.ndarray:
        return np.array([p.mask for p in self.strings], dtype=np.int64)


def capacity(n: int, k: int) -> int:
    """Number of variables an (n, k) encoding can hold, 3 * C(n, k)."""
    return 3 * comb(n, k)


def min_qubits(m: int, k: int) -> int:
    """Smallest n >= k with 3 * C(n, k) >= m."""
    if m < 1 or k < 1:
        raise ValueError("need m >= 1 and k >= 1")
    n = k
    while capacity(n, k) < m:
        n += 1
    return n


def build_encoding(n: int, k: int, m: int) -> Encoding:
    """First m strings of the canonical interleaved (n, k) ordering."""
    cap = capacity(n, k)
    if not (1 <= m <= cap):
        raise ValueError(f"m={m} outside 1..{cap} for (n={n}, k={k})")
    supports = list(combinations(range(n), k))
    strings = tuple(
        PauliString(AXES[i % 3], supports[i // 3]) for i in range(m)
    )
    return Encoding(n, k, strings)


def assignment_from_expectations(e) -> np.ndarray:
    """Signs of the expectations, with sign(0) = +1."""
    e = np.asarray(e, dtype=np.float64)
    return np.where(e >= 0, 1, -1).astype(np.int64)


def estimate_expectations(enc: Encoding, samples: dict) -> np.ndarray:
    """Estimate each string's expectation from per-family outcome samples.

    `samples` maps axis -> array of shape (shots, n) with +/-1 entries, one
    row per measurement of all n qubits in that axis basis. The estimate for
    vertex i is the empirical mean of the outcome product over its support.
    """
    est = np.empty(enc.m)
    for axis in AXES:
        members = enc.family(axis)
        if not members:
            continue
        if axis not in samples:
            raise ValueError(f"no samples supplied for axis family {axis}")
        arr = np.asarray(samples[axis])
        if arr.ndim != 2 or arr.shape[1] != enc.n or arr.shape[0] < 1:
            raise ValueError(f"axis {axis}: samples must have shape (shots, {enc.n})")
        for i in members:
            sup = list(enc.strings[i].support)
            est[i] = arr[:, sup].prod(axis=1).mean()
    return est


_WITNESS_LIMIT = 10

_PAULI_1Q = {
    "I": np.eye(2, dtype=np.complex128),
    "X": np.array([[0, 1], [1, 0]], dtype=np.complex128),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    "Z": np.array([[1, 0], [0, -1]], dtype=np.complex128),
}


def pauli_matrix(p: PauliString, n: int) -> np.ndarray:
    """Dense 2^n x 2^n matrix of the string, qubit 0 = least significant bit."""
    out = np.array([[1.0 + 0j]])
    for q in range(n - 1, -1, -1):
        op = _PAULI_1Q[p.axis] if q in p.support else _PAULI_1Q["I"]
        out = np.kron(out, op)
    return out


def encodability_witness(x, enc: Encoding, magnitude: float | None = None) -> np.ndarray:
    """Density matrix carrying every x_i in the corresponding expectation.

    rho = (I + sum_i c * x_i * P_i) / 2^n with c = 1/m by default, so
    Tr[rho P_i] = x_i / m for every encoded string. The uniform mixture
    argument makes rho positive semidefinite whenever c <= 1/m.
    """
    x = np.asarray(x)
    if x.shape != (enc.m,):
        raise ValueError(f"x length {x.shape} != encoding size ({enc.m},)")
    if not np.all(np.abs(x) == 1):
        raise ValueError("x entries must be +1 or -1")
    if enc.n > _WITNESS_LIMIT:
        raise ValueError(f"dense witness limited to n <= {_WITNESS_LIMIT}")
    c = 1.0 / enc.m if magnitude is None else float(magnitude)
    d = 1 << enc.n
    rho = np.eye(d, dtype=np.complex128)
    for xi, p in zip(x, enc.strings):
        rho += (c * float(xi)) * pauli_matrix(p, enc.n)
    return rho / d


def format_encoding(enc: Encoding) -> str:
    """Text export, one line per variable: 'index axis q1 ... qk' (0-based)."""
    lines = [
        f"{i} {p.axis} " + " ".join(str(q) for q in p.support)
        for i, p in enumerate(enc.strings)
    ]
    return "\n".join(lines) + "\n"
