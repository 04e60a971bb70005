"""Parameterized circuits over a trapped-ion-style gate set.

Two gate kinds:

* SingleRot(axis, qubit, slot): exp(-i theta/2 * A_qubit), A in {X, Y, Z}.
* MS(a, b, slot_theta, slot_phi_a, slot_phi_b): the two-qubit
  Molmer-Sorensen gate exp(-i theta/2 * A(phi_a)_a A(phi_b)_b) with
  A(phi) = cos(phi) X + sin(phi) Y. At phi_a = phi_b = 0 it reduces to an
  XX rotation.

The brickwork ansatz alternates one row of n single-qubit rotations (axis
cycling X, Y, Z with the layer index) with one row of MS bricks whose pair
offset alternates 0, 1; odd-offset rows close the ring on even n. One layer
is therefore two rows of depth.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil

import numpy as np

__all__ = [
    "SingleRot",
    "MS",
    "Circuit",
    "build_brickwork",
    "brick_pairs",
    "default_layers",
    "KIND_RX",
    "KIND_RY",
    "KIND_RZ",
    "KIND_MS",
]

KIND_RX, KIND_RY, KIND_RZ, KIND_MS = 0, 1, 2, 3
_AXIS_KIND = {"X": KIND_RX, "Y": KIND_RY, "Z": KIND_RZ}


@dataclass(frozen=True)
class SingleRot:
    axis: str
    qubit: int
    slot: int

    def __post_init__(self):
        if self.axis not in _AXIS_KIND:
            raise ValueError(f"axis must be X, Y or Z, got {self.axis!r}")


@dataclass(frozen=True)
class MS:
    a: int
    b: int
    slot_theta: int
    slot_phi_a: int
    slot_phi_b: int

    def __post_init__(self):
        if self.a == self.b:
            raise ValueError("MS gate needs two distinct qubits")


@dataclass(frozen=True)
class Circuit:
    """A gate list over n qubits drawing angles from param slots [0, P)."""

    n: int
    gates: tuple
    num_params: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need n >= 1")
        used = set()
        for g in self.gates:
            if isinstance(g, SingleRot):
                if not 0 <= g.qubit < self.n:
                    raise ValueError(f"qubit {g.qubit} out of range")
                used.add(g.slot)
            elif isinstance(g, MS):
                for q in (g.a, g.b):
                    if not 0 <= q < self.n:
                        raise ValueError(f"qubit {q} out of range")
                used.update((g.slot_theta, g.slot_phi_a, g.slot_phi_b))
            else:
                raise TypeError(f"unknown gate {g!r}")
        if used != set(range(self.num_params)):
            raise ValueError(
                f"param slots must cover exactly [0, {self.num_params}), got {sorted(used)}"
            )

    def table(self) -> np.ndarray:
        """Integer gate table for the kernels: rows [kind, q0, q1, s0, s1, s2]."""
        rows = np.empty((len(self.gates), 6), dtype=np.int32)
        for r, g in enumerate(self.gates):
            if isinstance(g, SingleRot):
                rows[r] = (_AXIS_KIND[g.axis], g.qubit, -1, g.slot, -1, -1)
            else:
                rows[r] = (KIND_MS, g.a, g.b, g.slot_theta, g.slot_phi_a, g.slot_phi_b)
        return rows

    @property
    def num_ms_gates(self) -> int:
        return sum(1 for g in self.gates if isinstance(g, MS))

    @property
    def depth_rows(self) -> int:
        """Row count when the circuit was built as brickwork layers."""
        return 2 * self._layers if hasattr(self, "_layers") else len(self.gates)


def brick_pairs(n: int, layer: int) -> list[tuple[int, int]]:
    """Disjoint MS pairs for the given layer; offset alternates with parity.

    Even layers pair (0,1), (2,3), ...; odd layers start at qubit 1 and close
    the ring with (n-1, 0) when n is even. Every layer has n // 2 pairs.
    """
    if layer % 2 == 0:
        return [(q, q + 1) for q in range(0, n - 1, 2)]
    return [(q, (q + 1) % n) for q in range(1, n, 2)]


def build_brickwork(n: int, num_layers: int) -> Circuit:
    """Brickwork circuit: per layer, n single-axis rotations then MS bricks.

    The rotation axis is (X, Y, Z)[layer % 3]; every gate draws a fresh
    parameter, so P = num_layers * (n + 3 * (n // 2)).
    """
    if n < 2:
        raise ValueError("brickwork needs n >= 2")
    if num_layers < 1:
        raise ValueError("need at least one layer")
    gates = []
    slot = 0
    for layer in range(num_layers):
        axis = "XYZ"[layer % 3]
        for q in range(n):
            gates.append(SingleRot(axis, q, slot))
            slot += 1
        for a, b in brick_pairs(n, layer):
            gates.append(MS(a, b, slot, slot + 1, slot + 2))
            slot += 3
    circ = Circuit(n, tuple(gates), slot)
    object.__setattr__(circ, "_layers", num_layers)
    return circ


def default_layers(m: int, n: int, scale: float = 1.0) -> int:
    """Layer-count heuristic proportional to m / n."""
    return max(1, ceil(scale * m / n))
