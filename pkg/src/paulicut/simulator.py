"""Statevector simulation: circuit execution, Pauli expectations, basis
sampling, and adjoint-mode gradients of encoding losses.

The adjoint gradient runs the circuit once, forms lam = Lambda |psi> with
Lambda = sum_i (dL/de_i) P_i frozen at the current expectations, then sweeps
the circuit backwards un-applying every gate from both vectors. Cost is two
forward-equivalent passes plus one inner product per parameter, independent
of the parameter count's contribution to circuit executions.
"""

from __future__ import annotations

import numpy as np

from . import backend
from .circuits import Circuit
from .encoding import AXES, Encoding, PauliString
from .loss import LossSpec, loss_grad_expectations, loss_value

__all__ = [
    "run",
    "expectation",
    "expectations",
    "sample",
    "sample_counts",
    "loss_and_gradient",
    "state_dump",
]

_NORM_TOL = 1e-10

# single-qubit basis rotations mapping X and Y measurements onto Z
_SQRT2 = 1.0 / np.sqrt(2.0)
_ROTATE_TO_Z = {
    "X": (_SQRT2, _SQRT2, _SQRT2, -_SQRT2),  # H
    "Y": (_SQRT2, -1j * _SQRT2, _SQRT2, 1j * _SQRT2),  # H S^dagger
}


def run(circuit: Circuit, params) -> np.ndarray:
    """Apply the circuit to |0...0> and return the statevector."""
    params = np.ascontiguousarray(params, dtype=np.float64)
    if params.shape != (circuit.num_params,):
        raise ValueError(f"expected {circuit.num_params} parameters, got {params.shape}")
    k = backend.kernels
    psi = k.zero_state(circuit.n)
    k.run_table(psi, circuit.table(), params)
    norm = float(np.linalg.norm(psi))
    if abs(norm - 1.0) > _NORM_TOL:
        raise FloatingPointError(f"statevector norm drifted to {norm}")
    return psi


def expectation(psi: np.ndarray, p: PauliString) -> float:
    return backend.kernels.pauli_expectation(psi, AXES.index(p.axis), p.mask)


def expectations(psi: np.ndarray, enc: Encoding) -> np.ndarray:
    k = backend.kernels
    codes, masks = enc.axis_codes(), enc.masks()
    return np.array(
        [k.pauli_expectation(psi, int(codes[i]), int(masks[i])) for i in range(enc.m)]
    )


def _rotated_probs(psi: np.ndarray, axis: str) -> np.ndarray:
    if axis not in AXES:
        raise ValueError(f"axis must be one of {AXES}")
    if axis == "Z":
        rot = psi
    else:
        rot = psi.copy()
        n = rot.size.bit_length() - 1
        u = _ROTATE_TO_Z[axis]
        for q in range(n):
            backend.kernels.apply_1q(rot, q, *u)
    probs = np.abs(rot) ** 2
    return probs / probs.sum()


def sample_counts(psi: np.ndarray, axis: str, shots: int, seed: int) -> np.ndarray:
    """Multinomial counts over basis states after rotating `axis` onto Z."""
    if shots < 1:
        raise ValueError("need shots >= 1")
    probs = _rotated_probs(psi, axis)
    return np.random.default_rng(seed).multinomial(shots, probs)


def sample(psi: np.ndarray, axis: str, shots: int, seed: int) -> np.ndarray:
    """Measurement outcomes, shape (shots, n) with +/-1 entries per qubit."""
    probs = _rotated_probs(psi, axis)
    if shots < 1:
        raise ValueError("need shots >= 1")
    n = psi.size.bit_length() - 1
    rng = np.random.default_rng(seed)
    idx = rng.choice(psi.size, size=shots, p=probs)
    bits = (idx[:, None] >> np.arange(n)) & 1
    return (1 - 2 * bits).astype(np.int8)


def loss_and_gradient(circuit: Circuit, params, spec: LossSpec):
    """(loss value, gradient over param slots) via one adjoint sweep."""
    params = np.ascontiguousarray(params, dtype=np.float64)
    k = backend.kernels
    psi = run(circuit, params)
    e = expectations(psi, spec.encoding)
    value = loss_value(e, spec)
    g = loss_grad_expectations(e, spec)
    lam = np.zeros_like(psi)
    codes, masks = spec.encoding.axis_codes(), spec.encoding.masks()
    for i in range(spec.encoding.m):
        if g[i] != 0.0:
            k.accumulate_pauli(lam, psi, int(codes[i]), int(masks[i]), float(g[i]))
    grad = np.zeros(circuit.num_params)
    k.adjoint_table(psi, lam, circuit.table(), params, grad)
    return value, grad


def state_dump(psi: np.ndarray, path) -> None:
    """Raw little-endian complex128 amplitudes (interleaved re, im doubles)."""
    np.asarray(psi, dtype="<c16").tofile(path)
