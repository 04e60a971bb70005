"""NumPy statevector kernels; fallback backend with the same API as the
compiled extension. Qubit 0 is the least significant amplitude-index bit."""

from __future__ import annotations

from math import cos, sin

import numpy as np

BACKEND = "python"


def zero_state(n: int) -> np.ndarray:
    psi = np.zeros(1 << n, dtype=np.complex128)
    psi[0] = 1.0
    return psi


_IDX = {}


def _indices(size):
    if size not in _IDX:
        _IDX[size] = np.arange(size, dtype=np.int64)
    return _IDX[size]


def _bit_parity(values, mask):
    par = np.zeros(len(values), dtype=np.int64)
    q = 0
    while mask >> q:
        if (mask >> q) & 1:
            par ^= (values >> q) & 1
        q += 1
    return par


def _signs(size, mask):
    """(-1)^popcount(i & mask) for all amplitude indices i."""
    return 1.0 - 2.0 * _bit_parity(_indices(size), mask)


def apply_rot(psi, kind, q, angle):
    c, s = cos(0.5 * angle), sin(0.5 * angle)
    v = psi.reshape(psi.size >> (q + 1), 2, 1 << q)
    if kind == 2:  # Z
        v[:, 0, :] *= complex(c, -s)
        v[:, 1, :] *= complex(c, s)
        return
    a = v[:, 0, :].copy()
    b = v[:, 1, :]
    if kind == 0:  # X
        v[:, 0, :] = c * a - 1j * s * b
        v[:, 1, :] = c * b - 1j * s * a
    else:  # Y
        v[:, 0, :] = c * a - s * b
        v[:, 1, :] = c * b + s * a


def apply_1q(psi, q, u00, u01, u10, u11):
    v = psi.reshape(psi.size >> (q + 1), 2, 1 << q)
    a = v[:, 0, :].copy()
    b = v[:, 1, :]
    v[:, 0, :] = u00 * a + u01 * b
    v[:, 1, :] = u10 * a + u11 * b


def _ms_phases(a, b, phia, phib):
    # f[(bit_a, bit_b)] of the output index for A(phia)_a A(phib)_b
    return {
        (ba, bb): np.exp(1j * (phia * (2 * ba - 1) + phib * (2 * bb - 1)))
        for ba in (0, 1)
        for bb in (0, 1)
    }


def apply_ms(psi, a, b, theta, phia, phib):
    c, s = cos(0.5 * theta), sin(0.5 * theta)
    ql, qh = (a, b) if a < b else (b, a)
    v = psi.reshape(psi.size >> (qh + 1), 2, 1 << (qh - ql - 1), 2, 1 << ql)
    f = _ms_phases(a, b, phia, phib)

    def bits(p, r):  # (bit_a, bit_b) of block (bit_qh=p, bit_ql=r)
        return (p, r) if a == qh else (r, p)

    a00 = v[:, 0, :, 0, :].copy()
    a01 = v[:, 0, :, 1, :].copy()
    a10 = v[:, 1, :, 0, :]
    a11 = v[:, 1, :, 1, :]
    v[:, 0, :, 0, :] = c * a00 - 1j * s * f[bits(0, 0)] * a11
    v[:, 1, :, 1, :] = c * a11 - 1j * s * f[bits(1, 1)] * a00
    v[:, 0, :, 1, :] = c * a01 - 1j * s * f[bits(0, 1)] * a10
    v[:, 1, :, 0, :] = c * a10 - 1j * s * f[bits(1, 0)] * a01


def run_table(psi, table, params):
    for kind, q0, q1, s0, s1, s2 in table:
        if kind == 3:
            apply_ms(psi, q0, q1, params[s0], params[s1], params[s2])
        else:
            apply_rot(psi, kind, q0, params[s0])


def pauli_expectation(psi, axis, mask):
    mask = int(mask)
    size = psi.size
    if axis == 2:  # Z
        probs = psi.real**2 + psi.imag**2
        return float(np.dot(_signs(size, mask), probs))
    flipped = psi[_indices(size) ^ mask]
    if axis == 0:  # X
        return float(np.real(np.vdot(psi, flipped)))
    pref = (-1j) ** int.bit_count(mask)
    acc = np.vdot(psi, _signs(size, mask) * flipped)
    return float(np.real(pref * acc))


def accumulate_pauli(out, psi, axis, mask, coeff):
    mask = int(mask)
    size = psi.size
    if axis == 2:
        out += coeff * _signs(size, mask) * psi
        return
    flipped = psi[_indices(size) ^ mask]
    if axis == 0:
        out += coeff * flipped
    else:
        pref = coeff * (-1j) ** int.bit_count(mask)
        out += pref * _signs(size, mask) * flipped


def im_inner_pauli(lam, psi, axis, mask):
    mask = int(mask)
    size = psi.size
    if axis == 2:
        return float(np.imag(np.vdot(lam, _signs(size, mask) * psi)))
    flipped = psi[_indices(size) ^ mask]
    if axis == 0:
        return float(np.imag(np.vdot(lam, flipped)))
    pref = (-1j) ** int.bit_count(mask)
    return float(np.imag(pref * np.vdot(lam, _signs(size, mask) * flipped)))


def im_inner_ms(lam, psi, a, b, phia, phib):
    size = psi.size
    idx = _indices(size)
    mask = (1 << a) | (1 << b)
    f = _ms_phases(a, b, phia, phib)
    ba = (idx >> a) & 1
    bb = (idx >> b) & 1
    lut = np.array([f[0, 0], f[0, 1], f[1, 0], f[1, 1]])
    phases = lut[2 * ba + bb]
    return float(np.imag(np.sum(np.conj(lam) * phases * psi[idx ^ mask])))


def adjoint_table(psi, lam, table, params, grad):
    """Reverse sweep: un-applies every gate from psi and lam while
    accumulating dE/dtheta for E = <lam_G|psi_G> inner products, where lam
    started as Lambda psi_G with a frozen Hermitian Lambda."""
    for r in range(len(table) - 1, -1, -1):
        kind, q0, q1, s0, s1, s2 = (int(v) for v in table[r])
        if kind != 3:
            grad[s0] += im_inner_pauli(lam, psi, kind, 1 << q0)
            apply_rot(psi, kind, q0, -params[s0])
            apply_rot(lam, kind, q0, -params[s0])
        else:
            theta, phia, phib = params[s0], params[s1], params[s2]
            grad[s0] += im_inner_ms(lam, psi, q0, q1, phia, phib)
            za = im_inner_pauli(lam, psi, 2, 1 << q0)
            zb = im_inner_pauli(lam, psi, 2, 1 << q1)
            apply_ms(psi, q0, q1, -theta, phia, phib)
            apply_ms(lam, q0, q1, -theta, phia, phib)
            grad[s1] += za - im_inner_pauli(lam, psi, 2, 1 << q0)
            grad[s2] += zb - im_inner_pauli(lam, psi, 2, 1 << q1)
