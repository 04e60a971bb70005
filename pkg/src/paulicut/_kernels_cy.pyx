# cython: boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled statevector kernels; same API as _kernels_py.
Qubit 0 is the least significant amplitude-index bit."""

from libc.math cimport cos, sin

import numpy as np

BACKEND = "cython"

ctypedef double complex cplx

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


def zero_state(int n):
    psi = np.zeros(1 << n, dtype=np.complex128)
    psi[0] = 1.0
    return psi


cdef inline Py_ssize_t _ins0(Py_ssize_t g, int q) nogil:
    return ((g >> q) << (q + 1)) | (g & ((<Py_ssize_t>1 << q) - 1))


cdef inline cplx _ipow_neg(int k) nogil:
    # (-1j) ** k
    k = k & 3
    if k == 0:
        return 1.0
    if k == 1:
        return -1j
    if k == 2:
        return -1.0
    return 1j


cdef void _rot(cplx[::1] psi, int kind, int q, double angle) nogil:
    cdef Py_ssize_t half = psi.shape[0] >> 1, g, i0, i1
    cdef Py_ssize_t bit = <Py_ssize_t>1 << q
    cdef double c = cos(0.5 * angle), s = sin(0.5 * angle)
    cdef cplx a, b, ph0, ph1
    if kind == 0:
        for g in range(half):
            i0 = _ins0(g, q)
            i1 = i0 | bit
            a = psi[i0]
            b = psi[i1]
            psi[i0] = c * a - 1j * (s * b)
            psi[i1] = c * b - 1j * (s * a)
    elif kind == 1:
        for g in range(half):
            i0 = _ins0(g, q)
            i1 = i0 | bit
            a = psi[i0]
            b = psi[i1]
            psi[i0] = c * a - s * b
            psi[i1] = c * b + s * a
    else:
        ph0 = c - 1j * s
        ph1 = c + 1j * s
        for g in range(half):
            i0 = _ins0(g, q)
            i1 = i0 | bit
            psi[i0] = psi[i0] * ph0
            psi[i1] = psi[i1] * ph1


cdef void _ms(cplx[::1] psi, int a, int b, double theta, double phia, double phib) nogil:
    cdef Py_ssize_t quarter = psi.shape[0] >> 2, g, base, i0, i1, i2, i3
    cdef Py_ssize_t ia = <Py_ssize_t>1 << a, ib = <Py_ssize_t>1 << b
    cdef int ql = a if a < b else b
    cdef int qh = b if a < b else a
    cdef double c = cos(0.5 * theta), s = sin(0.5 * theta)
    # f(bit_a, bit_b) = exp(i(phia(2 bit_a - 1) + phib(2 bit_b - 1))) at the output index
    cdef cplx f00 = cos(phia + phib) - 1j * sin(phia + phib)
    cdef cplx f11 = cos(phia + phib) + 1j * sin(phia + phib)
    cdef cplx f10 = cos(phia - phib) + 1j * sin(phia - phib)
    cdef cplx f01 = cos(phia - phib) - 1j * sin(phia - phib)
    cdef cplx a0, a1, a2, a3
    for g in range(quarter):
        base = _ins0(_ins0(g, ql), qh)
        i0 = base
        i1 = base | ia
        i2 = base | ib
        i3 = base | ia | ib
        a0 = psi[i0]
        a1 = psi[i1]
        a2 = psi[i2]
        a3 = psi[i3]
        psi[i0] = c * a0 - 1j * (s * (f00 * a3))
        psi[i3] = c * a3 - 1j * (s * (f11 * a0))
        psi[i1] = c * a1 - 1j * (s * (f10 * a2))
        psi[i2] = c * a2 - 1j * (s * (f01 * a1))


def apply_rot(cplx[::1] psi, int kind, int q, double angle):
    _rot(psi, kind, q, angle)


def apply_ms(cplx[::1] psi, int a, int b, double theta, double phia, double phib):
    _ms(psi, a, b, theta, phia, phib)


def apply_1q(cplx[::1] psi, int q, u00, u01, u10, u11):
    cdef cplx m00 = u00, m01 = u01, m10 = u10, m11 = u11
    cdef Py_ssize_t half = psi.shape[0] >> 1, g, i0, i1
    cdef Py_ssize_t bit = <Py_ssize_t>1 << q
    cdef cplx a, b
    for g in range(half):
        i0 = _ins0(g, q)
        i1 = i0 | bit
        a = psi[i0]
        b = psi[i1]
        psi[i0] = m00 * a + m01 * b
        psi[i1] = m10 * a + m11 * b


def run_table(cplx[::1] psi, int[:, ::1] table, double[::1] params):
    cdef Py_ssize_t r
    cdef int kind
    for r in range(table.shape[0]):
        kind = table[r, 0]
        if kind == 3:
            _ms(psi, table[r, 1], table[r, 2],
                params[table[r, 3]], params[table[r, 4]], params[table[r, 5]])
        else:
            _rot(psi, kind, table[r, 1], params[table[r, 3]])


cdef double _exp_pauli(cplx[::1] psi, int axis, long long mask) nogil:
    cdef Py_ssize_t size = psi.shape[0], i
    cdef Py_ssize_t msk = <Py_ssize_t>mask
    cdef double acc = 0.0
    cdef cplx accc = 0.0, z
    cdef int par
    if axis == 2:
        for i in range(size):
            z = psi[i]
            par = __builtin_popcountll(i & msk) & 1
            acc += (1.0 - 2.0 * par) * (z.real * z.real + z.imag * z.imag)
        return acc
    if axis == 0:
        for i in range(size):
            accc = accc + psi[i].conjugate() * psi[i ^ msk]
        return accc.real
    for i in range(size):
        par = __builtin_popcountll(i & msk) & 1
        accc = accc + (1.0 - 2.0 * par) * (psi[i].conjugate() * psi[i ^ msk])
    return (_ipow_neg(__builtin_popcountll(msk)) * accc).real


def pauli_expectation(cplx[::1] psi, int axis, long long mask):
    return _exp_pauli(psi, axis, mask)


def accumulate_pauli(cplx[::1] out, cplx[::1] psi, int axis, long long mask, double coeff):
    cdef Py_ssize_t size = psi.shape[0], i
    cdef Py_ssize_t msk = <Py_ssize_t>mask
    cdef int par
    cdef cplx pref
    if axis == 2:
        for i in range(size):
            par = __builtin_popcountll(i & msk) & 1
            out[i] = out[i] + coeff * (1.0 - 2.0 * par) * psi[i]
    elif axis == 0:
        for i in range(size):
            out[i] = out[i] + coeff * psi[i ^ msk]
    else:
        pref = coeff * _ipow_neg(__builtin_popcountll(msk))
        for i in range(size):
            par = __builtin_popcountll(i & msk) & 1
            out[i] = out[i] + pref * (1.0 - 2.0 * par) * psi[i ^ msk]


cdef double _im_inner(cplx[::1] lam, cplx[::1] psi, int axis, long long mask) nogil:
    cdef Py_ssize_t size = psi.shape[0], i
    cdef Py_ssize_t msk = <Py_ssize_t>mask
    cdef cplx accc = 0.0
    cdef int par
    if axis == 2:
        for i in range(size):
            par = __builtin_popcountll(i & msk) & 1
            accc = accc + (1.0 - 2.0 * par) * (lam[i].conjugate() * psi[i])
        return accc.imag
    if axis == 0:
        for i in range(size):
            accc = accc + lam[i].conjugate() * psi[i ^ msk]
        return accc.imag
    for i in range(size):
        par = __builtin_popcountll(i & msk) & 1
        accc = accc + (1.0 - 2.0 * par) * (lam[i].conjugate() * psi[i ^ msk])
    return (_ipow_neg(__builtin_popcountll(msk)) * accc).imag


def im_inner_pauli(cplx[::1] lam, cplx[::1] psi, int axis, long long mask):
    return _im_inner(lam, psi, axis, mask)


cdef double _im_inner_ms_c(cplx[::1] lam, cplx[::1] psi, int a, int b,
                           double phia, double phib) nogil:
    cdef Py_ssize_t size = psi.shape[0], i
    cdef Py_ssize_t msk = (<Py_ssize_t>1 << a) | (<Py_ssize_t>1 << b)
    cdef cplx accc = 0.0
    cdef cplx f[4]
    cdef int ba, bb
    f[0] = cos(phia + phib) - 1j * sin(phia + phib)  # (0, 0)
    f[1] = cos(phia - phib) - 1j * sin(phia - phib)  # (0, 1)
    f[2] = cos(phia - phib) + 1j * sin(phia - phib)  # (1, 0)
    f[3] = cos(phia + phib) + 1j * sin(phia + phib)  # (1, 1)
    for i in range(size):
        ba = (i >> a) & 1
        bb = (i >> b) & 1
        accc = accc + lam[i].conjugate() * (f[2 * ba + bb] * psi[i ^ msk])
    return accc.imag


def im_inner_ms(cplx[::1] lam, cplx[::1] psi, int a, int b, double phia, double phib):
    return _im_inner_ms_c(lam, psi, a, b, phia, phib)


def adjoint_table(cplx[::1] psi, cplx[::1] lam, int[:, ::1] table,
                  double[::1] params, double[::1] grad):
    cdef Py_ssize_t r
    cdef int kind, q0, q1
    cdef double theta, phia, phib, za, zb
    for r in range(table.shape[0] - 1, -1, -1):
        kind = table[r, 0]
        q0 = table[r, 1]
        q1 = table[r, 2]
        if kind != 3:
            grad[table[r, 3]] += _im_inner(lam, psi, kind, <long long>1 << q0)
            _rot(psi, kind, q0, -params[table[r, 3]])
            _rot(lam, kind, q0, -params[table[r, 3]])
        else:
            theta = params[table[r, 3]]
            phia = params[table[r, 4]]
            phib = params[table[r, 5]]
            grad[table[r, 3]] += _im_inner_ms_c(lam, psi, q0, q1, phia, phib)
            za = _im_inner(lam, psi, 2, <long long>1 << q0)
            zb = _im_inner(lam, psi, 2, <long long>1 << q1)
            _ms(psi, q0, q1, -theta, phia, phib)
            _ms(lam, q0, q1, -theta, phia, phib)
            grad[table[r, 4]] += za - _im_inner(lam, psi, 2, <long long>1 << q0)
            grad[table[r, 5]] += zb - _im_inner(lam, psi, 2, <long long>1 << q1)
