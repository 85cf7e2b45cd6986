# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled amplitude kernels; see ``_kernels_py`` for the reference semantics."""
import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef double complex cplx


def raise_bit(const cplx[:, ::1] amps, int bit):
    cdef Py_ssize_t n = amps.shape[0], dim = amps.shape[1], s, k
    cdef Py_ssize_t step = 1 << bit
    out = np.zeros((n, dim), dtype=np.complex128)
    cdef cplx[:, ::1] o = out
    for s in range(n):
        for k in range(dim):
            if not (k & step):
                o[s, k | step] = amps[s, k]
    return out


def lower_bit(const cplx[:, ::1] amps, int bit):
    cdef Py_ssize_t n = amps.shape[0], dim = amps.shape[1], s, k
    cdef Py_ssize_t step = 1 << bit
    out = np.zeros((n, dim), dtype=np.complex128)
    cdef cplx[:, ::1] o = out
    for s in range(n):
        for k in range(dim):
            if k & step:
                o[s, k ^ step] = amps[s, k]
    return out


def mask_bit(const cplx[:, ::1] amps, int bit, bint fired):
    cdef Py_ssize_t n = amps.shape[0], dim = amps.shape[1], s, k
    cdef Py_ssize_t step = 1 << bit
    cdef Py_ssize_t want = step if fired else 0
    out = np.zeros((n, dim), dtype=np.complex128)
    cdef cplx[:, ::1] o = out
    for s in range(n):
        for k in range(dim):
            if (k & step) == want:
                o[s, k] = amps[s, k]
    return out


def apply_local(const cplx[::1] amps, bits, matrix):
    cdef Py_ssize_t dim = amps.shape[0]
    cdef Py_ssize_t p = len(bits)
    cdef Py_ssize_t ldim = 1 << p
    cdef const cplx[:, ::1] m = np.ascontiguousarray(matrix, dtype=np.complex128)
    offs_arr = np.zeros(ldim, dtype=np.intp)
    cdef Py_ssize_t[::1] offs = offs_arr
    cdef Py_ssize_t tmask = 0, i, j, k, b
    for b in range(p):
        tmask |= <Py_ssize_t>1 << <Py_ssize_t>bits[b]
    for i in range(ldim):
        for b in range(p):
            if i >> b & 1:
                offs[i] |= <Py_ssize_t>1 << <Py_ssize_t>bits[b]
    buf_arr = np.empty(ldim, dtype=np.complex128)
    cdef cplx[::1] buf = buf_arr
    out = np.empty(dim, dtype=np.complex128)
    cdef cplx[::1] o = out
    cdef cplx acc
    for k in range(dim):
        if k & tmask:
            continue
        for i in range(ldim):
            buf[i] = amps[k | offs[i]]
        for j in range(ldim):
            acc = 0
            for i in range(ldim):
                acc = acc + m[j, i] * buf[i]
            o[k | offs[j]] = acc
    return out


def probabilities(const cplx[::1] amps):
    cdef Py_ssize_t dim = amps.shape[0], k
    out = np.empty(dim, dtype=np.float64)
    cdef double[::1] o = out
    for k in range(dim):
        o[k] = amps[k].real * amps[k].real + amps[k].imag * amps[k].imag
    return out


def subset_probabilities(const cplx[::1] amps, bits):
    cdef Py_ssize_t dim = amps.shape[0], k, m, pat
    cdef Py_ssize_t nb = len(bits)
    bits_arr = np.asarray(bits, dtype=np.intp)
    cdef Py_ssize_t[::1] bv = bits_arr
    out = np.zeros(1 << nb, dtype=np.float64)
    cdef double[::1] o = out
    for k in range(dim):
        pat = 0
        for m in range(nb):
            pat |= ((k >> bv[m]) & 1) << m
        o[pat] += amps[k].real * amps[k].real + amps[k].imag * amps[k].imag
    return out


def masked_norm2(const cplx[::1] amps, Py_ssize_t mask, Py_ssize_t value):
    cdef Py_ssize_t dim = amps.shape[0], k
    cdef double acc = 0.0
    for k in range(dim):
        if (k & mask) == value:
            acc += amps[k].real * amps[k].real + amps[k].imag * amps[k].imag
    return acc
