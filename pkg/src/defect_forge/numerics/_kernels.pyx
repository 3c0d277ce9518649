# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the exp-sum kernels; same signatures as _kernels_py."""

import numpy as np
cimport numpy as cnp
from libc.math cimport atan2, cos, exp, fabs, log, sin, sqrt, INFINITY

cnp.import_array()


cdef inline double complex _horner(const double complex[:, :] rows, Py_ssize_t k,
                                   double complex z) noexcept nogil:
    cdef Py_ssize_t j
    cdef double complex acc = 0
    for j in range(rows.shape[1] - 1, -1, -1):
        acc = acc * z + rows[k, j]
    return acc


def eval_expsum(z, E, C, D=None):
    cdef const double complex[:] zz = np.ascontiguousarray(z, dtype=np.complex128)
    cdef const double complex[:, :] EE = np.ascontiguousarray(E, dtype=np.complex128)
    cdef const double complex[:, :] CC = np.ascontiguousarray(C, dtype=np.complex128)
    cdef const double complex[:, :] DD
    cdef bint want = D is not None
    if want:
        DD = np.ascontiguousarray(D, dtype=np.complex128)
    else:
        DD = CC
    cdef Py_ssize_t n = zz.shape[0], nt = EE.shape[0], i, k
    w_arr = np.empty(n, dtype=np.complex128)
    wd_arr = np.empty(n, dtype=np.complex128)
    s_arr = np.empty(n, dtype=np.float64)
    cdef double complex[:] w = w_arr
    cdef double complex[:] wd = wd_arr
    cdef double[:] s = s_arr
    cdef double complex e, ph, acc, accd
    cdef double mx, a
    cdef double complex buf[64]
    cdef double complex *ex
    if nt > 64:
        return _fallback(z, E, C, D)
    ex = buf
    with nogil:
        for i in range(n):
            mx = -INFINITY
            for k in range(nt):
                ex[k] = _horner(EE, k, zz[i])
                if ex[k].real > mx:
                    mx = ex[k].real
            acc = 0
            accd = 0
            for k in range(nt):
                a = exp(ex[k].real - mx)
                ph = a * cos(ex[k].imag) + 1j * a * sin(ex[k].imag)
                acc = acc + _horner(CC, k, zz[i]) * ph
                if want:
                    accd = accd + _horner(DD, k, zz[i]) * ph
            w[i] = acc
            wd[i] = accd
            s[i] = mx
    return w_arr, (wd_arr if want else None), s_arr


def _fallback(z, E, C, D):
    from . import _kernels_py
    return _kernels_py.eval_expsum(z, E, C, D)


def winding(w):
    cdef const double complex[:] ww = np.ascontiguousarray(w, dtype=np.complex128)
    cdef Py_ssize_t i, n = ww.shape[0]
    cdef double total = 0, worst = 0, a
    cdef double complex q
    with nogil:
        for i in range(n - 1):
            q = ww[i + 1] * ww[i].conjugate()
            a = atan2(q.imag, q.real)
            total += a
            if fabs(a) > worst:
                worst = fabs(a)
    return total, worst


def arg_steps(w):
    cdef const double complex[:] ww = np.ascontiguousarray(w, dtype=np.complex128)
    cdef Py_ssize_t i, n = ww.shape[0]
    out_arr = np.empty(max(n - 1, 0), dtype=np.float64)
    cdef double[:] out = out_arr
    cdef double complex q
    with nogil:
        for i in range(n - 1):
            q = ww[i + 1] * ww[i].conjugate()
            out[i] = atan2(q.imag, q.real)
    return out_arr


def log_abs(w, s):
    cdef const double complex[:] ww = np.ascontiguousarray(w, dtype=np.complex128)
    cdef const double[:] ss = np.ascontiguousarray(s, dtype=np.float64)
    cdef Py_ssize_t i, n = ww.shape[0]
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[:] out = out_arr
    cdef double m
    with nogil:
        for i in range(n):
            m = sqrt(ww[i].real * ww[i].real + ww[i].imag * ww[i].imag)
            out[i] = (log(m) + ss[i]) if m > 0 else -INFINITY
    return out_arr
