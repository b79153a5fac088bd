# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled SU(2) braid-action kernels.

Mirrors _su2core_py exactly: quaternions are (w, x, y, z) rows of a
float64 array, braid letters act by conjugation swaps, and the _jac
variant pushes tangent channels through the product rule.  Keep the two
implementations in lockstep; tests compare them directly.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

BACKEND = "cython"


cdef inline void _qmul(const double* a, const double* b, double* out) noexcept nogil:
    out[0] = a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3]
    out[1] = a[0] * b[1] + b[0] * a[1] + a[2] * b[3] - a[3] * b[2]
    out[2] = a[0] * b[2] + b[0] * a[2] + a[3] * b[1] - a[1] * b[3]
    out[3] = a[0] * b[3] + b[0] * a[3] + a[1] * b[2] - a[2] * b[1]


cdef inline void _qconj(const double* a, double* out) noexcept nogil:
    out[0] = a[0]
    out[1] = -a[1]
    out[2] = -a[2]
    out[3] = -a[3]


def apply_word(word, X):
    cdef cnp.ndarray[cnp.float64_t, ndim=2] Xa = np.array(X, dtype=np.float64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] w = np.asarray(word, dtype=np.int64)
    cdef Py_ssize_t m = w.shape[0]
    cdef Py_ssize_t l, i, k
    cdef long s
    cdef double a[4]
    cdef double b[4]
    cdef double ac[4]
    cdef double tmp[4]
    cdef double res[4]
    for l in range(m):
        s = w[l]
        i = (s if s > 0 else -s) - 1
        for k in range(4):
            a[k] = Xa[i, k]
            b[k] = Xa[i + 1, k]
        if s > 0:
            _qconj(a, ac)
            _qmul(a, b, tmp)
            _qmul(tmp, ac, res)
            for k in range(4):
                Xa[i, k] = res[k]
                Xa[i + 1, k] = a[k]
        else:
            _qconj(b, ac)
            _qmul(ac, a, tmp)
            _qmul(tmp, b, res)
            for k in range(4):
                Xa[i, k] = b[k]
                Xa[i + 1, k] = res[k]
    return Xa


def apply_word_jac(word, X, dX):
    cdef cnp.ndarray[cnp.float64_t, ndim=2] Xa = np.array(X, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=3] Da = np.array(dX, dtype=np.float64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] w = np.asarray(word, dtype=np.int64)
    cdef Py_ssize_t m = w.shape[0]
    cdef Py_ssize_t C = Da.shape[1]
    cdef Py_ssize_t l, i, k, c
    cdef long s
    cdef double a[4]
    cdef double b[4]
    cdef double ac[4]
    cdef double bc[4]
    cdef double ab[4]
    cdef double ba[4]
    cdef double res[4]
    cdef double da[4]
    cdef double db[4]
    cdef double dac[4]
    cdef double dbc[4]
    cdef double t1[4]
    cdef double t2[4]
    cdef double acc[4]
    for l in range(m):
        s = w[l]
        i = (s if s > 0 else -s) - 1
        for k in range(4):
            a[k] = Xa[i, k]
            b[k] = Xa[i + 1, k]
        if s > 0:
            _qconj(a, ac)
            _qmul(a, b, ab)
            _qmul(ab, ac, res)
            for c in range(C):
                for k in range(4):
                    da[k] = Da[i, c, k]
                    db[k] = Da[i + 1, c, k]
                _qconj(da, dac)
                # da*b*ac + a*db*ac + (a*b)*conj(da)
                _qmul(da, b, t1)
                _qmul(t1, ac, acc)
                _qmul(a, db, t1)
                _qmul(t1, ac, t2)
                for k in range(4):
                    acc[k] += t2[k]
                _qmul(ab, dac, t2)
                for k in range(4):
                    Da[i, c, k] = acc[k] + t2[k]
                    Da[i + 1, c, k] = da[k]
            for k in range(4):
                Xa[i, k] = res[k]
                Xa[i + 1, k] = a[k]
        else:
            _qconj(b, bc)
            _qmul(bc, a, ba)
            _qmul(ba, b, res)
            for c in range(C):
                for k in range(4):
                    da[k] = Da[i, c, k]
                    db[k] = Da[i + 1, c, k]
                _qconj(db, dbc)
                # conj(db)*a*b + bc*da*b + (bc*a)*db
                _qmul(dbc, a, t1)
                _qmul(t1, b, acc)
                _qmul(bc, da, t1)
                _qmul(t1, b, t2)
                for k in range(4):
                    acc[k] += t2[k]
                _qmul(ba, db, t2)
                for k in range(4):
                    Da[i, c, k] = db[k]
                    Da[i + 1, c, k] = acc[k] + t2[k]
            for k in range(4):
                Xa[i, k] = b[k]
                Xa[i + 1, k] = res[k]
    return Xa, Da
