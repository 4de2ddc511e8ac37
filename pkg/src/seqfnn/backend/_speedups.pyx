# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementation of the per-step kernels.

Mirrors ``seqfnn.backend.pure`` function for function; see that module for
the contracts. Results may differ from the NumPy kernels in the last bits
only (summation order), never in meaning.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport exp, isnan, isinf, INFINITY

cnp.import_array()


def accumulate_powers(double[::1] o1, double[::1] x, Py_ssize_t n):
    cdef Py_ssize_t dim = x.shape[0]
    cdef Py_ssize_t k, i
    cdef double acc
    for k in range(dim):
        acc = x[k]
        o1[k * n] += acc
        for i in range(1, n):
            acc = acc * x[k]
            o1[k * n + i] += acc


def lowpass_update(double[::1] o3, double[::1] v, double[::1] lam):
    cdef Py_ssize_t d = lam.shape[0]
    cdef Py_ssize_t dim = v.shape[0]
    cdef Py_ssize_t k, i
    for k in range(dim):
        for i in range(d):
            o3[k * d + i] = lam[i] * o3[k * d + i] + (1.0 - lam[i]) * v[k]


def sq_distances(double[:, ::1] centers, double[::1] inv_w2, double[::1] v):
    cdef Py_ssize_t m = centers.shape[0]
    cdef Py_ssize_t width = centers.shape[1]
    out_arr = np.empty(m)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t j, k
    cdef double s, diff
    for j in range(m):
        s = 0.0
        for k in range(width):
            diff = centers[j, k] - v[k]
            s += diff * diff
        out[j] = s * inv_w2[j]
    return out_arr


def phi_from_rules(double[::1] z_seq, double[::1] z_samp,
                   cnp.intp_t[::1] rule_seq, cnp.intp_t[::1] rule_samp):
    from ..errors import DegenerateActivationError
    cdef Py_ssize_t n_rules = rule_seq.shape[0]
    out_arr = np.empty(n_rules)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i
    cdef double z, zmin = INFINITY, total = 0.0
    for i in range(n_rules):
        z = z_seq[rule_seq[i]] + z_samp[rule_samp[i]]
        out[i] = z
        if z < zmin:
            zmin = z
    if isnan(zmin) or isinf(zmin):
        raise DegenerateActivationError("no rule has a finite activation")
    for i in range(n_rules):
        out[i] = exp(zmin - out[i])
        total += out[i]
    for i in range(n_rules):
        out[i] /= total
    return out_arr


def tune_inner(double[:, ::1] weights, double[::1] phi, double[::1] y,
               double[::1] target, double eta, double beta,
               double theta3, int iter_max):
    cdef Py_ssize_t n_rules = weights.shape[0]
    cdef Py_ssize_t dim = weights.shape[1]
    cdef Py_ssize_t i, k
    cdef int iters = 0
    cdef double e = 0.0, diff, acc
    for k in range(dim):
        diff = y[k] - target[k]
        e += diff * diff
    while iters < iter_max and e > theta3:
        iters += 1
        for i in range(n_rules):
            for k in range(dim):
                weights[i, k] -= eta * phi[i] * (y[k] - target[k])
        for k in range(dim):
            acc = 0.0
            for i in range(n_rules):
                acc += phi[i] * weights[i, k]
            y[k] = acc
        e = 0.0
        for k in range(dim):
            diff = y[k] - target[k]
            e += diff * diff
        eta = beta * eta
    return e, iters, eta
