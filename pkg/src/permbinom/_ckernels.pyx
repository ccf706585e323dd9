# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels mirroring ``_pykernels`` one for one."""

from array import array
from cpython.mem cimport PyMem_Calloc, PyMem_Free

ctypedef long long i64


def build_exp_table(i64 p, i64 d, const i64[::1] modulus, const i64[::1] gen, i64 order):
    cdef i64[::1] out
    cdef i64 k, i, j, m, c, idx
    cdef i64 cur[64]
    cdef i64 prod[128]
    cdef i64 red[64]
    if d > 64:
        raise ValueError("extension degree too large for kernel")
    result = array("q", [0]) * order
    out = result
    for i in range(d):
        red[i] = (p - modulus[i] % p) % p
        cur[i] = 0
    cur[0] = 1
    for k in range(order):
        idx = 0
        for i in range(d - 1, -1, -1):
            idx = idx * p + cur[i]
        out[k] = idx
        for i in range(2 * d - 1):
            prod[i] = 0
        for i in range(d):
            if cur[i]:
                for j in range(d):
                    prod[i + j] = (prod[i + j] + cur[i] * gen[j]) % p
        for m in range(2 * d - 2, d - 1, -1):
            c = prod[m] % p
            if c:
                for j in range(d):
                    prod[m - d + j] = (prod[m - d + j] + c * red[j]) % p
        for i in range(d):
            cur[i] = prod[i] % p
    return result


def is_permutation_log(const i64[::1] exp, const i64[::1] zech, i64 log_a, i64 e, i64 order):
    cdef unsigned char* seen = <unsigned char*> PyMem_Calloc(order + 1, 1)
    cdef i64 step = ((e - 1) % order + order) % order
    cdef i64 s = ((-log_a) % order + order) % order
    cdef i64 L, z, idx
    cdef bint ok = True
    if seen == NULL:
        raise MemoryError()
    try:
        for L in range(order):
            z = zech[s]
            if z < 0:
                ok = False
                break
            idx = exp[(log_a + L + z) % order]
            if seen[idx]:
                ok = False
                break
            seen[idx] = 1
            s += step
            if s >= order:
                s -= order
    finally:
        PyMem_Free(seen)
    return ok


cdef inline i64 _mulmod(i64 a, i64 b, i64 m):
    # a, b < m <= field cap (2^20), so the product fits in 64 bits
    return (a * b) % m


def power_sum_log(const i64[::1] zech, i64 log_a, i64 e, s_exp, i64 order):
    cdef i64 acc = -1
    cdef i64 step = ((e - 1) % order + order) % order
    cdef i64 s = ((-log_a) % order + order) % order
    cdef i64 se = s_exp % order
    cdef i64 L, z, t, w
    for L in range(order):
        z = zech[s]
        s += step
        if s >= order:
            s -= order
        if z < 0:
            continue
        t = _mulmod((log_a + L + z) % order, se, order)
        if acc < 0:
            acc = t
        else:
            w = zech[((t - acc) % order + order) % order]
            if w < 0:
                acc = -1
            else:
                acc = (acc + w) % order
    return acc


def lambda_sum_log(const i64[::1] zech, const i64[::1] coef_logs, const i64[::1] exps, i64 log_a, i64 order):
    cdef i64 acc = -1
    cdef Py_ssize_t k
    cdef i64 t, w
    for k in range(coef_logs.shape[0]):
        t = ((coef_logs[k] - _mulmod(exps[k] % order, log_a, order)) % order + order) % order
        if acc < 0:
            acc = t
        else:
            w = zech[((t - acc) % order + order) % order]
            if w < 0:
                acc = -1
            else:
                acc = (acc + w) % order
    return acc
