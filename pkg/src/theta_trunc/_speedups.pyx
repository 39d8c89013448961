# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels for truncated integer power series.

Same contracts as theta_trunc._kernels_py; the coefficients stay Python
ints (they overflow machine words), only the loop machinery is compiled.
"""


def conv_trunc(list a, list b, Py_ssize_t order):
    """Truncated Cauchy product of coefficient lists a and b."""
    cdef Py_ssize_t i, j, la, lb, jmax
    cdef object ai
    cdef list out = [0] * order
    la = len(a)
    if la > order:
        la = order
    lb = len(b)
    for i in range(la):
        ai = a[i]
        if ai == 0:
            continue
        jmax = lb
        if jmax > order - i:
            jmax = order - i
        if ai == 1:
            for j in range(jmax):
                out[i + j] = out[i + j] + b[j]
        else:
            for j in range(jmax):
                out[i + j] = out[i + j] + ai * b[j]
    return out


def inv_unit(list f):
    """Series inverse modulo q^len(f); requires f[0] in {1, -1}."""
    cdef Py_ssize_t n = len(f)
    cdef Py_ssize_t m, t, j, nnz
    cdef object c0 = f[0]
    cdef object acc, fj
    cdef list idx = []
    cdef list val = []
    for m in range(1, n):
        if f[m] != 0:
            idx.append(m)
            val.append(f[m])
    nnz = len(idx)
    cdef list g = [0] * n
    g[0] = c0
    for m in range(1, n):
        acc = 0
        for t in range(nnz):
            j = idx[t]
            if j > m:
                break
            fj = val[t]
            acc = acc + fj * g[m - j]
        g[m] = -c0 * acc
    return g


def mul_one_minus(list c, Py_ssize_t m):
    """In place c <- c * (1 - q^m), truncated to len(c)."""
    cdef Py_ssize_t i
    for i in range(len(c) - 1, m - 1, -1):
        c[i] = c[i] - c[i - m]


def div_one_minus(list c, Py_ssize_t m):
    """In place c <- c / (1 - q^m), truncated to len(c)."""
    cdef Py_ssize_t i, n = len(c)
    for i in range(m, n):
        c[i] = c[i] + c[i - m]
