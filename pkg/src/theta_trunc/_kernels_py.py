"""Pure-Python kernels for truncated integer power series.

These are the hot inner loops of the package: everything here operates on
plain lists of arbitrary-precision Python ints indexed by exponent.  The
compiled twin ``theta_trunc._speedups`` implements the same four functions
with C-level loop counters; ``theta_trunc.kernels`` picks whichever is
available at import time.
"""


def conv_trunc(a, b, order):
    """Truncated Cauchy product of coefficient lists a and b.

    Returns c of length ``order`` with c[n] = sum_{i+j=n} a[i]*b[j].
    Zero entries of ``a`` are skipped, so sparse-times-dense products cost
    O(nnz(a) * order).
    """
    out = [0] * order
    la = min(len(a), order)
    lb = len(b)
    for i in range(la):
        ai = a[i]
        if ai == 0:
            continue
        jmax = min(lb, order - i)
        if ai == 1:
            for j in range(jmax):
                out[i + j] += b[j]
        else:
            for j in range(jmax):
                out[i + j] += ai * b[j]
    return out


def inv_unit(f):
    """Multiplicative inverse of f modulo q^len(f); requires f[0] in {1, -1}.

    Standard recurrence: g[0] = f[0], g[m] = -f[0] * sum_{j>=1} f[j] g[m-j].
    Only the nonzero entries of f enter the inner sum.
    """
    n = len(f)
    c0 = f[0]
    nz = [(j, fj) for j, fj in enumerate(f) if j > 0 and fj != 0]
    g = [0] * n
    g[0] = c0
    for m in range(1, n):
        acc = 0
        for j, fj in nz:
            if j > m:
                break
            acc += fj * g[m - j]
        g[m] = -c0 * acc
    return g


def mul_one_minus(c, m):
    """In place c <- c * (1 - q^m), truncated to len(c)."""
    for i in range(len(c) - 1, m - 1, -1):
        c[i] -= c[i - m]


def div_one_minus(c, m):
    """In place c <- c / (1 - q^m), truncated to len(c).

    Equivalent to multiplying by 1 + q^m + q^{2m} + ...; this is the
    partition-counting prefix sum with stride m.
    """
    for i in range(m, len(c)):
        c[i] += c[i - m]
