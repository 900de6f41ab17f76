# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled exact LLL kernel: a 1:1 twin of _lll_py.

Arithmetic stays on Python big ints (entries overflow machine words almost
immediately), so the win over the pure kernel is interpreter overhead:
typed loop indices, direct list indexing, and no frame setup in the inner
loops.  Any behavioral difference from _lll_py is a bug; the test suite
compares both kernels output-for-output.
"""

from knapcrack.errors import DependentColumns

KERNEL_NAME = "cython"


cdef object _round_nearest(object num, object den):
    # ceil((2*num - den) / (2*den)): the <q - 1/2] tie rule, den > 0.
    cdef object a = 2 * num - den
    return -((-a) // (2 * den))


def lll_reduce(list cols, alpha_num, alpha_den):
    """LLL-reduce integer columns in place and return them."""
    cdef Py_ssize_t n = len(cols)
    if n == 0:
        return cols
    cdef object p = alpha_num
    cdef object q = alpha_den
    cdef Py_ssize_t i, j, k, h, t, dim
    cdef list g, d, lam, ci, cj, ck, lk, lj, lk1, li
    cdef object s, u, dj, lkj, gamma, lkk, dnew, tt

    g = [[0] * n for i in range(n)]
    for i in range(n):
        ci = <list>cols[i]
        dim = len(ci)
        for j in range(i + 1):
            cj = <list>cols[j]
            s = 0
            for t in range(dim):
                s += ci[t] * cj[t]
            (<list>g[i])[j] = s
            (<list>g[j])[i] = s

    d = [0] * (n + 1)
    d[0] = 1
    lam = [[0] * n for i in range(n)]
    for i in range(n):
        for j in range(i + 1):
            u = (<list>g[i])[j]
            for k in range(j):
                u = (d[k + 1] * u - (<list>lam[i])[k] * (<list>lam[j])[k]) // d[k]
            if j < i:
                (<list>lam[i])[j] = u
            else:
                if u == 0:
                    raise DependentColumns(
                        f"column {i} is dependent on earlier columns")
                d[i + 1] = u

    k = 1
    while k < n:
        # size-reduce column k against k-1
        j = k - 1
        dj = d[j + 1]
        lk = <list>lam[k]
        lkj = lk[j]
        if 2 * lkj > dj or 2 * lkj < -dj:
            gamma = _round_nearest(lkj, dj)
            ck = <list>cols[k]
            cj = <list>cols[j]
            dim = len(ck)
            for t in range(dim):
                ck[t] = ck[t] - gamma * cj[t]
            lj = <list>lam[j]
            for i in range(j):
                lk[i] = lk[i] - gamma * lj[i]
            lk[j] = lk[j] - gamma * dj

        lkk = (<list>lam[k])[k - 1]
        if q * (d[k + 1] * d[k - 1] + lkk * lkk) < p * d[k] * d[k]:
            cols[k - 1], cols[k] = cols[k], cols[k - 1]
            lk = <list>lam[k]
            lk1 = <list>lam[k - 1]
            for j in range(k - 1):
                lk[j], lk1[j] = lk1[j], lk[j]
            dnew = (d[k + 1] * d[k - 1] + lkk * lkk) // d[k]
            for i in range(k + 1, n):
                li = <list>lam[i]
                tt = li[k]
                li[k] = (d[k + 1] * li[k - 1] - lkk * tt) // d[k]
                li[k - 1] = (dnew * tt + lkk * li[k]) // d[k + 1]
            d[k] = dnew
            if k > 1:
                k -= 1
        else:
            for h in range(k - 2, -1, -1):
                dj = d[h + 1]
                lk = <list>lam[k]
                lkj = lk[h]
                if 2 * lkj > dj or 2 * lkj < -dj:
                    gamma = _round_nearest(lkj, dj)
                    ck = <list>cols[k]
                    cj = <list>cols[h]
                    dim = len(ck)
                    for t in range(dim):
                        ck[t] = ck[t] - gamma * cj[t]
                    lj = <list>lam[h]
                    for i in range(h):
                        lk[i] = lk[i] - gamma * lj[i]
                    lk[h] = lk[h] - gamma * dj
            k += 1
    return cols
