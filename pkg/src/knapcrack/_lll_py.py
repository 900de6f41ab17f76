"""Pure-Python exact LLL kernel.

The reduction state follows the classic denominator-free bookkeeping:
``d[i]`` is the Gram determinant of the first ``i`` basis vectors and
``lam[i][j] = mu_{i,j} * d[j+1]``, so every projection coefficient is the
exact rational ``lam/d`` and all updates stay in integer arithmetic.  The
reduce/exchange updates below are the incremental closed forms for the
Gram-Schmidt data with denominators cleared; all comparisons (size
reduction, Lovasz test, nearest-integer rounding with the asymmetric
half-tie rule) are exact.

``_lll_cy`` is a compiled twin of this module; both must produce
bit-identical output for any input.
"""

from __future__ import annotations

from .errors import DependentColumns

KERNEL_NAME = "python"


def _round_nearest(num: int, den: int) -> int:
    # ceil((2*num - den) / (2*den)) for den > 0: the <q - 1/2] tie rule.
    a = 2 * num - den
    b = 2 * den
    return -((-a) // b)


def lll_reduce(cols: list[list[int]], alpha_num: int, alpha_den: int) -> list[list[int]]:
    """LLL-reduce integer columns in place and return them.

    alpha = alpha_num / alpha_den is the Lovasz parameter.  Raises
    DependentColumns when the columns are not linearly independent.
    """
    n = len(cols)
    if n == 0:
        return cols
    p = alpha_num
    q = alpha_den

    # Gram matrix of the columns.
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        ci = cols[i]
        for j in range(i + 1):
            s = 0
            cj = cols[j]
            for t in range(len(ci)):
                s += ci[t] * cj[t]
            g[i][j] = s
            g[j][i] = s

    # Integral GSO: d[i] = det of the leading i x i Gram block, lam scaled mu.
    d = [0] * (n + 1)
    d[0] = 1
    lam = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1):
            u = g[i][j]
            for k in range(j):
                u = (d[k + 1] * u - lam[i][k] * lam[j][k]) // d[k]
            if j < i:
                lam[i][j] = u
            else:
                if u == 0:
                    raise DependentColumns(f"column {i} is dependent on earlier columns")
                d[i + 1] = u

    def size_reduce(k: int, j: int) -> None:
        dj = d[j + 1]
        lkj = lam[k][j]
        if 2 * lkj > dj or 2 * lkj < -dj:
            gamma = _round_nearest(lkj, dj)
            ck = cols[k]
            cj = cols[j]
            for t in range(len(ck)):
                ck[t] -= gamma * cj[t]
            lk = lam[k]
            lj = lam[j]
            for i in range(j):
                lk[i] -= gamma * lj[i]
            lk[j] -= gamma * dj

    k = 1
    while k < n:
        size_reduce(k, k - 1)
        lkk = lam[k][k - 1]
        # Exchange when ||b*_k + mu b*_{k-1}||^2 < alpha ||b*_{k-1}||^2.
        if q * (d[k + 1] * d[k - 1] + lkk * lkk) < p * d[k] * d[k]:
            cols[k - 1], cols[k] = cols[k], cols[k - 1]
            lk = lam[k]
            lk1 = lam[k - 1]
            for j in range(k - 1):
                lk[j], lk1[j] = lk1[j], lk[j]
            dnew = (d[k + 1] * d[k - 1] + lkk * lkk) // d[k]
            for i in range(k + 1, n):
                li = lam[i]
                t = li[k]
                li[k] = (d[k + 1] * li[k - 1] - lkk * t) // d[k]
                li[k - 1] = (dnew * t + lkk * li[k]) // d[k + 1]
            d[k] = dnew
            if k > 1:
                k -= 1
        else:
            for h in range(k - 2, -1, -1):
                size_reduce(k, h)
            k += 1
    return cols
