"""Pure-Python integer kernels.

Every routine takes integer matrices as sequences of rows and returns Python
ints, so results are exact for any magnitude.  ``_ckernels`` implements the
same functions for machine-size integers.
"""

from math import gcd


def _primitive_row(row):
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return row
    if g > 1:
        return [x // g for x in row]
    return row


def int_rank(rows):
    """Rank of an integer matrix by fraction-free elimination."""
    a = [list(r) for r in rows if any(r)]
    if not a:
        return 0
    m, n = len(a), len(a[0])
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        pr = a[r]
        pc = pr[c]
        for i in range(r + 1, m):
            x = a[i][c]
            if x:
                a[i] = _primitive_row([pc * u - x * v for u, v in zip(a[i], pr)])
        r += 1
        if r == m:
            break
    return r


def int_det(rows):
    """Determinant of a square integer matrix (Bareiss)."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            p = next((i for i in range(k + 1, n) if a[i][k]), None)
            if p is None:
                return 0
            a[k], a[p] = a[p], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def int_normal(rows):
    """Integer vector orthogonal to the d-1 rows of a (d-1) x d matrix.

    Generalized cross product via signed maximal minors; zero when the rows
    are dependent.
    """
    n = len(rows[0])
    out = []
    for j in range(n):
        minor = [[r[k] for k in range(n) if k != j] for r in rows]
        d = int_det(minor)
        out.append(d if j % 2 == 0 else -d)
    return out


def int_dots(rows, x):
    """Dot product of every row with ``x``."""
    return [sum(a * b for a, b in zip(r, x)) for r in rows]
