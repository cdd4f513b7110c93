# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled integer kernels (64-bit, overflow-checked).

Same contracts as ``_pykernels``.  Any intermediate that would leave the
int64 range raises OverflowError; the dispatcher then reruns the call with
the arbitrary-precision version.
"""

from libc.stdlib cimport malloc, free

ctypedef long long i64

cdef extern from *:
    """
    static inline int p_mul(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int p_sub(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    static inline int p_add(long long a, long long b, long long *r) {
        return __builtin_add_overflow(a, b, r);
    }
    """
    int p_mul(i64 a, i64 b, i64 *r) nogil
    int p_sub(i64 a, i64 b, i64 *r) nogil
    int p_add(i64 a, i64 b, i64 *r) nogil


cdef inline i64 _gcd(i64 a, i64 b) nogil:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


cdef i64* _load(rows, Py_ssize_t *m, Py_ssize_t *n) except NULL:
    cdef Py_ssize_t i, j
    rows = [r for r in rows]
    m[0] = len(rows)
    n[0] = len(rows[0]) if m[0] else 0
    cdef i64 *a = <i64*> malloc(max(1, m[0] * n[0]) * sizeof(i64))
    if a == NULL:
        raise MemoryError()
    try:
        for i in range(m[0]):
            r = rows[i]
            if len(r) != n[0]:
                raise ValueError("ragged matrix")
            for j in range(n[0]):
                a[i * n[0] + j] = r[j]
    except BaseException:
        free(a)
        raise
    return a


cdef int _rank(i64 *a, Py_ssize_t m, Py_ssize_t n) nogil:
    """Returns the rank, or -1 on overflow."""
    cdef Py_ssize_t r = 0, c, i, j, p
    cdef i64 pc, x, t1, t2, g
    for c in range(n):
        if r == m:
            break
        p = -1
        for i in range(r, m):
            if a[i * n + c] != 0:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            for j in range(n):
                a[r * n + j], a[p * n + j] = a[p * n + j], a[r * n + j]
        pc = a[r * n + c]
        for i in range(r + 1, m):
            x = a[i * n + c]
            if x == 0:
                continue
            g = 0
            for j in range(n):
                if p_mul(pc, a[i * n + j], &t1) or p_mul(x, a[r * n + j], &t2) or p_sub(t1, t2, &t1):
                    return -1
                a[i * n + j] = t1
                g = _gcd(g, t1)
            if g > 1:
                for j in range(n):
                    a[i * n + j] //= g
        r += 1
    return r


def int_rank(rows):
    cdef Py_ssize_t m, n
    if not rows:
        return 0
    cdef i64 *a = _load(rows, &m, &n)
    cdef int r
    with nogil:
        r = _rank(a, m, n)
    free(a)
    if r < 0:
        raise OverflowError("int64 overflow in rank")
    return r


cdef int _det(i64 *a, Py_ssize_t n, i64 *out) nogil:
    """Bareiss determinant into out; returns 1 on overflow."""
    cdef Py_ssize_t k, i, j, p
    cdef i64 sign = 1, prev = 1, akk, aik, t1, t2
    if n == 0:
        out[0] = 1
        return 0
    for k in range(n - 1):
        if a[k * n + k] == 0:
            p = -1
            for i in range(k + 1, n):
                if a[i * n + k] != 0:
                    p = i
                    break
            if p < 0:
                out[0] = 0
                return 0
            for j in range(n):
                a[k * n + j], a[p * n + j] = a[p * n + j], a[k * n + j]
            sign = -sign
        akk = a[k * n + k]
        for i in range(k + 1, n):
            aik = a[i * n + k]
            for j in range(k + 1, n):
                if p_mul(a[i * n + j], akk, &t1) or p_mul(aik, a[k * n + j], &t2) or p_sub(t1, t2, &t1):
                    return 1
                a[i * n + j] = t1 // prev
        prev = akk
    out[0] = sign * a[n * n - 1]
    return 0


def int_det(rows):
    cdef Py_ssize_t m, n
    if not rows:
        return 1
    cdef i64 *a = _load(rows, &m, &n)
    cdef i64 d
    cdef int bad
    if m != n:
        free(a)
        raise ValueError("determinant of a non-square matrix")
    with nogil:
        bad = _det(a, n, &d)
    free(a)
    if bad:
        raise OverflowError("int64 overflow in determinant")
    return d


def int_normal(rows):
    cdef Py_ssize_t m, n, j, i, k, col
    cdef i64 *a = _load(rows, &m, &n)
    cdef i64 *minor = <i64*> malloc(max(1, m * m) * sizeof(i64))
    cdef i64 d
    out = []
    try:
        for j in range(n):
            for i in range(m):
                col = 0
                for k in range(n):
                    if k != j:
                        minor[i * m + col] = a[i * n + k]
                        col += 1
            if _det(minor, m, &d):
                raise OverflowError("int64 overflow in normal")
            out.append(d if j % 2 == 0 else -d)
    finally:
        free(a)
        free(minor)
    return out


def int_dots(rows, x):
    cdef Py_ssize_t m, n, i, j
    cdef i64 *a = _load(rows, &m, &n)
    cdef i64 *v = <i64*> malloc(max(1, n) * sizeof(i64))
    cdef i64 s, t
    out = []
    try:
        for j in range(n):
            v[j] = x[j]
        for i in range(m):
            s = 0
            for j in range(n):
                if p_mul(a[i * n + j], v[j], &t) or p_add(s, t, &s):
                    raise OverflowError("int64 overflow in dot product")
            out.append(s)
    finally:
        free(a)
        free(v)
    return out
