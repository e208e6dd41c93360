# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled polynomial kernels.

Mirrors kernels.pure exactly; see that module for the algorithm notes.
Residues must fit u64 (the dispatcher guarantees p < 2^64); products are
taken through unsigned 128-bit intermediates.
"""

from libc.stdlib cimport malloc, free

cdef extern from *:
    ctypedef unsigned long long u128 "unsigned __int128"

ctypedef unsigned long long u64


cdef inline u64 mulmod(u64 a, u64 b, u64 p):
    return <u64>((<u128>a * b) % p)


cdef inline u64 addmod(u64 a, u64 b, u64 p):
    return <u64>((<u128>a + b) % p)


cdef inline u64 submod(u64 a, u64 b, u64 p):
    return <u64>((<u128>a + (p - b)) % p)


cdef u64 powmod(u64 base, u64 exp, u64 p):
    cdef u64 acc = 1 % p
    base = base % p
    while exp:
        if exp & 1:
            acc = mulmod(acc, base, p)
        base = mulmod(base, base, p)
        exp >>= 1
    return acc


cdef u64* _from_list(object seq, Py_ssize_t n, u64 p) except NULL:
    cdef u64* buf = <u64*>malloc(n * sizeof(u64))
    if buf == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(n):
        buf[i] = <u64>(seq[i] % p)
    return buf


cdef list _to_list(u64* buf, Py_ssize_t n):
    cdef list out = [0] * n
    cdef Py_ssize_t i
    for i in range(n):
        out[i] = buf[i]
    return out


def poly_eval(coeffs, x, p):
    cdef Py_ssize_t n = len(coeffs)
    cdef u64 pp = p, xx = x % p, acc = 0
    cdef Py_ssize_t i
    cdef u64* c = _from_list(coeffs, n, pp)
    try:
        for i in range(n - 1, -1, -1):
            acc = addmod(mulmod(acc, xx, pp), c[i], pp)
    finally:
        free(c)
    return acc


def poly_mul(a, b, p):
    cdef Py_ssize_t na = len(a), nb = len(b)
    if na == 0 or nb == 0:
        return []
    cdef u64 pp = p
    cdef u64* ca = _from_list(a, na, pp)
    cdef u64* cb = _from_list(b, nb, pp)
    cdef u64* out = <u64*>malloc((na + nb - 1) * sizeof(u64))
    if out == NULL:
        free(ca); free(cb)
        raise MemoryError()
    cdef Py_ssize_t i, j
    cdef u64 ai
    try:
        for i in range(na + nb - 1):
            out[i] = 0
        for i in range(na):
            ai = ca[i]
            if ai == 0:
                continue
            for j in range(nb):
                out[i + j] = addmod(out[i + j], mulmod(ai, cb[j], pp), pp)
        return _to_list(out, na + nb - 1)
    finally:
        free(ca); free(cb); free(out)


def poly_divmod(num, den, p):
    cdef Py_ssize_t nn = len(num), nd = len(den)
    if nn < nd:
        return [], list(num)
    cdef u64 pp = p
    cdef u64* rem = _from_list(num, nn, pp)
    cdef u64* d = _from_list(den, nd, pp)
    cdef Py_ssize_t nq = nn - nd + 1
    cdef u64* quot = <u64*>malloc(nq * sizeof(u64))
    if quot == NULL:
        free(rem); free(d)
        raise MemoryError()
    cdef u64 dlead_inv = powmod(d[nd - 1], pp - 2, pp)
    cdef Py_ssize_t shift, i
    cdef u64 factor
    try:
        for shift in range(nq - 1, -1, -1):
            factor = mulmod(rem[shift + nd - 1], dlead_inv, pp)
            quot[shift] = factor
            if factor == 0:
                continue
            for i in range(nd):
                rem[shift + i] = submod(rem[shift + i], mulmod(factor, d[i], pp), pp)
        return _to_list(quot, nq), _to_list(rem, nd - 1)
    finally:
        free(rem); free(d); free(quot)


def zpoly(xs, p):
    cdef Py_ssize_t n = len(xs)
    cdef u64 pp = p
    cdef u64* pts = _from_list(xs, n, pp)
    cdef u64* root = <u64*>malloc((n + 1) * sizeof(u64))
    if root == NULL:
        free(pts)
        raise MemoryError()
    cdef Py_ssize_t k, j
    cdef u64 neg
    try:
        root[0] = 1 % pp
        for k in range(n):
            # shift up by one degree, then fold in the new root
            root[k + 1] = root[k]
            for j in range(k, 0, -1):
                root[j] = root[j - 1]
            root[0] = 0
            neg = (pp - pts[k]) % pp
            for j in range(k + 1):
                root[j] = addmod(root[j], mulmod(neg, root[j + 1], pp), pp)
        return _to_list(root, n + 1)
    finally:
        free(pts); free(root)


def interpolate(xs, ys, p):
    cdef Py_ssize_t n = len(xs)
    if n == 0:
        return []
    cdef u64 pp = p
    cdef u64* px = _from_list(xs, n, pp)
    cdef u64* py = _from_list(ys, n, pp)
    cdef u64* root = NULL
    cdef u64* numer = NULL     # n rows of n coefficients
    cdef u64* denoms = NULL
    cdef u64* prefix = NULL
    cdef u64* out = NULL
    cdef Py_ssize_t i, j
    cdef u64 acc, x, inv, scale
    try:
        root = <u64*>malloc((n + 1) * sizeof(u64))
        numer = <u64*>malloc(n * n * sizeof(u64))
        denoms = <u64*>malloc(n * sizeof(u64))
        prefix = <u64*>malloc(n * sizeof(u64))
        out = <u64*>malloc(n * sizeof(u64))
        if root == NULL or numer == NULL or denoms == NULL or prefix == NULL or out == NULL:
            raise MemoryError()
        # monic root polynomial
        root[0] = 1 % pp
        for i in range(n):
            root[i + 1] = root[i]
            for j in range(i, 0, -1):
                root[j] = root[j - 1]
            root[0] = 0
            x = (pp - px[i]) % pp
            for j in range(i + 1):
                root[j] = addmod(root[j], mulmod(x, root[j + 1], pp), pp)
        # deflate per point and evaluate the denominator
        for i in range(n):
            x = px[i]
            acc = 0
            for j in range(n, 0, -1):
                acc = addmod(root[j], mulmod(acc, x, pp), pp)
                numer[i * n + (j - 1)] = acc
            acc = 0
            for j in range(n - 1, -1, -1):
                acc = addmod(mulmod(acc, x, pp), numer[i * n + j], pp)
            denoms[i] = acc
        # batch inversion
        acc = 1 % pp
        for i in range(n):
            prefix[i] = acc
            acc = mulmod(acc, denoms[i], pp)
        inv = powmod(acc, pp - 2, pp)
        for i in range(n):
            out[i] = 0
        for i in range(n - 1, -1, -1):
            scale = mulmod(py[i], mulmod(prefix[i], inv, pp), pp)
            inv = mulmod(inv, denoms[i], pp)
            if scale == 0:
                continue
            for j in range(n):
                out[j] = addmod(out[j], mulmod(scale, numer[i * n + j], pp), pp)
        return _to_list(out, n)
    finally:
        free(px); free(py)
        if root != NULL: free(root)
        if numer != NULL: free(numer)
        if denoms != NULL: free(denoms)
        if prefix != NULL: free(prefix)
        if out != NULL: free(out)


def interpolate_consecutive(ys, p):
    cdef Py_ssize_t n = len(ys)
    if n == 0:
        return []
    cdef u64 pp = p
    cdef u64* diff = _from_list(ys, n, pp)
    cdef u64* inv = NULL
    cdef u64* out = NULL
    cdef Py_ssize_t k, i, j, size
    cdef u64 ik, node, carry, term
    try:
        inv = <u64*>malloc((n if n > 2 else 2) * sizeof(u64))
        out = <u64*>malloc(n * sizeof(u64))
        if inv == NULL or out == NULL:
            raise MemoryError()
        inv[1] = 1 % pp
        for k in range(2, n):
            inv[k] = mulmod(pp - (pp // <u64>k), inv[pp % <u64>k], pp)
        for k in range(1, n):
            ik = inv[k]
            for i in range(n - 1, k - 1, -1):
                diff[i] = mulmod(submod(diff[i], diff[i - 1], pp), ik, pp)
        for i in range(n):
            out[i] = 0
        out[0] = diff[n - 1]
        size = 1
        for k in range(n - 2, -1, -1):
            node = <u64>(k + 1) % pp
            carry = 0
            for j in range(size):
                term = out[j]
                out[j] = submod(carry, mulmod(node, term, pp), pp)
                carry = term
            out[size] = carry
            size += 1
            out[0] = addmod(out[0], diff[k], pp)
        return _to_list(out, n)
    finally:
        free(diff)
        if inv != NULL: free(inv)
        if out != NULL: free(out)
