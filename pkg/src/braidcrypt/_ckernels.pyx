# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_kernels_py``.

Same signatures, same results; factors are packed into one C buffer while a
normal form is being built.
"""

from libc.stdlib cimport malloc, free, realloc


cdef tuple _pack(int *p, int n):
    return tuple([p[i] for i in range(n)])


cdef inline void _load(object seq, int *dst, int n):
    cdef int i
    for i in range(n):
        dst[i] = seq[i]


def inverse(p):
    cdef int n = len(p)
    cdef list inv = [0] * n
    cdef int i
    for i in range(n):
        inv[<int>p[i]] = i
    return tuple(inv)


def compose(p, q):
    """Permutation of the braid ``p`` followed by ``q``."""
    return tuple([q[x] for x in p])


def tau(p):
    cdef int m = len(p) - 1
    return tuple([m - <int>p[m - i] for i in range(m + 1)])


cdef bint _slide(int *u, int *v, int *uinv, int n) nogil:
    """In-place left-weighting of u*v; returns whether anything moved."""
    cdef int i = 0, a, b, t
    cdef bint moved = False
    for i in range(n):
        uinv[u[i]] = i
    i = 0
    while i < n - 1:
        if uinv[i] < uinv[i + 1] and v[i] > v[i + 1]:
            a = uinv[i]
            b = uinv[i + 1]
            u[a] = i + 1
            u[b] = i
            uinv[i] = b
            uinv[i + 1] = a
            t = v[i]
            v[i] = v[i + 1]
            v[i + 1] = t
            moved = True
            if i > 0:
                i -= 1
        else:
            i += 1
    return moved


def slide(u, v):
    cdef int n = len(u)
    cdef int *buf = <int *> malloc(3 * n * sizeof(int))
    try:
        _load(u, buf, n)
        _load(v, buf + n, n)
        _slide(buf, buf + n, buf + 2 * n, n)
        return _pack(buf, n), _pack(buf + n, n)
    finally:
        free(buf)


def meet(a, b):
    cdef int n = len(a)
    cdef int *buf = <int *> malloc(4 * n * sizeof(int))
    cdef int *aa = buf
    cdef int *bb = buf + n
    cdef int *r = buf + 2 * n
    cdef int *rinv = buf + 3 * n
    cdef int i, t, x, y
    try:
        _load(a, aa, n)
        _load(b, bb, n)
        for i in range(n):
            r[i] = i
            rinv[i] = i
        i = 0
        while i < n - 1:
            if aa[i] > aa[i + 1] and bb[i] > bb[i + 1]:
                t = aa[i]; aa[i] = aa[i + 1]; aa[i + 1] = t
                t = bb[i]; bb[i] = bb[i + 1]; bb[i + 1] = t
                x = rinv[i]
                y = rinv[i + 1]
                r[x] = i + 1
                r[y] = i
                rinv[i] = y
                rinv[i + 1] = x
                if i > 0:
                    i -= 1
            else:
                i += 1
        return _pack(r, n)
    finally:
        free(buf)


cdef inline bint _is_ident(int *p, int n) nogil:
    cdef int i
    for i in range(n):
        if p[i] != i:
            return False
    return True


cdef inline bint _is_top(int *p, int n) nogil:
    cdef int i
    for i in range(n):
        if p[i] != n - 1 - i:
            return False
    return True


cdef class _FactorStack:
    cdef int n
    cdef int count
    cdef int cap
    cdef int *data
    cdef int *scratch

    def __cinit__(self, int n, int cap):
        self.n = n
        self.count = 0
        self.cap = cap if cap > 4 else 4
        self.data = <int *> malloc(self.cap * n * sizeof(int))
        self.scratch = <int *> malloc(n * sizeof(int))

    def __dealloc__(self):
        free(self.data)
        free(self.scratch)

    cdef int *push(self):
        if self.count == self.cap:
            self.cap *= 2
            self.data = <int *> realloc(self.data, self.cap * self.n * sizeof(int))
        self.count += 1
        return self.data + (self.count - 1) * self.n

    cdef void settle(self):
        """Comb the freshly pushed factor backwards."""
        cdef int j = self.count - 2
        cdef int n = self.n
        while j >= 0:
            if not _slide(self.data + j * n, self.data + (j + 1) * n, self.scratch, n):
                break
            j -= 1
        if _is_ident(self.data + (self.count - 1) * n, n):
            self.count -= 1

    cdef tuple result(self):
        cdef int d = 0
        cdef int n = self.n
        while d < self.count and _is_top(self.data + d * n, n):
            d += 1
        return d, tuple([_pack(self.data + k * n, n) for k in range(d, self.count)])


def normalize(factors):
    cdef list fs = list(factors)
    if not fs:
        return 0, ()
    cdef int n = len(fs[0])
    cdef _FactorStack st = _FactorStack(n, len(fs))
    cdef int *slot
    for s in fs:
        slot = st.push()
        _load(s, slot, n)
        if _is_ident(slot, n):
            st.count -= 1
            continue
        st.settle()
    return st.result()


def word_factors(int n, letters):
    cdef int m = n - 1
    cdef int parity = 0
    cdef int x, k, i, a, b
    cdef list ks = []
    cdef list negs = []
    cdef int r = 0
    for x in reversed(letters):
        if x > 0:
            ks.append(x - 1 if parity == 0 else m - x)
            negs.append(False)
        else:
            ks.append(-x - 1 if parity == 0 else m + x)
            negs.append(True)
            parity ^= 1
            r -= 1
    cdef list factors = []
    cdef int *cur = <int *> malloc(2 * n * sizeof(int))
    cdef int *curinv = cur + n
    cdef bint have = False
    cdef int idx
    try:
        for idx in range(len(ks) - 1, -1, -1):
            k = ks[idx]
            if negs[idx]:
                if have:
                    factors.append(_pack(cur, n))
                for i in range(n):
                    cur[i] = m - i
                cur[m - k] = k + 1
                cur[m - k - 1] = k
                for i in range(n):
                    curinv[cur[i]] = i
                have = True
                continue
            if not have:
                for i in range(n):
                    cur[i] = i
                    curinv[i] = i
                have = True
            if curinv[k] < curinv[k + 1]:
                a = curinv[k]
                b = curinv[k + 1]
                cur[a] = k + 1
                cur[b] = k
                curinv[k] = b
                curinv[k + 1] = a
            else:
                factors.append(_pack(cur, n))
                for i in range(n):
                    cur[i] = i
                cur[k] = k + 1
                cur[k + 1] = k
                for i in range(n):
                    curinv[i] = cur[i]
        if have:
            factors.append(_pack(cur, n))
    finally:
        free(cur)
    return r, factors


def left_normal_form(int n, letters):
    r, factors = word_factors(n, letters)
    d, out = normalize(factors)
    return r + d, out


def inversions(p):
    cdef int n = len(p)
    cdef int *buf = <int *> malloc(n * sizeof(int))
    cdef int i, j, count = 0
    try:
        _load(p, buf, n)
        for i in range(n):
            for j in range(i + 1, n):
                if buf[i] > buf[j]:
                    count += 1
        return count
    finally:
        free(buf)
