"""Pure-Python hot kernels for permutation braids.

A simple element is stored as a tuple ``p`` of 0-based images: the strand
starting at position ``i`` ends at position ``p[i]``.  Every function here has
a twin with the same signature in ``_ckernels.pyx``.
"""

from __future__ import annotations

Perm = tuple


def inverse(p):
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def compose(p, q):
    """Permutation of the braid ``p`` followed by ``q``."""
    return tuple([q[x] for x in p])


def tau(p):
    """Conjugation by the half twist, i -> n-1-i on both sides."""
    m = len(p) - 1
    return tuple([m - p[m - i] for i in range(m + 1)])


def slide(u, v):
    """Left-weight the product ``u*v`` of two simple elements.

    Crossings are moved from the front of ``v`` to the back of ``u`` while
    ``u`` stays simple.  Returns the new pair.
    """
    n = len(u)
    uu = list(u)
    vv = list(v)
    uinv = [0] * n
    for i in range(n):
        uinv[uu[i]] = i
    i = 0
    while i < n - 1:
        if uinv[i] < uinv[i + 1] and vv[i] > vv[i + 1]:
            a = uinv[i]
            b = uinv[i + 1]
            uu[a] = i + 1
            uu[b] = i
            uinv[i] = b
            uinv[i + 1] = a
            vv[i], vv[i + 1] = vv[i + 1], vv[i]
            if i > 0:
                i -= 1
        else:
            i += 1
    return tuple(uu), tuple(vv)


def meet(a, b):
    """Greatest common prefix of two simple elements."""
    n = len(a)
    aa = list(a)
    bb = list(b)
    r = list(range(n))
    rinv = list(range(n))
    i = 0
    while i < n - 1:
        if aa[i] > aa[i + 1] and bb[i] > bb[i + 1]:
            aa[i], aa[i + 1] = aa[i + 1], aa[i]
            bb[i], bb[i + 1] = bb[i + 1], bb[i]
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
    return tuple(r)


def normalize(factors):
    """Left normal form of a product of simple elements.

    Returns ``(d, out)`` where ``d`` copies of the half twist were pulled to
    the front and ``out`` is the left-weighted tail without identity factors.
    """
    out = []
    top = None
    ident = None
    for s in factors:
        if top is None:
            n = len(s)
            top = tuple(range(n - 1, -1, -1))
            ident = tuple(range(n))
        if s == ident:
            continue
        out.append(s)
        j = len(out) - 2
        while j >= 0:
            a, b = slide(out[j], out[j + 1])
            if a == out[j]:
                break
            out[j] = a
            out[j + 1] = b
            j -= 1
        if out[-1] == ident:
            out.pop()
    d = 0
    while d < len(out) and out[d] == top:
        d += 1
    return d, tuple(out[d:])


def word_factors(n, letters):
    """Rewrite a signed Artin word as ``Delta**r`` times simple factors.

    Each negative letter ``-i`` becomes ``Delta**-1 * X`` with ``X*sigma_i =
    Delta``; every factor is then conjugated by the half twist once per
    negative letter to its right.  Adjacent positive letters are greedily
    merged into simple factors.
    """
    m = n - 1
    parity = 0
    rev = []
    for x in reversed(letters):
        if x > 0:
            rev.append((x - 1 if parity == 0 else m - x, False))
        else:
            rev.append((-x - 1 if parity == 0 else m + x, True))
            parity ^= 1
    r = -sum(1 for x in letters if x < 0)
    factors = []
    cur = None
    curinv = None
    for k, neg in reversed(rev):
        if neg:
            # left complement of sigma_(k+1): reversal then swap of k, k+1
            p = list(range(m, -1, -1))
            p[m - k], p[m - k - 1] = k + 1, k
            if cur is not None:
                factors.append(tuple(cur))
            cur = p
            curinv = [0] * n
            for i in range(n):
                curinv[p[i]] = i
            continue
        if cur is None:
            cur = list(range(n))
            curinv = list(range(n))
        if curinv[k] < curinv[k + 1]:
            a = curinv[k]
            b = curinv[k + 1]
            cur[a] = k + 1
            cur[b] = k
            curinv[k] = b
            curinv[k + 1] = a
        else:
            factors.append(tuple(cur))
            cur = list(range(n))
            cur[k], cur[k + 1] = k + 1, k
            curinv = list(cur)
    if cur is not None:
        factors.append(tuple(cur))
    return r, factors


def left_normal_form(n, letters):
    r, factors = word_factors(n, letters)
    d, out = normalize(factors)
    return r + d, out


def inversions(p):
    """Number of crossings of the simple element ``p``."""
    n = len(p)
    return sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
