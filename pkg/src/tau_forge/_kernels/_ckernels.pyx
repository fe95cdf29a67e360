# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled integer-polynomial kernels.

Same function surface and same results as ``_pykernels``; coefficients stay
arbitrary-precision Python ints, the win is C-level loop and list handling
in the convolution / remainder loops.
"""

from math import gcd

BACKEND = "compiled"


def ipoly_trim(dict a):
    dead = [e for e, c in a.items() if c == 0]
    for e in dead:
        del a[e]
    return a


def ipoly_add(dict a, dict b):
    cdef dict out = dict(a)
    for e, c in b.items():
        s = out.get(e, 0) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def ipoly_lin(dict a, ka, dict b, kb):
    cdef dict out = {}
    if ka:
        for e, c in a.items():
            out[e] = ka * c
    if kb:
        for e, c in b.items():
            s = out.get(e, 0) + kb * c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return out


def ipoly_scale(dict a, k):
    if k == 0:
        return {}
    return {e: c * k for e, c in a.items()}


def ipoly_shift(dict a, s):
    if s == 0:
        return dict(a)
    return {e + s: c for e, c in a.items()}


def ipoly_mul(dict a, dict b):
    cdef Py_ssize_t amin, amax, bmin, bmax, da, db, i, j, base
    if not a or not b:
        return {}
    amin = min(a)
    amax = max(a)
    bmin = min(b)
    bmax = max(b)
    da = amax - amin
    db = bmax - bmin
    cdef list va = [0] * (da + 1)
    for e, c in a.items():
        va[e - amin] = c
    cdef list vb = [0] * (db + 1)
    for e, c in b.items():
        vb[e - bmin] = c
    cdef list vo = [0] * (da + db + 1)
    for i in range(da + 1):
        ca = va[i]
        if ca:
            for j in range(db + 1):
                cb = vb[j]
                if cb:
                    vo[i + j] = vo[i + j] + ca * cb
    base = amin + bmin
    cdef dict out = {}
    for i in range(da + db + 1):
        c = vo[i]
        if c:
            out[base + i] = c
    return out


def ipoly_content(dict a):
    g = 0
    for c in a.values():
        g = gcd(g, c)
        if g == 1:
            return 1
    return g


def ipoly_divexact(dict a, dict b):
    cdef Py_ssize_t db, dr, ee
    if not b:
        raise ValueError("division by zero polynomial")
    if not a:
        return {}
    cdef dict r = dict(a)
    db = max(b)
    lb = b[db]
    cdef dict out = {}
    while r:
        dr = max(r)
        if dr < db:
            raise ValueError("inexact polynomial division")
        lr = r[dr]
        q, rem = divmod(lr, lb)
        if rem:
            raise ValueError("inexact polynomial division")
        out[dr - db] = q
        for e, c in b.items():
            ee = e + dr - db
            s = r.get(ee, 0) - q * c
            if s:
                r[ee] = s
            else:
                r.pop(ee, None)
    return out


cdef dict _primitive(dict a):
    c = ipoly_content(a)
    if a[max(a)] < 0:
        c = -c
    if c != 1:
        a = {e: v // c for e, v in a.items()}
    return a


def ipoly_gcd(dict a, dict b):
    if not a:
        return _primitive(dict(b)) if b else {}
    if not b:
        return _primitive(dict(a))
    a = _primitive(dict(a))
    b = _primitive(dict(b))
    if max(a) < max(b):
        a, b = b, a
    while b:
        r = ipoly_prem(a, b)
        a, b = b, (_primitive(r) if r else {})
    return a


def ipoly_prem(dict a, dict b):
    cdef Py_ssize_t db, dr, shift, ee
    db = max(b)
    lb = b[db]
    cdef dict r = dict(a)
    cdef dict nr
    while r and max(r) >= db:
        dr = max(r)
        lr = r[dr]
        shift = dr - db
        nr = {}
        for e, c in r.items():
            nr[e] = lb * c
        for e, c in b.items():
            ee = e + shift
            s = nr.get(ee, 0) - lr * c
            if s:
                nr[ee] = s
            else:
                nr.pop(ee, None)
        r = nr
    return r


def tup_add(tuple e1, tuple e2):
    return tuple(x + y for x, y in zip(e1, e2))
