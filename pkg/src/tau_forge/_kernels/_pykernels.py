"""Pure-Python integer-polynomial kernels.

These are the innermost loops of every exact computation in the package:
ordinary polynomials in q with arbitrary-precision integer coefficients,
represented as ``{exponent: coefficient}`` dicts with nonnegative exponents
and no zero values.  The compiled twin in ``_ckernels.pyx`` implements the
identical surface; either backend must produce bit-identical dicts.
"""

from math import gcd

BACKEND = "pure"


def ipoly_trim(a):
    """Drop zero coefficients in place and return the dict."""
    dead = [e for e, c in a.items() if c == 0]
    for e in dead:
        del a[e]
    return a


def ipoly_add(a, b):
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, 0) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def ipoly_lin(a, ka, b, kb):
    """ka*a + kb*b."""
    out = {}
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


def ipoly_scale(a, k):
    if k == 0:
        return {}
    return {e: c * k for e, c in a.items()}


def ipoly_shift(a, s):
    if s == 0:
        return dict(a)
    return {e + s: c for e, c in a.items()}


def ipoly_mul(a, b):
    if not a or not b:
        return {}
    # dense convolution over the occupied exponent span; polys in q are
    # near-dense in practice, so this beats dict-of-dict accumulation
    amin = min(a)
    amax = max(a)
    bmin = min(b)
    bmax = max(b)
    da = amax - amin
    db = bmax - bmin
    va = [0] * (da + 1)
    for e, c in a.items():
        va[e - amin] = c
    vb = [0] * (db + 1)
    for e, c in b.items():
        vb[e - bmin] = c
    vo = [0] * (da + db + 1)
    for i, ca in enumerate(va):
        if ca:
            for j, cb in enumerate(vb):
                if cb:
                    vo[i + j] += ca * cb
    base = amin + bmin
    return {base + i: c for i, c in enumerate(vo) if c}


def ipoly_content(a):
    g = 0
    for c in a.values():
        g = gcd(g, c)
        if g == 1:
            return 1
    return g


def ipoly_divexact(a, b):
    """Exact division a // b; raises ValueError if the division has a remainder."""
    if not b:
        raise ValueError("division by zero polynomial")
    if not a:
        return {}
    r = dict(a)
    db = max(b)
    lb = b[db]
    out = {}
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


def _primitive(a):
    c = ipoly_content(a)
    if max(a) not in a:  # unreachable; keeps symmetry with compiled twin
        raise AssertionError
    if a[max(a)] < 0:
        c = -c
    if c != 1:
        a = {e: v // c for e, v in a.items()}
    return a


def ipoly_gcd(a, b):
    """Primitive gcd in Z[q] with positive leading coefficient.

    Primitive pseudo-remainder sequence; inputs need not be primitive.
    """
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


def ipoly_prem(a, b):
    """Pseudo-remainder of a by b (b nonzero, deg a >= deg b not required)."""
    db = max(b)
    lb = b[db]
    r = dict(a)
    while r and max(r) >= db:
        dr = max(r)
        lr = r[dr]
        shift = dr - db
        # r <- lb*r - lr*q^shift*b
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


def tup_add(e1, e2):
    return tuple(x + y for x, y in zip(e1, e2))
