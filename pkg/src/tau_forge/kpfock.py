"""Charged free-fermion Fock space on a finite mode window, exactly.

States are tuples of occupied modes (ascending) inside the window
[-M, M-1]; everything below the window is permanently occupied and
everything above permanently empty.  A state of charge n occupies M + n
window modes; the charge-n vacuum occupies n-1, n-2, ..., -M.

Every computation runs inside a :class:`FockSpace`, which doubles as a
boundary guard: any occupancy change at a mode within one step of the window
edge raises :class:`BoundaryError`, and the range of modes actually changed
is recorded, so a finished computation carries a certificate that the
window truncation was invisible at the reported degrees.

Time-variable truncation is by weighted degree (x_k carries weight k), the
energy grading of the flows, with independent caps per variable group.
"""

from __future__ import annotations

from bisect import bisect_right, insort
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .ncalg import TimesPoly
from .qscalar import qs
from .report import Stopwatch, VerificationReport


class BoundaryError(RuntimeError):
    """An occupancy change touched the guarded margin of the mode window."""


@dataclass(frozen=True)
class BoundaryCertificate:
    window: int
    min_changed: int
    max_changed: int

    @property
    def ok(self):
        return (-self.window + 1) <= self.min_changed and self.max_changed <= (self.window - 2)

    def __str__(self):
        return (
            f"window [-{self.window},{self.window - 1}], "
            f"changes in [{self.min_changed},{self.max_changed}]"
        )


class FockSpace:
    """Mode window plus the boundary guard for one computation."""

    def __init__(self, window=8):
        if window < 3:
            raise ValueError("window too small")
        self.M = window
        self.min_changed = window
        self.max_changed = -window

    def note_change(self, mode):
        if mode <= -self.M or mode >= self.M - 1:
            raise BoundaryError(f"occupancy change at mode {mode} touches the window edge")
        if mode < self.min_changed:
            self.min_changed = mode
        if mode > self.max_changed:
            self.max_changed = mode

    def in_window(self, mode):
        return -self.M <= mode <= self.M - 1

    def vacuum(self, n):
        if len(range(-self.M, n)) != self.M + n:
            raise ValueError("charge out of window")
        return tuple(range(-self.M, n))

    def charge(self, state):
        return len(state) - self.M

    def certificate(self):
        if self.max_changed < self.min_changed:  # nothing changed
            return BoundaryCertificate(self.M, 0, 0)
        return BoundaryCertificate(self.M, self.min_changed, self.max_changed)

    def state_from_partition(self, n, partition):
        """Occupied modes n - i + lambda_i (i = 1, 2, ...) inside the window."""
        parts = list(partition) + [0] * (self.M + n)
        modes = [n - i + parts[i - 1] for i in range(1, self.M + n + 1)]
        if any(not self.in_window(m) for m in modes):
            raise BoundaryError("partition does not fit the window")
        modes = tuple(sorted(modes))
        if len(set(modes)) != len(modes):
            raise ValueError("not a valid partition (repeated mode)")
        return modes

    def partition_of_state(self, state):
        n = self.charge(state)
        desc = sorted(state, reverse=True)
        parts = [m - (n - i) for i, m in enumerate(desc, start=1)]
        while parts and parts[-1] == 0:
            parts.pop()
        return n, tuple(parts)


# FockVector: dict mapping state tuples to TimesPoly coefficients


def vector_single(space, state, vars):
    return {state: TimesPoly.one(vars)}


def _vec_add_term(out, state, coeff):
    s = out.get(state)
    s = coeff if s is None else s + coeff
    if s.is_zero():
        out.pop(state, None)
    else:
        out[state] = s


def apply_fermion(space, kind, mode, vec):
    """Insertion (psi) or removal (psi*) at a mode; sign counts occupied
    modes strictly above the acted mode."""
    if not space.in_window(mode):
        raise BoundaryError(f"mode {mode} outside the window")
    out = {}
    for state, coeff in vec.items():
        pos = bisect_right(state, mode)
        occupied = pos > 0 and state[pos - 1] == mode
        above = len(state) - pos
        sign = -1 if above % 2 else 1
        if kind == "psi":
            if occupied:
                continue
            space.note_change(mode)
            new = list(state)
            insort(new, mode)
            _vec_add_term(out, tuple(new), coeff if sign > 0 else -coeff)
        elif kind == "psi_star":
            if not occupied:
                continue
            space.note_change(mode)
            new = list(state)
            new.remove(mode)
            _vec_add_term(out, tuple(new), coeff if sign > 0 else -coeff)
        else:
            raise ValueError(kind)
    return out


def apply_flow_generator(space, k, vec):
    """The window part of a_k = sum_j psi_j psi*_{j+k} (k > 0 lowers energy,
    k < 0 raises); exact on guard-certified computations."""
    if k == 0:
        raise ValueError("k must be nonzero")
    out = {}
    for state, coeff in vec.items():
        for p in state:
            t = p - k
            if k > 0:
                if t < -space.M:
                    # below the window everything is permanently occupied
                    continue
            else:
                if t > space.M - 1:
                    raise BoundaryError(f"raising flow needs mode {t} outside the window")
            pos_t = bisect_right(state, t)
            if pos_t > 0 and state[pos_t - 1] == t:
                continue
            # remove p, then insert t
            pos_p = bisect_right(state, p)
            sign = -1 if (len(state) - pos_p) % 2 else 1
            removed = list(state)
            removed.remove(p)
            pos_t2 = bisect_right(removed, t)
            if (len(removed) - pos_t2) % 2:
                sign = -sign
            space.note_change(p)
            space.note_change(t)
            insort(removed, t)
            _vec_add_term(out, tuple(removed), coeff if sign > 0 else -coeff)
    return out


# ---------------------------------------------------------------------------
# flows with weighted-degree truncation
# ---------------------------------------------------------------------------


class DegreeCaps:
    """Weighted-degree caps per variable group, with per-monomial weights
    computed once per polynomial in capped products."""

    __slots__ = ("items", "caps", "n")

    def __init__(self, vars, weights, groups, caps):
        self.items = tuple(
            (i, w, g) for i, (w, g) in enumerate(zip(weights, groups)) if w
        )
        self.caps = tuple(caps)
        self.n = len(self.caps)

    def weigh(self, mono):
        t = [0] * self.n
        for i, w, g in self.items:
            e = mono[i]
            if e:
                t[g] += w * e
        return t

    def keep(self, mono):
        t = self.weigh(mono)
        caps = self.caps
        return all(t[g] <= caps[g] for g in range(self.n))


def _keep_fn(vars, weights, groups, caps):
    return DegreeCaps(vars, weights, groups, caps)


def _tp_truncate(tp, keep):
    return TimesPoly(tp.vars, {m: c for m, c in tp.terms.items() if keep(m)})


def _tp_mul_capped(a, b, cap):
    out = {}
    from ._kernels import tup_add

    caps = cap.caps
    n = cap.n
    bw = [(m2, c2, cap.weigh(m2)) for m2, c2 in b.terms.items()]
    for m1, c1 in a.terms.items():
        w1 = cap.weigh(m1)
        for m2, c2, w2 in bw:
            fits = True
            for g in range(n):
                if w1[g] + w2[g] > caps[g]:
                    fits = False
                    break
            if not fits:
                continue
            c = c1 * c2
            if c.is_zero():
                continue
            m = tup_add(m1, m2)
            s = out.get(m)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(m, None)
            else:
                out[m] = s
    return TimesPoly(a.vars, out)


def flow(space, direction, times, vec, keep):
    """Apply exp(sum_k coeff_k a_{+-k}) truncated by the monomial filter.

    ``times`` is a list of (k, TimesPoly coefficient) with k >= 1; direction
    "positive" uses the lowering generators a_k, "negative" the raising a_{-k}.
    """
    sign = 1 if direction == "positive" else -1
    acc = dict(vec)
    term = vec
    m = 1
    while term:
        nxt = {}
        inv_m = qs(Fraction(1, m))
        for k, cpoly in times:
            for state, coeff in term.items():
                # truncate before moving so the boundary guard only ever sees
                # modes reached by terms that survive the degree caps
                c = _tp_mul_capped(coeff, cpoly, keep).scale(inv_m)
                if c.is_zero():
                    continue
                for nstate, ncoeff in apply_flow_generator(space, sign * k, {state: c}).items():
                    _vec_add_term(nxt, nstate, ncoeff)
        term = nxt
        for state, coeff in term.items():
            _vec_add_term(acc, state, coeff)
        m += 1
    return acc


# ---------------------------------------------------------------------------
# group elements
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GroupElementSpec:
    """Ordered product of unipotent factors exp(theta psi_i psi*_j), i != j.

    Each factor is exactly 1 + theta psi_i psi*_j because (psi_i psi*_j)^2 = 0
    whenever i != j, so the action stays polynomial and exact.
    """

    factors: tuple

    @classmethod
    def identity(cls):
        return cls(factors=())

    @classmethod
    def single(cls, theta, i, j):
        return cls(factors=((Fraction(theta), i, j),))

    @classmethod
    def random_unipotent(cls, rng, nfactors=3, mode_span=2):
        factors = []
        for _ in range(nfactors):
            i = rng.randint(-mode_span, mode_span)
            j = rng.randint(-mode_span, mode_span)
            while j == i:
                j = rng.randint(-mode_span, mode_span)
            theta = Fraction(rng.randint(1, 9), rng.randint(1, 9))
            factors.append((theta, i, j))
        return cls(factors=tuple(factors))

    def apply(self, space, vec):
        for theta, i, j in reversed(self.factors):
            if i == j:
                raise ValueError("factors need i != j")
            moved = apply_fermion(space, "psi_star", j, vec)
            moved = apply_fermion(space, "psi", i, moved)
            out = dict(vec)
            th = qs(theta)
            for state, coeff in moved.items():
                _vec_add_term(out, state, coeff.scale(th))
            vec = out
        return vec

    def mode_span(self):
        return max((max(abs(i), abs(j)) for _, i, j in self.factors), default=0)


# ---------------------------------------------------------------------------
# Schur polynomials
# ---------------------------------------------------------------------------


def schur_exponents(j):
    """S_j as {exponent tuple over slots 1..j: Fraction} from the recurrence
    j S_j = sum_k k x_k S_{j-k}."""
    if j < 0:
        return {}
    table = [{(): Fraction(1)}]
    for n in range(1, j + 1):
        cur = {}
        for k in range(1, n + 1):
            for mono, c in table[n - k].items():
                ex = list(mono) + [0] * (n - len(mono))
                ex[k - 1] += 1
                ex = tuple(ex)
                cur[ex] = cur.get(ex, Fraction(0)) + Fraction(k, n) * c
        table.append({m: c for m, c in cur.items() if c})
    return table[j]


def schur_poly(j, vars, names, slot_scale=Fraction(1)):
    """S_j(slot_scale * t) as a TimesPoly, with slot k mapped to names[k-1]
    (slots beyond the name list are frozen to zero)."""
    if j < 0:
        return TimesPoly.zero(vars)
    out = TimesPoly.zero(vars)
    for mono, c in schur_exponents(j).items():
        if any(e and (k >= len(names)) for k, e in enumerate(mono)):
            continue
        term = TimesPoly.const(vars, qs(c * slot_scale ** sum(mono)))
        for k, e in enumerate(mono):
            if e:
                term = term * TimesPoly.var(vars, names[k], power=e)
        out = out + term
    return out


def schur_diff_apply(j, poly, names, slot_scale=Fraction(-1)):
    """Apply S_j(slot_scale * dtilde) to a TimesPoly, where slot k acts as
    (slot_scale / k) d/d(names[k-1]); names beyond the list act as zero."""
    if j < 0:
        return TimesPoly.zero(poly.vars)
    out = TimesPoly.zero(poly.vars)
    for mono, c in schur_exponents(j).items():
        if any(e and (k >= len(names)) for k, e in enumerate(mono)):
            continue
        term = poly
        scale = Fraction(c)
        for k, e in enumerate(mono):
            for _ in range(e):
                term = term.derivative(names[k])
            if e:
                scale *= (slot_scale / Fraction(k + 1)) ** e
            if term.is_zero():
                break
        if term.is_zero():
            continue
        out = out + term.scale(qs(scale))
    return out


# ---------------------------------------------------------------------------
# tau functions
# ---------------------------------------------------------------------------


def _var_names(prefix, d):
    return [f"{prefix}{k}" for k in range(1, d + 1)]


def matrix_element_vacuum(space, n, vec):
    """<vacuum(n)| vec as a TimesPoly (zero if absent)."""
    key = space.vacuum(n)
    for state, coeff in vec.items():
        if state == key:
            return coeff
    return None


def tau_kp(g, n, deg_x, deg_u=0, window=8, vars=None, x_names=None, u_names=None):
    """tau as the vacuum-to-vacuum matrix element of flows around g.

    One-sided for deg_u = 0; otherwise the two-sided version with raising
    times u_k.  Returns (TimesPoly, BoundaryCertificate); all coefficients of
    monomials within the stated weighted degrees are exact.
    """
    space = FockSpace(window)
    x_names = x_names or _var_names("x", deg_x)
    u_names = u_names or _var_names("u", deg_u)
    if vars is None:
        vars = tuple(x_names + u_names)
    weights = []
    groups = []
    for v in vars:
        if v in x_names:
            weights.append(x_names.index(v) + 1)
            groups.append(0)
        elif v in u_names:
            weights.append(u_names.index(v) + 1)
            groups.append(1)
        else:
            weights.append(0)
            groups.append(0)
    keep = _keep_fn(vars, weights, groups, (deg_x, deg_u))
    _check_window_budget(space, n, deg_x, deg_u, g)
    vec = vector_single(space, space.vacuum(n), vars)
    if deg_u:
        times = [(k, TimesPoly.var(vars, u_names[k - 1])) for k in range(1, deg_u + 1)]
        vec = flow(space, "negative", times, vec, keep)
    vec = g.apply(space, vec)
    if deg_x:
        times = [(k, TimesPoly.var(vars, x_names[k - 1])) for k in range(1, deg_x + 1)]
        vec = flow(space, "positive", times, vec, keep)
    me = matrix_element_vacuum(space, n, vec)
    poly = me if me is not None else TimesPoly.zero(vars)
    return poly, space.certificate()


def _check_window_budget(space, n, deg_x, deg_u, g):
    # raising by total weight deg_u lifts particles to at most n - 1 + deg_u
    # and vacates down to n - deg_u; lowering moves particles into existing
    # holes, so holes only move up; g factors act within their mode span
    span = g.mode_span() if g.factors else 0
    top = max(n - 1 + deg_u, span)
    bottom = min(n - deg_u, -span)
    if top > space.M - 2 or bottom < -space.M + 1:
        raise BoundaryError(
            f"degree/charge budget (top {top}, bottom {bottom}) exceeds the "
            f"guarded window [-{space.M - 1},{space.M - 2}]"
        )


# ---------------------------------------------------------------------------
# Hirota residuals
# ---------------------------------------------------------------------------


def _two_sided_tau(space, g, n, xy_names, uv_names, sx, su, keep, vars):
    """tau_n(x +- y, u +- v): flows with coefficient polynomials x_k + sx y_k
    (positive side) and u_k + su v_k (negative side)."""
    x_names, y_names = xy_names
    u_names, v_names = uv_names
    vec = vector_single(space, space.vacuum(n), vars)
    if u_names:
        times = [
            (
                k,
                TimesPoly.var(vars, u_names[k - 1])
                + TimesPoly.var(vars, v_names[k - 1], coeff=qs(su)),
            )
            for k in range(1, len(u_names) + 1)
        ]
        vec = flow(space, "negative", times, vec, keep)
    vec = g.apply(space, vec)
    times = [
        (
            k,
            TimesPoly.var(vars, x_names[k - 1])
            + TimesPoly.var(vars, y_names[k - 1], coeff=qs(sx)),
        )
        for k in range(1, len(x_names) + 1)
    ]
    vec = flow(space, "positive", times, vec, keep)
    me = matrix_element_vacuum(space, n, vec)
    return me if me is not None else TimesPoly.zero(vars)


def m3_residual(g, degree=6, window=8):
    """The window sum of products of charge +-1 matrix elements that the
    invariance of Omega = sum psi_j ox psi*_j forces to vanish.

    Insertion modes beyond the guarded window are omitted; their terms need
    more energy than ``degree`` supplies, which is only sound while the
    degree stays at least two modes clear of the window edge."""
    if degree > window - 2:
        raise BoundaryError(
            f"degree {degree} needs insertion modes beyond the guarded "
            f"window [-{window - 1},{window - 2}]; increase the window"
        )
    D = degree
    x_names = _var_names("x", D)
    y_names = _var_names("y", D)
    vars = tuple(x_names + y_names)
    weights = [x_names.index(v) + 1 if v in x_names else y_names.index(v) + 1 for v in vars]
    groups = [0 if v in x_names else 1 for v in vars]
    keep_joint = _keep_fn(vars, weights, groups, (D, D))
    space = FockSpace(window)
    _check_window_budget(space, 1, D, 0, g)
    acc = TimesPoly.zero(vars)
    certs = []
    for j in range(-window + 1, window - 1):
        sx = FockSpace(window)
        vec = vector_single(sx, sx.vacuum(0), vars)
        vec = g.apply(sx, vec)
        vec = apply_fermion(sx, "psi", j, vec)
        if not vec:
            continue
        times = [(k, TimesPoly.var(vars, x_names[k - 1])) for k in range(1, D + 1)]
        vec = flow(sx, "positive", times, vec, keep_joint)
        left = matrix_element_vacuum(sx, 1, vec)
        if left is None:
            continue
        sy = FockSpace(window)
        vec = vector_single(sy, sy.vacuum(0), vars)
        vec = g.apply(sy, vec)
        vec = apply_fermion(sy, "psi_star", j, vec)
        if not vec:
            continue
        times = [(k, TimesPoly.var(vars, y_names[k - 1])) for k in range(1, D + 1)]
        vec = flow(sy, "positive", times, vec, keep_joint)
        right = matrix_element_vacuum(sy, -1, vec)
        if right is None:
            continue
        certs.extend([sx.certificate(), sy.certificate()])
        acc = acc + _tp_mul_capped(left, right, keep_joint)
    return acc, certs


def m4_residual(g, degree=6, window=8):
    """Literal transcription of the one-sided Hirota sum:

        sum_{j>=0} S_j(2 y) . S_{j+1}(-dtilde_y) [tau(x+y) tau(x-y)],

    certified exact up to joint weighted degree ``degree`` (internally one
    degree higher so the derivative loss is covered)."""
    D = degree + 1
    x_names = _var_names("x", D)
    y_names = _var_names("y", D)
    vars = tuple(x_names + y_names)
    weights = [
        x_names.index(v) + 1 if v in x_names else y_names.index(v) + 1 for v in vars
    ]
    groups = [0] * len(vars)
    keep = _keep_fn(vars, weights, groups, (D,))
    space_p = FockSpace(window)
    _check_window_budget(space_p, 0, D, 0, g)
    tau_plus = _two_sided_tau(space_p, g, 0, (x_names, y_names), ([], []), 1, 0, keep, vars)
    space_m = FockSpace(window)
    tau_minus = _two_sided_tau(space_m, g, 0, (x_names, y_names), ([], []), -1, 0, keep, vars)
    G = _tp_mul_capped(tau_plus, tau_minus, keep)
    acc = TimesPoly.zero(vars)
    for j in range(0, D + 1):
        dpart = schur_diff_apply(j + 1, G, y_names, Fraction(-1))
        if dpart.is_zero():
            continue
        spart = schur_poly(j, vars, y_names, Fraction(2))
        acc = acc + _tp_mul_capped(spart, dpart, keep)
    keep_cert = _keep_fn(vars, weights, groups, (degree,))
    return _tp_truncate(acc, keep_cert.keep), [space_p.certificate(), space_m.certificate()]


def h6_residual(g, n=0, m=0, degree=4, window=8):
    """Two-sided Hirota residual for charges (n, m): LHS with the y-side
    Schur pair at offset n - m + 1 minus RHS with the v-side pair at the same
    offset and charges (n+1, m-1); certified to ``degree`` per variable group."""
    D = degree + 1
    x_names = _var_names("x", D)
    y_names = _var_names("y", D)
    u_names = _var_names("u", D)
    v_names = _var_names("v", D)
    vars = tuple(x_names + y_names + u_names + v_names)
    weights = []
    groups = []
    for v in vars:
        prefix, idx = v[0], int(v[1:])
        weights.append(idx)
        groups.append(0 if prefix in ("x", "y") else 1)
    keep = _keep_fn(vars, weights, groups, (D, D))
    offset = n - m + 1

    def pair_tau(charge_a, charge_b):
        sp = FockSpace(window)
        _check_window_budget(sp, charge_a, D, D, g)
        ta = _two_sided_tau(sp, g, charge_a, (x_names, y_names), (u_names, v_names), 1, 1, keep, vars)
        sm = FockSpace(window)
        _check_window_budget(sm, charge_b, D, D, g)
        tb = _two_sided_tau(sm, g, charge_b, (x_names, y_names), (u_names, v_names), -1, -1, keep, vars)
        return _tp_mul_capped(ta, tb, keep), [sp.certificate(), sm.certificate()]

    G_lhs, certs1 = pair_tau(n, m)
    G_rhs, certs2 = pair_tau(n + 1, m - 1)
    lhs = TimesPoly.zero(vars)
    for j in range(0, D + 1):
        if j + offset < 0:
            continue
        dpart = schur_diff_apply(j + offset, G_lhs, y_names, Fraction(-1))
        if dpart.is_zero():
            continue
        spart = schur_poly(j, vars, y_names, Fraction(2))
        lhs = lhs + _tp_mul_capped(spart, dpart, keep)
    rhs = TimesPoly.zero(vars)
    for j in range(0, D + 1):
        if j + offset < 0:
            continue
        dpart = schur_diff_apply(j, G_rhs, v_names, Fraction(1))
        if dpart.is_zero():
            continue
        spart = schur_poly(j + offset, vars, v_names, Fraction(-2))
        rhs = rhs + _tp_mul_capped(spart, dpart, keep)
    keep_cert = _keep_fn(vars, weights, groups, (degree, degree))
    return _tp_truncate(lhs - rhs, keep_cert.keep), certs1 + certs2


def cauchy_pair(degree=5, window=8):
    """Two independent routes to the two-sided vacuum tau at g = identity:
    the Fock matrix element and the direct expansion of exp(sum k x_k u_k)."""
    g = GroupElementSpec.identity()
    tau, cert = tau_kp(g, 0, degree, degree, window=window)
    vars = tau.vars
    x_names = _var_names("x", degree)
    u_names = _var_names("u", degree)
    direct = TimesPoly.one(vars)
    for k in range(1, degree + 1):
        block = TimesPoly.zero(vars)
        a = 0
        while k * a <= degree:
            coeff = qs(Fraction(k**a, factorial(a)))
            term = TimesPoly.const(vars, coeff)
            if a:
                term = term * TimesPoly.var(vars, x_names[k - 1], power=a) * TimesPoly.var(
                    vars, u_names[k - 1], power=a
                )
            block = block + term
            a += 1
        weights = [int(v[1:]) for v in vars]
        groups = [0 if v[0] == "x" else 1 for v in vars]
        keep = _keep_fn(vars, weights, groups, (degree, degree))
        direct = _tp_mul_capped(direct, block, keep)
    return tau, direct, cert


# ---------------------------------------------------------------------------
# verification entry point
# ---------------------------------------------------------------------------


def verify_hirota_kp(which, g=None, charges=(0, 0), degree=None, window=8):
    g = g if g is not None else GroupElementSpec.identity()
    with Stopwatch() as sw:
        if which == "M3":
            degree = degree if degree is not None else 6
            res, certs = m3_residual(g, degree, window)
        elif which == "M4":
            degree = degree if degree is not None else 6
            res, certs = m4_residual(g, degree, window)
        elif which == "H6":
            degree = degree if degree is not None else 4
            res, certs = h6_residual(g, charges[0], charges[1], degree, window)
        else:
            raise ValueError(f"unknown check {which!r}")
        ok = res.is_zero()
    report = VerificationReport(
        check_id=f"kp.{which.lower()}",
        verdict=ok,
        residual="" if ok else str(res)[:400],
        params={
            "g": len(g.factors),
            "charges": charges,
            "degree": degree,
            "window": window,
        },
        anchor="free-fermion Hirota relation",
        ms=sw.ms,
        details=[str(c) for c in certs[:4]],
    )
    return report


def export_tau_json(poly):
    """Variable-exponent map -> coefficient strings, for external comparison."""
    import json

    out = {}
    for mono, c in sorted(poly.terms.items()):
        key = "*".join(
            (v if e == 1 else f"{v}^{e}") for v, e in zip(poly.vars, mono) if e
        ) or "1"
        out[key] = str(c)
    return json.dumps(out, sort_keys=True)
