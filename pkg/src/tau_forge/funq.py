"""Matrix elements of the quantized SL2 function algebra, two ways.

The spin-j matrix of coordinate functions T^(j) is produced on two routes:

* ``abstract`` - over the :func:`~tau_forge.ncalg.funq_sl2` presentation,
  by embedding V_j into the 2j-fold tensor power of V_{1/2} and contracting
  products of the fundamental entries a, b, c, d (first tensor factor's
  element leftmost throughout).
* ``gauss`` - over the :func:`~tau_forge.ncalg.gauss_param` parameter algebra,
  as the factorized group-like element
  exp_{q^-2}((q-q^-1) e ox s) . Q-diagonal . exp_{q^2}(-(q-q^-1) f ox sbar)
  evaluated in the spin-j representation, the diagonal being Q^{2(j-r)}.

Entry (m, r) of the public matrix contracts with the f-side flow on m and the
e-side flow on r, so that the spin-1/2 matrix reads [[a, b], [c, d]] while

    tau_j(u, x) = <top| exp_{q^2}(u e) . exp_{q^-2}(x f) |top>

expands to a + b u + c x + d u x for j = 1/2.  Under the weight grading
deg a = (1,1), deg b = (1,-1), deg c = (-1,1), deg d = (-1,-1) the entry
(m, r) is homogeneous of degree (2(j-m), 2(j-r)).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg as la
from .ncalg import (
    FROZEN_GAUSS_CONVENTION,
    GAUSS_CONVENTIONS,
    NCPoly,
    Presentation,
    funq_sl2,
    gauss_param,
    normal_form,
)
from .qscalar import ONE, Q, QINV, ZERO, q_number
from .report import Stopwatch, VerificationReport
from .uqsl2 import make_rep, q_exp_nilpotent, twice

SCALAR_PRESENTATION = Presentation("scalar", (), {})


class EmbeddingError(RuntimeError):
    """A tensor embedding/projection solve failed; convention mismatch."""


# ---------------------------------------------------------------------------
# iterated coproducts and tensor embeddings
# ---------------------------------------------------------------------------


def _iterated(reps, x):
    """Matrix of the (n-1)-fold coproduct of generator x on reps[0] ox ... ."""
    mats = []
    n = len(reps)
    for a in range(n):
        if x == "e":
            legs = [r.Kinv for r in reps[:a]] + [reps[a].E] + [la.identity(r.dim) for r in reps[a + 1 :]]
        elif x == "f":
            legs = [la.identity(r.dim) for r in reps[:a]] + [reps[a].F] + [r.K for r in reps[a + 1 :]]
        else:
            raise ValueError(x)
        mats.append(_kron_chain(legs))
    out = mats[0]
    for m in mats[1:]:
        out = la.mat_add(out, m)
    return out


def _iterated_k(reps, inverse=False):
    legs = [(r.Kinv if inverse else r.K) for r in reps]
    return _kron_chain(legs)


def _kron_chain(mats):
    out = mats[0]
    for m in mats[1:]:
        out = la.kron(out, m)
    return out


_EMBED_CACHE = {}


def embed_chain(factor_spins):
    """Embedding/projection pair between V_J (J = sum of factors) and the
    ordered tensor product of the factor representations.

    iota sends the highest weight vector to the product of highest weight
    vectors and intertwines the iterated coproduct action; pi intertwines the
    other way with pi . iota = identity.  The top spin J occurs exactly once
    in the tensor product, which pins pi down.
    """
    key = tuple(twice(j) for j in factor_spins)
    cached = _EMBED_CACHE.get(key)
    if cached is not None:
        return cached
    reps = [make_rep(Fraction(tj, 2)) for tj in key]
    two_J = sum(key)
    target = make_rep(Fraction(two_J, 2))
    dim_T = 1
    for r in reps:
        dim_T *= r.dim
    dF = _iterated(reps, "f")
    # iota column r = (Delta F)^r applied to the tensor highest weight vector
    vec = [ONE] + [ZERO] * (dim_T - 1)
    cols = [vec]
    for _ in range(two_J):
        vec = [sum((dF[i][t] * vec[t] for t in range(dim_T) if not vec[t].is_zero()), ZERO) for i in range(dim_T)]
        cols.append(vec)
    iota = [[cols[r][i] for r in range(two_J + 1)] for i in range(dim_T)]

    # pi: intertwiner with pi . iota = identity, solved exactly
    dE = _iterated(reps, "e")
    dK = _iterated_k(reps)
    dim_t = target.dim
    nunk = dim_t * dim_T
    rows = []
    rhs = []

    def unk(i, t):
        return i * dim_T + t

    for X_big, X_tgt in ((dE, target.E), (dF, target.F), (dK, target.K)):
        for i in range(dim_t):
            for t in range(dim_T):
                row = [ZERO] * nunk
                # (pi X_big - X_tgt pi)[i][t]
                for u in range(dim_T):
                    if not X_big[u][t].is_zero():
                        row[unk(i, u)] = row[unk(i, u)] + X_big[u][t]
                for u in range(dim_t):
                    if not X_tgt[i][u].is_zero():
                        row[unk(u, t)] = row[unk(u, t)] - X_tgt[i][u]
                if any(not v.is_zero() for v in row):
                    rows.append(row)
                    rhs.append(ZERO)
    for i in range(dim_t):
        for r in range(dim_t):
            row = [ZERO] * nunk
            for t in range(dim_T):
                if not iota[t][r].is_zero():
                    row[unk(i, t)] = iota[t][r]
            rows.append(row)
            rhs.append(ONE if i == r else ZERO)
    try:
        sol = la.solve_exact(rows, rhs)
    except ValueError as exc:
        raise EmbeddingError(f"projection solve failed for factors {factor_spins}: {exc}") from exc
    pi = [[sol[unk(i, t)] for t in range(dim_T)] for i in range(dim_t)]
    _EMBED_CACHE[key] = (iota, pi)
    return iota, pi


def tensor_embedding(j):
    """Embedding of V_j into the 2j-fold tensor power of V_{1/2}."""
    two_j = twice(j)
    if two_j < 1:
        raise ValueError("need j >= 1/2")
    return embed_chain([Fraction(1, 2)] * two_j)


# ---------------------------------------------------------------------------
# T-matrices
# ---------------------------------------------------------------------------

_TSEM_CACHE = {}

# semantic (bra-row) letters of the fundamental matrix: entry (bra m, ket r)
_FUND_LETTERS = (("a", "c"), ("b", "d"))


def _nc_gen(name, vars=()):
    return NCPoly.generator(funq_sl2(), name, vars)


def _semantic_abstract(two_j, vars=()):
    """Semantic spin-j matrix over the abstract presentation: entry (m, r)
    pairs bra index m with ket index r."""
    pres = funq_sl2()
    if two_j == 0:
        return [[NCPoly.one(pres, vars)]]
    if two_j == 1:
        return [
            [_nc_gen("a", vars), _nc_gen("c", vars)],
            [_nc_gen("b", vars), _nc_gen("d", vars)],
        ]
    iota, pi = tensor_embedding(Fraction(two_j, 2))
    n = two_j
    dim = two_j + 1
    dim_T = 1 << n
    out = [[NCPoly.zero(pres, vars) for _ in range(dim)] for _ in range(dim)]
    words = {}
    for m in range(dim):
        for r in range(dim):
            acc = {}
            for I in range(dim_T):
                pm = pi[m][I]
                if pm.is_zero():
                    continue
                for R in range(dim_T):
                    c = pm * iota[R][r]
                    if c.is_zero():
                        continue
                    word = tuple(
                        _FUND_LETTERS[(I >> (n - 1 - s)) & 1][(R >> (n - 1 - s)) & 1]
                        for s in range(n)
                    )
                    acc[word] = acc.get(word, ZERO) + c
            poly = normal_form(
                [(w, c) for w, c in acc.items() if not c.is_zero()], pres, vars
            )
            out[m][r] = poly
    return out


def _semantic_gauss(two_j, convention=None, vars=()):
    convention = convention or FROZEN_GAUSS_CONVENTION
    pres = gauss_param(convention)
    rep = make_rep(Fraction(two_j, 2))
    dim = rep.dim
    lam = Q - QINV

    def nilpotent_qexp(mat, letter, coeff, base):
        """sum_n coeff^n (mat^n ox letter^n) / (n)_{q^base}!, terminating."""
        out = [[NCPoly.from_scalar(pres, ONE if i == j_ else ZERO, vars) for j_ in range(dim)] for i in range(dim)]
        power = la.identity(dim)
        cpow = ONE
        for nn in range(1, dim):
            power = la.mat_mul(power, mat)
            cpow = cpow * coeff
            if la.mat_is_zero(power):
                break
            fact = q_number("paren_factorial", nn, base).inv()
            for i in range(dim):
                for j_ in range(dim):
                    c = power[i][j_] * cpow * fact
                    if not c.is_zero():
                        out[i][j_] = out[i][j_] + NCPoly.word(pres, (letter,) * nn, vars, coeff=c)
        return out

    R = nilpotent_qexp(rep.E, "s", lam, -2)
    Rbar = nilpotent_qexp(rep.F, "sbar", -lam, 2)
    K = [[NCPoly.zero(pres, vars) for _ in range(dim)] for _ in range(dim)]
    for r in range(dim):
        k = two_j - 2 * r
        word = ("Q",) * k if k >= 0 else ("Qinv",) * (-k)
        K[r][r] = NCPoly.word(pres, word, vars)
    return _nc_mat_mul(_nc_mat_mul(R, K), Rbar)


def _nc_mat_mul(A, B):
    n, k, m = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        for j_ in range(m):
            acc = None
            for t in range(k):
                term = A[i][t].mul(B[t][j_])
                acc = term if acc is None else acc + term
            row.append(acc)
        out.append(row)
    return out


def _semantic_t(two_j, route="abstract", convention=None, vars=()):
    key = (two_j, route, convention, tuple(vars))
    cached = _TSEM_CACHE.get(key)
    if cached is None:
        if route == "abstract":
            cached = _semantic_abstract(two_j, vars)
        elif route == "gauss":
            cached = _semantic_gauss(two_j, convention, vars)
        else:
            raise ValueError(f"unknown route {route!r}")
        _TSEM_CACHE[key] = cached
    return cached


def t_matrix(j, route="abstract", convention=None):
    """Public spin-j matrix of coordinate functions (see module docstring
    for the index convention); spin 1/2 on the abstract route is exactly
    [[a, b], [c, d]]."""
    two_j = twice(j)
    sem = _semantic_t(two_j, route, convention)
    return [list(col) for col in zip(*sem)]


@dataclass(frozen=True)
class GaussModel:
    """Spin-1/2 coordinate images in the parameter algebra."""

    convention: str
    a: NCPoly
    b: NCPoly
    c: NCPoly
    d: NCPoly

    @classmethod
    def build(cls, convention=None):
        convention = convention or FROZEN_GAUSS_CONVENTION
        M = t_matrix(Fraction(1, 2), "gauss", convention)
        return cls(convention=convention, a=M[0][0], b=M[0][1], c=M[1][0], d=M[1][1])


# ---------------------------------------------------------------------------
# tau as an element of the function algebra
# ---------------------------------------------------------------------------


def tau_q(j, e_var, f_var, vars=None, route="abstract", convention=None):
    """tau_j with the e-side flow in slot 1 and the f-side flow in slot 2:

        tau_j(u, x) = sum_{m,r} [exp_{q^2}(u E)]_{0m} T~_{mr} [exp_{q^-2}(x F)]_{r0}

    over the semantic (bra-row) matrix T~; for j = 1/2 this is
    a + b u + c x + d u x.  tau_0 = 1.
    """
    if e_var == f_var:
        raise ValueError("e_var and f_var must differ")
    two_j = twice(j)
    vars = tuple(vars) if vars is not None else (e_var, f_var)
    pres_poly = _semantic_t(two_j, route, convention, vars=())
    rep = make_rep(Fraction(two_j, 2))
    erow = q_exp_nilpotent(rep.E, e_var, 2, vars)[0]
    fexp = q_exp_nilpotent(rep.F, f_var, -2, vars)
    fcol = [fexp[i][0] for i in range(rep.dim)]
    pres = pres_poly[0][0].pres
    acc = NCPoly.zero(pres, vars)
    for m in range(rep.dim):
        em = erow[m]
        if em.is_zero():
            continue
        for r in range(rep.dim):
            tp = em * fcol[r]
            if tp.is_zero():
                continue
            entry = pres_poly[m][r]
            if entry.is_zero():
                continue
            lifted = {}
            for w, t in entry.terms.items():
                scaled = tp.scale(t.constant_term())
                if not scaled.is_zero():
                    lifted[w] = scaled
            acc = acc + NCPoly(pres, vars, lifted)
    return acc


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

_F_RELATIONS = (
    ("ab=q^-1 ba", lambda A, B, C, D: A.mul(B) - B.mul(A).scale(QINV)),
    ("ac=q^-1 ca", lambda A, B, C, D: A.mul(C) - C.mul(A).scale(QINV)),
    ("bd=q^-1 db", lambda A, B, C, D: B.mul(D) - D.mul(B).scale(QINV)),
    ("cd=q^-1 dc", lambda A, B, C, D: C.mul(D) - D.mul(C).scale(QINV)),
    ("bc=cb", lambda A, B, C, D: B.mul(C) - C.mul(B)),
    ("ad-q^-1 bc=1", lambda A, B, C, D: A.mul(D) - B.mul(C).scale(QINV) - NCPoly.one(A.pres, A.vars)),
    ("da-q bc=1", lambda A, B, C, D: D.mul(A) - B.mul(C).scale(Q) - NCPoly.one(A.pres, A.vars)),
)


def gauss_relation_residuals(convention):
    g = GaussModel.build(convention)
    out = {}
    for name, fn in _F_RELATIONS:
        out[name] = fn(g.a, g.b, g.c, g.d)
    return out


def counit_map(vars=()):
    """Generator images under a -> 1, b -> 0, c -> 0, d -> 1."""
    one = NCPoly.one(SCALAR_PRESENTATION, vars)
    zero = NCPoly.zero(SCALAR_PRESENTATION, vars)
    return {"a": one, "d": one, "b": zero, "c": zero}


def verify_funq(route, j=None, jp=None, convention=None):
    """Named checks on the function-algebra constructions.

    * ``gauss_relations`` - the defining relations hold for the factorized
      group-like entries on exactly one convention toggle (the frozen one).
    * ``corep`` - the spin-(j+jp) block of the ordered entry products of
      T^(j) and T^(jp) equals T^(j+jp) (group-like/corepresentation law).
    * ``dual_route`` - substituting the gauss spin-1/2 entries into the
      abstract T^(j) reproduces the gauss T^(j).
    """
    with Stopwatch() as sw:
        if route == "gauss_relations":
            details = []
            ok_frozen = True
            other_fails = False
            for conv in GAUSS_CONVENTIONS:
                residuals = gauss_relation_residuals(conv)
                bad = [name for name, r in residuals.items() if not r.is_zero()]
                if conv == FROZEN_GAUSS_CONVENTION:
                    ok_frozen = not bad
                    details.extend(f"[{conv}] residual {name} != 0" for name in bad)
                else:
                    other_fails = bool(bad)
                    if not bad:
                        details.append(f"[{conv}] unexpectedly also satisfies all relations")
            verdict = ok_frozen and other_fails
            return VerificationReport(
                check_id="funq.gauss-relations",
                verdict=verdict,
                residual="" if verdict else "; ".join(details),
                params={"frozen": FROZEN_GAUSS_CONVENTION},
                anchor="defining relations of quantized SL2 in the parameter model",
                ms=sw.ms,
                details=details,
            )
        if route == "corep":
            two_j, two_jp = twice(j), twice(jp)
            res = corep_residual(two_j, two_jp)
            bad = [(m, r) for m in range(len(res)) for r in range(len(res)) if not res[m][r].is_zero()]
            return VerificationReport(
                check_id="funq.corep",
                verdict=not bad,
                residual="" if not bad else f"nonzero entries at {bad[:6]}",
                params={"j": Fraction(two_j, 2), "jp": Fraction(two_jp, 2)},
                anchor="group-like property of the coordinate matrix",
                ms=sw.ms,
            )
        if route == "dual_route":
            two_j = twice(j)
            res = dual_route_residuals(two_j, convention)
            bad = [(m, r) for m in range(len(res)) for r in range(len(res)) if not res[m][r].is_zero()]
            return VerificationReport(
                check_id="funq.dual-route",
                verdict=not bad,
                residual="" if not bad else f"nonzero entries at {bad[:6]}",
                params={"j": Fraction(two_j, 2)},
                anchor="abstract vs factorized coordinate matrices",
                ms=sw.ms,
            )
    raise ValueError(f"unknown verify_funq route {route!r}")


def corep_residual(two_j, two_jp):
    """Semantic residual of the corepresentation law for the pair (j, j')."""
    semA = _semantic_t(two_j)
    semB = _semantic_t(two_jp)
    if two_j == 0:
        return _nc_mat_sub(semB, _semantic_t(two_jp))
    if two_jp == 0:
        return _nc_mat_sub(semA, _semantic_t(two_j))
    iota, pi = embed_chain([Fraction(two_j, 2), Fraction(two_jp, 2)])
    dimA = two_j + 1
    dimB = two_jp + 1
    dim = two_j + two_jp + 1
    pres = funq_sl2()
    out = [[NCPoly.zero(pres) for _ in range(dim)] for _ in range(dim)]
    for m in range(dim):
        for r in range(dim):
            acc = NCPoly.zero(pres)
            for b1 in range(dimA):
                for b2 in range(dimB):
                    pm = pi[m][b1 * dimB + b2]
                    if pm.is_zero():
                        continue
                    for k1 in range(dimA):
                        for k2 in range(dimB):
                            c = pm * iota[k1 * dimB + k2][r]
                            if c.is_zero():
                                continue
                            acc = acc + semA[b1][k1].mul(semB[b2][k2]).scale(c)
            out[m][r] = acc
    return _nc_mat_sub(out, _semantic_t(two_j + two_jp))


def _nc_mat_sub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def dual_route_residuals(two_j, convention=None):
    """Entrywise difference between the generator-substituted abstract matrix
    and the factorized gauss matrix at spin j."""
    convention = convention or FROZEN_GAUSS_CONVENTION
    gm = GaussModel.build(convention)
    images = {"a": gm.a, "b": gm.b, "c": gm.c, "d": gm.d}
    A = t_matrix(Fraction(two_j, 2), "abstract")
    G = t_matrix(Fraction(two_j, 2), "gauss", convention)
    out = []
    for ra, rg in zip(A, G):
        row = []
        for x, g in zip(ra, rg):
            row.append(x.apply_generator_map(images) - g)
        out.append(row)
    return out


# ---------------------------------------------------------------------------
# gradings
# ---------------------------------------------------------------------------

_GEN_DEGREE = {"a": (1, 1), "b": (1, -1), "c": (-1, 1), "d": (-1, -1)}


def entry_grading_ok(j, m, r, poly):
    """Entry (m, r) of the public matrix must be homogeneous of degree
    (2(j-m), 2(j-r)) under the generator weight grading."""
    two_j = twice(j)
    want = (two_j - 2 * m, two_j - 2 * r)
    for w in poly.terms:
        d0 = sum(_GEN_DEGREE[g][0] for g in w)
        d1 = sum(_GEN_DEGREE[g][1] for g in w)
        if (d0, d1) != want:
            return False
    return True
