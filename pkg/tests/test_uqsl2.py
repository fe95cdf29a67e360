from fractions import Fraction

import pytest

from tau_forge import linalg as la
from tau_forge.qscalar import ONE, Q, QINV, ZERO, bracket
from tau_forge.uqsl2 import (
    NonNilpotentError,
    make_rep,
    q_exp_nilpotent,
    rep_relations_residuals,
    tp_lift,
    tp_scale_var,
    twice,
    verify_hopf_matrices,
    _tp_mat_mul,
    _tp_mat_sub,
)

HALF = Fraction(1, 2)


def test_twice():
    assert twice(HALF) == 1
    assert twice(2) == 4
    assert twice(1.5) == 3
    with pytest.raises(ValueError):
        twice(Fraction(1, 3))
    with pytest.raises(ValueError):
        twice(-1)


def test_make_rep_half():
    rep = make_rep(HALF)
    assert rep.E == [[ZERO, ONE], [ZERO, ZERO]]
    assert rep.F == [[ZERO, ZERO], [ONE, ZERO]]
    assert rep.K == [[Q, ZERO], [ZERO, QINV]]


def test_make_rep_spin_one_lowering():
    rep = make_rep(1)
    # E v_1 = [1][2] v_0 = (q + q^-1) v_0
    assert rep.E[0][1] == Q + QINV
    assert rep.F[1][0] == ONE and rep.F[2][1] == ONE


def test_make_rep_trivial():
    rep = make_rep(0)
    assert rep.E == [[ZERO]] and rep.F == [[ZERO]] and rep.K == [[ONE]]


@pytest.mark.parametrize("two_j", range(0, 7))
def test_rep_relations(two_j):
    rep = make_rep(Fraction(two_j, 2))
    for name, res in rep_relations_residuals(rep).items():
        assert la.mat_is_zero(res), name


def test_q_exp_half():
    rep = make_rep(HALF)
    M = q_exp_nilpotent(rep.E, "t", 2)
    assert str(M[0][1]) == "t" and str(M[0][0]) == "1"


def test_q_exp_spin_one_f():
    rep = make_rep(1)
    M = q_exp_nilpotent(rep.F, "s", -2)
    # I + sF + s^2 F^2 / (2)_{q^-2}
    from tau_forge.qscalar import q_number

    coeff = q_number("paren_factorial", 2, -2).inv()
    assert M[2][0].coefficient((2,)) == coeff


def test_q_exp_rejects_non_nilpotent():
    rep = make_rep(HALF)
    with pytest.raises(NonNilpotentError):
        q_exp_nilpotent(rep.K, "t", 2)


def test_q_exp_timespoly_matrix():
    from tau_forge.ncalg import TimesPoly

    vars = ("s", "t")
    z = TimesPoly.zero(vars)
    s = TimesPoly.var(vars, "s")
    A = [[z, s], [z, z]]
    M = q_exp_nilpotent(A, "t", 2)
    assert M[0][1] == s * TimesPoly.var(vars, "t")
    assert str(M[0][0]) == "1" and M[1][0].is_zero()
    # exponentiation variable already present in the matrix is rejected
    with pytest.raises(ValueError):
        q_exp_nilpotent([[z, TimesPoly.var(vars, "t")], [z, z]], "t", 2)
    # non-nilpotent TimesPoly matrix is rejected
    with pytest.raises(NonNilpotentError):
        q_exp_nilpotent([[TimesPoly.one(vars), z], [z, TimesPoly.one(vars)]], "t", 2)


def test_q_exp_at_zero_is_identity():
    rep = make_rep(Fraction(3, 2))
    M = q_exp_nilpotent(rep.E, "t", 2)
    for i in range(rep.dim):
        for j in range(rep.dim):
            val = M[i][j].constant_term()
            assert val == (ONE if i == j else ZERO)


@pytest.mark.parametrize(
    "j,jp", [(HALF, HALF), (1, HALF), (0, 0), (1, 1), (HALF, 1)]
)
def test_hopf_matrices(j, jp):
    assert verify_hopf_matrices(j, jp).verdict


def test_weight_grading_conjugation():
    # K exp_{q^2}(t E) K^-1 = exp_{q^2}(q^2 t E)
    for j in (HALF, 1, Fraction(3, 2)):
        rep = make_rep(j)
        M = q_exp_nilpotent(rep.E, "t", 2)
        lhs = _tp_mat_mul(tp_lift(rep.K, ("t",)), _tp_mat_mul(M, tp_lift(rep.Kinv, ("t",))))
        rhs = tp_scale_var(M, "t", Q * Q)
        assert all(x.is_zero() for row in _tp_mat_sub(lhs, rhs) for x in row)
