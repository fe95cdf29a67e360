from fractions import Fraction

import pytest

from tau_forge import linalg as la
from tau_forge.qscalar import ONE, Q, QINV, ZERO, bracket
from tau_forge.qvertex import (
    solve_vertex_components,
    vacuum_normalization_residuals,
    verify_component_relations,
    verify_qexp_commutation,
)
from tau_forge.uqsl2 import make_rep, q_exp_nilpotent, tp_lift, _tp_mat_mul, _tp_mat_sub

HALF = Fraction(1, 2)
SPINS = [HALF, 1, Fraction(3, 2), 2, Fraction(5, 2)]


def test_components_at_half():
    c = solve_vertex_components(HALF)
    assert c.phi_plus == [[ONE], [ZERO]]
    assert c.phi_minus == [[ZERO], [ONE]]          # f|1/2> with [1]_q = 1
    assert c.psi_plus == [[ZERO], [-Q]]            # -q f|1/2>
    assert c.psi_minus == [[ONE], [ZERO]]


def test_component_at_one():
    c = solve_vertex_components(1)
    # second column entry: coefficient q^{-1}/[2]_q on f|1>
    assert c.phi_minus[1][0] == QINV * bracket(2).inv()


@pytest.mark.parametrize("j", SPINS)
def test_vacuum_normalizations(j):
    res = vacuum_normalization_residuals(j)
    for name, vec in res.items():
        assert all(x.is_zero() for x in vec), name


@pytest.mark.parametrize("j", SPINS)
def test_top_rows_vanish(j):
    c = solve_vertex_components(j)
    assert all(x.is_zero() for x in c.phi_minus[0])
    assert all(x.is_zero() for x in c.psi_plus[0])


@pytest.mark.parametrize("j", [HALF, 1, Fraction(3, 2), 2])
def test_component_relations(j):
    assert verify_component_relations(j).verdict


@pytest.mark.parametrize("j", [HALF, 1, Fraction(3, 2), 2])
def test_qexp_commutation(j):
    assert verify_qexp_commutation(j).verdict


def test_first_commutation_relation_directly():
    # exp_{q^2}(t e) Phi_+ - Phi_+ exp_{q^2}(t e) = 0 at j = 1/2
    comps = solve_vertex_components(HALF)
    src = make_rep(0)
    tgt = make_rep(HALF)
    Et = q_exp_nilpotent(tgt.E, "t", 2)
    Es = q_exp_nilpotent(src.E, "t", 2)
    Ap = tp_lift(comps.phi_plus, ("t",))
    res = _tp_mat_sub(_tp_mat_mul(Et, Ap), _tp_mat_mul(Ap, Es))
    assert all(x.is_zero() for row in res for x in row)


def test_lowering_exp_derivative_identity():
    # exp_{q^-2}(s f) f = D_s^(q^-2) exp_{q^-2}(s f) as matrices
    from tau_forge.qhirota import q_derivative

    for j in (HALF, 1, Fraction(3, 2)):
        rep = make_rep(j)
        M = q_exp_nilpotent(rep.F, "s", -2)
        lhs = _tp_mat_mul(M, tp_lift(rep.F, ("s",)))
        rhs = [[q_derivative(x, "s", -2) for x in row] for row in M]
        assert all(a == b for ra, rb in zip(lhs, rhs) for a, b in zip(ra, rb))
        Me = q_exp_nilpotent(rep.E, "t", 2)
        lhs = _tp_mat_mul(tp_lift(rep.E, ("t",)), Me)
        rhs = [[q_derivative(x, "t", 2) for x in row] for row in Me]
        assert all(a == b for ra, rb in zip(lhs, rhs) for a, b in zip(ra, rb))


@pytest.mark.parametrize("j", SPINS)
def test_denominators_are_bracket_products(j):
    # clearing prod_{m<=2j} [m]_q must leave q-power denominators only
    c = solve_vertex_components(j)
    clear = ONE
    for m in range(1, int(2 * j) + 1):
        clear = clear * bracket(m)
    for M in (c.phi_plus, c.phi_minus, c.psi_plus, c.psi_minus):
        for row in M:
            for x in row:
                y = x * clear
                assert len(y.dc) == 1, f"denominator {y} not a bracket divisor"


def test_intertwining_residuals_zero():
    # rho_j(x) A - A (induced coproduct action) = 0 for the solved components
    from tau_forge.qvertex import _coproduct_pairs, _rep_dict

    for j in SPINS:
        two_j = int(2 * j)
        comps = solve_vertex_components(j)
        src = make_rep(Fraction(two_j - 1, 2))
        tgt = make_rep(j)
        W = make_rep(HALF)
        big = _coproduct_pairs(_rep_dict(src), _rep_dict(W))
        phi = [
            [None] * (2 * src.dim) for _ in range(tgt.dim)
        ]
        for i in range(tgt.dim):
            for r in range(src.dim):
                phi[i][2 * r] = comps.phi_plus[i][r]
                phi[i][2 * r + 1] = comps.phi_minus[i][r]
        for x, tmat in (("e", tgt.E), ("f", tgt.F), ("k", tgt.K)):
            lhs = la.mat_mul(tmat, phi)
            rhs = la.mat_mul(phi, big[x])
            assert la.mat_is_zero(la.mat_sub(lhs, rhs)), (j, x)
