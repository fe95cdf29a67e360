import random
from fractions import Fraction

import pytest

from tau_forge.ncalg import NCPoly, TimesPoly, funq_sl2
from tau_forge.qhirota import (
    commutative_sl2,
    eq_half_residual,
    expand_hierarchy,
    hierarchy_eq_residual,
    lm_residual,
    q_derivative,
    q_shift,
    q_taylor,
    q_taylor_reconstruct,
    spin_half_suite,
    spin_half_tau,
    verify_eq_half,
    verify_lm,
)
from tau_forge.qscalar import ONE, Q, QScalar, qs

HALF = Fraction(1, 2)


def tp(vars, name, **kw):
    return TimesPoly.var(vars, name, **kw)


def test_q_derivative_square():
    vars = ("x",)
    x = tp(vars, "x")
    assert q_derivative(x * x, "x", 1) == x.scale(ONE + Q)


def test_q_derivative_keeps_words():
    pres = funq_sl2()
    vars = ("x",)
    p = NCPoly.generator(pres, "c", vars).mul_times(tp(vars, "x"))
    d = q_derivative(p, "x", -2)
    assert d == NCPoly.generator(pres, "c", vars)


def test_q_derivative_constant():
    vars = ("x",)
    assert q_derivative(TimesPoly.const(vars, Q + ONE), "x", 3).is_zero()


def test_q_derivative_leibniz():
    # D(fg) = D(f) g(qx) + f D(g), randomized over polynomials, base q
    rng = random.Random(3)
    vars = ("x",)
    for _ in range(25):
        f = TimesPoly(vars, {(rng.randint(0, 4),): qs(rng.randint(-4, 4) or 1) for _ in range(2)})
        g = TimesPoly(vars, {(rng.randint(0, 4),): qs(rng.randint(-4, 4) or 1) for _ in range(2)})
        lhs = q_derivative(f * g, "x", 1)
        rhs = q_derivative(f, "x", 1) * q_shift(g, "x", 1) + f * q_derivative(g, "x", 1)
        assert lhs == rhs


def test_q_derivative_classical_limit():
    rng = random.Random(4)
    vars = ("x",)
    for _ in range(20):
        f = TimesPoly(vars, {(rng.randint(0, 5),): qs(rng.randint(-5, 5) or 2) for _ in range(3)})
        qd = q_derivative(f, "x", -2).map_coefficients(
            lambda c: QScalar.from_rational(c.eval_q1())
        )
        cd = f.derivative("x").map_coefficients(
            lambda c: QScalar.from_rational(c.eval_q1())
        )
        assert qd == cd


def test_q_taylor_linear():
    vars = ("x", "a")
    p = tp(vars, "x")
    c = q_taylor(p, "x", "a", 0, 1, 1)
    assert c[0] == tp(vars, "a")
    assert c[1] == TimesPoly.one(vars)


def test_q_taylor_quadratic_reconstruction():
    vars = ("x", "a")
    p = tp(vars, "x") * tp(vars, "x")
    coeffs = q_taylor(p, "x", "a", 0, 1, 2)
    assert coeffs[2] == TimesPoly.one(vars)
    assert coeffs[1] == tp(vars, "a").scale(ONE + Q)
    assert coeffs[0] == tp(vars, "a") * tp(vars, "a")
    rec = q_taylor_reconstruct(coeffs, "x", "a", 0, 1, vars)
    assert rec == p


def test_q_taylor_reconstruction_randomized_degree6():
    rng = random.Random(5)
    vars = ("x", "a")
    for _ in range(10):
        p = TimesPoly(
            vars,
            {(rng.randint(0, 6), 0): qs(rng.randint(-6, 6) or 1) for _ in range(4)},
        )
        for base in (1, -2):
            for alpha in (0, 1, -1):
                coeffs = q_taylor(p, "x", "a", alpha, base, 6)
                rec = q_taylor_reconstruct(coeffs, "x", "a", alpha, base, vars)
                assert rec == p


def test_q_taylor_on_tau_half():
    tau = spin_half_tau()
    coeffs = q_taylor(tau, "x", "u", 0, -2, 2)
    nonzero = [c for c in coeffs if not c.is_zero()]
    assert len(nonzero) == 2   # affine in x: two nonzero coefficients


def test_eq_half_residual_zero():
    assert eq_half_residual().is_zero()
    assert verify_eq_half().verdict


@pytest.mark.parametrize(
    "j,jp",
    [
        (HALF, HALF),
        (1, HALF),
        (HALF, 1),
        (1, 1),
        (Fraction(3, 2), 1),
        (Fraction(3, 2), Fraction(3, 2)),
        (2, 1),
        (2, 2),
    ],
)
def test_lm_grid(j, jp):
    assert verify_lm(j, jp).verdict


def test_lm_rejects_spin_zero():
    with pytest.raises(ValueError):
        verify_lm(0, HALF)


def test_expand_hierarchy_zero_on_residual():
    coeffs = expand_hierarchy(HALF, HALF, 1, -1, 3, 3)
    assert all(c.value.is_zero() for c in coeffs)
    assert len(coeffs) == 16


def test_expand_hierarchy_sides_match():
    L = expand_hierarchy(HALF, HALF, 1, -1, 2, 2, side="lhs")
    R = expand_hierarchy(HALF, HALF, 1, -1, 2, 2, side="rhs")
    assert any(not a.value.is_zero() for a in L)
    for a, b in zip(L, R):
        assert (a.value - b.value).is_zero()


def test_expand_hierarchy_reconstructs_lhs():
    poly = lm_residual(HALF, HALF, side="lhs")
    kmax = 3
    cks = q_taylor(poly, "y", "x", 1, -2, kmax)
    rec = q_taylor_reconstruct(cks, "y", "x", 1, -2, poly.vars)
    assert (rec - poly).is_zero()


def test_spin_half_equations():
    for n in (1, 2, 3):
        assert hierarchy_eq_residual(n).is_zero(), f"equation {n}"


def test_spin_half_eq2_rhs_is_one():
    # the bilinear combination itself equals 1 before subtracting
    pres = funq_sl2()
    res = hierarchy_eq_residual(2)
    combo = res + NCPoly.one(pres, ("u", "x"))
    assert combo == NCPoly.one(pres, ("u", "x"))


def test_classical_limit_unit_solution():
    # tau = 1 + u x (a = d = 1, b = c = 0): the classical combination is 1
    pres = commutative_sl2()
    vars = ("u", "x")
    tau = NCPoly.one(pres, vars) + NCPoly.from_times(
        pres, TimesPoly.var(vars, "u") * TimesPoly.var(vars, "x")
    )
    dx = q_derivative(tau, "x", -2)
    du_shift = q_derivative(q_shift(q_shift(tau, "u", -1), "x", 1), "u", -2)
    dxu = q_derivative(du_shift, "x", -2)
    combo = tau.mul(dxu) - dx.mul(du_shift)
    at_q1 = combo.map_coefficients(lambda c: QScalar.from_rational(c.eval_q1()))
    assert at_q1 == NCPoly.one(pres, vars)


def test_spin_half_suite_passes():
    rep = spin_half_suite()
    assert rep.verdict, rep.details
