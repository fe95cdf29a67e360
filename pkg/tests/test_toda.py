import random
from fractions import Fraction

import pytest

from tau_forge.ncalg import TimesPoly
from tau_forge.qscalar import ONE, qs
from tau_forge.toda import TodaInstance, toda_tau, toda_tau_all, verify_toda_bilinear


def test_worked_instance():
    theta = Fraction(3, 2)
    inst = TodaInstance.from_rows([[1, 0], [theta, 1]])
    vars = ("x", "u")
    t1 = toda_tau(inst, 1)
    # 1 + x(theta + u), computed by hand from the 2x2 product
    want = TimesPoly(vars, {(0, 0): ONE, (1, 0): qs(theta), (1, 1): ONE})
    assert t1 == want
    assert toda_tau(inst, 2) == TimesPoly.one(vars)
    assert toda_tau(inst, 0) == TimesPoly.one(vars)


def test_k_out_of_range():
    inst = TodaInstance.from_rows([[1, 0], [0, 1]])
    with pytest.raises(ValueError):
        toda_tau(inst, 3)


def test_singular_rejected():
    with pytest.raises(ValueError):
        TodaInstance.from_rows([[1, 1], [1, 1]])


def test_degree_bounds_and_top_tau():
    rng = random.Random(2)
    inst = TodaInstance.random(rng, 4)
    n = inst.size - 1
    taus = toda_tau_all(inst)
    for k, t in enumerate(taus):
        # the k x k minor of exp(x I_1) g exp(u I_-1) picks up at most
        # degree (n - i) from row/column i, so sum_{i<k} (n - i) in each time
        bound = k * (2 * n - k + 1) // 2
        for mono in t.terms:
            assert mono[0] <= bound and mono[1] <= bound
    # tau_{n+1} = det(g), constant in the times
    top = taus[-1]
    assert list(top.terms) == [(0, 0)]
    assert top.constant_term() == qs(inst.det_g())


@pytest.mark.parametrize("size", [2, 3, 4, 5])
def test_bilinear_random(size):
    rng = random.Random(size)
    inst = TodaInstance.random(rng, size)
    assert verify_toda_bilinear(inst).verdict


def test_bilinear_identity_g():
    inst = TodaInstance.from_rows(
        [[1 if i == j else 0 for j in range(4)] for i in range(4)]
    )
    assert verify_toda_bilinear(inst).verdict


def test_full_times_exploration():
    inst = TodaInstance.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    t2 = toda_tau(inst, 2, times="full")
    # coefficient of x1 u1 in the 2x2 minor of exp(H) exp(H')
    assert t2.coefficient((1, 0, 1, 0)) == ONE
    assert t2.coefficient((0, 1, 0, 1)) == ONE


def test_json_loader():
    inst = TodaInstance.from_json('{"size": 2, "g": [["1", "0"], ["3/2", "1"]]}')
    assert inst.g[1][0] == Fraction(3, 2)
    with pytest.raises(ValueError):
        TodaInstance.from_json('{"size": 3, "g": [["1"]]}')
