from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles as O
from nrs2bench.nrs2 import (
    CubicInput, InputError, IterState, SingularJacobianError,
    aux_f, errfrac_check, jacobian, run, start_state, step,
)

small = st.fractions(min_value=-6, max_value=6, max_denominator=7)


def test_coefficients():
    inp = CubicInput(1, 1, 1)
    assert (inp.a0, inp.a1, inp.a2, inp.a3) == (1, -3, 3, -1)
    inp = CubicInput(1, 2, 3)
    assert (inp.a1, inp.a2, inp.a3) == (-6, 11, -6)


def test_aux_f_examples():
    inp = CubicInput(1, 1, 1)
    assert aux_f((0, 0), inp)[1] == -1
    for y in (F(0), F(5, 3), F(-7)):
        assert aux_f((0, y), inp)[1] == y + inp.a1 / inp.a2
        assert aux_f((0, y), inp)[1] == y - 1 - 0 * y / 3


def test_aux_f_rejects_degenerate_input():
    with pytest.raises(InputError):
        aux_f((0, 0), CubicInput(1, -1, 0))  # a1 = 0
    with pytest.raises(InputError):
        aux_f((0, 0), CubicInput(1, 1, F(-1, 2)))  # a2 = 0
    with pytest.raises(InputError):
        start_state(CubicInput(1, 1, F(-1, 2)))


def test_jacobian_at_origin():
    inp = CubicInput(1, 2, 3)
    (a, b), (c, d) = jacobian((0, 0), inp)
    assert (a, b, c, d) == (1, inp.a0 * inp.a3 / (inp.a1 * inp.a2), 0, 1)
    assert a * d - b * c == 1


def test_jacobian_matches_finite_differences_example():
    inp = CubicInput(1, 2, 3)
    h = F(1, 2**10)
    fd = O.central_difference(lambda x, y: aux_f((x, y), inp), F(1), F(1), h)
    J = jacobian((1, 1), inp)
    for i in range(2):
        for j in range(2):
            assert abs(fd[i][j] - J[i][j]) <= 10 * h * h


@settings(max_examples=100, deadline=None)
@given(small, small, st.sampled_from([(1, 2, 3), (F(1, 2), -3, 5), (2, 2, F(-1, 3)), (-4, 1, 7)]))
def test_jacobian_finite_differences_random(x0, x1, u):
    inp = CubicInput(*u)
    h = F(1, 2**10)
    fd = O.central_difference(lambda x, y: aux_f((x, y), inp), x0, x1, h)
    J = jacobian((x0, x1), inp)
    # the auxiliary functions are quadratic, so the error bound is O(h^2) with room to spare
    for i in range(2):
        for j in range(2):
            assert abs(fd[i][j] - J[i][j]) <= h * h


def test_start_state():
    inp = CubicInput(1, 2, 3)
    s = start_state(inp)
    assert (s.n, s.c0, s.c1) == (0, F(6, 11), F(6, 11))


def test_fixed_point():
    # (-5/6, -3/2) is an exact common zero for u = (-4, -3, -2)
    inp = CubicInput(-4, -3, -2)
    s = IterState(3, F(-5, 6), F(-3, 2))
    assert aux_f(s, inp) == (0, 0)
    assert step(s, inp) == IterState(4, s.c0, s.c1)


@settings(max_examples=50, deadline=None)
@given(small, small)
def test_step_is_newton_update(x0, x1):
    inp = CubicInput(1, 2, 3)
    s = IterState(0, x0, x1)
    (a, b), (c, d) = jacobian(s, inp)
    if a * d - b * c == 0:
        return
    t = step(s, inp)
    f0, f1 = aux_f(s, inp)
    d0, d1 = s.c0 - t.c0, s.c1 - t.c1
    assert (a * d0 + b * d1, c * d0 + d * d1) == (f0, f1)
    assert step(s, inp) == t


def test_singular_jacobian_raises():
    inp = CubicInput(1, 2, 3)
    k = inp.a3 / inp.a2
    b = inp.a0 * inp.a3 / (inp.a1 * inp.a2)
    x0 = F(1)
    x1 = (1 + 2 * x0 * k) * (1 + x0 * k) / (b * k)  # det J = 0
    (p, q), (r, s) = jacobian((x0, x1), inp)
    assert p * s - q * r == 0
    with pytest.raises(SingularJacobianError) as exc:
        step(IterState(2, x0, x1), inp)
    assert exc.value.n == 2 and exc.value.state.c1 == x1


def test_run_lengths():
    assert len(run(CubicInput(1, 2, 3), 3)) == 4


def test_errfrac_base_identity():
    # (u1+u2)/(u1u2) + a1/a2 = err(0,0)/err(0,-1) as an identity
    for u in ((1, 2, 3), (F(1, 3), F(-2, 5), F(7, 2)), (5, -1, 2)):
        rows = errfrac_check(0, CubicInput(*u))
        assert rows[0].ok


def test_errfrac_one_two_three():
    rows = errfrac_check(3, CubicInput(1, 2, 3))
    assert [r.n for r in rows] == [0, 1, 2, 3]
    assert all(r.ok for r in rows)
    assert rows[1].c0 == F(37740, 50171) and rows[1].c1 == F(43350, 50171)


def test_errfrac_repeated_root():
    rows = errfrac_check(3, CubicInput(2, 2, 5))
    assert all(r.ok for r in rows)


def test_errfrac_requires_nonzero_product():
    with pytest.raises(InputError):
        errfrac_check(1, CubicInput(0, 2, 3))
