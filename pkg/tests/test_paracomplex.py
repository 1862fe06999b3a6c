import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zmc import paracomplex as pc
from zmc.errors import DomainViolation, NonInvertible, NullConeArgument
from zmc.paracomplex import Branch, NullPair, ParaComplex, PolarForm

reals = st.floats(-50, 50, allow_nan=False, allow_infinity=False)
small = st.floats(-3, 3, allow_nan=False, allow_infinity=False)
paras = st.builds(ParaComplex, reals, reals)


def close(a, b, tol=1e-12):
    a, b = ParaComplex.coerce(a), ParaComplex.coerce(b)
    return abs(a.re - b.re) <= tol * (1 + abs(b.re)) and abs(a.im - b.im) <= tol * (1 + abs(b.im))


# spot values ---------------------------------------------------------------------
def test_zero_divisors_multiply_to_zero():
    assert ParaComplex(1, 1) * ParaComplex(1, -1) == ParaComplex(0, 0)


def test_product_with_conjugate_is_norm():
    assert ParaComplex(2, 1) * ParaComplex(2, -1) == ParaComplex(3, 0)


def test_division_by_null_number_raises():
    with pytest.raises(NonInvertible):
        pc.arith(ParaComplex(1), ParaComplex(1, 1), "div")


def test_non_strict_division_gives_nan():
    q = pc.divide(ParaComplex([1.0, 1.0]), ParaComplex([1.0, 2.0], [1.0, 0.0]), strict=False)
    assert math.isnan(q.re[0]) and q.re[1] == 0.5


def test_j_squared_is_one():
    assert pc.J * pc.J == ParaComplex(1, 0)


def test_norm_conj_modulus():
    assert pc.norm2(ParaComplex(3, 2)) == 5
    assert pc.conj(ParaComplex(3, 2)) == ParaComplex(3, -2)
    assert pc.modulus(ParaComplex(1, 2)) == pytest.approx(math.sqrt(3))


def test_argh_values():
    assert pc.argh(ParaComplex(math.cosh(1), math.sinh(1))) == pytest.approx(1, abs=1e-15)
    assert pc.argh(ParaComplex(5, 0)) == 0.0
    with pytest.raises(NullConeArgument):
        pc.argh(ParaComplex(2, -2))


def test_polar_decompose_spacelike_branch():
    z = ParaComplex(-math.e ** 2 * math.sinh(3), -math.e ** 2 * math.cosh(3))
    p = pc.polar_decompose(z)
    assert p.sign == -1 and p.branch is Branch.SPACELIKE
    assert p.s == pytest.approx(2, abs=1e-14) and p.t == pytest.approx(3, abs=1e-14)


def test_null_coordinates():
    assert pc.to_null(ParaComplex(2, 1)) == NullPair(3, 1)
    assert pc.from_null(NullPair(0, 0)) == ParaComplex(0, 0)
    w = ParaComplex(1, 1)
    assert pc.to_null(w * w) == NullPair(4, 0)


def test_elementary_lifts():
    assert close(pc.p_exp(ParaComplex(0, 2)), ParaComplex(math.cosh(2), math.sinh(2)))
    z = ParaComplex(math.e * math.cosh(2), math.e * math.sinh(2))
    assert close(pc.p_log(z), ParaComplex(1, 2))
    assert close(pc.p_arctan(ParaComplex(0, 1)), ParaComplex(0, math.pi / 4))
    with pytest.raises(NullConeArgument):
        pc.p_log(ParaComplex(1, -1))


def test_tilde_extend_examples():
    sq = pc.tilde_extend(lambda x: x * x)
    assert close(sq(ParaComplex(1, 1)), ParaComplex(2, 2))
    ash = pc.tilde_extend(np.arcsinh)
    assert close(ash(0.7), ParaComplex(math.asinh(0.7), 0))
    inv = pc.tilde_extend(lambda x: 1 / x, domain=lambda x: x != 0)
    val = inv(ParaComplex(1, 2))
    assert close(val, ParaComplex(-1 / 3, 2 / 3))
    assert close(val, pc.divide(1, ParaComplex(1, 2)))
    with pytest.raises(DomainViolation):
        inv(ParaComplex(1, 1))


def test_arrays_broadcast():
    z = ParaComplex(np.array([1.0, 2.0]), 0.5)
    w = z * z
    assert w.shape == (2,)
    assert close(w[1], ParaComplex(2, 0.5) * ParaComplex(2, 0.5))


def test_iteration_refused():
    with pytest.raises(TypeError):
        list(ParaComplex(1, 2))


def test_complex_is_rejected():
    with pytest.raises(TypeError):
        ParaComplex.coerce(1 + 2j)


# properties ----------------------------------------------------------------------
@settings(max_examples=300, deadline=None)
@given(paras, paras, paras)
def test_ring_laws(a, b, c):
    scale = 1 + pc.euclid2(a) * pc.euclid2(b) * (1 + pc.euclid2(c))
    for lhs, rhs in (((a * b) * c, a * (b * c)), (a * (b + c), a * b + a * c), (a * b, b * a)):
        assert abs(lhs.re - rhs.re) <= 1e-12 * scale
        assert abs(lhs.im - rhs.im) <= 1e-12 * scale


@settings(max_examples=300, deadline=None)
@given(paras, paras)
def test_norm_is_multiplicative(z, w):
    gap = abs(pc.norm2(z * w) - pc.norm2(z) * pc.norm2(w))
    mod4 = lambda q: pc.euclid2(q) ** 2
    assert gap <= 1e-10 * (1 + mod4(z) + mod4(w))


@settings(max_examples=300, deadline=None)
@given(paras, paras)
def test_division_inverts_multiplication(a, b):
    if pc.on_null_cone(b, 1e-6) or pc.euclid2(b) < 1e-6:
        return
    q = (a * b) / b
    assert close(q, a, 1e-6)


@settings(max_examples=300, deadline=None)
@given(paras, paras)
def test_null_coordinates_are_multiplicative(z, w):
    p, q, r = pc.to_null(z), pc.to_null(w), pc.to_null(z * w)
    assert r.plus == pytest.approx(p.plus * q.plus, rel=1e-12, abs=1e-9)
    assert r.minus == pytest.approx(p.minus * q.minus, rel=1e-12, abs=1e-9)
    back = pc.from_null(pc.to_null(z))
    ulp = 4 * np.finfo(float).eps * max(abs(z.re), abs(z.im))
    assert abs(back.re - z.re) <= ulp and abs(back.im - z.im) <= ulp


@settings(max_examples=300, deadline=None)
@given(small, small, st.sampled_from([1, -1]), st.sampled_from(list(Branch)))
def test_polar_round_trip(s, t, sign, branch):
    z = pc.polar_compose(PolarForm(sign, s, t, branch))
    assert abs(pc.norm2(z)) > 1e-9
    back = pc.polar_decompose(z)
    assert back.sign == sign and back.branch is branch
    assert close(pc.polar_compose(back), z, 1e-12)


@settings(max_examples=300, deadline=None)
@given(small, small)
def test_log_inverts_exp(u, v):
    assert close(pc.p_log(pc.p_exp(ParaComplex(u, v))), ParaComplex(u, v), 1e-12)


@settings(max_examples=300, deadline=None)
@given(st.floats(0.01, 20), st.floats(-3, 3))
def test_exp_inverts_log_in_right_cone(r, t):
    z = pc.polar_compose(PolarForm(1, math.log(r), t, Branch.TIMELIKE))
    assert close(pc.p_exp(pc.p_log(z)), z, 1e-11)


def test_exp_log_fails_off_the_right_cone():
    z = ParaComplex(-2, 0.5)
    assert not close(pc.p_exp(pc.p_log(z)), z, 1e-6)


@settings(max_examples=200, deadline=None)
@given(small, small)
def test_lift_functoriality_on_rationals(u, v):
    f = lambda x: (x * x + 1) / (x * x + 2)
    g = lambda x: 3 * x - 1 / (1 + x * x)
    z = ParaComplex(u, v)
    lhs = pc.tilde_extend(lambda x: f(g(x)))(z)
    rhs = pc.tilde_extend(f)(pc.tilde_extend(g)(z))
    assert close(lhs, rhs, 1e-12)


def test_log_exp_grid():
    u, v = np.meshgrid(np.linspace(-3, 3, 100), np.linspace(-3, 3, 100))
    back = pc.p_log(pc.p_exp(ParaComplex(u, v)))
    assert max(np.max(np.abs(back.re - u)), np.max(np.abs(back.im - v))) <= 1e-10


def test_cosh_argh_identities():
    rng = np.random.default_rng(7)
    z = ParaComplex(rng.uniform(-5, 5, 2000), rng.uniform(-5, 5, 2000))
    z = z[~pc.on_null_cone(z, 1e-6)]
    m = np.sqrt(np.abs(pc.norm2(z)))
    t = pc.argh(z)
    pos = pc.norm2(z) > 0
    big = np.where(pos, np.abs(z.re), np.abs(z.im))
    assert np.allclose(np.cosh(t), big / m, rtol=1e-10, atol=0)
