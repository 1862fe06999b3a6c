import math

import numpy as np
import pytest

from zmc import paraholo as ph
from zmc.errors import DomainViolation, NonInvertible, NullConeArgument, PathDependent
from zmc.paracomplex import NullPair, ParaComplex, from_null
from zmc.paraholo import J, RegionSpec, z


def close(a, b, tol=1e-12):
    a, b = ParaComplex.coerce(a), ParaComplex.coerce(b)
    return abs(a.re - b.re) <= tol * (1 + abs(b.re)) and abs(a.im - b.im) <= tol * (1 + abs(b.im))


def test_eval_examples():
    assert close((z ** 2)(ParaComplex(1, 1)), ParaComplex(2, 2))
    assert close((1 / (z ** 4 - 1))(0), ParaComplex(-1))
    assert close(ph.log((z + 1) / (z - 1))(3), ParaComplex(math.log(2)))


def test_eval_reports_failing_subexpression():
    with pytest.raises(NonInvertible) as info:
        (1 / (z - 1))(ParaComplex(2, 1))
    assert "sub(z, 1)" in str(info.value)
    with pytest.raises(NullConeArgument):
        ph.log(z)(ParaComplex(1, 1))


def test_deriv_examples():
    assert close(ph.deriv(z ** 3)(ParaComplex(1, 1)), ParaComplex(6, 6))
    assert close(ph.deriv(ph.arctan(z))(0), ParaComplex(1))
    assert close(ph.deriv(ph.log(z ** 2 + 1))(1), ParaComplex(1))


def test_deriv_is_an_expression():
    d = ph.deriv(ph.exp(ph.sin(z)) * ph.cosh(z))
    assert isinstance(d, ph.ParaExpr)
    assert isinstance(ph.deriv(d), ph.ParaExpr)


def test_serialization_round_trip():
    e = 1 / (z ** 4 - 1)
    assert ph.dumps(e) == "div(1, sub(pow(z, 4), 1))"
    exprs = [e, ph.arctan(z) * J - 2.5, ph.compose(ph.exp(z), z ** 2 + ph.const(1, -2)),
             ph.log((z + 1) / (z - 1)), -ph.sinh(z) + ph.cos(z)]
    rng = np.random.default_rng(3)
    pts = ParaComplex(rng.uniform(0.2, 0.7, 20), rng.uniform(-0.1, 0.1, 20))
    for ex in exprs:
        back = ph.parse(ph.dumps(ex))
        assert ph.dumps(back) == ph.dumps(ex)
        a, b = ex(pts), back(pts)
        assert np.allclose(a.re, b.re) and np.allclose(a.im, b.im)


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        ph.parse("add(z")
    with pytest.raises(ValueError):
        ph.parse("frob(z)")


def test_cr_residual_examples():
    assert ph.cr_residual(z ** 2, ParaComplex(0.3, -1.2), 1e-5) <= 1e-9
    assert ph.cr_residual(ph.exp(z), ParaComplex(1, 2), 1e-5) <= 1e-7


class _Conjugate(ph.ParaExpr):
    """X = u, Y = -v: not para-holomorphic."""

    def _eval(self, w, strict):
        return w.conj()

    def deriv(self):
        raise NotImplementedError


def test_cr_residual_detects_non_holomorphic_map():
    assert ph.cr_residual(_Conjugate(), ParaComplex(0.4, 0.1), 1e-5) == pytest.approx(2, abs=1e-6)


def test_cr_stencil_leaving_domain():
    with pytest.raises(DomainViolation):
        # the v - h stencil point is z = 1 exactly
        ph.cr_residual(1 / (z - 1), ParaComplex(1, 1e-5), 1e-5)


def test_region_membership_and_margin():
    r = RegionSpec((-2, 2, -2, 2), ((z - 1, 1),), margin=0.05)
    assert r.contains(ParaComplex(0, 0))
    assert not r.contains(ParaComplex(1.5, 0.7))       # norm2(z-1) < 0
    assert not r.contains(ParaComplex(1.02, 0))        # inside the margin
    assert not r.contains(ParaComplex(3, 0))           # outside the rectangle
    Z, mask = r.grid(20)
    assert Z.shape == (20, 20) and mask.shape == (20, 20)
    s = r.sample(50, rng=0)
    assert np.all(r.contains(s))


def test_null_split_examples():
    rect = RegionSpec((-1, 1, -1, 1))
    ns = ph.null_split(z, rect)
    assert ns.f_plus(0.7) == pytest.approx(0.7) and ns.f_minus(-0.2) == pytest.approx(-0.2)
    ns = ph.null_split(ph.exp(z), rect)
    assert ns.f_plus(0.3) == pytest.approx(math.exp(0.3))
    assert ns.f_minus(-0.4) == pytest.approx(math.exp(-0.4))
    assert ph.null_split(z ** 2, rect).f_plus(3) == pytest.approx(9)


def test_null_split_reconstructs():
    rect = RegionSpec((-1, 1, -1, 1), anchor=ParaComplex(0.2, 0.1))
    e = ph.arctan(z) * ph.exp(z) + z ** 3
    ns = ph.null_split(e, rect)
    rng = np.random.default_rng(0)
    pts = ParaComplex(rng.uniform(-1, 1, 200), rng.uniform(-1, 1, 200))
    a, b = ns.reconstruct(pts), e(pts)
    assert np.max(np.abs(a.re - b.re)) < 1e-10 and np.max(np.abs(a.im - b.im)) < 1e-10


def test_line_integral_examples():
    z1 = ParaComplex(0.4, -1.3)
    assert close(ph.line_integral(ph.ONE, 0, z1), z1)
    assert close(ph.line_integral(2 * z, 0, ParaComplex(1, 1)), ParaComplex(2, 2))
    assert close(ph.line_integral(1 / (z ** 2 + 1), 0, 1), ParaComplex(math.pi / 4))


def test_line_integral_paths_agree():
    e = ph.exp(z) * ph.arctan(z)
    z1 = ParaComplex(0.8, 0.5)
    a = ph.line_integral(e, 0, z1)
    b = ph.line_integral(e, 0, z1, path="null")
    c = ph.line_integral(e, 0, z1, path=[ParaComplex(0.8, 0)])
    assert close(a, b, 1e-10) and close(a, c, 1e-10)
    ph.line_integral(e, 0, z1, check=True)


def test_line_integral_vectorized():
    z1 = ParaComplex(np.linspace(-0.5, 0.5, 7), 0.2)
    vals = ph.line_integral(3 * z ** 2, 0, z1)
    ref = z1 ** 3
    assert np.allclose(vals.re, ref.re) and np.allclose(vals.im, ref.im)


def test_line_integral_domain_errors():
    with pytest.raises(DomainViolation):
        ph.line_integral(1 / (z - 1), 0, ParaComplex(2, 0))
    region = RegionSpec((-0.5, 0.5, -0.5, 0.5))
    with pytest.raises(DomainViolation):
        ph.line_integral(z, 0, ParaComplex(0.9, 0), region=region)


def test_path_check_detects_non_holomorphic_integrand():
    # conj(z) dz is not closed, so the straight and null paths disagree
    with pytest.raises(PathDependent):
        ph.line_integral(_Conjugate(), 0, ParaComplex(1.0, 0.5), check=True)


def test_antiderivative_table():
    cases = [
        z ** 3 - 2 * z + 5,
        1 / (z + 1),
        1 / (z - 1),
        2 * z / (z ** 2 + 1),
        2 * z / (z ** 2 - 1),
        1 / (z ** 2 + 1),
        -1 / z ** 2 + 1,
        -2 / z,
        0.5 * (1 / (z + 1) - 1 / (z - 1)),
    ]
    rng = np.random.default_rng(1)
    pts = from_null(NullPair(rng.uniform(0.2, 0.8, 50), rng.uniform(-0.8, -0.2, 50)))
    for e in cases:
        prim = ph.antiderivative(e)
        gap = ph.deriv_residual(prim, pts, de=e)
        assert np.max(gap) < 1e-6, ph.dumps(e)


def test_antiderivative_refuses_unknown_forms():
    with pytest.raises(ph.NoClosedForm):
        ph.antiderivative(ph.exp(z ** 2))
