from fractions import Fraction

import pytest

from chromalg.errors import (CompositionError, MixedVariablesError,
                             NotInvertible, PreparationFailed)
from chromalg.rings import ModularIntegers, QQ, ZZ
from chromalg.series import (SeriesCtx, SeriesRing, series_div_oracle,
                             weierstrass_prepare)


def uni(ring, prec):
    return SeriesCtx(ring, ("x",), prec)


def test_compose_identity():
    ctx = uni(ZZ, 6)
    x = ctx.gen("x")
    f = x
    g = x + x * x
    assert f.compose({"x": g}) == g


def test_compose_square():
    ctx = uni(ZZ, 5)
    x = ctx.gen("x")
    f = x * x
    arg = x + x ** 3
    out = f.compose({"x": arg})
    assert [out.ucoeff(i) for i in range(5)] == [0, 0, 1, 0, 2]


def test_compose_rejects_constant_term():
    ctx = uni(ZZ, 5)
    x = ctx.gen("x")
    with pytest.raises(CompositionError):
        x.compose({"x": x + ctx.one()})


def test_geometric_inverse_and_oracle():
    ctx = SeriesCtx(ZZ, ("b",), 4)
    f = ctx.one() - ctx.gen("b").scale(24)
    inv = f.inverse()
    assert [inv.ucoeff(i) for i in range(4)] == [1, 24, 576, 13824]
    assert series_div_oracle([1], [1, -24], ZZ, 4) == [1, 24, 576, 13824]
    assert f * inv == ctx.one()


def test_reverse_identity_and_quadratic():
    ctx = uni(ZZ, 5)
    x = ctx.gen("x")
    assert x.reverse() == x
    g = (x + x * x).reverse()
    assert [g.ucoeff(i) for i in range(5)] == [0, 1, -1, 2, -5]
    assert (x + x * x).compose({"x": g}) == x
    assert g.compose({"x": x + x * x}) == x


def test_reverse_exp_log():
    ctx = uni(QQ, 4)
    x = ctx.gen("x")
    log1p = x - (x * x).scale(Fraction(1, 2)) + (x ** 3).scale(Fraction(1, 3))
    e = log1p.reverse()
    assert [e.ucoeff(i) for i in range(4)] == [0, 1, Fraction(1, 2), Fraction(1, 6)]


def test_reverse_roundtrip_property():
    import random
    rng = random.Random(0)
    ctx = uni(QQ, 7)
    x = ctx.gen("x")
    for _ in range(25):
        terms = {(1,): Fraction(rng.choice([1, -1, 2, 3]))}
        for d in range(2, 7):
            c = rng.randint(-3, 3)
            if c:
                terms[(d,)] = Fraction(c)
        f = ctx.series(terms)
        g = f.reverse()
        assert f.compose({"x": g}) == x
        assert g.compose({"x": f}) == x


def test_reverse_needs_unit_linear_term():
    ctx = uni(ZZ, 5)
    x = ctx.gen("x")
    with pytest.raises(NotInvertible):
        (x.scale(2)).reverse()


def test_mixing_variable_sets_is_an_error():
    a = SeriesCtx(ZZ, ("x",), 5).gen("x")
    b = SeriesCtx(ZZ, ("y",), 5).gen("y")
    with pytest.raises(MixedVariablesError):
        a + b


def test_truncation_min_rule():
    c1 = uni(ZZ, 7)
    c2 = uni(ZZ, 4)
    out = c1.gen("x") * c2.gen("x")
    assert out.prec == 4


def test_weierstrass_prepare_already_monic():
    Z8 = ModularIntegers(8)
    ctx = uni(Z8, 6)
    x = ctx.gen("x")
    unit, dist, d = weierstrass_prepare(x.scale(2) + x * x)
    assert d == 2 and dist == [0, 2, 1]
    assert unit == ctx.one()


def test_weierstrass_prepare_unit_five():
    Z8 = ModularIntegers(8)
    ctx = uni(Z8, 6)
    x = ctx.gen("x")
    f = x.scale(2) + (x * x).scale(5)
    unit, dist, d = weierstrass_prepare(f)
    # distinguished = x^2 + 2 * 5^(-1) x = x^2 + 2x mod 8
    assert d == 2 and dist == [0, 2, 1]
    recomposed = unit * ctx.series({(1,): dist[1], (2,): dist[2]})
    assert recomposed == f
    assert unit.constant_term() == 5


def test_weierstrass_prepare_no_unit():
    Z8 = ModularIntegers(8)
    ctx = uni(Z8, 6)
    x = ctx.gen("x")
    with pytest.raises(PreparationFailed):
        weierstrass_prepare(ctx.from_int(2) + x.scale(4))


def test_prepare_over_series_ring():
    SR = SeriesRing(ModularIntegers(4), "b", 5)
    ctx = SeriesCtx(SR, ("x",), 6)
    x = ctx.gen("x")
    b = SR.gen()
    f = x.scale(SR.from_int(2)) + (x * x).scale(SR.add(SR.one(), b))
    unit, dist, d = weierstrass_prepare(f)
    assert d == 2
    recomposed = unit * ctx.series({(1,): dist[1], (2,): dist[2]})
    assert recomposed == f


def test_integrate_needs_divisibility():
    ctx = uni(ZZ, 4)
    x = ctx.gen("x")
    with pytest.raises(NotInvertible):
        (x.scale(1)).integrate()   # x^2/2 not integral over Z
    ctxq = uni(QQ, 4)
    out = ctxq.gen("x").integrate()
    assert out.ucoeff(2) == Fraction(1, 2)
