"""Weierstrass curves: invariants, reduction types, formal groups, points,
automorphisms and node uniformization.

Formal-group arithmetic follows the classical route through the (z, w) plane,
z = -x/y, w = -1/y, where the curve reads w = z^3 + a1 z w + a2 z^2 w
+ a3 w^2 + a4 z w^2 + a6 w^3 and chord slopes are honest power series.  All
operations stay over the curve's coefficient ring; no denominators appear.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (AlgebraError, JUndefined, NotInvertible, NotNodal,
                     NotOnCurve)
from .poly import PolyRing
from .rings import Ring
from .series import Series, SeriesCtx


@dataclass(frozen=True)
class WeierstrassCurve:
    ring: Ring
    a1: object
    a2: object
    a3: object
    a4: object
    a6: object

    def coefficients(self):
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def map_coefficients(self, fn, target: Ring) -> "WeierstrassCurve":
        return WeierstrassCurve(target, *(fn(a) for a in self.coefficients()))


def curve(ring: Ring, a1, a2, a3, a4, a6) -> WeierstrassCurve:
    return WeierstrassCurve(ring, a1, a2, a3, a4, a6)


def gamma1_3_curve(ring: Ring, A, B) -> WeierstrassCurve:
    """The level-3 family y^2 + A xy + B y = x^3, i.e. (a1,..,a6) = (A,0,B,0,0)."""
    z = ring.zero()
    return WeierstrassCurve(ring, A, z, B, z, z)


def universal_gamma1_3(base: Ring | None = None):
    """Family curve over base[A, B] with |A| = 1, |B| = 3."""
    from .rings import ZZ
    P = PolyRing(base if base is not None else ZZ, ("A", "B"), weights=(1, 3))
    return gamma1_3_curve(P, P.gen("A"), P.gen("B")), P


@dataclass(frozen=True)
class CurveInvariants:
    b2: object
    b4: object
    b6: object
    b8: object
    c4: object
    c6: object
    disc: object


def invariants(E: WeierstrassCurve) -> CurveInvariants:
    R = E.ring
    a1, a2, a3, a4, a6 = E.coefficients()
    m = R.mul
    s = R.add

    def lin(*pairs):
        out = R.zero()
        for k, v in pairs:
            out = s(out, R.scale_int(v, k))
        return out

    b2 = lin((1, m(a1, a1)), (4, a2))
    b4 = lin((2, a4), (1, m(a1, a3)))
    b6 = lin((1, m(a3, a3)), (4, a6))
    b8 = lin((1, m(m(a1, a1), a6)), (4, m(a2, a6)), (-1, m(a1, m(a3, a4))),
             (1, m(a2, m(a3, a3))), (-1, m(a4, a4)))
    c4 = lin((1, m(b2, b2)), (-24, b4))
    c6 = lin((-1, m(b2, m(b2, b2))), (36, m(b2, b4)), (-216, b6))
    disc = lin((-1, m(m(b2, b2), b8)), (-8, m(b4, m(b4, b4))),
               (-27, m(b6, b6)), (9, m(b2, m(b4, b6))))
    return CurveInvariants(b2, b4, b6, b8, c4, c6, disc)


def j_invariant(E: WeierstrassCurve):
    """(c4^3, disc) as an exact fraction; raises JUndefined if disc = 0.

    Over a field the reduced scalar c4^3/disc is returned instead.
    """
    R = E.ring
    inv = invariants(E)
    if R.is_zero(inv.disc):
        raise JUndefined("discriminant vanishes")
    num = R.mul(inv.c4, R.mul(inv.c4, inv.c4))
    q = R.divide(num, inv.disc)
    if q is not None and R.is_unit(inv.disc):
        return q
    return (num, inv.disc)


# -- reduction types ----------------------------------------------------------

SMOOTH_ORDINARY = "SmoothOrdinary"
SMOOTH_SUPERSINGULAR = "SmoothSupersingular"
NODAL = "Nodal"
ADDITIVE = "Additive"


def reduction_type(E: WeierstrassCurve) -> str:
    R = E.ring
    inv = invariants(E)
    if R.is_zero(inv.disc):
        return ADDITIVE if R.is_zero(inv.c4) else NODAL
    if R.char != 2:
        raise AlgebraError("supersingularity test implemented for characteristic 2 fields")
    # height of the 2-series of the formal group, cross-checked with j = 0
    F = formal_group_of_curve(E, 5)
    two = F.compose({F.ctx.vars[0]: _gen1(F, 0), F.ctx.vars[1]: _gen1(F, 0)})
    # F(x, x) over the one-variable context
    c2 = two.ucoeff(2)
    c4coeff = two.ucoeff(4)
    j_zero = R.is_zero(inv.c4)  # j = c4^3/disc vanishes iff c4 does
    if not R.is_zero(c2):
        if j_zero:
            raise AlgebraError("height-1 series but j = 0: inconsistent classification")
        return SMOOTH_ORDINARY
    if R.is_zero(c4coeff):
        raise AlgebraError("2-series vanishes to precision; cannot read height")
    if not j_zero:
        raise AlgebraError("height-2 series but j != 0: inconsistent classification")
    return SMOOTH_SUPERSINGULAR


def _gen1(F: Series, i: int) -> Series:
    """Univariate context generator used to collapse F(x, x)."""
    ctx = SeriesCtx(F.ctx.ring, ("x",), F.ctx.prec)
    return ctx.gen("x")


# -- formal group --------------------------------------------------------------

def curve_w_series(E: WeierstrassCurve, prec: int) -> Series:
    """w(z) with w = z^3 + a1 z w + a2 z^2 w + a3 w^2 + a4 z w^2 + a6 w^3."""
    R = E.ring
    a1, a2, a3, a4, a6 = E.coefficients()
    ctx = SeriesCtx(R, ("z",), prec)
    z = ctx.gen("z")
    z3 = z * z * z
    w = z3
    for _ in range(prec):
        w2 = w * w
        new = (z3 + (z * w).scale(a1) + (z * z * w).scale(a2) + w2.scale(a3)
               + (z * w2).scale(a4) + (w2 * w).scale(a6))
        if new == w:
            break
        w = new
    return w


def formal_inverse(E: WeierstrassCurve, prec: int) -> Series:
    """i(z) with [-1](z) = i(z): i = -z / (1 - a1 z - a3 w(z))."""
    R = E.ring
    ctx = SeriesCtx(R, ("z",), prec)
    z = ctx.gen("z")
    w = curve_w_series(E, prec).truncate(prec)
    den = ctx.one() - z.scale(E.a1) - w.scale(E.a3)
    return (-z) * den.inverse()


def formal_group_of_curve(E: WeierstrassCurve, N: int) -> Series:
    """Group law F(z1, z2) to total degree N, exact over the curve's ring."""
    R = E.ring
    a1, a2, a3, a4, a6 = E.coefficients()
    prec = N + 1
    wz = curve_w_series(E, N + 2)
    ctx2 = SeriesCtx(R, ("z1", "z2"), prec)
    z1 = ctx2.gen("z1")
    z2 = ctx2.gen("z2")
    # chord slope in the (z, w) plane: sum_n w_n * (z2^n - z1^n)/(z2 - z1)
    lam = ctx2.zero()
    for n in range(3, N + 2):
        wn = wz.ucoeff(n)
        if R.is_zero(wn):
            continue
        sigma = ctx2.zero()
        for i in range(n):
            if i + (n - 1 - i) >= prec:
                continue
            sigma = sigma + ctx2.series({(i, n - 1 - i): R.one()})
        lam = lam + sigma.scale(wn)
    w1 = ctx2.zero()
    for n in range(3, N + 2):
        wn = wz.ucoeff(n)
        if not R.is_zero(wn) and n < prec:
            w1 = w1 + ctx2.series({(n, 0): wn})
    nu = w1 - lam * z1
    lam2 = lam * lam
    den = ctx2.one() + lam.scale(a2) + lam2.scale(a4) + (lam2 * lam).scale(a6)
    num = (lam.scale(a1) + lam2.scale(a3) + nu.scale(a2)
           + (lam * nu).scale(R.scale_int(a4, 2)) + (lam2 * nu).scale(R.scale_int(a6, 3)))
    z3 = (-z1) - z2 - num * den.inverse()
    inv = formal_inverse(E, prec).rename(("z",))
    F = inv.compose({"z": z3})
    # unit axiom check F(z, 0) = z
    restr = F.set_var_zero("z2").drop_var("z2")
    zz = SeriesCtx(R, ("z1",), prec).gen("z1")
    if not restr == zz:
        raise AlgebraError("formal group construction failed the unit axiom")
    return F


def curve_log(E: WeierstrassCurve, N: int) -> Series:
    """Formal logarithm from the invariant differential (Q-algebra bases only).

    ell'(z) = (dx/dz) / (2y + a1 x + a3) expanded via w(z); exact.
    """
    R = E.ring
    ctx = SeriesCtx(R, ("z",), N)
    z = ctx.gen("z")
    w = curve_w_series(E, N + 4)
    V = Series(SeriesCtx(R, ("z",), N + 1),
               {(n - 3,): c for (n,), c in w.terms.items() if n - 3 < N + 1})
    Vp = V.derivative("z")
    zt = SeriesCtx(R, ("z",), N + 1).gen("z")
    numer = ctx.from_int(-2) - (zt * Vp * V.inverse()).truncate(N)
    wN = w.truncate(N)
    den = ctx.from_int(-2) + z.scale(E.a1) + wN.scale(E.a3)
    lp = numer * den.inverse()
    return lp.truncate(N).integrate().truncate(N + 1)


# -- points --------------------------------------------------------------------

INFINITY = None


def on_curve(E: WeierstrassCurve, P) -> bool:
    if P is INFINITY:
        return True
    R = E.ring
    x, y = P
    a1, a2, a3, a4, a6 = E.coefficients()
    lhs = R.add(R.mul(y, y), R.add(R.mul(a1, R.mul(x, y)), R.mul(a3, y)))
    rhs = R.add(R.mul(x, R.mul(x, x)),
                R.add(R.mul(a2, R.mul(x, x)), R.add(R.mul(a4, x), a6)))
    return R.eq(lhs, rhs)


def point_neg(E: WeierstrassCurve, P):
    if P is INFINITY:
        return INFINITY
    R = E.ring
    x, y = P
    return (x, R.neg(R.add(y, R.add(R.mul(E.a1, x), E.a3))))


def point_add(E: WeierstrassCurve, P, Q):
    if P is INFINITY:
        return Q
    if Q is INFINITY:
        return P
    R = E.ring
    a1, a2, a3, a4, a6 = E.coefficients()
    x1, y1 = P
    x2, y2 = Q
    if R.eq(x1, x2):
        negP = point_neg(E, P)
        if R.eq(y2, negP[1]):
            return INFINITY
        # doubling
        num = R.add(R.scale_int(R.mul(x1, x1), 3),
                    R.add(R.scale_int(R.mul(a2, x1), 2),
                          R.sub(a4, R.mul(a1, y1))))
        den = R.add(R.scale_int(y1, 2), R.add(R.mul(a1, x1), a3))
    else:
        num = R.sub(y2, y1)
        den = R.sub(x2, x1)
    lam = R.divide(num, den)
    if lam is None:
        raise NotInvertible("chord slope needs a division unavailable in this ring")
    x3 = R.sub(R.add(R.mul(lam, lam), R.mul(a1, lam)),
               R.add(a2, R.add(x1, x2)))
    y3 = R.sub(R.mul(lam, R.sub(x1, x3)), R.add(y1, R.add(R.mul(a1, x3), a3)))
    return (x3, y3)


def three_torsion_check(E: WeierstrassCurve, P) -> bool:
    """True iff [2]P = -P for an affine point P on E (so P has exact order 3)."""
    if not on_curve(E, P):
        raise NotOnCurve(f"{P} does not satisfy the curve equation")
    double = point_add(E, P, P)
    neg = point_neg(E, P)
    if double is INFINITY:
        return False
    R = E.ring
    return R.eq(double[0], neg[0]) and R.eq(double[1], neg[1])


# -- isomorphisms and automorphisms ---------------------------------------------

def transform(E: WeierstrassCurve, u, r, s, t) -> WeierstrassCurve:
    """Coordinate change x = u^2 x' + r, y = u^3 y' + u^2 s x' + t."""
    R = E.ring
    a1, a2, a3, a4, a6 = E.coefficients()
    ui = R.inv(u)
    ui2 = R.mul(ui, ui)
    ui3 = R.mul(ui2, ui)
    ui4 = R.mul(ui2, ui2)
    ui6 = R.mul(ui3, ui3)
    m, ad, sb = R.mul, R.add, R.sub
    A1 = m(ad(a1, R.scale_int(s, 2)), ui)
    A2 = m(ad(sb(a2, m(s, a1)), sb(R.scale_int(r, 3), m(s, s))), ui2)
    A3 = m(ad(a3, ad(m(r, a1), R.scale_int(t, 2))), ui3)
    A4 = m(ad(sb(a4, m(s, a3)),
              ad(R.scale_int(m(r, a2), 2),
                 ad(R.neg(m(ad(t, m(r, s)), a1)),
                    sb(R.scale_int(m(r, r), 3), R.scale_int(m(s, t), 2))))), ui4)
    A6 = m(ad(a6, ad(m(r, a4),
                     ad(m(m(r, r), a2),
                        ad(m(r, m(r, r)),
                           R.neg(ad(m(t, a3), ad(m(t, t), m(m(r, t), a1)))))))), ui6)
    return WeierstrassCurve(R, A1, A2, A3, A4, A6)


def compose_transforms(R: Ring, g, h):
    """Parameters of applying h after g, i.e. tau_g o tau_h on coordinates."""
    u1, r1, s1, t1 = g
    u2, r2, s2, t2 = h
    u = R.mul(u1, u2)
    u1sq = R.mul(u1, u1)
    r = R.add(R.mul(u1sq, r2), r1)
    s = R.add(R.mul(u1, s2), s1)
    t = R.add(R.mul(R.mul(u1sq, u1), t2), R.add(R.mul(R.mul(u1sq, s1), r2), t1))
    return (u, r, s, t)


def curves_equal(E1: WeierstrassCurve, E2: WeierstrassCurve) -> bool:
    R = E1.ring
    return all(R.eq(a, b) for a, b in zip(E1.coefficients(), E2.coefficients()))


def automorphism_group(E: WeierstrassCurve) -> list:
    """Exhaustive (u, r, s, t) preserving E over a finite field; closure verified."""
    R = E.ring
    elems = R.elements()
    units = [e for e in elems if R.is_unit(e)]
    out = []
    for u in units:
        for r in elems:
            for s in elems:
                for t in elems:
                    if curves_equal(transform(E, u, r, s, t), E):
                        out.append((u, r, s, t))
    # group closure
    keyed = {tuple(map(R.render, g)) for g in out}
    for g in out:
        for h in out:
            c = compose_transforms(R, g, h)
            if tuple(map(R.render, c)) not in keyed:
                raise AlgebraError("automorphism set is not closed under composition")
    return out


def transform_order(R: Ring, g, cap: int = 64) -> int:
    ident = (R.one(), R.zero(), R.zero(), R.zero())
    cur = g
    for k in range(1, cap + 1):
        if all(R.eq(a, b) for a, b in zip(cur, ident)):
            return k
        cur = compose_transforms(R, cur, g)
    raise AlgebraError("order exceeds cap")


# -- node uniformization ---------------------------------------------------------

@dataclass
class NodalGroupLaw:
    """Multiplication (t*t' - c)/(t + t' + b) with unit at t = infinity, on the
    coordinate t = (y - y0)/(x - x0) of a nodal cubic with node (x0, y0)."""
    ring: Ring
    b: object
    c: object

    def multiply(self, t1, t2):
        R = self.ring
        num = R.sub(R.mul(t1, t2), self.c)
        den = R.add(R.add(t1, t2), self.b)
        q = R.divide(num, den)
        if q is None:
            raise NotInvertible("nodal law denominator not invertible at these inputs")
        return q

    def as_fraction(self):
        """(numerator, denominator) polynomials in t, u over the base ring."""
        P = PolyRing(self.ring, ("t", "u"))
        t, u = P.gen("t"), P.gen("u")
        return (t * u - P.const(self.c), t + u + P.const(self.b))


@dataclass
class NodeData:
    node: tuple
    coordinate: str
    law: NodalGroupLaw
    fgl_at_infinity: "object"  # FormalGroupLaw, import cycle avoided


def _poly_gcd_univar(a: list, b: list, field) -> list:
    """Monic gcd of coefficient lists (low first) over a field adapter."""
    R = field

    def norm(p):
        while p and R.is_zero(p[-1]):
            p.pop()
        return p

    a, b = norm(list(a)), norm(list(b))
    while b:
        # a mod b
        inv_lead = R.inv(b[-1])
        while len(a) >= len(b) and a:
            f = R.mul(a[-1], inv_lead)
            shift = len(a) - len(b)
            for i, bc in enumerate(b):
                a[shift + i] = R.sub(a[shift + i], R.mul(f, bc))
            norm(a)
        a, b = b, a
    inv_lead = R.inv(a[-1])
    return [R.mul(c, inv_lead) for c in a]


def find_node(E: WeierstrassCurve):
    """Singular point of a nodal curve: double root of 4x^3 + b2 x^2 + 2 b4 x + b6
    in characteristic 0; exhaustive search over finite fields."""
    R = E.ring
    inv = invariants(E)
    if not R.is_zero(inv.disc):
        raise NotNodal("discriminant does not vanish")
    if R.is_zero(inv.c4):
        raise NotNodal("additive degeneration, not a node")
    if R.char == 0:
        Q, lift = R.rationalize()
        b2, b4, b6 = (lift(inv.b2), lift(inv.b4), lift(inv.b6))
        B = [b6, Q.scale_int(b4, 2), b2, Q.from_int(4)]
        Bp = [Q.scale_int(B[1], 1), Q.scale_int(B[2], 2), Q.scale_int(B[3], 3)]
        g = _poly_gcd_univar(B, Bp, Q)
        if len(g) != 2:
            raise NotNodal("no unique double root (unexpected degeneration)")
        x0q = Q.neg(g[0])
        a1q, a3q = lift(E.a1), lift(E.a3)
        y0q = Q.divide(Q.neg(Q.add(Q.mul(a1q, x0q), a3q)), Q.from_int(2))
        # map back into the curve ring when possible
        x0 = _descend(R, Q, x0q)
        y0 = _descend(R, Q, y0q)
    else:
        x0 = y0 = None
        for xe in R.elements():
            for ye in R.elements():
                if _is_singular_at(E, xe, ye):
                    x0, y0 = xe, ye
                    break
            if x0 is not None:
                break
        if x0 is None:
            raise NotNodal("no singular point found over the finite base")
    if not _is_singular_at(E, x0, y0):
        raise NotNodal("singularity equations fail at the computed point")
    return (x0, y0)


def _descend(R: Ring, Q: Ring, val):
    """Bring a rationalized scalar back into R (desk cases: denominators clear)."""
    q = R.divide(_numer_in(R, Q, val), _denom_in(R, Q, val))
    if q is None:
        raise AlgebraError("node coordinates do not lie in the base ring")
    return q


def _numer_in(R, Q, val):
    from fractions import Fraction
    if isinstance(val, Fraction):
        return R.from_int(val.numerator)
    if isinstance(val, tuple):  # quotient extension coordinates
        return tuple(_numer_in(R.base, Q.base, v) for v in val)
    return val


def _denom_in(R, Q, val):
    from fractions import Fraction
    if isinstance(val, Fraction):
        return R.from_int(val.denominator)
    if isinstance(val, tuple):
        from math import lcm
        dens = [v.denominator for v in val]
        return R.from_int(lcm(*dens)) if dens else R.one()
    return R.one()


def tangent_gradient(E: WeierstrassCurve, P):
    """(F_x, F_y) of the defining polynomial at an affine point; the tangent is
    horizontal exactly when F_x = 0 with F_y invertible-or-nonzero."""
    R = E.ring
    a1, a2, a3, a4, a6 = E.coefficients()
    x0, y0 = P
    fy = R.add(R.scale_int(y0, 2), R.add(R.mul(a1, x0), a3))
    fx = R.sub(R.mul(a1, y0),
               R.add(R.scale_int(R.mul(x0, x0), 3),
                     R.add(R.scale_int(R.mul(a2, x0), 2), a4)))
    return fx, fy


def _is_singular_at(E: WeierstrassCurve, x0, y0) -> bool:
    R = E.ring
    a1, a2, a3, a4, a6 = E.coefficients()
    if not on_curve(E, (x0, y0)):
        return False
    fy = R.add(R.scale_int(y0, 2), R.add(R.mul(a1, x0), a3))
    fx = R.sub(R.mul(a1, y0),
               R.add(R.scale_int(R.mul(x0, x0), 3),
                     R.add(R.scale_int(R.mul(a2, x0), 2), a4)))
    return R.is_zero(fy) and R.is_zero(fx)


def node_uniformization(E: WeierstrassCurve, N: int = 8) -> NodeData:
    """Node, rational coordinate, nodal group law, and the formal group law of
    the smooth locus at infinity.

    After translating the node to the origin the curve reads
    Y^2 + b XY + c X^2 = X^3 with b = a1 and c = -(3 x0 + a2); the smooth locus
    is parametrized by t = Y/X as (X, Y) = (t^2 + bt + c, t(t^2 + bt + c)), the
    law is (t t' - c)/(t + t' + b) with unit at infinity, and the coordinate
    1/t at the unit carries the group law (x + y + b xy)/(1 - c xy).
    """
    from .fgl import conic_fgl
    R = E.ring
    x0, y0 = find_node(E)
    b = E.a1
    c = R.neg(R.add(R.scale_int(x0, 3), E.a2))
    # symbolic check: (x0 + X(t), y0 + Y(t)) satisfies the curve equation
    P = PolyRing(R, ("t",))
    t = P.gen("t")
    X = t * t + t * P.const(b) + P.const(c)
    Y = t * X
    xs = X + P.const(x0)
    ys = Y + P.const(y0)
    a1, a2, a3, a4, a6 = (P.const(a) for a in E.coefficients())
    eqn = ys * ys + a1 * xs * ys + a3 * ys - xs * xs * xs - a2 * xs * xs - a4 * xs - a6
    if not eqn.is_zero():
        raise NotNodal("parametrization does not satisfy the curve equation")
    law = NodalGroupLaw(R, b, c)
    fgl = conic_fgl(R, b, c, N)
    coord = "t = (y - y0)/(x - x0), unit at t = infinity"
    return NodeData((x0, y0), coord, law, fgl)
