"""Formal group laws: construction and validation, m-series and heights,
logarithms, Hazewinkel generators, isomorphism search, canonical subgroups and
isogeny quotients.

Quotients follow a torsion-free route: the kernel point is located exactly on
a characteristic-zero lift (curve chord geometry or the closed conic form),
the quotient law is assembled through logarithms, 2-integrality is asserted,
and only then is everything reduced back.  All heavy lifting is univariate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .convert import assert_two_integral, series_reduce
from .elliptic import (WeierstrassCurve, curve_log, curve_w_series,
                       formal_group_of_curve, gamma1_3_curve)
from .errors import (AlgebraError, HeightExceedsPrecision, IntegralityFailure,
                     InvalidKernel, NotOrdinary, PreparationFailed,
                     QuotientPrecisionError, RecognitionFailed,
                     NotAFrobeniusLift, TruncationError)
from .linalg import f2_solve
from .poly import Poly, PolyRing
from .rings import ModularIntegers, PrimeField, QQ, Ring
from .series import Series, SeriesCtx, SeriesRing, weierstrass_prepare


# -- the law object ------------------------------------------------------------

@dataclass
class CurveOrigin:
    lift_curve: WeierstrassCurve          # over a Q-algebra carrier


@dataclass
class ConicOrigin:
    b: Fraction
    c: Fraction


@dataclass
class FormalGroupLaw:
    F: Series                 # bivariate in ("x", "y"), total degree < prec
    ring: Ring
    prec: int
    origin: object = None

    @property
    def ctx(self):
        return self.F.ctx

    def x(self):
        return self.ctx.gen("x")

    def y(self):
        return self.ctx.gen("y")

    def coefficient(self, i, j):
        return self.F.coefficient((i, j))

    def plus(self, a: Series, b: Series) -> Series:
        return self.F.compose({"x": a, "y": b})

    def map_coefficients(self, fn, target: Ring) -> "FormalGroupLaw":
        return FormalGroupLaw(self.F.map_coefficients(fn, target), target,
                              self.prec, self.origin)


def validate_fgl(F: Series, ring: Ring, check_assoc: bool = True):
    ctx = F.ctx
    x = ctx.gen("x")
    restr = F.set_var_zero("y").drop_var("y").rename(("x",))
    if not restr == SeriesCtx(ring, ("x",), ctx.prec).gen("x"):
        raise AlgebraError("unit axiom F(x,0) = x fails")
    swapped = Series(ctx, {(j, i): c for (i, j), c in F.terms.items()})
    if not swapped == F:
        raise AlgebraError("commutativity fails")
    if check_assoc:
        ctx3 = SeriesCtx(ring, ("x", "y", "z"), ctx.prec)
        X, Y, Z = (ctx3.gen(v) for v in ("x", "y", "z"))
        Fxy = F.compose({"x": X, "y": Y})
        Fyz = F.compose({"x": Y, "y": Z})
        left = F.compose({"x": Fxy, "y": Z})
        right = F.compose({"x": X, "y": Fyz})
        if not left == right:
            raise AlgebraError("associativity fails")


ASSOC_LIMIT = 10  # full symbolic associativity on construction up to this prec


def make_fgl(F: Series, ring: Ring, origin=None, check_assoc=None) -> FormalGroupLaw:
    if F.ctx.vars != ("x", "y"):
        F = F.rename(("x", "y"))
    if check_assoc is None:
        check_assoc = F.ctx.prec <= ASSOC_LIMIT
    validate_fgl(F, ring, check_assoc=check_assoc)
    return FormalGroupLaw(F, ring, F.ctx.prec, origin)


# -- constructors ---------------------------------------------------------------

def conic_fgl(ring: Ring, b, c, N: int) -> FormalGroupLaw:
    """(x + y + b xy)/(1 - c xy) to total degree N.  Discriminant b^2 - 4c."""
    b = ring.from_int(b) if isinstance(b, int) else b
    c = ring.from_int(c) if isinstance(c, int) else c
    ctx = SeriesCtx(ring, ("x", "y"), N + 1)
    x, y = ctx.gen("x"), ctx.gen("y")
    xy = x * y
    num = x + y + xy.scale(b)
    den = ctx.one() - xy.scale(c)
    F = num * den.inverse()
    origin = ConicOrigin(_to_fraction(ring, b), _to_fraction(ring, c))
    return make_fgl(F, ring, origin)


def conic_discriminant(ring: Ring, b, c):
    return ring.sub(ring.mul(b, b), ring.scale_int(c, 4))


def multiplicative_fgl(ring: Ring, u, N: int) -> FormalGroupLaw:
    """x + y + u xy."""
    return conic_fgl(ring, u, ring.zero(), N)


def additive_fgl(ring: Ring, N: int) -> FormalGroupLaw:
    return conic_fgl(ring, ring.zero(), ring.zero(), N)


def _to_fraction(ring, v):
    """Rational-lift a conic parameter when representable; None otherwise."""
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(ring, ModularIntegers) and isinstance(v, int):
        return Fraction(v)
    try:
        _, f = ring.rationalize()
        out = f(v)
        return out if isinstance(out, Fraction) else None
    except Exception:
        if isinstance(v, int):
            return Fraction(v)
        return None


def fgl_from_curve(E: WeierstrassCurve, N: int, lift_curve: WeierstrassCurve | None = None,
                   check_assoc=None) -> FormalGroupLaw:
    F = formal_group_of_curve(E, N).rename(("x", "y"))
    origin = CurveOrigin(lift_curve) if lift_curve is not None else None
    if origin is None and E.ring.char == 0:
        try:
            Qring, f = E.ring.rationalize()
            origin = CurveOrigin(E.map_coefficients(f, Qring))
        except Exception:
            origin = None
    return make_fgl(F, E.ring, origin, check_assoc=check_assoc)


def two_adic_family_fgl(k: int, bprec: int, xprec: int, bvar: str = "b") -> FormalGroupLaw:
    """The ordinary-locus family law (A = 1, B = b) over Z/2^k[[b]], carrying
    its exact Q[[b]] lift for quotient work."""
    ring_k = SeriesRing(ModularIntegers(2 ** k), bvar, bprec)
    E_k = gamma1_3_curve(ring_k, ring_k.one(), ring_k.gen())
    ring_q = SeriesRing(QQ, bvar, bprec)
    E_q = gamma1_3_curve(ring_q, ring_q.one(), ring_q.gen())
    return fgl_from_curve(E_k, xprec, lift_curve=E_q)


def family_fgl_at(ring: SeriesRing, param: Series, xprec: int,
                  check_assoc=False) -> FormalGroupLaw:
    """Family law at A = 1, B = param (a series in the base of `ring`)."""
    E = gamma1_3_curve(ring, ring.one(), param)
    return fgl_from_curve(E, xprec, check_assoc=check_assoc)


# -- m-series and heights --------------------------------------------------------

def m_series(F: FormalGroupLaw, m: int) -> Series:
    """[m](x) by iterated formal addition; m >= 1."""
    ctx1 = SeriesCtx(F.ring, ("x",), F.prec)
    x = ctx1.gen("x")
    cur = x
    for _ in range(m - 1):
        cur = F.F.compose({"x": x, "y": cur})
    return cur


def height_mod_p(F: FormalGroupLaw, p: int) -> int:
    """log_p of the degree of the first nonzero term of [p](x); the ring must
    already have characteristic p."""
    if F.ring.char != p:
        raise AlgebraError(f"height_mod_p needs a characteristic-{p} coefficient ring")
    sp = m_series(F, p)
    d = sp.order()
    if d is None:
        raise HeightExceedsPrecision("[p](x) vanishes to the stored precision")
    h = 0
    dd = d
    while dd % p == 0:
        dd //= p
        h += 1
    if dd != 1:
        raise AlgebraError(f"[p](x) has leading degree {d}, not a power of {p}")
    return h


# -- logarithms -------------------------------------------------------------------

def fgl_log(F: FormalGroupLaw, N: int | None = None) -> Series:
    """ell with ell(F(x,y)) = ell(x) + ell(y), ell'(0) = 1, over a torsion-free
    rationalized coefficient ring."""
    N = F.prec - 1 if N is None else N
    Qring, lift = F.ring.rationalize()
    if isinstance(F.origin, CurveOrigin) and F.origin.lift_curve is not None:
        return curve_log(F.origin.lift_curve, N).truncate(N + 1)
    # the x^N log coefficient needs F through total degree N
    if N + 1 > F.prec:
        raise TruncationError("log precision exceeds the stored law")
    FQ = F.F.map_coefficients(lift, Qring).truncate(N + 1)
    dFy = FQ.derivative("y").set_var_zero("y").drop_var("y").rename(("x",))
    lp = dFy.truncate(N).inverse()
    return lp.truncate(N).integrate()


def fgl_exp(F: FormalGroupLaw, N: int | None = None) -> Series:
    return fgl_log(F, N).reverse()


# -- Hazewinkel generators ---------------------------------------------------------

@dataclass
class PTypicalData:
    p: int
    log_coeffs: list      # [ell_1, .., ell_n] over the rationalized ring
    v: list               # [v_1, .., v_n] descended to the base ring


def hazewinkel_generators(F: FormalGroupLaw, p: int, n: int) -> PTypicalData:
    """v_i solved from p*ell_m = sum_{i<m} ell_i v_{m-i}^(p^i), with
    ell_k = the x^(p^k) log coefficient; integrality over the base asserted."""
    need = p ** n + 2
    if F.prec < need:
        raise TruncationError(f"law precision {F.prec} < required {need}")
    ell = fgl_log(F, p ** n)
    Qring = ell.ctx.ring
    ells = [Qring.one()] + [ell.ucoeff(p ** k) for k in range(1, n + 1)]
    vs_q = []
    for m in range(1, n + 1):
        acc = Qring.scale_int(ells[m], p)
        for i in range(1, m):
            acc = Qring.sub(acc, Qring.mul(ells[i], Qring.pow(vs_q[m - i - 1], p ** i)))
        vs_q.append(acc)
    vs = [_descend_scalar(v, F.ring, Qring) for v in vs_q]
    return PTypicalData(p, ells[1:], vs)


def _descend_scalar(value, target: Ring, source: Ring):
    """Inverse of rationalize on elements that happen to be integral."""
    if isinstance(value, Fraction):
        if isinstance(target, type(QQ)) or target is QQ:
            return value
        q = target.divide(target.from_int(value.numerator),
                          target.from_int(value.denominator))
        if q is None:
            raise IntegralityFailure(f"{value} not integral for {target!r}")
        return q
    if isinstance(value, Poly):
        out = {}
        for e, c in value.terms.items():
            out[e] = _descend_scalar(c, target.base, source.base)
        return Poly(target, out)
    if isinstance(value, Series):
        return value.map_coefficients(
            lambda c: _descend_scalar(c, target.base, source.base), target.base)
    if isinstance(value, tuple):
        return tuple(_descend_scalar(c, target.base, source.base) for c in value)
    raise IntegralityFailure(f"cannot descend {type(value)}")


# -- isomorphism search --------------------------------------------------------------

@dataclass
class Obstruction:
    degree: int
    details: dict


@dataclass
class IsoResult:
    phi: Series
    linear: object


def strict_apply(F: FormalGroupLaw, phi: Series) -> FormalGroupLaw:
    """Law G with phi(F(x,y)) = G(phi x, phi y), for phi with unit linear term."""
    inv = phi.reverse()
    ctx = F.ctx
    u, v = ctx.gen("x"), ctx.gen("y")
    iu = inv.compose({inv.ctx.vars[0]: u})
    iv = inv.compose({inv.ctx.vars[0]: v})
    inner = F.F.compose({"x": iu, "y": iv})
    G = phi.compose({phi.ctx.vars[0]: inner})
    return make_fgl(G, F.ring, check_assoc=False)


def find_iso(F: FormalGroupLaw, G: FormalGroupLaw, mode: str = "strict",
             N: int | None = None, unit_candidates=None):
    """phi with phi(F(x,y)) = G(phi x, phi y) to degree N, solved degree by
    degree; returns IsoResult or Obstruction (a value, not an error)."""
    R = F.ring
    if N is None:
        N = min(F.prec, G.prec) - 1
    if mode == "strict":
        candidates = [R.one()]
    else:
        candidates = unit_candidates if unit_candidates is not None else R.unit_candidates(2)
    fails = {}
    ctx1 = SeriesCtx(R, ("t",), N + 1)
    for c1 in candidates:
        phi_terms = {(1,): c1}
        ok = True
        for d in range(2, N + 1):
            phi = Series(ctx1, dict(phi_terms))
            u, v = F.ctx.gen("x"), F.ctx.gen("y")
            phiu = phi.compose({"t": u})
            phiv = phi.compose({"t": v})
            lhs = phi.compose({"t": F.F})
            rhs = G.F.compose({"x": phiu, "y": phiv})
            resid = rhs - lhs
            rows = [(a, d - a) for a in range(1, d)]
            target = [resid.coefficient(e) for e in rows]
            sols = None
            for (a, b_), t in zip(rows, target):
                cand = R.solve_int(comb(d, a), t)
                if sols is None:
                    sols = cand
                else:
                    sols = [s for s in sols if any(R.eq(s, c) for c in cand)]
                if not sols:
                    break
            pure_bad = any(
                not R.is_zero(resid.coefficient((i, j)))
                for (i, j) in [(d, 0), (0, d)]
            )
            if not sols or pure_bad:
                fails[R.render(c1)] = d
                ok = False
                break
            cd = sols[0]
            if not R.is_zero(cd):
                phi_terms[(d,)] = cd
        if ok:
            phi = Series(ctx1, dict(phi_terms))
            return IsoResult(phi, c1)
    return Obstruction(max(fails.values()) if fails else 2, fails)


# -- canonical subgroup ----------------------------------------------------------------

@dataclass
class KernelPolynomial:
    """x*(x + alpha): the distinguished degree-2 factor of [2](x); the kernel
    points are {0, -alpha}."""
    alpha: object
    ring: Ring
    prec: int


def canonical_subgroup(F: FormalGroupLaw) -> KernelPolynomial:
    R = F.ring
    two = m_series(F, 2)
    try:
        unit, dist, d = weierstrass_prepare(two)
    except PreparationFailed as e:
        raise NotOrdinary(f"[2](x) has no distinguished degree-2 factor: {e}") from e
    if d != 2:
        raise NotOrdinary(f"Weierstrass degree of [2](x) is {d}, not 2 (height != 1)")
    if not R.is_zero(dist[0]):
        raise NotOrdinary("distinguished factor has a nonzero constant term")
    alpha = dist[1]
    if R.solve_int(2, alpha) == []:
        raise NotOrdinary("alpha is not divisible by 2")
    # closure: [2](-alpha) vanishes to working depth (kernel closed under F)
    val = two.eval_scalars({"x": R.neg(alpha)})
    if _two_b_valuation(val, R) < min(F.prec - 1, _nilpotency(R)):
        raise NotOrdinary("kernel points are not closed under the law")
    return KernelPolynomial(alpha, R, F.prec)


def _nilpotency(R: Ring):
    b = R.nilpotent_bound()
    return b if b is not None else 10 ** 9


def _two_b_valuation(v, R: Ring) -> int:
    """(2, b)-adic valuation of a scalar in Z/2^k or Z/2^k[[b]]."""
    if isinstance(R, ModularIntegers):
        if v % R.m == 0:
            return 10 ** 9
        val = 0
        x = v % R.m
        while x % 2 == 0:
            x //= 2
            val += 1
        return val
    if isinstance(R, SeriesRing):
        if v.is_zero():
            return 10 ** 9
        out = 10 ** 9
        for (m,), c in v.terms.items():
            out = min(out, m + _two_b_valuation(c, R.base))
        return out
    raise TypeError(f"no (2,b) valuation on {R!r}")


# -- isogeny quotient --------------------------------------------------------------------

@dataclass
class QuotientResult:
    fgl: FormalGroupLaw
    isogeny: Series          # over the original ring, f(x) = x * (x +_F kernel point)
    tau: object              # kernel point (reduced)
    fgl_lift: Series         # quotient law over the rational carrier
    isogeny_lift: Series


def quotient_by_subgroup(F: FormalGroupLaw, K: KernelPolynomial) -> QuotientResult:
    R = F.ring
    derived = canonical_subgroup(F)
    if not R.eq(derived.alpha, K.alpha):
        raise InvalidKernel("kernel polynomial does not divide [2](x) as the "
                            "distinguished factor")
    out_prec = F.prec
    work = out_prec + 4
    if isinstance(F.origin, CurveOrigin) and F.origin.lift_curve is not None:
        fq, tau_q, Lq = _curve_isogeny_data(F.origin.lift_curve, work)
    elif isinstance(F.origin, ConicOrigin) and F.origin.b is not None:
        fq, tau_q, Lq = _conic_isogeny_data(F.origin.b, F.origin.c, work)
    else:
        raise QuotientPrecisionError(
            "no torsion-free lift attached to this law; build it from a curve "
            "or conic constructor")
    lam = Lq.compose({Lq.ctx.vars[0]: fq.reverse()})
    lam = lam.scale(lam.ctx.ring.from_int(2))
    exp_bar = lam.reverse()
    ctxq2 = SeriesCtx(lam.ctx.ring, ("x", "y"), out_prec)
    S = (lam.truncate(out_prec).compose({lam.ctx.vars[0]: ctxq2.gen("x")})
         + lam.truncate(out_prec).compose({lam.ctx.vars[0]: ctxq2.gen("y")}))
    Fbar_q = exp_bar.truncate(out_prec).compose({exp_bar.ctx.vars[0]: S})
    assert_two_integral(Fbar_q, "quotient law")
    fq_out = fq.truncate(out_prec)
    assert_two_integral(fq_out, "isogeny")
    Fbar = series_reduce(Fbar_q, R)
    f_red = series_reduce(fq_out, R)
    tau_red = _reduce_scalar_via(tau_q, R)
    # kernel consistency: tau = -alpha up to one lost 2-adic digit
    diff = R.add(tau_red, K.alpha)
    k_bits = _modulus_bits(R)
    if _two_b_valuation(diff, R) < max(k_bits - 1, 1):
        raise InvalidKernel("lifted kernel point does not reduce onto the "
                            "kernel polynomial root")
    quotient = make_fgl(Fbar, R, check_assoc=None)
    # isogeny identity f(F(x,y)) = F'(f(x), f(y)) re-verified after construction
    u, v = F.ctx.gen("x"), F.ctx.gen("y")
    fu = f_red.compose({f_red.ctx.vars[0]: u})
    fv = f_red.compose({f_red.ctx.vars[0]: v})
    lhs = f_red.compose({f_red.ctx.vars[0]: F.F})
    rhs = quotient.F.compose({"x": fu, "y": fv})
    if not lhs == rhs:
        raise QuotientPrecisionError("isogeny identity fails after reduction")
    return QuotientResult(quotient, f_red, tau_red, Fbar_q, fq_out)


def _modulus_bits(R: Ring) -> int:
    if isinstance(R, ModularIntegers):
        return R.nilpotent_bound() or 1
    if isinstance(R, SeriesRing) and isinstance(R.base, ModularIntegers):
        return R.base.nilpotent_bound() or 1
    return 1


def _reduce_scalar_via(v, R: Ring):
    from .convert import reduce_scalar
    return reduce_scalar(v, R)


def _curve_isogeny_data(EQ: WeierstrassCurve, N: int):
    """(f, tau, log) for the canonical 2-torsion point of the lifted curve:
    f(x) = x * (x +_F tau) computed by chord addition against the torsion
    point, tau its formal coordinate, log the curve logarithm.  Exact."""
    R = EQ.ring
    x0, y0 = _formal_two_torsion(EQ)
    s = _sum_with_point(EQ, x0, y0, N)
    tau = s.constant_term()
    ctx = s.ctx
    x = ctx.gen(ctx.vars[0])
    f = x * s
    L = curve_log(EQ, N)
    return f, tau, L


def _conic_isogeny_data(b: Fraction, c: Fraction, N: int):
    """Same data from the closed form (x + y + b xy)/(1 - c xy) over Q."""
    if b == 0 or Fraction(b).numerator % 2 == 0:
        raise NotOrdinary("conic parameter b is even; law is not ordinary")
    ring = QQ
    tau = Fraction(-2) / b  # root of [2](x) = x(2 + bx)/(1 - c x^2)
    ctx = SeriesCtx(ring, ("x",), N)
    x = ctx.gen("x")
    num = x.scale(1 + b * tau) + ctx.const(tau)
    den = ctx.one() - x.scale(c * tau)
    s = num * den.inverse()
    f = x * s
    # log of the conic law: integral of dx / (1 + b x + c x^2)
    lp = (ctx.one() + x.scale(b) + (x * x).scale(c)).inverse()
    L = lp.truncate(N).integrate()
    return f, tau, L


def _formal_two_torsion(EQ: WeierstrassCurve):
    """The 2-torsion point nearest infinity: Newton on 4x^3 + b2 x^2 + 2 b4 x + b6
    from x = -b2/4, exact over Q or Q[[b]]."""
    from .elliptic import invariants
    R = EQ.ring
    inv = invariants(EQ)
    b2, b4, b6 = inv.b2, inv.b4, inv.b6
    quarter = R.divide(R.one(), R.from_int(4))
    if quarter is None:
        raise QuotientPrecisionError("lift ring must contain 1/4")
    x = R.neg(R.mul(b2, quarter))

    def B(t):
        return R.add(R.scale_int(R.mul(t, R.mul(t, t)), 4),
                     R.add(R.mul(b2, R.mul(t, t)),
                           R.add(R.scale_int(R.mul(b4, t), 2), b6)))

    def Bp(t):
        return R.add(R.scale_int(R.mul(t, t), 12),
                     R.add(R.scale_int(R.mul(b2, t), 2), R.scale_int(b4, 2)))

    for _ in range(64):
        val = B(x)
        if R.is_zero(val):
            break
        step = R.divide(val, Bp(x))
        if step is None:
            raise QuotientPrecisionError("Newton step not invertible")
        x = R.sub(x, step)
    else:
        raise QuotientPrecisionError("two-torsion Newton did not terminate")
    y = R.divide(R.neg(R.add(R.mul(EQ.a1, x), EQ.a3)), R.from_int(2))
    return x, y


class _Laur:
    """z^k * S with S a unit-constant (or zero) univariate series; k may be
    negative.  Minimal Laurent arithmetic for chord computations."""

    def __init__(self, S: Series, k: int):
        if not S.is_zero():
            m = min(e[0] for e in S.terms)
            if m:
                S = Series(S.ctx, {(e[0] - m,): c for e, c in S.terms.items()})
                k += m
        self.S = S
        self.k = k

    @classmethod
    def const(cls, ctx, c):
        return cls(ctx.const(c), 0)

    def __add__(self, o):
        k = min(self.k, o.k)
        a = _shift(self.S, self.k - k)
        b = _shift(o.S, o.k - k)
        return _Laur(a + b, k)

    def __sub__(self, o):
        return self + o.neg()

    def neg(self):
        return _Laur(-self.S, self.k)

    def __mul__(self, o):
        return _Laur(self.S * o.S, self.k + o.k)

    def inverse(self):
        return _Laur(self.S.inverse(), -self.k)

    def to_series(self, prec):
        if self.S.is_zero():
            return self.S.truncate(prec)
        if self.k < 0:
            raise AlgebraError("pole remains; not a power series")
        return _shift(self.S, self.k).truncate(prec)


def _shift(S: Series, m: int) -> Series:
    if m == 0:
        return S
    return Series(S.ctx, {(e[0] + m,): c for e, c in S.terms.items()
                          if e[0] + m < S.ctx.prec})


def _sum_with_point(E: WeierstrassCurve, x0, y0, N: int) -> Series:
    """z-coordinate of P(z) + (x0, y0) as a power series in z; constant term is
    the formal coordinate -x0/y0 of the fixed point."""
    R = E.ring
    P = N + 8
    ctx = SeriesCtx(R, ("x",), P)
    w = curve_w_series(E, P + 3)
    V = Series(ctx, {(n - 3,): c for (n,), c in w.terms.items() if n - 3 < P})
    Vinv = V.inverse()
    a1, a2, a3, a4, a6 = E.coefficients()
    X = _Laur(Vinv, -2)
    Yl = _Laur(-Vinv, -3)
    c = lambda v: _Laur.const(ctx, v)
    mu = (Yl - c(y0)) * (X - c(x0)).inverse()
    x3 = mu * mu + c(a1) * mu - c(a2) - X - c(x0)
    y3 = mu * (X - x3) - Yl - c(a1) * x3 - c(a3)
    s = x3.neg() * y3.inverse()
    return s.to_series(N)


# -- recognition in the family and the Frobenius defect ------------------------------

@dataclass
class Recognition:
    b_param: Series     # psi^2(b) as a series over Z/2^k[[b]]'s coefficients
    phi: Series         # strict isomorphism onto the family member


def recognize_in_family(Fq: FormalGroupLaw) -> Recognition:
    """Given a law over Z/2^k[[b]] congruent mod 2 to the family at b^2, solve
    jointly for b' and a strict iso phi with phi(Fq) = F_family(b')(phi, phi),
    lifting 2-adically from the Frobenius-twist seed."""
    R = Fq.ring
    if not (isinstance(R, SeriesRing) and isinstance(R.base, ModularIntegers)):
        raise RecognitionFailed("expected a Z/2^k[[b]] coefficient ring")
    k = R.base.nilpotent_bound()
    if k is None or 2 ** k != R.base.m:
        raise RecognitionFailed("modulus must be a power of 2")
    bprec = R.prec
    xprec = Fq.prec
    bvar = R.var
    # mod-2 world
    R2 = SeriesRing(PrimeField(2), bvar, bprec)
    red2 = lambda s: s.map_coefficients(lambda c: _mod2_series(c, R2), R2)
    b2sq = R2.mul(R2.gen(), R2.gen())
    F0law = family_fgl_at(R2, b2sq, xprec - 1)
    F0 = F0law.F
    Fq2 = red2(Fq.F)
    if not Fq2 == F0:
        raise RecognitionFailed("mod-2 reduction is not the Frobenius twist of the family")
    # unknown layout and mod-2 columns
    rows = []
    for i in range(xprec):
        for j in range(xprec - i):
            for m in range(bprec):
                rows.append((i, j, m))
    row_at = {r: n for n, r in enumerate(rows)}

    def biv_bits(s: Series) -> int:
        out = 0
        for (i, j), c in s.terms.items():
            for (m,), bit in c.terms.items():
                if bit % 2:
                    out |= 1 << row_at[(i, j, m)]
        return out

    x2, y2 = F0.ctx.gen("x"), F0.ctx.gen("y")
    G1 = F0.derivative("x")
    G2 = F0.derivative("y")
    Gs = _family_param_derivative(R2, b2sq, xprec)
    Fpow = {1: F0}
    for d in range(2, xprec):
        Fpow[d] = Fpow[d - 1] * F0
    cols = []
    col_meta = []
    bgen = R2.gen()
    # d = 1 corrections keep phi'(0) = 1 mod 2 only: the pair (b', phi) has a
    # joint kernel direction and no lift may exist with phi'(0) = 1 exactly
    for d in range(1, xprec):
        for m in range(bprec):
            bm = R2.pow(bgen, m) if m else R2.one()
            col = (Fpow[d].scale(bm) - G1 * (x2 ** d).scale(bm)
                   - G2 * (y2 ** d).scale(bm))
            cols.append(biv_bits(col))
            col_meta.append(("phi", d, m))
    for m in range(bprec):
        bm = R2.pow(bgen, m) if m else R2.one()
        cols.append(biv_bits(Gs.scale(bm)))
        col_meta.append(("b", m))

    ctx1 = SeriesCtx(R, ("t",), xprec)
    phi = ctx1.gen("t")
    bparam = R.mul(R.gen(), R.gen())
    for level in range(1, k):
        Glaw = family_fgl_at(R, bparam, xprec - 1)
        u, v = Fq.ctx.gen("x"), Fq.ctx.gen("y")
        phiu = phi.compose({"t": u})
        phiv = phi.compose({"t": v})
        resid = phi.compose({"t": Fq.F}) - Glaw.F.compose({"x": phiu, "y": phiv})
        target = 0
        scale = 2 ** level
        for (i, j), c in resid.terms.items():
            for (m,), val in c.terms.items():
                if val % scale:
                    raise RecognitionFailed(f"residual not divisible by 2^{level}")
                if (val // scale) % 2:
                    target |= 1 << row_at[(i, j, m)]
        if target == 0:
            continue
        sol = f2_solve(cols, target, len(rows))
        if sol is None:
            raise RecognitionFailed(f"no lift at 2-adic level {level}")
        phi_delta = {}
        for idx, meta in enumerate(col_meta):
            if not (sol >> idx) & 1:
                continue
            if meta[0] == "phi":
                _, d, m = meta
                key = (d,)
                cur = phi_delta.get(key, R.zero())
                phi_delta[key] = R.add(cur, _bpow_scaled(R, m, scale))
            else:
                _, m = meta
                bparam = R.add(bparam, _bpow_scaled(R, m, scale))
        for key, cscal in phi_delta.items():
            old = phi.terms.get(key, R.zero())
            phi = Series(ctx1, {**phi.terms, key: R.add(old, cscal)})
    # final verification at full modulus
    Glaw = family_fgl_at(R, bparam, xprec - 1)
    u, v = Fq.ctx.gen("x"), Fq.ctx.gen("y")
    phiu = phi.compose({"t": u})
    phiv = phi.compose({"t": v})
    resid = phi.compose({"t": Fq.F}) - Glaw.F.compose({"x": phiu, "y": phiv})
    if not resid.is_zero():
        raise RecognitionFailed("recognition residual nonzero at full modulus")
    return Recognition(bparam, phi)


def _bpow_scaled(R: SeriesRing, m: int, scale: int) -> Series:
    return Series(R.ctx, {(m,): R.base.from_int(scale)})


def _mod2_series(c: Series, R2: SeriesRing) -> Series:
    return c.map_coefficients(lambda v: v % 2, R2.base)


def _family_param_derivative(R2: SeriesRing, at_param: Series, xprec: int) -> Series:
    """d/ds of the family law at parameter s, evaluated at s = at_param, mod 2."""
    P = PolyRing(PrimeField(2), ("s",))
    E = gamma1_3_curve(P, P.one(), P.gen("s"))
    Fs = formal_group_of_curve(E, xprec - 1).rename(("x", "y"))
    ctx = SeriesCtx(R2, ("x", "y"), xprec)
    out = {}
    for e, poly in Fs.terms.items():
        dc = _poly_derivative(poly, 0)
        if dc.is_zero():
            continue
        val = _poly_eval_series(dc, at_param, R2)
        if not R2.is_zero(val):
            out[e] = val
    return Series(ctx, out)


def _poly_derivative(p: Poly, var_index: int) -> Poly:
    out = {}
    R = p.pring.base
    for e, c in p.terms.items():
        if e[var_index] == 0:
            continue
        ne = list(e)
        ne[var_index] -= 1
        v = R.scale_int(c, e[var_index])
        if not R.is_zero(v):
            out[tuple(ne)] = v
    return Poly(p.pring, out)


def _poly_eval_series(p: Poly, val: Series, SR: SeriesRing) -> Series:
    out = SR.zero()
    for e, c in p.terms.items():
        term = SR.const(c)
        for k in range(e[0]):
            term = SR.mul(term, val)
        out = SR.add(out, term)
    return out


def theta_defect(x, psi2_x, ring: Ring | None = None):
    """theta with psi^2(x) = x^2 + 2 theta(x).

    Integers/rationals: exact division by 2.  Series over Z/2^k[[b]]: the
    result lives over Z/2^(k-1)[[b]].
    """
    if isinstance(x, (int, Fraction)):
        diff = Fraction(psi2_x) - Fraction(x) ** 2
        if diff.numerator % 2 != 0 or diff.denominator % 2 == 0:
            raise NotAFrobeniusLift(f"psi^2(x) - x^2 = {diff} is not 2-divisible")
        return diff / 2
    if isinstance(x, Series) and ring is not None and isinstance(ring, SeriesRing):
        base = ring.base
        if not isinstance(base, ModularIntegers) or base.m % 2:
            raise NotAFrobeniusLift("need a 2-power modulus")
        k = base.nilpotent_bound()
        half = ModularIntegers(2 ** (k - 1)) if k > 1 else PrimeField(2)
        target = SeriesRing(half, ring.var, ring.prec)
        diff = ring.sub(psi2_x, ring.mul(x, x))
        out = {}
        for e, c in diff.terms.items():
            if c % 2:
                raise NotAFrobeniusLift("psi^2(b) - b^2 has an odd coefficient")
            v = (c // 2) % half.m
            if v:
                out[e] = v
        return Series(target.ctx, out)
    raise TypeError("unsupported carrier for theta")
