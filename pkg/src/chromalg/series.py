"""Truncated multivariate power series, exact coefficients.

A Series stores terms of total degree < prec.  Binary operations require the
same variable tuple (no implicit unions) and truncate to the minimum prec.
SeriesRing wraps univariate series as a coefficient Ring, giving carriers such
as Z/4[[b]] or Q[[b]] whose elements in turn coefficient other series.
"""

from __future__ import annotations

from .errors import (CompositionError, MixedVariablesError, NotInvertible,
                     PreparationFailed, TruncationError)
from .rings import Ring


class SeriesCtx:
    __slots__ = ("ring", "vars", "prec")

    def __init__(self, ring: Ring, vars: tuple[str, ...], prec: int):
        if prec < 1:
            raise ValueError("prec must be >= 1")
        self.ring = ring
        self.vars = tuple(vars)
        self.prec = prec

    def compatible(self, other: "SeriesCtx"):
        if self.vars != other.vars:
            raise MixedVariablesError(f"{self.vars} vs {other.vars}")
        if self.ring is not other.ring and repr(self.ring) != repr(other.ring):
            raise MixedVariablesError(
                f"coefficient rings differ: {self.ring!r} vs {other.ring!r}")

    def at_prec(self, prec: int) -> "SeriesCtx":
        return SeriesCtx(self.ring, self.vars, prec)

    def series(self, terms: dict) -> "Series":
        clean = {}
        n = len(self.vars)
        for exp, c in terms.items():
            exp = tuple(exp)
            if len(exp) != n or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent {exp}")
            if sum(exp) >= self.prec:
                continue
            if not self.ring.is_zero(c):
                clean[exp] = self.ring.add(clean[exp], c) if exp in clean else c
        return Series(self, {e: c for e, c in clean.items() if not self.ring.is_zero(c)})

    def zero(self):
        return Series(self, {})

    def one(self):
        return self.series({(0,) * len(self.vars): self.ring.one()})

    def const(self, c):
        return self.series({(0,) * len(self.vars): c})

    def from_int(self, n):
        return self.const(self.ring.from_int(n))

    def gen(self, name: str):
        i = self.vars.index(name)
        e = [0] * len(self.vars)
        e[i] = 1
        return self.series({tuple(e): self.ring.one()})


class Series:
    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: SeriesCtx, terms: dict):
        self.ctx = ctx
        self.terms = terms

    # -- basic queries ---------------------------------------------------

    @property
    def prec(self):
        return self.ctx.prec

    def coefficient(self, exp):
        exp = tuple(exp)
        if sum(exp) >= self.ctx.prec:
            raise TruncationError(f"degree {sum(exp)} >= prec {self.ctx.prec}")
        return self.terms.get(exp, self.ctx.ring.zero())

    def constant_term(self):
        return self.terms.get((0,) * len(self.ctx.vars), self.ctx.ring.zero())

    def is_zero(self):
        return not self.terms

    def order(self):
        """Least total degree of a nonzero term; None if zero to precision."""
        if not self.terms:
            return None
        return min(sum(e) for e in self.terms)

    def truncate(self, prec: int) -> "Series":
        prec = min(prec, self.ctx.prec)
        ctx = self.ctx.at_prec(prec)
        return Series(ctx, {e: c for e, c in self.terms.items() if sum(e) < prec})

    # -- arithmetic --------------------------------------------------------

    def _meet(self, other: "Series"):
        self.ctx.compatible(other.ctx)
        prec = min(self.ctx.prec, other.ctx.prec)
        return self.truncate(prec), other.truncate(prec)

    def __add__(self, other):
        a, b = self._meet(self._co(other))
        R = a.ctx.ring
        out = dict(a.terms)
        for e, c in b.terms.items():
            if e in out:
                s = R.add(out[e], c)
                if R.is_zero(s):
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return Series(a.ctx, out)

    def __neg__(self):
        R = self.ctx.ring
        return Series(self.ctx, {e: R.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._co(other))

    def __mul__(self, other):
        a, b = self._meet(self._co(other))
        R = a.ctx.ring
        prec = a.ctx.prec
        out = {}
        bitems = sorted(b.terms.items(), key=lambda kv: sum(kv[0]))
        for e1, c1 in a.terms.items():
            d1 = sum(e1)
            for e2, c2 in bitems:
                if d1 + sum(e2) >= prec:
                    break
                e = tuple(x + y for x, y in zip(e1, e2))
                p = R.mul(c1, c2)
                if R.is_zero(p):
                    continue
                if e in out:
                    s = R.add(out[e], p)
                    if R.is_zero(s):
                        del out[e]
                    else:
                        out[e] = s
                else:
                    out[e] = p
        return Series(a.ctx, out)

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return self._co(other) - self

    def _co(self, other):
        if isinstance(other, Series):
            return other
        if isinstance(other, int):
            return self.ctx.from_int(other)
        return self.ctx.const(other)

    def scale(self, c):
        R = self.ctx.ring
        out = {}
        for e, x in self.terms.items():
            p = R.mul(c, x)
            if not R.is_zero(p):
                out[e] = p
        return Series(self.ctx, out)

    def __pow__(self, n: int):
        out = self.ctx.at_prec(self.ctx.prec).one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        a, b = self._meet(self._co(other))
        if set(a.terms) != set(b.terms):
            return False
        R = a.ctx.ring
        return all(R.eq(c, b.terms[e]) for e, c in a.terms.items())

    def __hash__(self):
        raise TypeError("Series is unhashable")

    # -- structural ops ----------------------------------------------------

    def map_coefficients(self, fn, target_ring: Ring) -> "Series":
        ctx = SeriesCtx(target_ring, self.ctx.vars, self.ctx.prec)
        out = {}
        for e, c in self.terms.items():
            v = fn(c)
            if not target_ring.is_zero(v):
                out[e] = v
        return Series(ctx, out)

    def set_var_zero(self, name: str) -> "Series":
        i = self.ctx.vars.index(name)
        return Series(self.ctx, {e: c for e, c in self.terms.items() if e[i] == 0})

    def drop_var(self, name: str) -> "Series":
        """Remove a variable that no longer occurs."""
        i = self.ctx.vars.index(name)
        ctx = SeriesCtx(self.ctx.ring, self.ctx.vars[:i] + self.ctx.vars[i + 1:], self.ctx.prec)
        out = {}
        for e, c in self.terms.items():
            if e[i] != 0:
                raise ValueError(f"{name} still occurs")
            out[e[:i] + e[i + 1:]] = c
        return Series(ctx, out)

    def rename(self, new_vars: tuple[str, ...]) -> "Series":
        ctx = SeriesCtx(self.ctx.ring, tuple(new_vars), self.ctx.prec)
        return Series(ctx, dict(self.terms))

    def compose(self, subs: dict) -> "Series":
        """Substitute subs[var] (a Series in a common target ctx) for each var.

        Every substituted series must have zero constant term.
        """
        targets = [s for s in subs.values() if isinstance(s, Series)]
        if not targets:
            raise ValueError("need at least one substitution series")
        tctx = targets[0].ctx
        for s in targets:
            tctx.compatible(s.ctx)
        prec = min([self.ctx.prec] + [s.ctx.prec for s in targets])
        tctx = tctx.at_prec(prec)
        R = self.ctx.ring
        vals = []
        for v in self.ctx.vars:
            if v not in subs:
                raise ValueError(f"no substitution for {v}")
            s = subs[v]
            if not R.is_zero(s.constant_term()):
                raise CompositionError(f"substitution for {v} has nonzero constant term")
            vals.append(s.truncate(prec))
        # memoized powers per variable
        pows = [{0: tctx.one()} for _ in vals]

        def power(i, k):
            cache = pows[i]
            if k not in cache:
                cache[k] = power(i, k - 1) * vals[i]
            return cache[k]

        out = tctx.zero()
        for e, c in sorted(self.terms.items(), key=lambda kv: sum(kv[0])):
            if sum(e) >= prec and sum(e) > 0:
                continue
            term = tctx.const(c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def eval_scalars(self, values: dict):
        """Total evaluation at ring scalars (use only for polynomial content
        or where the argument is topologically small)."""
        R = self.ctx.ring
        out = R.zero()
        for e, c in self.terms.items():
            term = c
            for i, k in enumerate(e):
                if k:
                    term = R.mul(term, R.pow(values[self.ctx.vars[i]], k))
            out = R.add(out, term)
        return out

    # -- univariate helpers --------------------------------------------------

    def _univar(self):
        if len(self.ctx.vars) != 1:
            raise ValueError("univariate operation on multivariate series")

    def ucoeff(self, k: int):
        self._univar()
        return self.terms.get((k,), self.ctx.ring.zero())

    def inverse(self) -> "Series":
        """Multiplicative inverse; constant term must be a unit."""
        self_ctx = self.ctx
        R = self_ctx.ring
        c0 = self.constant_term()
        if not R.is_unit(c0):
            raise NotInvertible("constant term is not a unit")
        u = R.inv(c0)
        # Newton: g <- g*(2 - f*g), doubling correct order each step
        g = self_ctx.const(u)
        order = 1
        two = self_ctx.from_int(2)
        while order < self_ctx.prec:
            g = (g * (two - self * g))
            order *= 2
        return g

    def derivative(self, name: str | None = None) -> "Series":
        i = 0 if name is None and len(self.ctx.vars) == 1 else self.ctx.vars.index(name)
        R = self.ctx.ring
        out = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            ne = list(e)
            ne[i] -= 1
            v = R.scale_int(c, e[i])
            if not R.is_zero(v):
                out[tuple(ne)] = v
        return Series(self.ctx, out)

    def integrate(self) -> "Series":
        """Univariate antiderivative with zero constant term (needs exact
        division by integers in the coefficient ring)."""
        self._univar()
        R = self.ctx.ring
        ctx = self.ctx.at_prec(self.ctx.prec + 1)
        out = {}
        for (k,), c in self.terms.items():
            q = R.divide(c, R.from_int(k + 1))
            if q is None:
                raise NotInvertible(f"cannot divide by {k + 1} in {R!r}")
            if not R.is_zero(q):
                out[(k + 1,)] = q
        return Series(ctx, out)

    def reverse(self) -> "Series":
        """Compositional inverse g with f(g(x)) = x, for f(0)=0, f'(0) a unit."""
        self._univar()
        R = self.ctx.ring
        if not R.is_zero(self.constant_term()):
            raise NotInvertible("reversion needs zero constant term")
        f1 = self.ucoeff(1)
        if not R.is_unit(f1):
            raise NotInvertible("linear coefficient is not a unit")
        inv_f1 = R.inv(f1)
        prec = self.ctx.prec
        ctx = self.ctx
        g_terms = {(1,): inv_f1}
        for n in range(2, prec):
            g = Series(ctx, dict(g_terms))
            comp = self.compose({ctx.vars[0]: g})
            resid = comp.ucoeff(n)  # want 0
            # f(g + c x^n) adds f1*c at degree n
            c = R.neg(R.mul(inv_f1, resid))
            if not R.is_zero(c):
                g_terms[(n,)] = c
        return Series(ctx, g_terms)


# -- Weierstrass preparation -------------------------------------------------

def weierstrass_prepare(f: Series):
    """Factor f = unit * distinguished over a local ring whose maximal ideal is
    nilpotent at working precision (e.g. Z/2^k or Z/2^k[[b]] truncated).

    Returns (unit Series, distinguished coefficient list low-first, degree d).
    The distinguished polynomial is monic of degree d = index of the first
    unit coefficient of f; its lower coefficients lie in the maximal ideal.
    """
    f._univar()
    R = f.ctx.ring
    prec = f.ctx.prec
    d = None
    for k in range(prec):
        if R.is_unit(f.ucoeff(k)):
            d = k
            break
    if d is None:
        raise PreparationFailed("no unit coefficient below truncation order")
    ctx = f.ctx
    # f = A + x^d * B with A of degree < d (coefficients in the maximal ideal)
    A = Series(ctx, {e: c for e, c in f.terms.items() if e[0] < d})
    B = Series(ctx, {(e[0] - d,): c for e, c in f.terms.items() if e[0] >= d})
    Binv = B.inverse()

    def tau(h: Series) -> Series:
        return Series(ctx, {(e[0] - d,): c for e, c in h.terms.items() if e[0] >= d})

    g = Series(ctx, {(d,): R.one()})  # divide x^d by f
    bound = R.nilpotent_bound()
    iters = (bound + 2) if bound is not None else prec + 4
    q = ctx.zero()
    for _ in range(iters):
        q_next = Binv * tau(g - q * A)
        if q_next == q:
            break
        q = q_next
    else:
        raise PreparationFailed("preparation iteration did not stabilize")
    r = g - q * f  # degree < d remainder
    if any(e[0] >= d for e in r.terms):
        raise PreparationFailed("division remainder not reduced")
    dist = [R.neg(r.ucoeff(k)) for k in range(d)] + [R.one()]
    unit = q.inverse()
    return unit, dist, d


def series_div_oracle(num: list, den: list, ring: Ring, n: int) -> list:
    """Long-division oracle: first n coefficients of num/den (den[0] a unit).
    Kept independent of Series.inverse for cross-checks."""
    out = []
    inv0 = ring.inv(den[0])
    rem = list(num) + [ring.zero()] * n
    for k in range(n):
        c = ring.mul(rem[k], inv0)
        out.append(c)
        for j, dj in enumerate(den):
            if k + j < len(rem):
                rem[k + j] = ring.sub(rem[k + j], ring.mul(c, dj))
    return out


class SeriesRing(Ring):
    """Univariate truncated power series R[[t]]/(t^prec) as a coefficient Ring."""

    def __init__(self, base: Ring, var: str, prec: int):
        self.base = base
        self.var = var
        self.ctx = SeriesCtx(base, (var,), prec)
        self.prec = prec
        self.char = base.char

    def zero(self):
        return self.ctx.zero()

    def one(self):
        return self.ctx.one()

    def from_int(self, n):
        return self.ctx.from_int(n)

    def const(self, c):
        return self.ctx.const(c)

    def gen(self):
        return self.ctx.gen(self.var)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def eq(self, a, b):
        return a == b

    def is_zero(self, a):
        return a.is_zero()

    def is_unit(self, a):
        return self.base.is_unit(a.constant_term())

    def inv(self, a):
        return a.inverse()

    def divide(self, a, b):
        if self.is_unit(b):
            return a * b.inverse()
        # divide through by common power of t, then by the unit part if possible
        if b.is_zero():
            return None
        ob = b.order()
        if ob and ob > 0:
            oa = a.order()
            if a.is_zero():
                return self.zero()
            if oa is None or oa < ob:
                return None
            ash = Series(self.ctx, {(e[0] - ob,): c for e, c in a.terms.items()})
            bsh = Series(self.ctx, {(e[0] - ob,): c for e, c in b.terms.items()})
            return self.divide(ash, bsh)
        # non-unit constant term: coefficientwise attempt when b is constant
        if len(b.terms) == 1 and (0,) in b.terms:
            c = b.terms[(0,)]
            out = {}
            for e, x in a.terms.items():
                q = self.base.divide(x, c)
                if q is None:
                    return None
                out[e] = q
            return Series(self.ctx, out)
        return None

    def solve_int(self, n, b):
        out = {}
        for e, c in b.terms.items():
            sols = self.base.solve_int(n, c)
            if not sols:
                return []
            out[e] = sols[0]
        return [Series(self.ctx, out)]

    def rationalize(self):
        rbase, f = self.base.rationalize()
        target = SeriesRing(rbase, self.var, self.prec)
        return target, lambda s: s.map_coefficients(f, rbase)

    def nilpotent_bound(self):
        b = self.base.nilpotent_bound()
        if b is None:
            return None
        return b + self.prec

    def render(self, a):
        if a.is_zero():
            return "0"
        parts = []
        for (k,) in sorted(a.terms):
            c = self.base.render(a.terms[(k,)])
            if k == 0:
                parts.append(c)
            else:
                head = self.var if k == 1 else f"{self.var}^{k}"
                parts.append(head if c == "1" else f"({c})*{head}")
        return " + ".join(parts) + f" + O({self.var}^{self.prec})"

    def __repr__(self):
        return f"{self.base!r}[[{self.var}]]<{self.prec}>"
