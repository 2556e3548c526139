"""Mod-2 Steenrod algebra in the Milnor basis.

Monomials are tuples (r1, r2, ...) without trailing zeros, of degree
sum r_i (2^i - 1); elements are frozensets of monomials (F2 sums).  Products
run over Milnor matrices with carry-free multinomial coefficients.

Two independent oracles live alongside: an Adem-relation straightener on
admissible words, and operator actions on polynomial algebras (Cartan for
Sq^k, coproduct expansion for Milnor generators), used to cross-check the
Milnor multiplication.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import FreenessViolation
from .linalg import f2_rref, f2_in_span, f2_reduce


def mono_degree(r: tuple) -> int:
    return sum(ri * (2 ** (i + 1) - 1) for i, ri in enumerate(r))


def _strip(r) -> tuple:
    r = list(r)
    while r and r[-1] == 0:
        r.pop()
    return tuple(r)


def sq(n: int) -> frozenset:
    """Sq^n as a Milnor element (single-entry monomial)."""
    if n == 0:
        return frozenset({()})
    return frozenset({(n,)})


def milnor_primitive(i: int) -> frozenset:
    """Q^i = Sq(0, ..., 0, 1) with the 1 in slot i+1; degree 2^(i+1) - 1."""
    return frozenset({_strip((0,) * i + (1,))})


def add(a: frozenset, b: frozenset) -> frozenset:
    return a ^ b


UNIT = frozenset({()})
ZERO = frozenset()


@lru_cache(maxsize=None)
def basis(d: int) -> tuple:
    """All Milnor monomials of degree d, lexicographically sorted."""
    if d < 0:
        return ()
    out = []

    def rec(i, rem, acc):
        wt = 2 ** (i + 1) - 1
        if rem == 0:
            out.append(_strip(acc))
            return
        if wt > rem:
            return
        for k in range(rem // wt + 1):
            rec(i + 1, rem - k * wt, acc + [k])

    rec(0, d, [])
    return tuple(sorted(out))


def dims_table(N: int) -> list[int]:
    return [len(basis(d)) for d in range(N + 1)]


def poincare_product_dims(N: int) -> list[int]:
    """Coefficients of prod_{i>=1} 1/(1 - q^(2^i - 1)): an independent count."""
    out = [1] + [0] * N
    i = 1
    while 2 ** i - 1 <= N:
        w = 2 ** i - 1
        for d in range(w, N + 1):
            out[d] += out[d - w]
        i += 1
    return out


def _carry_free(parts: list[int], total: int) -> bool:
    return sum(bin(p).count("1") for p in parts) == bin(total).count("1")


def milnor_product_mono(r: tuple, s: tuple) -> frozenset:
    """Product of two Milnor monomials: sum over matrices with row sums
    weighted by powers of 2 matching r and column sums matching s."""
    k, l = len(r), len(s)
    if k == 0:
        return frozenset({s})
    if l == 0:
        return frozenset({r})
    results = set()

    # inner entries x[i][j], 1<=i<=k, 1<=j<=l; then
    # x[i][0] = r_i - sum_j 2^j x[i][j] >= 0,  x[0][j] = s_j - sum_i x[i][j] >= 0
    def rec(i, row_budget, cols_used, inner):
        if i > k:
            colsums = [s[j - 1] - cols_used[j] for j in range(1, l + 1)]
            if any(c < 0 for c in colsums):
                return
            X = {}
            for (a, b), v in inner.items():
                X[(a, b)] = v
            for a in range(1, k + 1):
                X[(a, 0)] = row_budget[a]
            for b in range(1, l + 1):
                X[(0, b)] = colsums[b - 1]
            nmax = k + l
            t = []
            good = True
            for n in range(1, nmax + 1):
                parts = [X.get((a, n - a), 0) for a in range(max(0, n - l), min(k, n) + 1)]
                tot = sum(parts)
                if not _carry_free([p for p in parts if p], tot):
                    good = False
                    break
                t.append(tot)
            if good:
                results.symmetric_difference_update({_strip(t)})
            return

        def rec_cols(j, rem, cu, inner2):
            if j > l:
                nb = dict(row_budget)
                nb[i] = rem
                rec(i + 1, nb, cu, inner2)
                return
            maxv = rem // (2 ** j)
            for v in range(maxv + 1):
                cu2 = dict(cu)
                cu2[j] = cu.get(j, 0) + v
                if cu2[j] > s[j - 1]:
                    break
                inner3 = dict(inner2)
                if v:
                    inner3[(i, j)] = v
                rec_cols(j + 1, rem - v * (2 ** j), cu2, inner3)

        rec_cols(1, r[i - 1], cols_used, inner)

    rec(1, {a: r[a - 1] for a in range(1, k + 1)}, {j: 0 for j in range(1, l + 1)}, {})
    return frozenset(results)


def milnor_product(a: frozenset, b: frozenset) -> frozenset:
    out = set()
    for r in a:
        for s in b:
            out.symmetric_difference_update(milnor_product_mono(r, s))
    return frozenset(out)


def element_degree(a: frozenset):
    degs = {mono_degree(r) for r in a}
    if len(degs) > 1:
        raise ValueError("inhomogeneous element")
    return degs.pop() if degs else None


# -- Adem / operator oracles ---------------------------------------------------

@lru_cache(maxsize=None)
def adem_expand(a: int, b: int) -> frozenset:
    """Sq^a Sq^b as an F2 set of admissible words (a < 2b rewritten by the Adem
    relation, recursively)."""
    from math import comb
    if a == 0:
        return frozenset({(b,)} if b else {()})
    if b == 0:
        return frozenset({(a,)})
    if a >= 2 * b:
        return frozenset({(a, b)})
    out = set()
    for c in range(a // 2 + 1):
        if comb(b - c - 1, a - 2 * c) % 2:
            if c == 0:
                out.symmetric_difference_update({(a + b,)})
            else:
                out.symmetric_difference_update(
                    {w for w in adem_word_normalize((a + b - c, c))})
    return frozenset(out)


@lru_cache(maxsize=None)
def adem_word_normalize(word: tuple) -> frozenset:
    """Rewrite an arbitrary Sq word into admissible words over F2."""
    word = tuple(w for w in word if w != 0)
    if len(word) <= 1:
        return frozenset({word})
    for i in range(len(word) - 1):
        if word[i] < 2 * word[i + 1]:
            out = set()
            for repl in adem_expand(word[i], word[i + 1]):
                merged = word[:i] + repl + word[i + 2:]
                out.symmetric_difference_update(adem_word_normalize(merged))
            return frozenset(out)
    return frozenset({word})


def sq_on_poly(i: int, poly: frozenset, nvars: int) -> frozenset:
    """Sq^i on an F2 polynomial in degree-one generators (set of exponent
    tuples), via the Cartan formula."""
    out = set()
    for mono in poly:
        out.symmetric_difference_update(_sq_mono(i, mono, nvars))
    return frozenset(out)


@lru_cache(maxsize=None)
def _sq_mono(i: int, mono: tuple, nvars: int) -> frozenset:
    from math import comb
    if i == 0:
        return frozenset({mono})
    nz = [k for k, e in enumerate(mono) if e]
    if not nz:
        return frozenset()
    if len(nz) == 1:
        k = nz[0]
        n = mono[k]
        if comb(n, i) % 2:
            new = list(mono)
            new[k] = n + i
            return frozenset({tuple(new)})
        return frozenset()
    k = nz[0]
    head = tuple(mono[j] if j == k else 0 for j in range(len(mono)))
    tail = tuple(0 if j == k else mono[j] for j in range(len(mono)))
    out = set()
    for j in range(i + 1):
        left = _sq_mono(j, head, nvars)
        right = _sq_mono(i - j, tail, nvars)
        for lm in left:
            for rm in right:
                prod = tuple(a + b for a, b in zip(lm, rm))
                out.symmetric_difference_update({prod})
    return frozenset(out)


def word_on_poly(word: tuple, poly: frozenset, nvars: int) -> frozenset:
    for i in reversed(word):
        poly = sq_on_poly(i, poly, nvars)
    return poly


@lru_cache(maxsize=None)
def _milnor_mono_on_power(r: tuple, n: int) -> frozenset:
    """Sq(r) acting on x^n in F2[x]: multinomial(n; n - sum r, r1, r2, ...) times
    x^(n - sum r + sum r_i 2^i)."""
    total = sum(r)
    if total > n:
        return frozenset()
    parts = [n - total] + list(r)
    if not _carry_free([p for p in parts if p], n):
        return frozenset()
    new = n - total + sum(ri * 2 ** (i + 1) for i, ri in enumerate(r))
    return frozenset({new})


def milnor_on_poly(r: tuple, poly: frozenset, nvars: int) -> frozenset:
    out = set()
    for mono in poly:
        out.symmetric_difference_update(_milnor_mono_on_mono(r, mono))
    return frozenset(out)


@lru_cache(maxsize=None)
def _milnor_mono_on_mono(r: tuple, mono: tuple) -> frozenset:
    nz = [k for k, e in enumerate(mono) if e]
    if not nz:
        return frozenset({mono}) if not r else frozenset()
    k = nz[0]
    rest = tuple(0 if j == k else mono[j] for j in range(len(mono)))
    out = set()
    for split in _coproduct_splits(r):
        e, f = split
        left = _milnor_mono_on_power(e, mono[k])
        if not left:
            continue
        for lp in left:
            for rm in _milnor_mono_on_mono(f, rest):
                new = tuple(lp if j == k else rm[j] for j in range(len(mono)))
                out.symmetric_difference_update({new})
    return frozenset(out)


@lru_cache(maxsize=None)
def _coproduct_splits(r: tuple):
    """Coproduct of Sq(r): all (E, F) with E + F = r componentwise."""
    if not r:
        return (((), ()),)
    out = []

    def rec(i, e, f):
        if i == len(r):
            out.append((_strip(e), _strip(f)))
            return
        for v in range(r[i] + 1):
            rec(i + 1, e + [v], f + [r[i] - v])

    rec(0, [], [])
    return tuple(out)


def element_on_poly(a: frozenset, poly: frozenset, nvars: int) -> frozenset:
    out = set()
    for r in a:
        out.symmetric_difference_update(milnor_on_poly(r, poly, nvars))
    return frozenset(out)


# -- profiles -------------------------------------------------------------------

class Profile:
    """Exponent bounds r_i < bound(i) (1-indexed) cutting out a subalgebra."""

    def __init__(self, kind: str, n: int):
        if kind not in ("E", "A"):
            raise ValueError("profile kind must be 'E' or 'A'")
        self.kind = kind
        self.n = n

    def bound(self, i: int) -> int:
        if self.kind == "E":
            return 2 if i <= self.n + 1 else 1
        return 2 ** max(self.n + 2 - i, 0)

    def member(self, r: tuple) -> bool:
        return all(ri < self.bound(i + 1) for i, ri in enumerate(r))

    def algebra_basis(self) -> list[tuple]:
        """Finite Milnor-monomial basis of the subalgebra."""
        bounds = []
        i = 1
        while self.bound(i) > 1:
            bounds.append(self.bound(i))
            i += 1
        out = []

        def rec(j, acc):
            if j == len(bounds):
                out.append(_strip(acc))
                return
            for v in range(bounds[j]):
                rec(j + 1, acc + [v])

        rec(0, [])
        return sorted(out, key=lambda r: (mono_degree(r), r))

    def closure_check(self) -> bool:
        bs = self.algebra_basis()
        members = set(bs)
        for a in bs:
            for b in bs:
                prod = milnor_product_mono(a, b)
                if not all(m in members for m in prod):
                    return False
        return True

    def dims(self, N: int) -> list[int]:
        out = [0] * (N + 1)
        for r in self.algebra_basis():
            d = mono_degree(r)
            if d <= N:
                out[d] += 1
        return out

    def total_dim(self) -> int:
        return len(self.algebra_basis())

    def __repr__(self):
        return f"{self.kind}({self.n})"


def exterior_generators_span(n: int) -> list[frozenset]:
    """Products of distinct Milnor primitives Q^0..Q^n (2^(n+1) elements)."""
    out = [UNIT]
    for i in range(n + 1):
        qi = milnor_primitive(i)
        out = out + [milnor_product(e, qi) for e in out]
    return out


# -- quotient modules A // B ------------------------------------------------------

class QuotientModule:
    """A // B = A / A.B+ with lexicographically minimal coset representatives.

    Per degree: `reps[d]` (indices into basis(d)), the rref of the ideal span,
    and cached left actions of Sq(2^i).
    """

    def __init__(self, profile: Profile, N: int):
        self.profile = profile
        self.N = N
        self.ideal_basis = {}
        self.ideal_pivots = {}
        self.reps = {}
        bplus = [r for r in profile.algebra_basis() if r != ()]
        for d in range(N + 1):
            mons = basis(d)
            index = {m: i for i, m in enumerate(mons)}
            span_rows = []
            for b in bplus:
                e = mono_degree(b)
                if e > d:
                    continue
                for a in basis(d - e):
                    prod = milnor_product_mono(a, b)
                    vec = 0
                    for m in prod:
                        vec |= 1 << index[m]
                    if vec:
                        span_rows.append(vec)
            bas, piv = f2_rref(span_rows)
            self.ideal_basis[d] = bas
            self.ideal_pivots[d] = piv
            pivset = set(piv)
            self.reps[d] = [i for i in range(len(mons)) if i not in pivset]

    def dim(self, d: int) -> int:
        return len(self.reps[d])

    def dims(self) -> list[int]:
        return [self.dim(d) for d in range(self.N + 1)]

    def reduce_vector(self, d: int, vec: int) -> int:
        return f2_reduce(self.ideal_basis[d], self.ideal_pivots[d], vec)

    def element_vector(self, d: int, elem: frozenset) -> int:
        index = {m: i for i, m in enumerate(basis(d))}
        vec = 0
        for m in elem:
            vec |= 1 << index[m]
        return vec

    def coset_coords(self, d: int, elem: frozenset) -> int:
        """Residue of an element as a bitmask over rep indices."""
        red = self.reduce_vector(d, self.element_vector(d, elem))
        out = 0
        for pos, i in enumerate(self.reps[d]):
            if (red >> i) & 1:
                out |= 1 << pos
        return out

    def action_matrix(self, op: frozenset, d: int):
        """Columns: images of the degree-d coset basis under left mult by op."""
        e = element_degree(op)
        if e is None or d + e > self.N:
            return None
        cols = []
        mons = basis(d)
        for i in self.reps[d]:
            img = milnor_product(op, frozenset({mons[i]}))
            cols.append(self.coset_coords(d + e, img))
        return cols

    def cyclic_check(self) -> bool:
        """The degree-0 class generates under the Sq(2^i)."""
        gens = []
        i = 0
        while 2 ** i <= self.N:
            gens.append(sq(2 ** i))
            i += 1
        reached = {0: 1}  # degree -> bitmask of reached rep span
        frontier = [(0, UNIT)]
        elements = {0: [UNIT]}
        while frontier:
            d, elem = frontier.pop()
            for g in gens:
                e = element_degree(g)
                nd = d + e
                if nd > self.N:
                    continue
                img = milnor_product(g, elem)
                coords = self.coset_coords(nd, img)
                cur = reached.get(nd, 0)
                # add to span via simple accumulation and rref later
                elements.setdefault(nd, [])
                elements[nd].append(img)
                if coords and not f2_in_span(*f2_rref(
                        [self.coset_coords(nd, x) for x in elements[nd][:-1]]), coords):
                    frontier.append((nd, img))
                reached[nd] = cur | coords
        for d in range(self.N + 1):
            want = self.dim(d)
            got = len(f2_rref([self.coset_coords(d, x)
                               for x in elements.get(d, [])])[0])
            if got != want:
                return False
        return True


def quotient_dims_convolution(profile: Profile, N: int) -> list[int]:
    """dims of A//B from the exact series division P_A / P_B; a negative or
    fractional coefficient would falsify freeness of A over B."""
    pa = dims_table(N)
    pb = profile.dims(N)
    out = []
    for d in range(N + 1):
        acc = pa[d] - sum(out[i] * pb[d - i] for i in range(d))
        if pb[0] != 1:
            raise FreenessViolation("subalgebra has no unit?")
        if acc < 0:
            raise FreenessViolation(f"negative quotient dimension at degree {d}")
        out.append(acc)
    return out


def module_map_matrix(src: QuotientModule, dst: QuotientModule, d: int):
    """Degreewise matrix of the canonical 1 -> 1 map A//B1 -> A//B2."""
    cols = []
    mons = basis(d)
    for i in src.reps[d]:
        cols.append(dst.coset_coords(d, frozenset({mons[i]})))
    return cols


def compose_f2_matrices(later: list[int], earlier: list[int], mid_dim: int):
    """Columns of later o earlier where earlier columns are masks over mid."""
    out = []
    for col in earlier:
        acc = 0
        for j in range(mid_dim):
            if (col >> j) & 1:
                acc ^= later[j]
        out.append(acc)
    return out


def square_check(N: int) -> dict:
    """Build A//E(1), A//E(2), A//A(1), A//A(2) and the four canonical maps;
    verify commutativity, A-linearity on Sq(2^i), and cyclicity, through N."""
    E1 = QuotientModule(Profile("E", 1), N)
    E2 = QuotientModule(Profile("E", 2), N)
    A1 = QuotientModule(Profile("A", 1), N)
    A2 = QuotientModule(Profile("A", 2), N)
    out = {"commutes": True, "linear": True, "cyclic": True, "witness": {}}
    for d in range(N + 1):
        top = module_map_matrix(E2, A2, d)
        left = module_map_matrix(E1, E2, d)
        bottom = module_map_matrix(A1, A2, d)
        right = module_map_matrix(E1, A1, d)
        via_top = compose_f2_matrices(top, left, E2.dim(d))
        via_bottom = compose_f2_matrices(bottom, right, A1.dim(d))
        if via_top != via_bottom:
            out["commutes"] = False
            out["witness"][d] = "square"
    ops = []
    i = 0
    while 2 ** i <= N:
        ops.append((2 ** i, sq(2 ** i)))
        i += 1
    pairs = [(E1, E2), (E1, A1), (E2, A2), (A1, A2)]
    for src, dst in pairs:
        for e, op in ops:
            for d in range(N + 1 - e):
                t_d = module_map_matrix(src, dst, d)
                t_de = module_map_matrix(src, dst, d + e)
                m_src = src.action_matrix(op, d)
                m_dst = dst.action_matrix(op, d)
                if m_src is None or m_dst is None:
                    continue
                lhs = compose_f2_matrices(t_de, m_src, src.dim(d + e))
                rhs = compose_f2_matrices(m_dst, t_d, dst.dim(d))
                if lhs != rhs:
                    out["linear"] = False
                    out["witness"][(repr(src.profile), repr(dst.profile), e, d)] = "lin"
    for mod in (E1, E2, A1, A2):
        if not mod.cyclic_check():
            out["cyclic"] = False
            out["witness"][repr(mod.profile)] = "cyclic"
    out["ok"] = out["commutes"] and out["linear"] and out["cyclic"]
    return out


# -- homology-side dimension tables ------------------------------------------------

def bstar_dims(n: int, p: int, N: int) -> list[int]:
    """dims of B_*: at p = 2 the polynomial algebra on squares of the first
    n+1 dual generators and the rest unsquared; at odd p the polynomial duals
    (degrees 2(p^i - 1)) tensored with the exterior part from index n+1 on."""
    out = [1] + [0] * N
    if p == 2:
        gens = []
        i = 1
        while True:
            d = 2 * (2 ** i - 1) if i <= n + 1 else 2 ** i - 1
            if d > N:
                if i > n + 1:
                    break
                i += 1
                continue
            gens.append(d)
            i += 1
        for w in gens:
            for d in range(w, N + 1):
                out[d] += out[d - w]
        return out
    # odd p: polynomial on 2(p^i - 1), exterior on 2 p^j - 1 for j >= n+1
    i = 1
    while 2 * (p ** i - 1) <= N:
        w = 2 * (p ** i - 1)
        if w:
            for d in range(w, N + 1):
                out[d] += out[d - w]
        i += 1
    j = n + 1
    while 2 * p ** j - 1 <= N:
        w = 2 * p ** j - 1
        for d in range(N, w - 1, -1):
            out[d] += out[d - w]
        j += 1
    return out


def bstar_generator_degrees(n: int, p: int, N: int) -> list[int]:
    if p != 2:
        raise ValueError("generator list is the p = 2 branch")
    gens = []
    i = 1
    while True:
        d = 2 * (2 ** i - 1) if i <= n + 1 else 2 ** i - 1
        if d > N:
            break
        gens.append(d)
        i += 1
    return gens


def dual_steenrod_dims_odd(p: int, N: int, tau_from: int = 0) -> list[int]:
    """dims of P(xi_1, ...) tensor E(tau_j : j >= tau_from) at an odd prime."""
    out = [1] + [0] * N
    i = 1
    while 2 * (p ** i - 1) <= N:
        w = 2 * (p ** i - 1)
        for d in range(w, N + 1):
            out[d] += out[d - w]
        i += 1
    j = tau_from
    while 2 * p ** j - 1 <= N:
        w = 2 * p ** j - 1
        for d in range(N, w - 1, -1):
            out[d] += out[d - w]
        j += 1
    return out


def duality_dims_check(n: int, N: int) -> bool:
    """dim (A//E(n))_d = dim B_*(n)_d for d <= N (p = 2)."""
    q = quotient_dims_convolution(Profile("E", n), N)
    b = bstar_dims(n, 2, N)
    return q == b


def evenness_below(n: int, N: int) -> bool:
    """A//E(n) and B_*(n) have no odd-degree classes below 2^(n+2) - 1."""
    bound = 2 ** (n + 2) - 1
    q = quotient_dims_convolution(Profile("E", n), min(N, bound - 1))
    b = bstar_dims(n, 2, min(N, bound - 1))
    for d in range(1, min(N, bound - 1) + 1):
        if d % 2 == 1 and (q[d] or b[d]):
            return False
    return True
