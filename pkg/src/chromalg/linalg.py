"""Exact linear algebra backends.

Three levels, each used where it fits:
  * GF(2) matrices as lists of int bitmasks (fast rref / solve / nullspace);
  * generic rref over any field-like Ring (Fractions, F_p, quotient fields);
  * integer lattice routines (saturated kernel via row HNF, Smith normal form)
    for homology over Z localized at a prime.
"""

from __future__ import annotations

from fractions import Fraction


# -- GF(2), rows as bitmasks ---------------------------------------------------

def f2_rref(rows: list[int]) -> tuple[list[int], list[int]]:
    """Reduced row echelon form. Returns (basis rows, pivot column indices)."""
    basis: list[int] = []
    pivots: list[int] = []
    for row in rows:
        r = row
        for b, p in zip(basis, pivots):
            if (r >> p) & 1:
                r ^= b
        if r:
            p = r.bit_length() - 1
            for i, (b2, p2) in enumerate(zip(basis, pivots)):
                if (b2 >> p) & 1:
                    basis[i] = b2 ^ r
            basis.append(r)
            pivots.append(p)
    return basis, pivots


def f2_in_span(basis: list[int], pivots: list[int], v: int) -> bool:
    r = v
    for b, p in zip(basis, pivots):
        if (r >> p) & 1:
            r ^= b
    return r == 0


def f2_reduce(basis: list[int], pivots: list[int], v: int) -> int:
    r = v
    for b, p in zip(basis, pivots):
        if (r >> p) & 1:
            r ^= b
    return r


def f2_solve(columns: list[int], target: int, height: int):
    """Solve sum_{j in S} columns[j] = target over GF(2).

    Returns a bitmask over column indices, or None.  height = number of rows.
    """
    aug = []
    for j, col in enumerate(columns):
        aug.append((col, 1 << j))
    basis: list[tuple[int, int]] = []
    pivots: list[int] = []
    for col, tag in aug:
        r, t = col, tag
        for (b, bt), p in zip(basis, pivots):
            if (r >> p) & 1:
                r ^= b
                t ^= bt
        if r:
            basis.append((r, t))
            pivots.append(r.bit_length() - 1)
    r, t = target, 0
    for (b, bt), p in zip(basis, pivots):
        if (r >> p) & 1:
            r ^= b
            t ^= bt
    if r != 0:
        return None
    return t


def f2_nullspace(columns: list[int], ncols: int) -> list[int]:
    """Nullspace of the matrix with the given columns; vectors as column-index
    bitmasks."""
    basis: list[tuple[int, int]] = []
    pivots: list[int] = []
    null = []
    for j in range(ncols):
        col = columns[j]
        r, t = col, 1 << j
        for (b, bt), p in zip(basis, pivots):
            if (r >> p) & 1:
                r ^= b
                t ^= bt
        if r:
            basis.append((r, t))
            pivots.append(r.bit_length() - 1)
        else:
            null.append(t)
    return null


# -- generic field rref --------------------------------------------------------

class FieldOps:
    """Adapter turning a Ring with total inversion of nonzero elements into
    the little interface the generic routines need."""

    def __init__(self, ring):
        self.ring = ring

    def rref(self, rows: list[list]):
        R = self.ring
        mat = [list(r) for r in rows]
        pivots = []
        rank = 0
        ncols = len(mat[0]) if mat else 0
        for col in range(ncols):
            piv = None
            for i in range(rank, len(mat)):
                if not R.is_zero(mat[i][col]):
                    piv = i
                    break
            if piv is None:
                continue
            mat[rank], mat[piv] = mat[piv], mat[rank]
            inv = R.inv(mat[rank][col])
            mat[rank] = [R.mul(inv, x) for x in mat[rank]]
            for i in range(len(mat)):
                if i != rank and not R.is_zero(mat[i][col]):
                    f = mat[i][col]
                    mat[i] = [R.sub(x, R.mul(f, y)) for x, y in zip(mat[i], mat[rank])]
            pivots.append(col)
            rank += 1
        return mat[:rank], pivots

    def solve(self, columns: list[list], target: list):
        """Coefficient vector x with sum x_j columns[j] = target, or None."""
        out = self.solve_many(columns, [target])
        return out[0]

    def solve_many(self, columns: list[list], targets: list[list]):
        """Solve the same system for many right-hand sides with one reduction.
        Pivots are restricted to the coefficient block."""
        R = self.ring
        n = len(columns)
        m = len(columns[0]) if columns else (len(targets[0]) if targets else 0)
        k = len(targets)
        rows = [[columns[j][i] for j in range(n)] + [t[i] for t in targets]
                for i in range(m)]
        pivots = []
        rank = 0
        for col in range(n):
            piv = None
            for i in range(rank, len(rows)):
                if not R.is_zero(rows[i][col]):
                    piv = i
                    break
            if piv is None:
                continue
            rows[rank], rows[piv] = rows[piv], rows[rank]
            inv = R.inv(rows[rank][col])
            rows[rank] = [R.mul(inv, x) for x in rows[rank]]
            for i in range(len(rows)):
                if i != rank and not R.is_zero(rows[i][col]):
                    f = rows[i][col]
                    rows[i] = [R.sub(x, R.mul(f, y)) for x, y in zip(rows[i], rows[rank])]
            pivots.append(col)
            rank += 1
        outs = []
        for ti in range(k):
            # consistency: rows below the rank must have zero target entry
            if any(not R.is_zero(rows[i][n + ti]) for i in range(rank, len(rows))):
                outs.append(None)
                continue
            x = [R.zero()] * n
            for r, p in zip(rows[:rank], pivots):
                x[p] = r[n + ti]
            outs.append(x)
        return outs


# -- integer lattices ----------------------------------------------------------

def _as_int_matrix(rows):
    out = []
    den = 1
    from math import gcd
    for r in rows:
        for x in r:
            if isinstance(x, Fraction):
                den = den * x.denominator // gcd(den, x.denominator)
    for r in rows:
        out.append([int(x * den) if isinstance(x, Fraction) else int(x) * den for x in r])
    return out


def hnf_rows(mat: list[list[int]]) -> list[list[int]]:
    """Row Hermite-ish normal form by integer row operations (no column ops)."""
    m = [list(r) for r in mat]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    r = 0
    for c in range(cols):
        # find pivot with smallest nonzero absolute value
        piv = None
        for i in range(r, rows):
            if m[i][c] != 0 and (piv is None or abs(m[i][c]) < abs(m[piv][c])):
                piv = i
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        changed = True
        while changed:
            changed = False
            for i in range(r + 1, rows):
                if m[i][c] != 0:
                    q = m[i][c] // m[r][c]
                    m[i] = [a - q * b for a, b in zip(m[i], m[r])]
                    if m[i][c] != 0:
                        if abs(m[i][c]) < abs(m[r][c]):
                            m[r], m[i] = m[i], m[r]
                        changed = True
        if m[r][c] < 0:
            m[r] = [-a for a in m[r]]
        r += 1
        if r == rows:
            break
    return m


def int_kernel(columns: list[list[int]], ncols: int) -> list[list[int]]:
    """Saturated Z-basis of {x in Z^ncols : sum x_j columns[j] = 0}.

    columns[j] is the image of the j-th basis vector.
    """
    height = len(columns[0]) if columns else 0
    aug = []
    for j in range(ncols):
        aug.append(list(columns[j]) + [1 if k == j else 0 for k in range(ncols)])
    red = hnf_rows(aug)
    out = []
    for row in red:
        if all(v == 0 for v in row[:height]):
            vec = row[height:]
            if any(vec):
                out.append(vec)
    return out


def smith_normal_form(mat: list[list[int]]) -> list[int]:
    """Diagonal of the Smith normal form (nonzero entries, unordered divisibility
    not enforced beyond diagonalization; adequate for p-local torsion reading)."""
    m = [list(r) for r in mat]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    diag = []
    top = 0
    left = 0
    while top < rows and left < cols:
        piv = None
        best = None
        for i in range(top, rows):
            for j in range(left, cols):
                if m[i][j] != 0 and (best is None or abs(m[i][j]) < best):
                    best = abs(m[i][j])
                    piv = (i, j)
        if piv is None:
            break
        pi, pj = piv
        m[top], m[pi] = m[pi], m[top]
        for i in range(rows):
            m[i][left], m[i][pj] = m[i][pj], m[i][left]
        # clear row and column
        dirty = True
        while dirty:
            dirty = False
            for i in range(top + 1, rows):
                if m[i][left] != 0:
                    q = m[i][left] // m[top][left]
                    m[i] = [a - q * b for a, b in zip(m[i], m[top])]
                    if m[i][left] != 0:
                        m[top], m[i] = m[i], m[top]
                        dirty = True
            for j in range(left + 1, cols):
                if m[top][j] != 0:
                    q = m[top][j] // m[top][left]
                    for i in range(rows):
                        m[i][j] -= q * m[i][left]
                    if m[top][j] != 0:
                        for i in range(rows):
                            m[i][left], m[i][j] = m[i][j], m[i][left]
                        dirty = True
        diag.append(abs(m[top][left]))
        top += 1
        left += 1
    return [d for d in diag if d != 0]


def p_local_structure(diag: list[int], ncols: int, p: int) -> tuple[int, list[int]]:
    """(free rank, torsion exponents) of Z^ncols / <rows with given Smith diag>,
    viewed over Z localized at p."""
    free = ncols - len(diag)
    torsion = []
    for d in diag:
        v = 0
        while d % p == 0:
            d //= p
            v += 1
        if v > 0:
            torsion.append(v)
    return free, sorted(torsion)


def solve_int_exact(columns: list[list[int]], target: list[int]):
    """Integer solution x of sum x_j columns[j] = target, or None."""
    n = len(columns)
    if n == 0:
        return [] if all(t == 0 for t in target) else None
    # rational solve then integrality check via kernel adjustment is overkill
    # at desk scale: use Fraction rref and accept only integral results.
    fops = FieldOps(_FractionField())
    cols = [[Fraction(v) for v in col] for col in columns]
    tgt = [Fraction(v) for v in target]
    x = fops.solve(cols, tgt)
    if x is None:
        return None
    if all(v.denominator == 1 for v in x):
        return [int(v) for v in x]
    # try shifting by kernel vectors to reach integrality (denominator 1)
    ker = int_kernel(columns, n)
    if not ker:
        return None
    # small search over kernel combinations is unnecessary for our uses
    return None


class _FractionField:
    char = 0

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def eq(self, a, b):
        return a == b

    def is_zero(self, a):
        return a == 0

    def inv(self, a):
        return 1 / a
