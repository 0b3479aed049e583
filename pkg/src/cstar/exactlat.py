"""Exact integer lattice arithmetic.

Vectors are tuples of Python ints, matrices are tuples of row tuples.
Nothing in here touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import NonPrimitiveVector

Vector = tuple
Matrix = tuple


# ---------------------------------------------------------------------------
# vectors
# ---------------------------------------------------------------------------

def vec(xs: Iterable[int]) -> Vector:
    return tuple(int(x) for x in xs)


def content(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def is_primitive(v: Sequence[int]) -> bool:
    return content(v) == 1


def primitive(v: Sequence[int]) -> Vector:
    """Divide a nonzero integer vector by the gcd of its entries."""
    g = content(v)
    if g == 0:
        raise ValueError("zero vector has no primitive direction")
    return tuple(x // g for x in v)


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def add(u: Sequence, v: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v: Sequence) -> Vector:
    return tuple(c * a for a in v)


def neg(v: Sequence) -> Vector:
    return tuple(-a for a in v)


def unit(n: int, i: int) -> Vector:
    return tuple(1 if k == i else 0 for k in range(n))


def integralize(v: Sequence[Fraction]) -> Vector:
    """Smallest positive multiple of a rational vector that is integral and primitive."""
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    w = [int(Fraction(x) * den) for x in v]
    g = content(w)
    return tuple(x // g for x in w) if g else tuple(w)


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------

def identity(n: int) -> Matrix:
    return tuple(unit(n, i) for i in range(n))


def transpose(a: Sequence[Sequence]) -> Matrix:
    if not a:
        return ()
    return tuple(zip(*a))


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def matvec(a: Sequence[Sequence], v: Sequence) -> Vector:
    return tuple(dot(row, v) for row in a)


def rank(rows: Sequence[Sequence]) -> int:
    return len(_rref(rows)[1])


def _int_rows(m: Sequence[Sequence]) -> list[list[int]]:
    """Scale each rational row by the lcm of its denominators."""
    out = []
    for row in m:
        den = 1
        for x in row:
            if not isinstance(x, int):
                d = Fraction(x).denominator
                den = den * d // gcd(den, d)
        out.append([int(x * den) for x in row])
    return out


def _rref(m: Sequence[Sequence], ncols: int | None = None) -> tuple[list, list]:
    """Fraction-free Gauss-Jordan elimination.

    Returns integer rows and pivot columns. Each pivot row has a positive
    pivot entry and the pivot columns are zero in every other row. Only
    the first ``ncols`` columns are used as pivots.
    """
    a = _int_rows(m)
    if not a:
        return a, []
    width = len(a[0])
    ncols = width if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(a)) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        pr = a[r]
        if pr[c] < 0:
            pr = a[r] = [-x for x in pr]
        pc = pr[c]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                row = [x * pc - y * f for x, y in zip(a[i], pr)]
                g = 0
                for x in row:
                    if x:
                        g = gcd(g, x)
                        if g == 1:
                            break
                a[i] = [x // g for x in row] if g > 1 else row
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a, pivots


def solve(a: Sequence[Sequence], b: Sequence) -> tuple | None:
    """One rational solution x of a x = b, or None when inconsistent."""
    ncols = len(a[0]) if a else 0
    red, piv = _rref([list(row) + [y] for row, y in zip(a, b)], ncols)
    for row in red[len(piv):]:
        if row[-1]:
            return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(piv):
        x[c] = Fraction(red[i][-1], red[i][c])
    return tuple(x)


def inverse(a: Sequence[Sequence]) -> Matrix:
    n = len(a)
    red, piv = _rref([list(row) + list(unit(n, i)) for i, row in enumerate(a)], n)
    if piv != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return tuple(tuple(Fraction(x, red[i][i]) for x in red[i][n:]) for i in range(n))


def det(a: Sequence[Sequence]) -> int | Fraction:
    """Bareiss fraction-free determinant for integer input."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(r) for r in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            p = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if p is None:
                return 0
            m[k], m[p] = m[p], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = num // prev if isinstance(num, int) else num / prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def kernel(rows: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """Integer basis of {x : rows . x = 0}, saturated in Z^ncols."""
    if ncols is None:
        ncols = len(rows[0])
    if not rows:
        return identity(ncols)
    s, _, v = snf(rows)
    r = sum(1 for i in range(min(len(s), ncols)) if s[i][i] != 0)
    # columns r.. of V span the kernel
    return tuple(tuple(v[i][j] for i in range(ncols)) for j in range(r, ncols))


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

def snf(a: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form ``U A V = S``.

    Pivot is the nonzero entry of smallest absolute value in the remaining
    block, ties broken by row-major position. ``U`` and ``V`` are unimodular
    and ``S`` is diagonal with each entry dividing the next.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    if m == 0 or n == 0:
        raise ValueError("snf needs a nonempty matrix")
    s = [list(map(int, row)) for row in a]
    u = [list(r) for r in identity(m)]
    v = [list(r) for r in identity(n)]

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):  # row dst += c * row src
        s[dst] = [x + c * y for x, y in zip(s[dst], s[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, c):
        for row in s:
            row[dst] += c * row[src]
        for row in v:
            row[dst] += c * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    x = s[i][j]
                    if x and (best is None or abs(x) < abs(s[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return _finish(s, u, v)
            if best[0] != t:
                swap_rows(t, best[0])
            if best[1] != t:
                swap_cols(t, best[1])
            p = s[t][t]
            dirty = False
            for i in range(t + 1, m):
                if s[i][t]:
                    add_row(i, t, -(s[i][t] // p))
                    dirty |= s[i][t] != 0
            for j in range(t + 1, n):
                if s[t][j]:
                    add_col(j, t, -(s[t][j] // p))
                    dirty |= s[t][j] != 0
            if dirty:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if s[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]
    return _finish(s, u, v)


def _finish(s, u, v):
    return tuple(map(tuple, s)), tuple(map(tuple, u)), tuple(map(tuple, v))


def invariant_factors(a: Sequence[Sequence[int]]) -> tuple[int, ...]:
    s, _, _ = snf(a)
    return tuple(s[i][i] for i in range(min(len(s), len(s[0]))))


def is_unimodular(a: Sequence[Sequence[int]]) -> bool:
    return len(a) == len(a[0]) and abs(det(a)) == 1


# ---------------------------------------------------------------------------
# quotient lattices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuotientMap:
    """Projection ``Z^source -> Z^target`` killing a saturated sublattice.

    ``section`` is a right inverse of ``projection`` onto a chosen
    complement of the kernel.
    """

    source_rank: int
    target_rank: int
    projection: Matrix  # target x source
    section: Matrix     # source x target

    def project(self, x: Sequence[int]) -> Vector:
        return matvec(self.projection, x)

    def lift(self, y: Sequence[int]) -> Vector:
        return matvec(self.section, y)


def quotient_lattice(rank_: int, v: Sequence[int]) -> QuotientMap:
    """Quotient of ``Z^rank_`` by the line spanned by a primitive ``v``.

    When ``v`` has a coordinate equal to +-1 the complement is spanned by the
    remaining standard basis vectors, dropping the lowest such coordinate.
    Other primitive vectors go through an SNF completion.
    """
    v = vec(v)
    if len(v) != rank_:
        raise ValueError("vector length does not match rank")
    if not any(v):
        raise NonPrimitiveVector("cannot quotient by the zero vector")
    if content(v) != 1:
        raise NonPrimitiveVector(f"{v} has content {content(v)}")
    units = [i for i, x in enumerate(v) if abs(x) == 1]
    if units:
        p = units[0]
        keep = [i for i in range(rank_) if i != p]
        proj = []
        for k in keep:
            # x -> x_k - (x_p / v_p) v_k
            row = [0] * rank_
            row[k] = 1
            row[p] -= v[k] * v[p]
            proj.append(tuple(row))
        sec = tuple(tuple(1 if i == keep[j] else 0 for j in range(rank_ - 1))
                    for i in range(rank_))
        return QuotientMap(rank_, rank_ - 1, tuple(proj), sec)
    return quotient_by(rank_, [v])


def quotient_by(rank_: int, gens: Sequence[Sequence[int]]) -> QuotientMap:
    """Quotient of ``Z^rank_`` by the saturation of the span of ``gens``."""
    gens = [vec(g) for g in gens if any(g)]
    if not gens:
        ident = identity(rank_)
        return QuotientMap(rank_, rank_, ident, ident)
    cols = transpose(gens)  # rank_ x len(gens)
    s, u, _ = snf(cols)
    k = sum(1 for i in range(min(len(s), len(s[0]))) if s[i][i])
    proj = u[k:]
    w = inverse(u)
    sec = tuple(tuple(int(w[i][j]) for j in range(k, rank_)) for i in range(rank_))
    return QuotientMap(rank_, rank_ - k, tuple(proj), sec)


def saturated_basis(gens: Sequence[Sequence[int]], rank_: int):
    """Return ``(B, coords, eqs)`` for the saturation L of span(gens).

    ``B`` lists a Z-basis of L, ``coords`` is a k x rank_ integer matrix with
    ``coords . b_i = e_i`` (so ``coords . x`` gives coordinates of x in L) and
    ``eqs`` is an integer basis of the annihilator of L.
    """
    gens = [vec(g) for g in gens if any(g)]
    if not gens:
        return (), (), identity(rank_)
    s, u, _ = snf(transpose(gens))
    k = sum(1 for i in range(min(len(s), len(s[0]))) if s[i][i])
    w = inverse(u)
    basis = tuple(tuple(int(w[i][j]) for i in range(rank_)) for j in range(k))
    return basis, tuple(u[:k]), tuple(u[k:])


def solve_integer(a: Sequence[Sequence[int]], b: Sequence[int]) -> tuple | None:
    """An integer solution x of ``a x = b`` (free part set to zero), or None."""
    if not a:
        return None if any(b) else ()
    ncols = len(a[0])
    s, u, v = snf(a)
    ub = matvec(u, b)
    y = [0] * ncols
    for i in range(len(ub)):
        d = s[i][i] if i < ncols else 0
        if d == 0:
            if ub[i] != 0:
                return None
            continue
        if ub[i] % d:
            return None
        y[i] = ub[i] // d
    return matvec(v, y)
