"""Dense exact linear algebra over Q and F_p.

Matrices are lists of rows; every function takes the :class:`~spinorkit.field.Field`
explicitly. Over F_p entries are ints reduced mod p, over Q they are Fractions.
The mod-p inner loops are written separately because they dominate the
enumeration and cross-check workloads.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .errors import BadShape, DimensionMismatch, NonResidue, NotSkew, ParseError
from .field import Field

Row = list
Matrix = list  # list of rows


def coerce_matrix(rows, F: Field) -> Matrix:
    return [[F(x) for x in row] for row in rows]


def zeros(n: int, m: int, F: Field) -> Matrix:
    z = F.zero
    return [[z] * m for _ in range(n)]


def identity(n: int, F: Field) -> Matrix:
    m = zeros(n, n, F)
    for i in range(n):
        m[i][i] = F.one
    return m


def transpose(m: Matrix) -> Matrix:
    return [list(col) for col in zip(*m)]


def matmul(a: Matrix, b: Matrix, F: Field) -> Matrix:
    if a and len(a[0]) != len(b):
        raise DimensionMismatch(f"cannot multiply {len(a)}x{len(a[0])} by {len(b)}x?")
    bt = transpose(b)
    p = F.p
    if p:
        return [[sum(x * y for x, y in zip(row, col)) % p for col in bt] for row in a]
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def matvec(a: Matrix, v: Sequence, F: Field) -> list:
    p = F.p
    if p:
        return [sum(x * y for x, y in zip(row, v)) % p for row in a]
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def dot(u: Sequence, v: Sequence, F: Field):
    s = sum(x * y for x, y in zip(u, v))
    return s % F.p if F.p else Fraction(s)


def row_reduce(rows: Matrix, F: Field, ncols: int | None = None):
    """Reduced row-echelon form.

    Returns ``(rref, rank, pivots)``; zero rows are kept at the bottom so the
    shape is preserved. Pivot search is leftmost-column-first, topmost-row-first.
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    if ncols is None:
        ncols = len(m[0]) if m else 0
    for r in m:
        if len(r) != ncols:
            raise BadShape("ragged matrix")
    p = F.p
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
        row = m[r]
        inv = F.inv(row[c])
        if p:
            row = [x * inv % p for x in row]
        else:
            row = [x * inv for x in row]
        m[r] = row
        for i in range(nrows):
            if i != r:
                f = m[i][c]
                if f:
                    if p:
                        m[i] = [(a - f * b) % p for a, b in zip(m[i], row)]
                    else:
                        m[i] = [a - f * b for a, b in zip(m[i], row)]
        pivots.append(c)
        r += 1
    return m, r, pivots


def rank(rows: Matrix, F: Field) -> int:
    if not rows:
        return 0
    if F.p:
        return _rank_mod_p(rows, F.p)
    return row_reduce(rows, F)[1]


def _rank_mod_p(rows, p):
    # forward elimination only; rows are mutated copies
    m = [list(r) for r in rows]
    ncols = len(m[0])
    r = 0
    nrows = len(m)
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        row = m[r]
        inv = pow(row[c], -1, p)
        for i in range(r + 1, nrows):
            f = m[i][c]
            if f:
                f = f * inv % p
                m[i] = [(a - f * b) % p for a, b in zip(m[i], row)]
        r += 1
        if r == nrows:
            break
    return r


def kernel_basis(rows: Matrix, F: Field, ncols: int | None = None) -> list[list]:
    """Basis of the right kernel ``{v : rows . v = 0}``, one vector per free column."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    rref, rk, pivots = row_reduce(rows, F, ncols)
    pivset = set(pivots)
    basis = []
    zero, one = F.zero, F.one
    for f in range(ncols):
        if f in pivset:
            continue
        v = [zero] * ncols
        v[f] = one
        for i, c in enumerate(pivots):
            v[c] = F.neg(rref[i][f])
        basis.append(v)
    return basis


def row_space_basis(rows: Matrix, F: Field, ncols: int | None = None) -> Matrix:
    rref, rk, _ = row_reduce(rows, F, ncols)
    return rref[:rk]


def intersect_subspaces(a: Matrix, b: Matrix, F: Field, ambient: int | None = None) -> Matrix:
    """Row-reduced basis of span(a) ∩ span(b).

    Uses annihilators: the intersection is the common kernel of ann(a) and ann(b).
    """
    dims = {len(r) for r in a} | {len(r) for r in b}
    if ambient is not None:
        dims.add(ambient)
    if len(dims) > 1:
        raise DimensionMismatch(f"ambient dimensions differ: {sorted(dims)}")
    n = dims.pop() if dims else (ambient or 0)
    if not a or not b:
        return []
    ann = kernel_basis(a, F, n) + kernel_basis(b, F, n)
    if not ann:
        return row_space_basis(a, F, n)
    inter = kernel_basis(ann, F, n)
    if not inter:
        return []
    return row_space_basis(inter, F, n)


def solve(a: Matrix, b: Sequence, F: Field):
    """One solution x of ``a x = b``, or None if inconsistent."""
    n = len(a[0]) if a else 0
    aug = [list(row) + [F(bi)] for row, bi in zip(a, b)]
    rref, rk, pivots = row_reduce(aug, F, n + 1)
    if pivots and pivots[-1] == n:
        return None
    x = [F.zero] * n
    for i, c in enumerate(pivots):
        x[c] = rref[i][n]
    return x


def in_span(rows: Matrix, v: Sequence, F: Field) -> bool:
    if not rows:
        return not any(v)
    return rank(list(rows) + [list(v)], F) == rank(rows, F)


def determinant(m: Matrix, F: Field):
    n = len(m)
    if any(len(r) != n for r in m):
        raise BadShape("determinant of a non-square matrix")
    a = [list(r) for r in m]
    p = F.p
    det = F.one
    for c in range(n):
        piv = None
        for i in range(c, n):
            if a[i][c]:
                piv = i
                break
        if piv is None:
            return F.zero
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = F.neg(det)
        pv = a[c][c]
        det = F(det * pv)
        inv = F.inv(pv)
        for i in range(c + 1, n):
            f = a[i][c]
            if f:
                f = F(f * inv)
                if p:
                    a[i] = [(x - f * y) % p for x, y in zip(a[i], a[c])]
                else:
                    a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


def inverse(m: Matrix, F: Field) -> Matrix:
    n = len(m)
    aug = [list(r) + e for r, e in zip(m, identity(n, F))]
    rref, rk, pivots = row_reduce(aug, F, 2 * n)
    if rk < n or pivots[n - 1] != n - 1:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in rref]


# -- skew matrices and Pfaffians ---------------------------------------------

def check_skew(m: Matrix, F: Field) -> None:
    n = len(m)
    for row in m:
        if len(row) != n:
            raise NotSkew("matrix is not square")
    for i in range(n):
        if m[i][i]:
            raise NotSkew(f"nonzero diagonal entry at {i}")
        for j in range(i + 1, n):
            if F(m[i][j] + m[j][i]):
                raise NotSkew(f"entries ({i},{j}) and ({j},{i}) are not opposite")


def skew_from_upper(upper: dict, n: int, F: Field) -> Matrix:
    """Build a skew matrix from ``{(i, j): value}`` with 0-based ``i < j``."""
    m = zeros(n, n, F)
    for (i, j), v in upper.items():
        m[i][j] = F(v)
        m[j][i] = F.neg(F(v))
    return m


def _pfaffian_indices(m, idx, F, memo):
    # Pf over the principal submatrix on the sorted index tuple idx
    if not idx:
        return F.one
    if len(idx) % 2:
        return F.zero
    if idx in memo:
        return memo[idx]
    first = idx[0]
    total = 0
    for k in range(1, len(idx)):
        a = m[first][idx[k]]
        if not a:
            continue
        rest = idx[1:k] + idx[k + 1:]
        term = a * _pfaffian_indices(m, rest, F, memo)
        # idx[k] sits at 1-based position k + 1: sign (-1)^(k+1)
        total = total - term if k % 2 == 0 else total + term
    val = F(total)
    memo[idx] = val
    return val


def pfaffian(m: Matrix, F: Field):
    """Pfaffian by first-row expansion ``Pf = sum_j (-1)^j m_1j Pf(m_1j-minor)`` (1-based j).

    Zero for odd size; 1 for the empty matrix.
    """
    check_skew(m, F)
    return _pfaffian_indices(m, tuple(range(len(m))), F, {})


def principal_pfaffian(m: Matrix, idx: Sequence[int], F: Field, memo: dict | None = None):
    """Pfaffian of the principal submatrix on the sorted index list ``idx`` (no skew check)."""
    return _pfaffian_indices(m, tuple(idx), F, {} if memo is None else memo)


def sub_pfaffian_vector(m: Matrix, F: Field) -> list:
    """``v_i = (-1)^i Pf(m with row and column i removed)``, i = 1..5."""
    if len(m) != 5 or any(len(r) != 5 for r in m):
        raise BadShape("sub_pfaffian_vector needs a 5x5 matrix")
    check_skew(m, F)
    memo: dict = {}
    out = []
    for i in range(1, 6):
        rest = tuple(j for j in range(5) if j != i - 1)
        pf = _pfaffian_indices(m, rest, F, memo)
        out.append(pf if i % 2 == 0 else F.neg(pf))
    return out


# -- square roots -------------------------------------------------------------

def scalar_sqrt(x, F: Field):
    """A square root of ``x`` in ``F``; smallest residue over F_p."""
    x = F(x)
    if F.p:
        for r in range(F.p):
            if r * r % F.p == x:
                return r
        raise NonResidue(f"{x} is not a square mod {F.p}")
    if x < 0:
        raise NonResidue(f"{x} is negative")
    num, den = x.numerator, x.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn != num or rd * rd != den:
        raise NonResidue(f"{x} is not a rational square")
    return Fraction(rn, rd)


# -- text formats ---------------------------------------------------------------

def parse_matrix(text: str, F: Field) -> Matrix:
    """Rows separated by ``;``, entries by whitespace."""
    rows = [r.split() for r in text.strip().split(";")]
    rows = [r for r in rows if r]
    if not rows:
        raise ParseError("empty matrix")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ParseError("ragged matrix")
    return [[F.parse_scalar(x) for x in r] for r in rows]


def format_matrix(m: Matrix, F: Field) -> str:
    return "; ".join(" ".join(F.format_scalar(x) for x in row) for row in m)


def random_matrix(n: int, m: int, F: Field, rng) -> Matrix:
    return [[F.random(rng) for _ in range(m)] for _ in range(n)]


def random_skew(n: int, F: Field, rng) -> Matrix:
    upper = {(i, j): F.random(rng) for i in range(n) for j in range(i + 1, n)}
    return skew_from_upper(upper, n, F)
