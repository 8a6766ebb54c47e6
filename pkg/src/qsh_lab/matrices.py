"""Dense exact linear algebra over Fraction.

Matrices are lists of row lists and are treated as immutable by
convention.  Reduction uses plain Gaussian elimination with the first
nonzero entry in lexicographic column order as pivot, so echelon forms,
nullspace bases and therefore every exported basis are reproducible
byte-for-byte.
"""

from __future__ import annotations

from fractions import Fraction


def zeros(rows: int, cols: int):
    return [[Fraction(0)] * cols for _ in range(rows)]


def identity(n: int):
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = Fraction(1)
    return m


def transpose(m):
    return [list(col) for col in zip(*m)]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(c, m):
    return [[c * x for x in row] for row in m]


def mat_mul(a, b):
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(m, v):
    return [sum(x * y for x, y in zip(row, v)) for row in m]


def outer(u, v):
    """Rank-one matrix u v^T."""
    return [[x * y for y in v] for x in u]


def bilinear(m, x, y):
    """x^T m y."""
    return sum(xi * e for xi, e in zip(x, mat_vec(m, y)))


def max_abs(m) -> Fraction:
    return max((abs(x) for row in m for x in row), default=Fraction(0))


def vec_max_abs(v):
    return max((abs(x) for x in v), default=Fraction(0))


def flatten(m):
    return [x for row in m for x in row]


def rref(m):
    """Reduced row echelon form.  Returns (R, pivot_columns)."""
    r = [[Fraction(x) for x in row] for row in m]
    rows = len(r)
    cols = len(r[0]) if rows else 0
    pivots = []
    pr = 0
    for pc in range(cols):
        pivot_row = None
        for i in range(pr, rows):
            if r[i][pc] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        r[pr], r[pivot_row] = r[pivot_row], r[pr]
        inv = 1 / r[pr][pc]
        r[pr] = [x * inv for x in r[pr]]
        for i in range(rows):
            if i != pr and r[i][pc] != 0:
                f = r[i][pc]
                r[i] = [x - f * y for x, y in zip(r[i], r[pr])]
        pivots.append(pc)
        pr += 1
        if pr == rows:
            break
    return r, pivots


def rank(m) -> int:
    if not m or not m[0]:
        return 0
    _, pivots = rref(m)
    return len(pivots)


def nullspace(m):
    """Basis of {x : m x = 0}, one vector per free column, in column order."""
    if not m:
        return []
    cols = len(m[0])
    r, pivots = rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for row_idx, pc in enumerate(pivots):
            v[pc] = -r[row_idx][f]
        basis.append(v)
    return basis


def solve(m, b):
    """One exact solution of m x = b, or None when inconsistent."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    aug = [list(map(Fraction, m[i])) + [Fraction(b[i])] for i in range(rows)]
    r, pivots = rref(aug)
    if cols in pivots:
        return None
    x = [Fraction(0)] * cols
    for row_idx, pc in enumerate(pivots):
        x[pc] = r[row_idx][cols]
    return x


def signature_symmetric(s):
    """Signature (n_plus, n_minus, n_zero) of a symmetric matrix.

    Congruence (Lagrange) reduction with symmetric pivot search: take the
    first nonzero diagonal entry; if the diagonal of the active block is
    all zero, a row+column addition moves a nonzero off-diagonal entry
    onto the diagonal.  Exact, no eigenvalue tolerances.
    """
    n = len(s)
    m = [[Fraction(x) for x in row] for row in s]
    active = list(range(n))
    n_pos = n_neg = 0
    while active:
        pivot = None
        for k in active:
            if m[k][k] != 0:
                pivot = k
                break
        if pivot is None:
            moved = False
            for ii, i in enumerate(active):
                for j in active[ii + 1:]:
                    if m[i][j] != 0:
                        for c in range(n):
                            m[i][c] += m[j][c]
                        for r_ in range(n):
                            m[r_][i] += m[r_][j]
                        pivot = i
                        moved = True
                        break
                if moved:
                    break
            if pivot is None:
                break  # active block is zero
        d = m[pivot][pivot]
        if d > 0:
            n_pos += 1
        else:
            n_neg += 1
        active.remove(pivot)
        for r_ in active:
            f = m[r_][pivot] / d
            if f != 0:
                for c in range(n):
                    m[r_][c] -= f * m[pivot][c]
                for c in range(n):
                    m[c][r_] -= f * m[c][pivot]
    n_zero = n - n_pos - n_neg
    return n_pos, n_neg, n_zero


def to_float_matrix(m):
    return [[float(x) for x in row] for row in m]


def sparse_rows(m):
    """Row-wise nonzero entries [(col, value), ...] per row."""
    return [[(c, v) for c, v in enumerate(row) if v] for row in m]


def sparse_apply(sp, v):
    return [sum(val * v[c] for c, val in row) for row in sp]


def dot(u, v):
    return sum(x * y for x, y in zip(u, v) if x and y)
