"""Exact integer and rational matrix routines used across the package.

Everything works on plain nested sequences of Python ints (or Fractions
where stated) so there is no rounding anywhere.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import LatticeInputError

IntMatrix = tuple[tuple[int, ...], ...]


def to_int_matrix(rows) -> IntMatrix:
    out = []
    for row in rows:
        cleaned = []
        for x in row:
            if isinstance(x, bool) or not isinstance(x, int):
                raise LatticeInputError(f"matrix entries must be integers, got {x!r}")
            cleaned.append(x)
        out.append(tuple(cleaned))
    return tuple(out)


def identity(n: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(a, b) -> IntMatrix:
    n, k, m = len(a), len(b), len(b[0])
    return tuple(
        tuple(sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m))
        for i in range(n)
    )


def mat_vec(a, v) -> tuple[int, ...]:
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in a)


def transpose(a) -> IntMatrix:
    return tuple(tuple(a[i][j] for i in range(len(a))) for j in range(len(a[0])))


def is_square_symmetric(a) -> bool:
    n = len(a)
    if any(len(row) != n for row in a):
        return False
    return all(a[i][j] == a[j][i] for i in range(n) for j in range(i + 1, n))


def bareiss_det(a) -> int:
    """Fraction-free determinant of an integer matrix."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(row) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended gcd with g >= 0; returns (g, x, y) with x*a + y*b == g."""
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        g, x, y = -g, -x, -y
    return g, x, y


def integer_kernel_basis(rows, n: int) -> list[tuple[int, ...]]:
    """Basis of {x in Z^n : R x = 0} for integer row constraints R.

    Unimodular column reduction; the returned vectors span the kernel as a
    lattice, which is automatically saturated.
    """
    k = len(rows)
    acols = [[int(rows[r][j]) for r in range(k)] for j in range(n)]
    vcols = [[1 if t == j else 0 for t in range(n)] for j in range(n)]
    active = list(range(n))
    for r in range(k):
        nz = [j for j in active if acols[j][r] != 0]
        if not nz:
            continue
        j0 = nz[0]
        for j in nz[1:]:
            p, q = acols[j0][r], acols[j][r]
            g, x, y = xgcd(p, q)
            pg, qg = p // g, q // g
            acols[j0], acols[j] = (
                [x * acols[j0][t] + y * acols[j][t] for t in range(k)],
                [-qg * acols[j0][t] + pg * acols[j][t] for t in range(k)],
            )
            vcols[j0], vcols[j] = (
                [x * vcols[j0][t] + y * vcols[j][t] for t in range(n)],
                [-qg * vcols[j0][t] + pg * vcols[j][t] for t in range(n)],
            )
        active.remove(j0)
    return [tuple(vcols[j]) for j in active]


def _rref(mat: list[list[Fraction]]) -> list[int]:
    """In-place reduced row echelon form; returns the pivot column list."""
    pivots = []
    row = 0
    n_rows = len(mat)
    n_cols = len(mat[0]) if n_rows else 0
    for col in range(n_cols):
        piv = next((i for i in range(row, n_rows) if mat[i][col] != 0), None)
        if piv is None:
            continue
        mat[row], mat[piv] = mat[piv], mat[row]
        inv = 1 / mat[row][col]
        mat[row] = [x * inv for x in mat[row]]
        for i in range(n_rows):
            if i != row and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[row])]
        pivots.append(col)
        row += 1
        if row == n_rows:
            break
    return pivots


def rational_rank(rows) -> int:
    if not rows:
        return 0
    mat = [[Fraction(x) for x in row] for row in rows]
    return len(_rref(mat))


def solve_exact(columns, target) -> list[Fraction] | None:
    """Solve sum_j x_j * columns[j] == target over Q.

    Returns one solution (unique when the columns are independent) or None
    when the system is inconsistent.
    """
    n = len(target)
    k = len(columns)
    mat = [[Fraction(columns[j][i]) for j in range(k)] + [Fraction(target[i])]
           for i in range(n)]
    pivots = _rref(mat)
    if k in pivots:
        return None
    sol = [Fraction(0)] * k
    for row, col in enumerate(pivots):
        sol[col] = mat[row][k]
    return sol


def invert_unimodular(m) -> IntMatrix:
    """Exact inverse of an integer matrix with determinant +-1."""
    n = len(m)
    aug = [[Fraction(m[i][j]) for j in range(n)]
           + [Fraction(1 if i == j else 0) for j in range(n)]
           for i in range(n)]
    pivots = _rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    inv = []
    for i in range(n):
        row = aug[i][n:]
        if any(x.denominator != 1 for x in row):
            raise ValueError("matrix is not unimodular")
        inv.append(tuple(int(x) for x in row))
    return tuple(inv)


def inertia(gram) -> tuple[int, int, int]:
    """Counts of positive, negative and zero squares of a symmetric form.

    Congruence diagonalization over Q; Sylvester's law makes the counts
    independent of the elimination choices.
    """
    n = len(gram)
    a = [[Fraction(x) for x in row] for row in gram]
    plus = minus = zero = 0
    for i in range(n):
        if a[i][i] == 0:
            piv = next((t for t in range(i + 1, n) if a[t][t] != 0), None)
            if piv is None:
                pair = next(((t, u) for t in range(i, n)
                             for u in range(t + 1, n) if a[t][u] != 0), None)
                if pair is None:
                    zero += n - i
                    break
                t, u = pair
                # both diagonals vanish here, so this makes a[t][t] = 2 a[t][u]
                for j in range(n):
                    a[t][j] += a[u][j]
                for j in range(n):
                    a[j][t] += a[j][u]
                piv = t
            if piv != i:
                a[i], a[piv] = a[piv], a[i]
                for j in range(n):
                    a[j][i], a[j][piv] = a[j][piv], a[j][i]
        p = a[i][i]
        if p > 0:
            plus += 1
        else:
            minus += 1
        for j in range(i + 1, n):
            if a[j][i] != 0:
                f = a[j][i] / p
                for col in range(i, n):
                    a[j][col] -= f * a[i][col]
                for row in range(i, n):
                    a[row][j] -= f * a[row][i]
    return plus, minus, zero
