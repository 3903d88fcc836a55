"""Exact integer and rational linear algebra.

Everything is fraction- or integer-exact; no floating point enters any code
path.  Matrices are plain lists of lists (rows), vectors are sequences.
All functions are pure.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def identity_matrix(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> list[list[int]]:
    if a and b:
        assert len(a[0]) == len(b)
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]) if b else 0)]
            for i in range(len(a))]


def mat_vec(a: Sequence[Sequence[int]], x: Sequence[int]) -> list[int]:
    return [sum(r[k] * x[k] for k in range(len(x))) for r in a]


def det_int(a: Sequence[Sequence[int]]) -> int:
    """Integer determinant by fraction-free Bareiss elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(row) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def solve_rational(columns: Sequence[Sequence[int]],
                   target: Sequence[int | Fraction]) -> tuple[Fraction, ...] | None:
    """Solve sum_j x_j * columns[j] = target exactly over the rationals.

    Returns the coefficient tuple, or None when the system is inconsistent.
    Raises ValueError if the columns are linearly dependent (the callers all
    supply independent columns).
    """
    k = len(columns)
    n = len(target)
    rows = [[Fraction(columns[j][i]) for j in range(k)] + [Fraction(target[i])]
            for i in range(n)]
    piv_rows: list[int] = []
    r = 0
    for c in range(k):
        piv = next((i for i in range(r, n) if rows[i][c] != 0), None)
        if piv is None:
            raise ValueError("dependent columns in exact solve")
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        piv_rows.append(r)
        r += 1
    for i in range(r, n):
        if rows[i][k] != 0:
            return None
    return tuple(rows[j][k] for j in range(k))


def smith_normal_form(a: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Smith normal form of an integer matrix.

    Returns (d, u, v) with d = u * a * v, u and v unimodular, d diagonal with
    d[0][0] | d[1][1] | ... and nonnegative diagonal entries.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    d = [list(row) for row in a]
    u = identity_matrix(m)
    v = identity_matrix(n)

    def row_add(i: int, j: int, c: int) -> None:
        for k in range(n):
            d[i][k] += c * d[j][k]
        for k in range(m):
            u[i][k] += c * u[j][k]

    def col_add(i: int, j: int, c: int) -> None:
        for k in range(m):
            d[k][i] += c * d[k][j]
        for k in range(n):
            v[k][i] += c * v[k][j]

    def row_swap(i: int, j: int) -> None:
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def col_swap(i: int, j: int) -> None:
        for k in range(m):
            d[k][i], d[k][j] = d[k][j], d[k][i]
        for k in range(n):
            v[k][i], v[k][j] = v[k][j], v[k][i]

    def row_negate(i: int) -> None:
        d[i] = [-x for x in d[i]]
        u[i] = [-x for x in u[i]]

    def reduce_at(t: int) -> bool:
        """Diagonalize position t against the trailing submatrix."""
        piv = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if d[i][j] != 0 and (best is None or abs(d[i][j]) < best):
                    piv = (i, j)
                    best = abs(d[i][j])
        if piv is None:
            return False
        if piv[0] != t:
            row_swap(t, piv[0])
        if piv[1] != t:
            col_swap(t, piv[1])
        while True:
            i = next((i for i in range(t + 1, m) if d[i][t] != 0), None)
            if i is not None:
                q = d[i][t] // d[t][t]
                row_add(i, t, -q)
                if d[i][t] != 0:
                    row_swap(t, i)
                continue
            j = next((j for j in range(t + 1, n) if d[t][j] != 0), None)
            if j is not None:
                q = d[t][j] // d[t][t]
                col_add(j, t, -q)
                if d[t][j] != 0:
                    col_swap(t, j)
                continue
            break
        if d[t][t] < 0:
            row_negate(t)
        return True

    rank = 0
    for t in range(min(m, n)):
        if not reduce_at(t):
            break
        rank = t + 1

    # enforce the divisibility chain
    changed = True
    while changed:
        changed = False
        for i in range(rank - 1):
            if d[i + 1][i + 1] % d[i][i] != 0:
                col_add(i, i + 1, 1)
                reduce_at(i)
                reduce_at(i + 1)
                changed = True
    return d, u, v


def integer_solutions(a: Sequence[Sequence[int]],
                      b: Sequence[int]) -> tuple[list[int], list[list[int]]] | None:
    """Solve a * x = b over the integers.

    Returns (particular solution, basis of the homogeneous solution lattice),
    or None when no integer solution exists.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    if m == 0:
        return [0] * n, [[int(i == j) for j in range(n)] for i in range(n)]
    d, u, v = smith_normal_form(a)
    ub = mat_vec(u, list(b))
    y = [0] * n
    free: list[int] = []
    for i in range(n):
        di = d[i][i] if i < m else 0
        if di != 0:
            if ub[i] % di != 0:
                return None
            y[i] = ub[i] // di
        else:
            if i < m and ub[i] != 0:
                return None
            free.append(i)
    for i in range(n, m):
        if ub[i] != 0:
            return None
    x0 = mat_vec(v, y)
    basis = [[v[r][i] for r in range(n)] for i in free]
    return x0, basis


def in_lattice_span(generators: Sequence[Sequence[int]], target: Sequence[int]) -> bool:
    """Whether target lies in the integer span of the generator vectors."""
    n = len(target)
    if not generators:
        return all(t == 0 for t in target)
    cols = [[g[i] for g in generators] for i in range(n)]
    return integer_solutions(cols, list(target)) is not None


def lp_feasible_point(rows: Sequence[Sequence[int | Fraction]],
                      rhs: Sequence[int | Fraction]) -> list[Fraction] | None:
    """Exact feasibility for {x >= 0 : rows * x = rhs} by phase-1 simplex.

    Returns a feasible point, or None.  Bland's rule guarantees termination.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    if m == 0:
        return [Fraction(0)] * n
    # tableau: n structural columns, m artificial columns, rhs; plus objective row
    tab: list[list[Fraction]] = []
    for i in range(m):
        r = [Fraction(x) for x in rows[i]]
        b = Fraction(rhs[i])
        if b < 0:
            r = [-x for x in r]
            b = -b
        tab.append(r + [Fraction(0)] * m + [b])
        tab[i][n + i] = Fraction(1)
    basis = [n + i for i in range(m)]
    # maximize -(sum of artificials); reduced costs for the initial basis
    obj = [Fraction(0)] * (n + m + 1)
    for j in range(n):
        obj[j] = sum(tab[i][j] for i in range(m))
    obj[-1] = sum(tab[i][-1] for i in range(m))

    while True:
        enter = next((j for j in range(n + m) if obj[j] > 0), None)
        if enter is None:
            break
        leave = None
        best: Fraction | None = None
        for i in range(m):
            if tab[i][enter] > 0:
                ratio = tab[i][-1] / tab[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            return None  # unreachable for a phase-1 objective; defensive
        piv = tab[leave][enter]
        tab[leave] = [x / piv for x in tab[leave]]
        for i in range(m):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[leave])]
        if obj[enter] != 0:
            f = obj[enter]
            obj = [x - f * y for x, y in zip(obj, tab[leave])]
        basis[leave] = enter

    if obj[-1] != 0:
        return None
    x = [Fraction(0)] * n
    for i, bv in enumerate(basis):
        if bv < n:
            x[bv] = tab[i][-1]
    return x
