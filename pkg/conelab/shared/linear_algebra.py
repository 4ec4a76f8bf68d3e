"""
Exact linear algebra over the rationals.

Matrices are lists of rows of Fractions. Nothing here touches floating point.
"""

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

Matrix = List[List[Fraction]]


def to_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def row_echelon(m: Matrix, t: Optional[List[Fraction]] = None) -> List[int]:
    """
    Reduce m (and the right-hand side t) to row echelon form in place.

    Returns:
        Indices of the free columns
    """
    free_vars = []
    n_rows = len(m)
    n_cols = len(m[0]) if n_rows else 0
    piv_r = 0
    for piv_c in range(n_cols):
        for i_row in range(piv_r, n_rows):
            if m[i_row][piv_c] != 0:
                break
        else:
            free_vars.append(piv_c)
            continue
        if i_row != piv_r:
            m[piv_r], m[i_row] = m[i_row], m[piv_r]
            if t is not None:
                t[piv_r], t[i_row] = t[i_row], t[piv_r]
        fp = m[piv_r][piv_c]
        for r in range(piv_r + 1, n_rows):
            fr = m[r][piv_c]
            if fr == 0:
                continue
            frp = fr / fp
            for c in range(piv_c, n_cols):
                m[r][c] -= m[piv_r][c] * frp
            if t is not None:
                t[r] -= t[piv_r] * frp
        piv_r += 1
    return free_vars


def rank(rows: Sequence[Sequence]) -> int:
    """Exact rank of a rational matrix."""
    if not rows:
        return 0
    m = to_matrix(rows)
    return len(m[0]) - len(row_echelon(m))


def solve(rows: Sequence[Sequence], rhs: Sequence) -> Tuple[Optional[List[Fraction]], int]:
    """
    Solve rows * x = rhs exactly.

    Returns:
        (solution, kernel_dimension); solution is None when the system is
        inconsistent or when the kernel is nontrivial
    """
    m = to_matrix(rows)
    t = [Fraction(x) for x in rhs]
    n_rows = len(m)
    n_cols = len(m[0])
    free_vars = row_echelon(m, t)
    rank_ = n_cols - len(free_vars)

    # Zero rows must have zero right-hand side
    for r in range(rank_, n_rows):
        if t[r] != 0:
            return None, len(free_vars)
    if free_vars:
        return None, len(free_vars)

    sol = [Fraction(0)] * n_cols
    for r in range(rank_ - 1, -1, -1):
        s = -t[r]
        for c in range(r + 1, n_cols):
            s += m[r][c] * sol[c]
        sol[r] = -s / m[r][r]
    return sol, 0


def is_consistent(rows: Sequence[Sequence], rhs: Sequence) -> bool:
    m = to_matrix(rows)
    t = [Fraction(x) for x in rhs]
    free_vars = row_echelon(m, t)
    rank_ = (len(m[0]) if m else 0) - len(free_vars)
    return all(t[r] == 0 for r in range(rank_, len(m)))


def diagonalize_symmetric(rows: Sequence[Sequence]) -> List[Fraction]:
    """
    Congruence-diagonalize a symmetric matrix.

    Simultaneous row/column elimination with the first nonzero diagonal
    pivot. When every remaining diagonal entry vanishes but an off-diagonal
    entry a_ij does not, vector j is added to vector i, which makes the new
    diagonal entry 2*a_ij nonzero.

    Returns:
        Diagonal entries; a zero entry for each radical direction
    """
    a = to_matrix(rows)
    active = list(range(len(a)))
    diagonal: List[Fraction] = []

    while active:
        pivot = next((i for i in active if a[i][i] != 0), None)
        if pivot is None:
            pair = next(
                ((i, j) for i in active for j in active if i != j and a[i][j] != 0),
                None,
            )
            if pair is None:
                diagonal.extend(Fraction(0) for _ in active)
                break
            i, j = pair
            # basis change v_i -> v_i + v_j
            for c in range(len(a)):
                a[i][c] += a[j][c]
            for r in range(len(a)):
                a[r][i] += a[r][j]
            pivot = i

        p = a[pivot][pivot]
        rest = [i for i in active if i != pivot]
        for k in rest:
            factor = a[k][pivot] / p
            if factor == 0:
                continue
            for col in rest:
                a[k][col] -= factor * a[pivot][col]
        for k in rest:
            a[k][pivot] = a[pivot][k] = Fraction(0)
        diagonal.append(p)
        active = rest

    return diagonal


def ldl_decomposition(rows: Sequence[Sequence]) -> Optional[Tuple[List[Fraction], Matrix]]:
    """
    Write a positive definite form as Q(x) = sum_i d_i (x_i + sum_{j>i} mu_ij x_j)^2.

    Returns:
        (d, mu), or None when the form is not positive definite
    """
    q = to_matrix(rows)
    n = len(q)
    d = [Fraction(0)] * n
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        d[i] = q[i][i] - sum((mu[k][i] ** 2 * d[k] for k in range(i)), Fraction(0))
        if d[i] <= 0:
            return None
        for j in range(i + 1, n):
            s = q[i][j] - sum((mu[k][i] * mu[k][j] * d[k] for k in range(i)), Fraction(0))
            mu[i][j] = s / d[i]
    return d, mu
