"""Exact linear algebra over the rationals.

Small, dependency-free routines used by the certificate engine and the
tangent-space checkers: reduced row echelon form, rank, nullspace, linear
solves and determinants, all with Fraction (or plain int) arithmetic.
Integer inputs take a fraction-free (Bareiss) elimination path; the solver
orders columns sparsest-first, which keeps certificate multipliers small.
"""

from __future__ import annotations

from fractions import Fraction


def _to_fractions(rows):
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    m = _to_fractions(rows)
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = m[r][c]
        m[r] = [x / inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def int_rank(rows) -> int:
    """Rank of an integer matrix by fraction-free elimination."""
    m = [list(row) for row in rows]
    if not m:
        return 0
    ncols = len(m[0])
    prev = 1
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        piv = m[r][c]
        for i in range(r + 1, len(m)):
            mic = m[i][c]
            row_i, row_r = m[i], m[r]
            for j in range(c, ncols):
                row_i[j] = (row_i[j] * piv - mic * row_r[j]) // prev
        prev = piv
        r += 1
        if r == len(m):
            break
    return r


def exact_rank(rows) -> int:
    rows = list(rows)
    if not rows:
        return 0
    if all(isinstance(x, int) for row in rows for x in row):
        return int_rank(rows)
    return len(rref(rows)[0])


def nullspace(rows, ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of {x : M x = 0} as rows."""
    rows = list(rows)
    if not rows:
        if ncols is None:
            return []
        return [
            [Fraction(1) if j == i else Fraction(0) for j in range(ncols)]
            for i in range(ncols)
        ]
    if ncols is None:
        ncols = len(rows[0])
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for ri, pc in enumerate(pivots):
            vec[pc] = -red[ri][fc]
        basis.append(vec)
    return basis


def det(rows) -> Fraction:
    """Exact determinant by Gaussian elimination."""
    m = _to_fractions(rows)
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant requires a square matrix")
    sign = 1
    result = Fraction(1)
    for c in range(n):
        pr = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pr is None:
            return Fraction(0)
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            sign = -sign
        piv = m[c][c]
        result *= piv
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / piv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return sign * result


def solve_columns(columns, target, ncols_hint=None):
    """Exact solution x of  sum_j x_j * columns[j] == target, or None.

    ``columns`` is a list of column vectors (lists, all the same length).
    Columns are eliminated sparsest-first.  Integer inputs stay integer
    through a Bareiss forward pass; back substitution is rational.  Free
    coefficients are set to zero.
    """
    ncols = len(columns)
    if ncols == 0:
        return [] if all(x == 0 for x in target) else None
    nrows = len(target)
    all_int = all(isinstance(x, int) for col in columns for x in col) and all(
        isinstance(x, int) for x in target
    )

    order = sorted(range(ncols), key=lambda j: (sum(1 for x in columns[j] if x != 0), j))
    if all_int:
        m = [[columns[j][i] for j in order] + [target[i]] for i in range(nrows)]
        try:
            sol_perm = _solve_int_augmented(m, ncols)
        except ArithmeticError:
            m = [
                [Fraction(columns[j][i]) for j in order] + [Fraction(target[i])]
                for i in range(nrows)
            ]
            sol_perm = _solve_frac_augmented(m, ncols)
    else:
        m = [
            [Fraction(columns[j][i]) for j in order] + [Fraction(target[i])]
            for i in range(nrows)
        ]
        sol_perm = _solve_frac_augmented(m, ncols)
    if sol_perm is None:
        return None
    sol = [Fraction(0)] * ncols
    for pos, j in enumerate(order):
        sol[j] = sol_perm[pos]
    return sol


def _solve_int_augmented(m, ncols):
    nrows = len(m)
    prev = 1
    piv_cols: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        piv = m[r][c]
        for i in range(r + 1, nrows):
            mic = m[i][c]
            row_i, row_r = m[i], m[r]
            for j in range(c, ncols + 1):
                num = row_i[j] * piv - mic * row_r[j]
                q, rem = divmod(num, prev)
                if rem:
                    raise ArithmeticError("fraction-free elimination lost exactness")
                row_i[j] = q
        prev = piv
        piv_cols.append(c)
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if m[i][ncols] != 0:
            return None
    return _back_substitute(m, piv_cols, ncols)


def _solve_frac_augmented(m, ncols):
    nrows = len(m)
    piv_cols: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        piv = m[r][c]
        for i in range(r + 1, nrows):
            if m[i][c] != 0:
                f = m[i][c] / piv
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        piv_cols.append(c)
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if m[i][ncols] != 0:
            return None
    return _back_substitute(m, piv_cols, ncols)


def _back_substitute(m, piv_cols, ncols):
    x = [Fraction(0)] * ncols
    for ri in reversed(range(len(piv_cols))):
        c = piv_cols[ri]
        s = Fraction(m[ri][ncols])
        for j in range(c + 1, ncols):
            if x[j]:
                s -= Fraction(m[ri][j]) * x[j]
        x[c] = s / m[ri][c]
    return x


def solve_rows(rows, rhs):
    """Solve  M x = rhs  for row-major M; returns None if inconsistent."""
    if not rows:
        return [] if all(x == 0 for x in rhs) else None
    ncols = len(rows[0])
    columns = [[row[j] for row in rows] for j in range(ncols)]
    return solve_columns(columns, list(rhs))
