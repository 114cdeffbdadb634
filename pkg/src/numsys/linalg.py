"""Exact linear algebra over the integers and rationals."""

from __future__ import annotations

from fractions import Fraction


def charpoly(mat) -> list:
    """Coefficients ``[1, c_1, ..., c_n]`` of ``det(xI - mat)``, highest degree first.

    Berkowitz's division-free algorithm: integer input gives integer output.
    """
    n = len(mat)
    if n == 0:
        return [1]
    poly = [1, -mat[0][0]]
    for r in range(1, n):
        a = mat[r][r]
        row = mat[r][:r]
        col = [mat[i][r] for i in range(r)]
        # first column of the Toeplitz factor: 1, -a, -R S, -R A S, ..., -R A^{r-1} S
        toe = [1, -a]
        vec = col
        for _ in range(r):
            toe.append(-sum(x * y for x, y in zip(row, vec)))
            vec = [sum(mat[i][j] * vec[j] for j in range(r)) for i in range(r)]
        poly = [sum(toe[i - j] * poly[j] for j in range(min(i, r) + 1)) for i in range(r + 2)]
    return poly


def det(mat) -> int:
    """Bareiss fraction-free determinant (exact for integer matrices)."""
    m = [list(row) for row in mat]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
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
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def solve(mat, rhs):
    """One rational solution of ``mat @ x = rhs`` (free variables set to 0), or None if inconsistent."""
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    aug = [[Fraction(x) for x in mat[i]] + [Fraction(rhs[i])] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if aug[i][c] != 0), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        piv = aug[r][c]
        aug[r] = [x / piv for x in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    if any(aug[i][cols] != 0 for i in range(r, rows)):
        return None
    x = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        x[c] = aug[i][cols]
    return x


def poly_eval_recurrence(coeffs, seq, n) -> int:
    """``sum(d_i * seq[n - i])`` for ``coeffs = (d_1..d_m)``."""
    return sum(d * seq[n - 1 - i] for i, d in enumerate(coeffs))
