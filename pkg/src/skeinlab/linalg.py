"""Exact signature of small symmetric rational matrices."""

from fractions import Fraction

from .errors import ValidationError


def _as_matrix(m):
    rows = [[Fraction(x) for x in row] for row in m]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValidationError("matrix is not square")
    for i in range(n):
        for j in range(i):
            if rows[i][j] != rows[j][i]:
                raise ValidationError("matrix is not symmetric")
    return rows


def inertia(m):
    """(positive, negative, zero) counts via symmetric Gaussian elimination."""
    a = _as_matrix(m)
    n = len(a)
    pos = neg = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if a[i][i] != 0), None)
        if piv is None:
            # all diagonal entries vanish: find an off-diagonal entry and
            # replace row/col i by row/col i + row/col j
            pair = next(((i, j) for i in active for j in active if i != j and a[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            for k in range(n):
                a[i][k] += a[j][k]
            for k in range(n):
                a[k][i] += a[k][j]
            piv = i
        p = a[piv][piv]
        if p > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        for i in active:
            f = a[i][piv] / p
            if f:
                for k in active:
                    a[i][k] -= f * a[piv][k]
        for i in active:
            a[i][piv] = a[piv][i] = Fraction(0)
    return pos, neg, len(a) - pos - neg


def signature(m):
    pos, neg, _ = inertia(m)
    return pos - neg
