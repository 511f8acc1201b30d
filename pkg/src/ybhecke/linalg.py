"""Dense matrices over an exact commutative ring, as lists of rows.

Entries only need ``+``, ``-``, ``*`` and truthiness for zero tests; the
determinant also needs an exact division callback.
"""

from __future__ import annotations

import operator
from typing import Callable, Sequence

Matrix = list[list]


def identity(n: int, zero, one) -> Matrix:
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int, zero) -> Matrix:
    return [[zero] * cols for _ in range(rows)]


def mat_mul(a: Matrix, b: Matrix, zero) -> Matrix:
    cols = list(zip(*b))
    out = []
    for row in a:
        new_row = []
        for col in cols:
            acc = zero
            for x, y in zip(row, col):
                if x and y:
                    acc = acc + x * y
            new_row.append(acc)
        out.append(new_row)
    return out


def mat_vec(a: Matrix, v: Sequence, zero) -> list:
    out = []
    for row in a:
        acc = zero
        for x, y in zip(row, v):
            if x and y:
                acc = acc + x * y
        out.append(acc)
    return out


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(r, s)] for r, s in zip(a, b)]


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(r, s)] for r, s in zip(a, b)]


def mat_scale(c, a: Matrix) -> Matrix:
    return [[c * x for x in r] for r in a]


def mat_pow(a: Matrix, k: int, zero, one) -> Matrix:
    result = identity(len(a), zero, one)
    base = a
    while k:
        if k & 1:
            result = mat_mul(result, base, zero)
        base = mat_mul(base, base, zero)
        k >>= 1
    return result


def is_zero_matrix(a: Matrix) -> bool:
    return not any(x for row in a for x in row)


def transpose(a: Matrix) -> Matrix:
    return [list(c) for c in zip(*a)]


def det_bareiss(m: Matrix, zero, one, div: Callable = operator.truediv):
    """Fraction-free Gaussian elimination; ``div`` must be exact."""
    a = [list(r) for r in m]
    n = len(a)
    if n == 0:
        return one
    sign = 1
    prev = one
    for k in range(n - 1):
        if not a[k][k]:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return zero
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i = a[i]
            row_k = a[k]
            for j in range(k + 1, n):
                num = row_i[j] * pivot - aik * row_k[j]
                row_i[j] = div(num, prev) if num else zero
            row_i[k] = zero
        prev = pivot
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det
