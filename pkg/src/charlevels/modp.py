"""Dense linear algebra over a prime field F_l, on lists of ints."""

from __future__ import annotations

from typing import List, Tuple

Matrix = List[List[int]]


def rref(rows: Matrix, l: int) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form and pivot columns; zero rows are dropped."""
    m = [list(r) for r in rows]
    pivots: List[int] = []
    if not m:
        return m, pivots
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] % l), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, l)
        m[r] = [x * inv % l for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % l for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def nullspace(a: Matrix, l: int) -> Matrix:
    """Basis (as rows) of {x : a x = 0}."""
    n = len(a[0]) if a else 0
    red, pivots = rref(a, l)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for row, pc in zip(red, pivots):
            v[pc] = (-row[f]) % l
        basis.append(v)
    return basis


def charpoly(a: Matrix, l: int) -> List[int]:
    """Characteristic polynomial det(xI - a), coefficients low degree first.

    Hessenberg reduction followed by the standard recurrence.
    """
    n = len(a)
    h = [[x % l for x in row] for row in a]
    for j in range(n - 2):
        piv = next((i for i in range(j + 1, n) if h[i][j]), None)
        if piv is None:
            continue
        if piv != j + 1:
            h[piv], h[j + 1] = h[j + 1], h[piv]
            for row in h:
                row[piv], row[j + 1] = row[j + 1], row[piv]
        inv = pow(h[j + 1][j], -1, l)
        for i in range(j + 2, n):
            f = h[i][j] * inv % l
            if not f:
                continue
            h[i] = [(x - f * y) % l for x, y in zip(h[i], h[j + 1])]
            for row in h:
                row[j + 1] = (row[j + 1] + f * row[i]) % l
    # p_k = char poly of leading k x k block
    polys: List[List[int]] = [[1]]
    for k in range(1, n + 1):
        # (x - h[k-1][k-1]) * p_{k-1}
        prev = polys[k - 1]
        cur = [0] * (k + 1)
        for i, c in enumerate(prev):
            cur[i + 1] = (cur[i + 1] + c) % l
            cur[i] = (cur[i] - h[k - 1][k - 1] * c) % l
        t = 1
        for i in range(1, k):
            t = t * h[k - i][k - i - 1] % l
            coef = t * h[k - i - 1][k - 1] % l
            if coef:
                for d, c in enumerate(polys[k - i - 1]):
                    cur[d] = (cur[d] - coef * c) % l
        polys.append(cur)
    return polys[n]


def poly_roots(poly: List[int], l: int) -> List[int]:
    """Distinct roots in F_l, in increasing order, found by evaluation and deflation."""
    poly = [c % l for c in poly]
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    roots = []
    x = 0
    while len(poly) > 1 and x < l:
        # Horner evaluation and synthetic division together
        acc = 0
        quot = []
        for c in reversed(poly):
            acc = (acc * x + c) % l
            quot.append(acc)
        if acc == 0:
            roots.append(x)
            while True:
                q = list(reversed(quot[:-1]))
                poly = q
                if len(poly) <= 1:
                    break
                acc = 0
                quot = []
                for c in reversed(poly):
                    acc = (acc * x + c) % l
                    quot.append(acc)
                if acc != 0:
                    break
        x += 1
    return roots


def matmul_vec(a: Matrix, v: List[int], l: int) -> List[int]:
    return [sum(x * y for x, y in zip(row, v)) % l for row in a]
