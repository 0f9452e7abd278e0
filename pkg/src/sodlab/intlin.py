"""Exact integer linear algebra: Smith and Hermite forms, solving, kernels.

Matrices are lists of rows of Python ints.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if not A:
        return []
    cols = len(B[0]) if B else 0
    return [[sum(a * B[k][j] for k, a in enumerate(row)) for j in range(cols)] for row in A]


def matvec(A: Matrix, x: list[int]) -> list[int]:
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def transpose(A: Matrix) -> Matrix:
    return [list(col) for col in zip(*A)]


def smith_normal_form(A: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(D, U, V)`` with ``U A V = D`` diagonal, ``U`` and ``V`` unimodular.

    The diagonal is non-negative and each entry divides the next.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    D = [list(row) for row in A]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (D, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        for M in (D, U):
            M[dst] = [a + q * b for a, b in zip(M[dst], M[src])]

    def add_col(dst, src, q):
        for M in (D, V):
            for row in M:
                row[dst] += q * row[src]

    for t in range(min(m, n)):
        cands = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
        if not cands:
            break
        _, i, j = min(cands)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = D[t][t]
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
            rest = [(abs(D[i][t]), i, "r") for i in range(t + 1, m) if D[i][t]]
            rest += [(abs(D[t][j]), j, "c") for j in range(t + 1, n) if D[t][j]]
            if rest:
                _, k, kind = min(rest)
                if kind == "r":
                    swap_rows(t, k)
                else:
                    swap_cols(t, k)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if D[t][t] < 0:
            D[t] = [-a for a in D[t]]
            U[t] = [-a for a in U[t]]
    return D, U, V


def invariant_factors(A: Matrix) -> list[int]:
    if not A or not A[0]:
        return []
    D, _, _ = smith_normal_form(A)
    return [D[i][i] for i in range(min(len(D), len(D[0]))) if D[i][i]]


@dataclass
class IntegerSolution:
    """Solution set ``particular + span_Z(kernel)``; ``particular`` is None when empty."""

    particular: list[int] | None
    kernel: list[list[int]] = field(default_factory=list)

    @property
    def empty(self) -> bool:
        return self.particular is None

    @property
    def unique(self) -> bool:
        return self.particular is not None and not self.kernel


def solve(A: Matrix, b: list[int], ncols: int | None = None) -> IntegerSolution:
    """All integer ``x`` with ``A x = b``."""
    m = len(A)
    n = len(A[0]) if m else (ncols or 0)
    if m == 0:
        return IntegerSolution([0] * n, [[int(i == j) for i in range(n)] for j in range(n)])
    D, U, V = smith_normal_form(A)
    c = matvec(U, b)
    y = [0] * n
    rank = 0
    for i in range(min(m, n)):
        d = D[i][i]
        if d == 0:
            break
        if c[i] % d:
            return IntegerSolution(None)
        y[i] = c[i] // d
        rank += 1
    if any(c[i] for i in range(rank, m)):
        return IntegerSolution(None)
    x = matvec(V, y)
    kernel = [[V[i][j] for i in range(n)] for j in range(rank, n)]
    return IntegerSolution(x, hermite_rows(kernel))


def kernel(A: Matrix, ncols: int | None = None) -> list[list[int]]:
    n = len(A[0]) if A else (ncols or 0)
    return solve(A, [0] * len(A), ncols=n).kernel


def hermite_rows(rows: list[list[int]]) -> list[list[int]]:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Pivots are positive and entries above a pivot are reduced into
    ``[0, pivot)``, so two generating sets span the same lattice exactly when
    their forms agree.
    """
    H = [list(r) for r in rows if any(r)]
    n = len(H[0]) if H else 0
    out: list[list[int]] = []
    for col in range(n):
        nz = [r for r in H if r[col]]
        rest = [r for r in H if not r[col]]
        if not nz:
            continue
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            p = nz[0]
            keep = []
            for r in nz[1:]:
                q = r[col] // p[col]
                r2 = [a - q * b for a, b in zip(r, p)]
                (keep if r2[col] else rest).append(r2)
            nz = [p] + keep
        pivot = nz[0] if nz[0][col] > 0 else [-a for a in nz[0]]
        for k, r in enumerate(out):
            q = r[col] // pivot[col]
            if q:
                out[k] = [a - q * b for a, b in zip(r, pivot)]
        out.append(pivot)
        H = [r for r in rest if any(r)]
    return out


def same_row_span(A: list[list[int]], B: list[list[int]]) -> bool:
    return hermite_rows(A) == hermite_rows(B)


def det(A: Matrix) -> int:
    """Bareiss fraction-free determinant."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(r) for r in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def primitive(v: list[int]) -> list[int]:
    """Divide by the gcd and make the first nonzero entry positive."""
    g = 0
    for a in v:
        g = gcd(g, a)
    if g == 0:
        return list(v)
    w = [a // g for a in v]
    first = next(a for a in w if a)
    return w if first > 0 else [-a for a in w]
