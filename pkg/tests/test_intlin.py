"""Smith normal form and integer solving against independent brute-force oracles."""

import itertools
import math
import random

from hypothesis import given, strategies as st

from sodlab import intlin

matrices = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=m, max_size=m)))


def determinantal_divisors(A):
    m, n = len(A), len(A[0])
    out = []
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in itertools.combinations(range(m), k):
            for cols in itertools.combinations(range(n), k):
                g = math.gcd(g, intlin.det([[A[i][j] for j in cols] for i in rows]))
        if g == 0:
            break
        out.append(g)
    return out


@given(matrices)
def test_snf_against_minors(A):
    D, U, V = intlin.smith_normal_form(A)
    assert intlin.matmul(intlin.matmul(U, A), V) == D
    assert abs(intlin.det(U)) == 1 and abs(intlin.det(V)) == 1
    diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
    for i, row in enumerate(D):
        for j, x in enumerate(row):
            if i != j:
                assert x == 0
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    # d_1 ... d_k = gcd of k x k minors
    dd = determinantal_divisors(A)
    prods = list(itertools.accumulate(nz, lambda a, b: a * b))
    assert prods == dd


@given(matrices, st.data())
def test_solve_against_box(A, data):
    n = len(A[0])
    x0 = data.draw(st.lists(st.integers(-3, 3), min_size=n, max_size=n))
    # half the time b is in the image, otherwise arbitrary
    if data.draw(st.booleans()):
        b = intlin.matvec(A, x0)
    else:
        b = data.draw(st.lists(st.integers(-8, 8), min_size=len(A), max_size=len(A)))
    sol = intlin.solve(A, b)
    box = [list(x) for x in itertools.product(range(-3, 4), repeat=n) if intlin.matvec(A, list(x)) == b]
    if box:
        assert not sol.empty
    if not sol.empty:
        assert intlin.matvec(A, sol.particular) == b
        for k in sol.kernel:
            assert not any(intlin.matvec(A, k))
        rank = len(determinantal_divisors(A))
        assert len(sol.kernel) == n - rank
        if sol.kernel:
            # saturated: the kernel basis spans every integer kernel vector
            assert intlin.invariant_factors(sol.kernel) == [1] * len(sol.kernel)


def test_solve_examples():
    s = intlin.solve([[2, 0], [0, 3]], [4, 9])
    assert s.unique and s.particular == [2, 3]
    assert intlin.solve([[2]], [1]).empty
    s = intlin.solve([[1, 1]], [0])
    assert s.particular == [0, 0] and len(s.kernel) == 1


def test_det_and_hermite():
    rng = random.Random(7)
    for _ in range(50):
        A = [[rng.randint(-5, 5) for _ in range(3)] for _ in range(3)]
        a, b, c = A
        expected = (a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
                    + a[2] * (b[0] * c[1] - b[1] * c[0]))
        assert intlin.det(A) == expected
        H = intlin.hermite_rows(A)
        assert intlin.same_row_span(A, H)


def test_same_row_span():
    assert intlin.same_row_span([[1, 0], [0, 1]], [[1, 1], [0, 1]])
    assert not intlin.same_row_span([[2, 0], [0, 1]], [[1, 0], [0, 1]])


def test_primitive():
    assert intlin.primitive([0, -4, 6]) == [0, 2, -3]
    assert intlin.primitive([0, 0]) == [0, 0]
