from fractions import Fraction
from itertools import product
from math import isqrt

import pytest
from hypothesis import given, settings, strategies as st

from k3lab.exact import (
    determinant,
    enumerate_norm_solutions,
    hermite_rows,
    identity,
    integer_kernel,
    inverse_rational,
    is_lll_reduced,
    lll_reduce,
    matmul,
    matvec,
    positive_index,
    rank,
    saturation_index,
    signature,
    smith_diagonal,
    smith_normal_form,
    solve_rational,
    transpose,
)

small = st.integers(-6, 6)


def matrices(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


@st.composite
def any_matrix(draw):
    r, c = draw(st.integers(1, 4)), draw(st.integers(1, 4))
    return draw(matrices(r, c))


@st.composite
def symmetric(draw, n=None):
    n = draw(st.integers(1, 4)) if n is None else n
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            m[i][j] = m[j][i] = draw(small)
    return m


@st.composite
def positive_definite(draw, max_rank=3):
    """``A^T A + I`` for a random integer ``A``: always positive definite."""
    n = draw(st.integers(1, max_rank))
    a = draw(matrices(n, n))
    g = matmul(transpose(a), a)
    return [[g[i][j] + (i == j) for j in range(n)] for i in range(n)]


# -- Smith normal form --------------------------------------------------------


@given(any_matrix())
def test_smith_is_a_unimodular_factorization(m):
    u, d, v = smith_normal_form(m)
    assert matmul(matmul(u, m), v) == d
    assert abs(determinant(u)) == 1 and abs(determinant(v)) == 1
    diag = [d[i][i] for i in range(min(len(m), len(m[0])))]
    assert all(x >= 0 for x in diag)
    assert all(d[i][j] == 0 for i in range(len(d)) for j in range(len(d[0])) if i != j)
    nz = [x for x in diag if x]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert len(nz) == rank(m)


@given(matrices(3, 3))
def test_smith_product_is_abs_determinant(m):
    diag = smith_diagonal(m)
    prod = 1
    for x in diag:
        prod *= x
    assert prod == abs(determinant(m))


def test_smith_known_example():
    assert smith_diagonal([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]


# -- kernel, Hermite, saturation ---------------------------------------------


@given(any_matrix())
def test_integer_kernel_is_exact_and_saturated(m):
    k = integer_kernel(m)
    cols = len(m[0])
    assert len(k) == cols - rank(m)
    for v in k:
        assert matvec(m, v) == [0] * len(m)
    if k:
        assert saturation_index(k) == 1


@given(any_matrix())
def test_integer_kernel_contains_every_small_solution(m):
    k = integer_kernel(m)
    cols = len(m[0])
    for x in product(range(-2, 3), repeat=cols):
        if matvec(m, list(x)) == [0] * len(m):
            assert solve_rational(transpose(k), list(x)) is not None if k else not any(x)


@given(any_matrix())
def test_hermite_rows_span_the_same_lattice(m):
    h = hermite_rows(m)
    assert len(h) == rank(m)
    # same row space over Z: each row of one is an integer combination of the other
    for row in m:
        sol = solve_rational(transpose(h), row) if h else None
        assert (sol is not None and all(x.denominator == 1 for x in sol)) or not any(row)


def test_saturation_index():
    assert saturation_index([[2, 0], [0, 3]]) == 6
    assert saturation_index([[1, 2, 3]]) == 1


# -- inertia ------------------------------------------------------------------


@given(symmetric())
def test_signature_counts_add_up(g):
    p, n, z = signature(g)
    assert p + n + z == len(g)
    assert p + n == rank(g)
    assert positive_index(g) == p


@given(symmetric(), matrices(4, 4))
@settings(max_examples=60)
def test_signature_is_a_congruence_invariant(g, t):
    n = len(g)
    t = [row[:n] for row in t[:n]]
    if determinant(t) == 0:
        t = identity(n)
    assert signature(matmul(matmul(transpose(t), g), t)) == signature(g)


@given(symmetric())
def test_signature_of_negation(g):
    p, n, z = signature(g)
    assert signature([[-x for x in row] for row in g]) == (n, p, z)


def test_signature_known():
    assert signature([[0, 1], [1, 0]]) == (1, 1, 0)
    assert signature([[-2, 1], [1, -2]]) == (0, 2, 0)


# -- rational solve / inverse -------------------------------------------------


@given(matrices(3, 3))
def test_inverse_rational(m):
    if determinant(m) == 0:
        with pytest.raises(ValueError):
            inverse_rational(m)
        return
    inv = inverse_rational(m)
    assert matmul(m, inv) == identity(3)


# -- LLL ----------------------------------------------------------------------


@given(positive_definite(max_rank=4))
def test_lll_is_unimodular_and_reduced(g):
    g_red, t = lll_reduce(g)
    assert abs(determinant(t)) == 1
    assert matmul(matmul(transpose(t), g), t) == g_red
    assert is_lll_reduced(g_red)


def test_lll_negative_definite():
    g = [[-2, 1, 0], [1, -2, 1], [0, 1, -2]]
    g_red, t = lll_reduce(g, definite=-1)
    assert matmul(matmul(transpose(t), g), t) == g_red
    assert all(g_red[i][i] < 0 for i in range(3))


# -- Fincke-Pohst against an independent box search ---------------------------


def box_oracle(g, shift, target):
    """Enumerate a box large enough to hold every solution.

    For positive definite ``g``, ``|z_i| <= sqrt(target * (g^-1)_ii)``.
    """
    n = len(g)
    inv = inverse_rational(g)
    bounds = []
    for i in range(n):
        b2 = Fraction(target) * inv[i][i]
        r = isqrt(int(b2) + 1) + 1
        lo = -r - int(shift[i]) - 1
        hi = r - int(shift[i]) + 1
        bounds.append(range(lo, hi + 1))
    out = []
    for x in product(*bounds):
        z = [Fraction(xi) + si for xi, si in zip(x, shift)]
        if sum(z[i] * g[i][j] * z[j] for i in range(n) for j in range(n)) == target:
            out.append(list(x))
    return sorted(out)


@given(
    positive_definite(max_rank=3),
    st.lists(st.fractions(min_value=-2, max_value=2, max_denominator=4), min_size=3, max_size=3),
    st.integers(0, 12),
)
@settings(max_examples=150, deadline=None)
def test_fincke_pohst_matches_box_search(g, shift, target):
    shift = shift[: len(g)]
    assert enumerate_norm_solutions(g, shift, target) == box_oracle(g, shift, target)


@given(positive_definite(max_rank=3), st.integers(0, 20))
@settings(deadline=None)
def test_fincke_pohst_unshifted(g, target):
    n = len(g)
    assert enumerate_norm_solutions(g, [0] * n, target) == box_oracle(g, [Fraction(0)] * n, target)


def test_fincke_pohst_a2_roots():
    sols = enumerate_norm_solutions([[2, -1], [-1, 2]], None, 2)
    assert len(sols) == 6
