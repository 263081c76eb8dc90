"""Exact integer and rational linear algebra.

Matrices are plain lists of rows holding ``int`` or ``Fraction`` entries.
Nothing in this module touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import Sequence

Matrix = list[list[int]]
Vector = list[int]


# ---------------------------------------------------------------------------
# small helpers


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(r: int, c: int) -> Matrix:
    return [[0] * c for _ in range(r)]


def transpose(m: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def dot(u: Sequence, v: Sequence):
    return sum(x * y for x, y in zip(u, v))


def bilinear(g: Sequence[Sequence], u: Sequence, v: Sequence):
    """Return ``u^T g v``."""
    return dot(u, matvec(g, v))


def congruent(g: Sequence[Sequence], t: Sequence[Sequence]) -> list[list]:
    """Return ``t^T g t``."""
    return matmul(transpose(t), matmul(g, t))


def is_symmetric(m: Sequence[Sequence]) -> bool:
    n = len(m)
    return all(len(row) == n for row in m) and all(
        m[i][j] == m[j][i] for i in range(n) for j in range(i)
    )


def _check_shape(m: Sequence[Sequence]) -> tuple[int, int]:
    if not m or not m[0]:
        raise ValueError("matrix dimensions must be positive")
    cols = len(m[0])
    if any(len(row) != cols for row in m):
        raise ValueError("ragged matrix")
    return len(m), cols


def _require_symmetric(g: Sequence[Sequence]) -> None:
    _check_shape(g)
    if not is_symmetric(g):
        raise ValueError("matrix is not symmetric")


def determinant(m: Sequence[Sequence]):
    """Exact determinant; integer input gives an ``int``."""
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] / a[c][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return int(det) if det.denominator == 1 else det


def rank(m: Sequence[Sequence]) -> int:
    """Rank over the rationals by Gaussian elimination."""
    a = [[Fraction(x) for x in row] for row in m]
    if not a:
        return 0
    rows, cols = len(a), len(a[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, rows):
            if a[i][c] != 0:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == rows:
            break
    return r


def solve_rational(a: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """Solve ``a x = b`` over the rationals; ``None`` if inconsistent.

    Free variables are set to zero, so the solution is unique whenever
    ``a`` has full column rank.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    aug = [[Fraction(x) for x in a[i]] + [Fraction(b[i])] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    if any(aug[i][cols] != 0 for i in range(r, rows)):
        return None
    x = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        x[c] = aug[i][cols]
    return x


def inverse_rational(m: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(m)
    aug = [[Fraction(x) for x in m[i]] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]


# ---------------------------------------------------------------------------
# Smith and Hermite normal forms


def smith_normal_form(m: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form ``u m v = d``.

    ``u`` and ``v`` are unimodular and ``d`` is diagonal with non-negative
    entries ``d_1 | d_2 | ...``.  Pivots are chosen by smallest absolute
    value, ties broken by lowest (row, column) index, so the output is
    deterministic.
    """
    rows, cols = _check_shape(m)
    d = [[int(x) for x in row] for row in m]
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):  # row dst -= q * row src
        d[dst] = [a - q * b for a, b in zip(d[dst], d[src])]
        u[dst] = [a - q * b for a, b in zip(u[dst], u[src])]

    def add_col(src, dst, q):  # col dst -= q * col src
        for row in d:
            row[dst] -= q * row[src]
        for row in v:
            row[dst] -= q * row[src]

    for t in range(min(rows, cols)):
        while True:
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    x = d[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                break
            _, i, j = best
            swap_rows(t, i)
            swap_cols(t, j)
            p = d[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if d[i][t]:
                    add_row(t, i, d[i][t] // p)
                    dirty = dirty or d[i][t] != 0
            for j in range(t + 1, cols):
                if d[t][j]:
                    add_col(t, j, d[t][j] // p)
                    dirty = dirty or d[t][j] != 0
            if dirty:
                continue
            # enforce divisibility of the remaining block by the pivot
            bad = next(
                ((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if d[i][j] % p),
                None,
            )
            if bad is None:
                break
            i, _ = bad
            d[t] = [a + b for a, b in zip(d[t], d[i])]
            u[t] = [a + b for a, b in zip(u[t], u[i])]
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
    return u, d, v


def smith_diagonal(m: Sequence[Sequence[int]]) -> list[int]:
    _, d, _ = smith_normal_form(m)
    return [d[i][i] for i in range(min(len(d), len(d[0])))]


def hermite_rows(vectors: Sequence[Sequence[int]]) -> Matrix:
    """Row-style Hermite normal form of the lattice spanned by ``vectors``.

    Leading entries positive, entries above each pivot reduced into
    ``[0, pivot)``, zero rows dropped.
    """
    a = [[int(x) for x in row] for row in vectors]
    if not a:
        return []
    rows, cols = len(a), len(a[0])
    r = 0
    for c in range(cols):
        while True:
            nz = [i for i in range(r, rows) if a[i][c]]
            if not nz:
                break
            p = min(nz, key=lambda i: (abs(a[i][c]), i))
            a[r], a[p] = a[p], a[r]
            done = True
            for i in range(r + 1, rows):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    if a[i][c]:
                        done = False
            if done:
                break
        if r < rows and a[r][c]:
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
            for i in range(r):
                q = a[i][c] // a[r][c]
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
            r += 1
            if r == rows:
                break
    return [row for row in a[:r] if any(row)]


def integer_kernel(m: Sequence[Sequence[int]]) -> Matrix:
    """Z-basis of ``{x : m x = 0}`` in Hermite-reduced form (one vector per row)."""
    rows, cols = _check_shape(m)
    _, d, v = smith_normal_form(m)
    r = sum(1 for i in range(min(rows, cols)) if d[i][i])
    basis = [[v[i][j] for i in range(cols)] for j in range(r, cols)]
    return hermite_rows(basis)


def saturation_index(vectors: Sequence[Sequence[int]]) -> int:
    """Index of the span of ``vectors`` in its saturation (1 when primitive)."""
    diag = [x for x in smith_diagonal(vectors) if x]
    out = 1
    for x in diag:
        out *= x
    return out


# ---------------------------------------------------------------------------
# inertia


def signature(g: Sequence[Sequence]) -> tuple[int, int, int]:
    """Inertia ``(positive, negative, zero)`` of a symmetric matrix.

    Computed by exact rational congruence diagonalization.
    """
    _require_symmetric(g)
    a = [[Fraction(x) for x in row] for row in g]
    n = len(a)
    pos = neg = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if a[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if i < j and a[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # row/col i += row/col j makes a[i][i] = 2 a[i][j] != 0
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
        row = a[piv]
        for i in active:
            f = a[i][piv] / p
            if f:
                ai = a[i]
                for k in active:
                    ai[k] -= f * row[k]
        for i in active:
            a[i][piv] = a[piv][i] = Fraction(0)
    return pos, neg, n - pos - neg


def positive_index(g: Sequence[Sequence]) -> int:
    return signature(g)[0]


# ---------------------------------------------------------------------------
# LLL


def _round_half_up(x: Fraction) -> int:
    return (2 * x.numerator + x.denominator) // (2 * x.denominator)


def lll_reduce(
    g: Sequence[Sequence[int]], definite: int = 1, delta: Fraction = Fraction(3, 4)
) -> tuple[Matrix, Matrix]:
    """LLL-reduce a definite Gram matrix.

    Returns ``(g_red, t)`` with ``t`` unimodular and ``t^T g t == g_red``.
    With ``definite=-1`` the input must be negative definite; the reduction
    is performed on ``-g`` and the result is returned with the original sign.
    """
    _require_symmetric(g)
    if definite not in (1, -1):
        raise ValueError("definite must be +1 or -1")
    n = len(g)
    gram = [[definite * int(x) for x in row] for row in g]
    if signature(gram)[0] != n:
        raise ValueError("Gram matrix is not definite with the requested sign")
    h = identity(n)  # column j of h = current basis vector j in old coordinates
    mu = [[Fraction(0)] * n for _ in range(n)]
    b = [Fraction(0)] * n

    def red(k, l):
        if 2 * abs(mu[k][l]) > 1:
            q = _round_half_up(mu[k][l])
            # b_k -= q b_l
            for row in h:
                row[k] -= q * row[l]
            for j in range(n):
                gram[k][j] -= q * gram[l][j]
            for j in range(n):
                gram[j][k] -= q * gram[j][l]
            mu[k][l] -= q
            for i in range(l):
                mu[k][i] -= q * mu[l][i]

    def swap(k, kmax):
        for row in h:
            row[k], row[k - 1] = row[k - 1], row[k]
        gram[k], gram[k - 1] = gram[k - 1], gram[k]
        for row in gram:
            row[k], row[k - 1] = row[k - 1], row[k]
        for j in range(k - 1):
            mu[k][j], mu[k - 1][j] = mu[k - 1][j], mu[k][j]
        m = mu[k][k - 1]
        big = b[k] + m * m * b[k - 1]
        mu[k][k - 1] = m * b[k - 1] / big
        b[k] = b[k - 1] * b[k] / big
        b[k - 1] = big
        for i in range(k + 1, kmax + 1):
            t = mu[i][k]
            mu[i][k] = mu[i][k - 1] - m * t
            mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k]

    b[0] = Fraction(gram[0][0])
    k, kmax = 1, 0
    while k < n:
        if k > kmax:
            kmax = k
            for j in range(k):
                mu[k][j] = (gram[k][j] - sum(mu[j][i] * mu[k][i] * b[i] for i in range(j))) / b[j]
            b[k] = gram[k][k] - sum(mu[k][j] ** 2 * b[j] for j in range(k))
        red(k, k - 1)
        if b[k] < (delta - mu[k][k - 1] ** 2) * b[k - 1]:
            swap(k, kmax)
            k = max(1, k - 1)
        else:
            for l in range(k - 2, -1, -1):
                red(k, l)
            k += 1
    return [[definite * x for x in row] for row in gram], h


def is_lll_reduced(g: Sequence[Sequence], delta: Fraction = Fraction(3, 4)) -> bool:
    """Check size reduction and the Lovasz condition for a positive definite Gram."""
    n = len(g)
    mu = [[Fraction(0)] * n for _ in range(n)]
    b = [Fraction(0)] * n
    for i in range(n):
        for j in range(i):
            mu[i][j] = (g[i][j] - sum(mu[j][k] * mu[i][k] * b[k] for k in range(j))) / b[j]
        b[i] = g[i][i] - sum(mu[i][j] ** 2 * b[j] for j in range(i))
    if any(2 * abs(mu[i][j]) > 1 for i in range(n) for j in range(i)):
        return False
    return all(b[k] >= (delta - mu[k][k - 1] ** 2) * b[k - 1] for k in range(1, n))


# ---------------------------------------------------------------------------
# Fincke-Pohst


def _ldl_upper(g: Sequence[Sequence]) -> tuple[list[Fraction], list[list[Fraction]]]:
    """``g = U^T diag(d) U`` with ``U`` unit upper triangular (g positive definite)."""
    n = len(g)
    a = [[Fraction(x) for x in row] for row in g]
    d = [Fraction(0)] * n
    u = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for i in range(n):
        d[i] = a[i][i] - sum(d[k] * u[k][i] ** 2 for k in range(i))
        if d[i] <= 0:
            raise ValueError("Gram matrix is not positive definite")
        for j in range(i + 1, n):
            u[i][j] = (a[i][j] - sum(d[k] * u[k][i] * u[k][j] for k in range(i))) / d[i]
    return d, u


def _interval(a: Fraction, r: Fraction) -> tuple[int, int]:
    """Integers ``y`` with ``(y + a)^2 <= r``, as an inclusive range (maybe empty)."""
    s = isqrt(r.numerator // r.denominator)
    lo = (-a).__floor__() - s - 1
    hi = (-a).__ceil__() + s + 1
    while lo <= hi and (lo + a) ** 2 > r:
        lo += 1
    while hi >= lo and (hi + a) ** 2 > r:
        hi -= 1
    return lo, hi


def _fp_raw(g, shift, target):
    n = len(g)
    d, u = _ldl_upper(g)
    target = Fraction(target)
    out = []
    y = [0] * n
    z = [Fraction(0)] * n  # z_i = y_i + shift_i

    def rec(i, remaining):
        c = shift[i] + sum(u[i][j] * z[j] for j in range(i + 1, n))
        lo, hi = _interval(c, remaining / d[i])
        for yi in range(lo, hi + 1):
            rest = remaining - d[i] * (yi + c) ** 2
            y[i] = yi
            z[i] = yi + shift[i]
            if i == 0:
                if rest == 0:
                    out.append(list(y))
            else:
                rec(i - 1, rest)

    if n == 0:
        return [[]] if target == 0 else []
    if target < 0:
        return []
    rec(n - 1, target)
    return out


def enumerate_norm_solutions(
    g: Sequence[Sequence[int]], shift: Sequence | None = None, target=0
) -> list[Vector]:
    """All integer ``x`` with ``(x + shift)^T g (x + shift) == target``.

    ``g`` must be positive definite; ``shift`` and ``target`` may be
    rational.  The search is a Fincke-Pohst recursion over an LLL-reduced
    basis, exhaustive by construction.  Output is sorted lexicographically.
    """
    _require_symmetric(g)
    n = len(g)
    shift = [Fraction(0)] * n if shift is None else [Fraction(s) for s in shift]
    if len(shift) != n:
        raise ValueError("shift has the wrong length")
    target = Fraction(target)
    if target < 0:
        return []
    g_red, t = lll_reduce(g)
    # x = t y  =>  x + shift = t (y + t^{-1} shift)
    t_inv = inverse_rational(t)
    shift_red = matvec(t_inv, shift)
    sols = _fp_raw(g_red, shift_red, target)
    return sorted(matvec(t, y) for y in sols)


def brute_force_norm_solutions(g, shift, target, bound: int) -> list[Vector]:
    """Box search over ``[-bound, bound]^n``; a test oracle for small ranks."""
    from itertools import product

    n = len(g)
    shift = [Fraction(s) for s in shift]
    target = Fraction(target)
    found = []
    for x in product(range(-bound, bound + 1), repeat=n):
        z = [xi + si for xi, si in zip(x, shift)]
        if bilinear(g, z, z) == target:
            found.append(list(x))
    return sorted(found)


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b) if a and b else 0
