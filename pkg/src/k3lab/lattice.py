"""Integral lattices spanned by curve classes, and their discriminant forms."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Iterable, Sequence

from . import data
from .config import Configuration, ConfigurationError, fragments, humbert_configuration
from .exact import (
    bilinear,
    congruent,
    determinant,
    enumerate_norm_solutions,
    hermite_rows,
    integer_kernel,
    inverse_rational,
    matmul,
    matvec,
    rank,
    signature,
    smith_normal_form,
    solve_rational,
    transpose,
)


class LatticeError(ValueError):
    pass


class PolarizationUndefined(ConfigurationError):
    """No usable hyperplane class: no (3,3)-fragment, or fragment sums disagree."""


@dataclass
class IntegralLattice:
    """A nondegenerate lattice with a fixed basis and named classes.

    ``classes`` maps names (lines, ``H``, adjoined curves) to integer
    coordinate vectors in the basis; ``basis_combos`` records each basis
    vector as an integer combination of the generators it was built from.
    """

    gram: list[list[int]]
    basis_labels: list[str]
    classes: dict[str, list[int]] = field(default_factory=dict)
    generators: list[str] = field(default_factory=list)
    basis_combos: list[dict[str, int]] = field(default_factory=list)

    def __post_init__(self):
        n = len(self.gram)
        if any(len(r) != n for r in self.gram) or len(self.basis_labels) != n:
            raise LatticeError("Gram matrix and labels disagree in size")
        if determinant(self.gram) == 0:
            raise LatticeError("degenerate Gram matrix")

    @property
    def rank(self) -> int:
        return len(self.gram)

    def det(self) -> int:
        return determinant(self.gram)

    def pair(self, u: Sequence, v: Sequence):
        return bilinear(self.gram, u, v)

    def square(self, v: Sequence):
        return bilinear(self.gram, v, v)

    def __getitem__(self, name: str) -> list[int]:
        return self.classes[name]

    @property
    def h(self) -> list[int]:
        try:
            return self.classes["H"]
        except KeyError:
            raise LatticeError("lattice has no polarization H") from None

    def degree(self, v: Sequence):
        return self.pair(v, self.h)

    def intersections(self, v: Sequence, names: Iterable[str] | None = None) -> tuple:
        """Intersection numbers of ``v`` with the named generators."""
        names = self.generators if names is None else names
        w = matvec(self.gram, v)
        return tuple(sum(a * b for a, b in zip(w, self.classes[x])) for x in names)

    def add_class(self, name: str, coords: Sequence[int]) -> None:
        self.classes[name] = [int(x) for x in coords]

    def to_json(self) -> dict:
        return {"labels": self.basis_labels, "gram": self.gram, "classes": self.classes}

    @classmethod
    def from_json(cls, doc: dict) -> "IntegralLattice":
        return cls(
            [list(map(int, r)) for r in doc["gram"]],
            list(doc["labels"]),
            {k: list(map(int, v)) for k, v in doc.get("classes", {}).items()},
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


# ---------------------------------------------------------------------------
# construction


def quotient_lattice(
    labels: Sequence[str], gram: Sequence[Sequence[int]], basis_hint: Sequence[str] | None = None
) -> IntegralLattice:
    """The lattice ``Z^n / rad`` spanned by generators with the given Gram matrix.

    The basis is ``basis_hint`` if given (it must be a Z-basis of the
    quotient), otherwise the first independent generators in label order
    when these span over Z, otherwise a Hermite basis of combinations.
    """
    n = len(labels)
    r = rank(gram)
    rows = [list(map(int, g)) for g in gram]

    def coords_in(basis_idx):
        a = transpose([rows[b] for b in basis_idx])
        out = {}
        for j in range(n):
            y = solve_rational(a, rows[j])
            if y is None:
                return None
            out[labels[j]] = y
        return out

    if basis_hint is not None:
        idx = [labels.index(x) for x in basis_hint]
        if len(idx) != r or rank([rows[i] for i in idx]) != r:
            raise LatticeError("basis hint is not a basis of the quotient")
    else:
        idx = []
        for j in range(n):
            if rank([rows[i] for i in idx + [j]]) > len(idx):
                idx.append(j)
            if len(idx) == r:
                break
    co = coords_in(idx)
    if co is not None and all(x.denominator == 1 for v in co.values() for x in v):
        combos = [{labels[i]: 1} for i in idx]
        basis_labels = [labels[i] for i in idx]
        sub = [[rows[i][j] for j in idx] for i in idx]
        classes = {k: [int(x) for x in v] for k, v in co.items()}
        return IntegralLattice(sub, basis_labels, classes, list(labels), combos)
    if basis_hint is not None:
        raise LatticeError("basis hint does not span the quotient over Z")
    return _hermite_quotient(labels, rows, r)


def _hermite_quotient(labels, rows, r) -> IntegralLattice:
    n = len(labels)
    # track combinations: augment each generator image with a unit vector
    aug = [rows[j] + [int(j == i) for i in range(n)] for j in range(n)]
    red = hermite_rows(aug)
    basis_rows = [x for x in red if any(x[:n])][:r]
    combos_vec = [x[n:] for x in basis_rows]
    gram = [[bilinear(rows, u, v) for v in combos_vec] for u in combos_vec]
    images = transpose([x[:n] for x in basis_rows])
    classes = {}
    for j in range(n):
        y = solve_rational(images, rows[j])
        if y is None or any(x.denominator != 1 for x in y):
            raise LatticeError("internal error: Hermite basis does not span")
        classes[labels[j]] = [int(x) for x in y]
    combos = [{labels[i]: c for i, c in enumerate(v) if c} for v in combos_vec]
    names = [f"b{k + 1}" for k in range(r)]
    return IntegralLattice(gram, names, classes, list(labels), combos)


def graph_gram(cfg: Configuration) -> list[list[int]]:
    """``A - 2I`` for the incidence graph of ``cfg``."""
    a = cfg.adjacency_matrix()
    return [[a[i][j] - 2 * (i == j) for j in range(cfg.n)] for i in range(cfg.n)]


def lattice_from_graph(cfg: Configuration, basis: Sequence[str] | None = None) -> IntegralLattice:
    """``Z Gamma / rad`` with the polarization ``H`` = any fragment sum."""
    if basis is None and cfg == humbert_configuration():
        basis = data.HUMBERT_BASIS
    lat = quotient_lattice(cfg.labels, graph_gram(cfg), basis)
    for name in cfg.labels:
        if not any(lat.classes[name]):
            raise ConfigurationError(f"line {name} vanishes in the quotient")
    frags = fragments(cfg)
    if not frags:
        raise PolarizationUndefined("H undefined: configuration has no (3,3)-fragment")
    sums = {tuple(_sum_classes(lat, [cfg.labels[v] for v in f])) for f in frags}
    if len(sums) != 1:
        raise PolarizationUndefined("H undefined: fragment sums differ")
    lat.add_class("H", list(sums.pop()))
    return lat


def _sum_classes(lat: IntegralLattice, names: Iterable[str]) -> list[int]:
    out = [0] * lat.rank
    for x in names:
        out = [a + b for a, b in zip(out, lat.classes[x])]
    return out


def extended_lattice(
    base_labels: Sequence[str],
    base_gram: Sequence[Sequence[int]],
    extra: dict[str, dict[str, int]],
    extra_gram: dict[tuple[str, str], int],
    basis_hint: Sequence[str] | None = None,
) -> IntegralLattice:
    """Quotient lattice after adjoining named generators with prescribed pairings."""
    labels = list(base_labels) + list(extra)
    n0 = len(base_labels)
    n = len(labels)
    g = [[0] * n for _ in range(n)]
    for i in range(n0):
        for j in range(n0):
            g[i][j] = int(base_gram[i][j])
    for k, name in enumerate(extra):
        i = n0 + k
        for j, other in enumerate(base_labels):
            g[i][j] = g[j][i] = int(extra[name].get(other, 0))
        for kk, name2 in enumerate(extra):
            v = extra_gram.get((name, name2), extra_gram.get((name2, name), None))
            if v is None:
                raise LatticeError(f"missing pairing {name}.{name2}")
            g[i][n0 + kk] = int(v)
    return quotient_lattice(labels, g, basis_hint)


# ---------------------------------------------------------------------------
# discriminant forms


def _mod(x: Fraction, m: int) -> Fraction:
    x = Fraction(x)
    return x - m * ((x / m).__floor__())


@dataclass
class FiniteQuadraticForm:
    """A finite abelian group ``(+ Z/d_i)`` with a Q/2Z-valued quadratic form.

    ``gram[i][i]`` is ``q(g_i)`` in [0, 2); off-diagonal entries are the
    pairing ``b(g_i, g_j)`` in [0, 1).
    """

    orders: list[int]
    gram: list[list[Fraction]]
    generators: list[list[Fraction]] = field(default_factory=list)
    _to_coeffs: object = field(default=None, repr=False, compare=False)

    @property
    def size(self) -> int:
        out = 1
        for d in self.orders:
            out *= d
        return out

    def elements(self):
        return product(*(range(d) for d in self.orders))

    def q(self, c: Sequence[int]) -> Fraction:
        n = len(self.orders)
        val = sum(c[i] * c[i] * self.gram[i][i] for i in range(n))
        val += 2 * sum(c[i] * c[j] * self.gram[i][j] for i in range(n) for j in range(i + 1, n))
        return _mod(val, 2)

    def b(self, c1: Sequence[int], c2: Sequence[int]) -> Fraction:
        n = len(self.orders)
        val = Fraction(0)
        for i in range(n):
            for j in range(n):
                if c1[i] and c2[j]:
                    val += c1[i] * c2[j] * (self.gram[i][j] if i != j else self.gram[i][i] / 2)
        return _mod(val, 1)

    def order_of(self, c: Sequence[int]) -> int:
        out = 1
        for x, d in zip(c, self.orders):
            k = d // gcd(x % d, d) if x % d else 1
            out = out * k // gcd(out, k)
        return out

    def reduce(self, c: Sequence[int]) -> tuple[int, ...]:
        return tuple(x % d for x, d in zip(c, self.orders))

    def coefficients(self, dual_vector: Sequence) -> tuple[int, ...]:
        """Coordinates of a dual-lattice vector in terms of the generators."""
        if self._to_coeffs is None:
            raise LatticeError("form was not built from a lattice")
        return self._to_coeffs(dual_vector)

    def negated(self) -> "FiniteQuadraticForm":
        n = len(self.orders)
        g = [
            [_mod(-self.gram[i][j], 2 if i == j else 1) for j in range(n)] for i in range(n)
        ]
        return FiniteQuadraticForm(list(self.orders), g, self.generators, self._to_coeffs)

    def isotropic_elements(self, order: int | None = None) -> list[tuple[int, ...]]:
        out = []
        for c in self.elements():
            if any(c) and self.q(c) == 0 and (order is None or self.order_of(c) == order):
                out.append(c)
        return out


def discriminant_form(lat: IntegralLattice) -> FiniteQuadraticForm:
    """The discriminant form on ``lat^vee / lat``."""
    g = lat.gram
    n = len(g)
    u, d, v = smith_normal_form(g)
    diag = [d[i][i] for i in range(n)]
    if any(x == 0 for x in diag):
        raise LatticeError("degenerate Gram matrix")
    keep = [i for i in range(n) if diag[i] > 1]
    gens = [[Fraction(v[r][i], diag[i]) for r in range(n)] for i in keep]
    m = len(keep)
    gram = [[Fraction(0)] * m for _ in range(m)]
    for a in range(m):
        for b in range(m):
            val = bilinear(g, gens[a], gens[b])
            gram[a][b] = _mod(val, 2 if a == b else 1)
    orders = [diag[i] for i in keep]

    def to_coeffs(y):
        z = matvec(g, [Fraction(x) for x in y])
        if any(Fraction(x).denominator != 1 for x in z):
            raise LatticeError("vector is not in the dual lattice")
        c = matvec(u, [int(x) for x in z])
        return tuple(c[i] % diag[i] for i in keep)

    return FiniteQuadraticForm(orders, gram, gens, to_coeffs)


def verify_dual_vectors(lat: IntegralLattice, vecs: Sequence[Sequence]) -> list[list[Fraction]]:
    """Check that ``vecs`` lie in the dual lattice and return their reduced Gram.

    Diagonal entries are reduced mod 2, the others mod 1.
    """
    vecs = [[Fraction(x) for x in v] for v in vecs]
    for k, y in enumerate(vecs):
        w = matvec(lat.gram, y)
        for i, x in enumerate(w):
            if x.denominator != 1:
                raise LatticeError(
                    f"vector {k} pairs non-integrally ({x}) with basis vector {lat.basis_labels[i]}"
                )
    m = len(vecs)
    return [
        [_mod(lat.pair(vecs[a], vecs[b]), 2 if a == b else 1) for b in range(m)] for a in range(m)
    ]


def form_from_gram(orders: Sequence[int], gram: Sequence[Sequence]) -> FiniteQuadraticForm:
    n = len(orders)
    g = [[_mod(Fraction(gram[i][j]), 2 if i == j else 1) for j in range(n)] for i in range(n)]
    return FiniteQuadraticForm(list(orders), g)


def forms_isometric(
    f1: FiniteQuadraticForm, f2: FiniteQuadraticForm, negate: bool = False
) -> list[tuple[int, ...]] | None:
    """An isometry ``f1 -> f2`` (or ``f1 -> -f2``), or ``None``.

    The witness lists the images of the generators of ``f1`` as coefficient
    vectors in ``f2``.  Search is exhaustive over generator images with
    order, value and pairing pruning.
    """
    if f1.size != f2.size:
        return None
    target = f2.negated() if negate else f2
    n = len(f1.orders)
    elems = list(target.elements())
    by_gen = []
    for i in range(n):
        qi = f1.gram[i][i]
        di = f1.orders[i]
        cands = [c for c in elems if target.order_of(c) == di and target.q(c) == qi]
        if not cands:
            return None
        by_gen.append(cands)
    pair1 = [[f1.gram[i][j] for j in range(n)] for i in range(n)]
    chosen: list[tuple[int, ...]] = []

    def image_size():
        seen = set()
        for coeffs in f1.elements():
            acc = [0] * len(target.orders)
            for k, x in enumerate(coeffs):
                if x:
                    acc = [a + x * b for a, b in zip(acc, chosen[k])]
            seen.add(target.reduce(acc))
        return len(seen)

    def rec(i):
        if i == n:
            return image_size() == f1.size
        for c in by_gen[i]:
            if all(target.b(chosen[j], c) == pair1[j][i] for j in range(i)):
                chosen.append(c)
                if rec(i + 1):
                    return True
                chosen.pop()
        return False

    if n == 0:
        return [] if f2.size == 1 else None
    return list(chosen) if rec(0) else None


# ---------------------------------------------------------------------------
# isometries and the action on the discriminant group


@dataclass
class LatticeIsometry:
    matrix: list[list[int]]  # column i = image of basis vector i


def isometry_from_permutation(lat: IntegralLattice, images: dict[str, str]) -> LatticeIsometry:
    """Isometry induced by a permutation of the generators (``name -> image``)."""
    cols = []
    for combo in lat.basis_combos:
        img = [0] * lat.rank
        for name, c in combo.items():
            img = [a + c * b for a, b in zip(img, lat.classes[images[name]])]
        cols.append(img)
    m = transpose(cols)
    iso = LatticeIsometry(m)
    if not preserves_gram(lat, iso):
        raise LatticeError("permutation does not induce an isometry")
    return iso


def preserves_gram(lat: IntegralLattice, iso: LatticeIsometry) -> bool:
    return congruent(lat.gram, iso.matrix) == lat.gram


def discr_action(
    lat: IntegralLattice, iso: LatticeIsometry, form: FiniteQuadraticForm | None = None
) -> list[tuple[int, ...]]:
    """Images of the discriminant generators under ``iso``, as coefficient vectors."""
    if not preserves_gram(lat, iso):
        raise LatticeError("not an isometry")
    form = discriminant_form(lat) if form is None else form
    return [form.coefficients(matvec(iso.matrix, g)) for g in form.generators]


def action_sign(form: FiniteQuadraticForm, action: list[tuple[int, ...]]) -> int:
    """``+1`` if the action is the identity, ``-1`` if it is ``-id``, else 0."""
    n = len(form.orders)
    ident = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    if action == ident:
        return 1
    neg = [form.reduce([-x for x in row]) for row in ident]
    if action == neg:
        return -1
    return 0


def compose_actions(form: FiniteQuadraticForm, first, second) -> list[tuple[int, ...]]:
    """Action of ``second o first`` from the actions on generators."""
    out = []
    for row in first:
        acc = [0] * len(form.orders)
        for k, x in enumerate(row):
            if x:
                acc = [a + x * b for a, b in zip(acc, second[k])]
        out.append(form.reduce(acc))
    return out


def projective_aut_group(lat: IntegralLattice, perms, to_images) -> list[tuple[object, int]]:
    """Elements acting as ``+-id`` on the discriminant group, with their sign.

    ``to_images(g)`` must return the generator permutation ``name -> image``
    induced by ``g``; the induced isometries must fix ``H``.
    """
    form = discriminant_form(lat)
    out = []
    for g in perms:
        iso = isometry_from_permutation(lat, to_images(g))
        if "H" in lat.classes and matvec(iso.matrix, lat.h) != lat.h:
            raise LatticeError("isometry does not fix H")
        s = action_sign(form, discr_action(lat, iso, form)) if form.orders else 1
        if s:
            out.append((g, s))
    return out


# ---------------------------------------------------------------------------
# vectors of given degree and square


def _degree_one_vector(lat: IntegralLattice):
    hv = matvec(lat.gram, lat.h)
    # extended gcd over the row vector hv via SNF
    u, d, v = smith_normal_form([hv])
    g = d[0][0]
    e = [v[i][0] for i in range(lat.rank)]
    s = sum(a * b for a, b in zip(hv, e))
    if s < 0:
        e = [-x for x in e]
    return g, e


def orthogonal_complement_basis(lat: IntegralLattice) -> list[list[int]]:
    return integer_kernel([matvec(lat.gram, lat.h)])


def vectors_of_degree(lat: IntegralLattice, degree: int, square: int) -> list[list[int]]:
    """All ``v`` with ``v.H = degree`` and ``v.v = square``, sorted.

    Writes ``v = degree * e + k`` with ``e.H = 1`` (``H`` must be primitive
    in degree) and ``k`` in the negative definite complement of ``H``, and
    enumerates ``k`` by Fincke-Pohst with the induced affine shift.
    """
    g, e = _degree_one_vector(lat)
    if degree % g:
        return []
    d = degree // g
    kb = orthogonal_complement_basis(lat)
    gk = [[lat.pair(a, b) for b in kb] for a in kb]
    p = [[-x for x in row] for row in gk]
    if signature(p)[0] != len(p):
        raise LatticeError("complement of H is not negative definite")
    bvec = [lat.pair(k, e) for k in kb]
    ee = lat.square(e)
    s = matvec(inverse_rational(p), [d * x for x in bvec])
    target = d * d * ee + bilinear(p, s, s) - square
    xs = enumerate_norm_solutions(p, [-x for x in s], target)
    out = []
    for x in xs:
        v = [d * a for a in e]
        for c, k in zip(x, kb):
            if c:
                v = [a + c * b for a, b in zip(v, k)]
        out.append(v)
    return sorted(out)


@dataclass
class PolarizationReport:
    ok: bool
    signature: tuple[int, int, int]
    roots: list[list[int]]  # v^2 = -2, v.H = 0
    isotropic: list[list[int]]  # v^2 = 0, v.H in {1, 2}
    reason: str = ""


def polarization_valid(lat: IntegralLattice) -> PolarizationReport:
    """Check that ``H`` can be a very ample sextic polarization on a K3 with this lattice."""
    sig = signature(lat.gram)
    if sig != (1, lat.rank - 1, 0):
        return PolarizationReport(False, sig, [], [], "lattice is not hyperbolic")
    if lat.square(lat.h) != 6:
        return PolarizationReport(False, sig, [], [], "H^2 != 6")
    roots = vectors_of_degree(lat, 0, -2)
    iso = vectors_of_degree(lat, 1, 0) + vectors_of_degree(lat, 2, 0)
    reason = []
    if roots:
        reason.append("(-2)-vector orthogonal to H")
    if iso:
        reason.append("isotropic vector of degree 1 or 2")
    return PolarizationReport(not reason, sig, roots, iso, "; ".join(reason))


def overlattice(lat: IntegralLattice, dual_vectors: Sequence[Sequence]) -> IntegralLattice:
    """Overlattice spanned by ``lat`` and rational dual vectors (new basis, same classes)."""
    vecs = [[Fraction(x) for x in row] for row in ([[int(i == j) for j in range(lat.rank)] for i in range(lat.rank)] + [list(v) for v in dual_vectors])]
    den = 1
    for v in vecs:
        for x in v:
            den = den * x.denominator // gcd(den, x.denominator)
    scaled = [[int(x * den) for x in v] for v in vecs]
    basis = [[Fraction(x, den) for x in row] for row in hermite_rows(scaled)]
    # new coordinates: old vector y = sum c_k basis_k
    bt = transpose(basis)
    gram = [[bilinear(lat.gram, a, b) for b in basis] for a in basis]
    if any(Fraction(x).denominator != 1 for row in gram for x in row):
        raise LatticeError("overlattice is not integral")
    classes = {}
    for name, y in lat.classes.items():
        c = solve_rational(bt, y)
        classes[name] = [int(x) for x in c]
    return IntegralLattice(
        [[int(x) for x in row] for row in gram],
        [f"o{k + 1}" for k in range(len(basis))],
        classes,
        list(lat.generators),
        [],
    )


def even_overlattices_of_prime_index(lat: IntegralLattice, form: FiniteQuadraticForm | None = None):
    """Minimal even overlattices, one per isotropic cyclic subgroup of prime order."""
    form = discriminant_form(lat) if form is None else form
    seen = set()
    out = []
    for c in form.isotropic_elements():
        k = form.order_of(c)
        if not _is_prime(k):
            continue
        sub = frozenset(form.reduce([m * x for x in c]) for m in range(k))
        if sub in seen:
            continue
        seen.add(sub)
        vec = [sum(x * g[i] for x, g in zip(c, form.generators)) for i in range(lat.rank)]
        out.append((c, overlattice(lat, [vec])))
    return out


def _is_prime(k: int) -> bool:
    return k > 1 and all(k % p for p in range(2, int(k**0.5) + 1))


def line_matrix(lat: IntegralLattice, names: Sequence[str]) -> list[list[int]]:
    """Intersection matrix of the named classes."""
    vs = [lat.classes[x] for x in names]
    return matmul(matmul(vs, lat.gram), transpose(vs))
