"""The rank-16 extension by a symmetric conic, and its cubic-surface shadow.

Adjoining one conic ``C`` to the line lattice gives a lattice with 24
lines and 21 conics.  Its coloured curve graph has a group of order 192,
whose discriminant action singles out an anti-symplectic involution; the
27 invariant divisors of that involution halve to the intersection matrix
of the lines on a cubic surface.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations, product

from . import data
from .config import Configuration, cells, fragments, humbert_configuration, symmetry_group
from .curves import CurveCensus, DivisorClass, classify_conics, rational_curves
from .exact import integer_kernel
from .graphs import PermGroup, all_automorphisms, act_on_set, orbits
from .lattice import (
    IntegralLattice,
    LatticeError,
    even_overlattices_of_prime_index,
    extended_lattice,
    graph_gram,
    polarization_valid,
    projective_aut_group,
)


class ExtensionError(ValueError):
    pass


@dataclass(frozen=True)
class ConicFunctional:
    """Values of a conic on the lines; the value on ``H`` is always 2."""

    alpha: frozenset[int]  # vertex indices with value 1
    beta: frozenset[int]

    def value(self, v: int) -> int:
        return int(v in self.alpha or v in self.beta)

    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self.alpha | self.beta))

    def flat(self) -> tuple[int, ...]:
        return tuple(v + 1 for v in self.support())

    def values(self, n: int) -> tuple[int, ...]:
        return tuple(self.value(v) for v in range(n))


def radical(cfg: Configuration) -> list[list[int]]:
    """Integer basis of the radical of the line lattice, as relations among the lines."""
    return integer_kernel(graph_gram(cfg))


@dataclass
class ConicCandidates:
    patterns: list[ConicFunctional]
    old: dict[tuple[int, int], ConicFunctional]
    new_orbits: list[list[ConicFunctional]]
    chosen: ConicFunctional


def symmetric_conic_candidates(cfg: Configuration | None = None, group: PermGroup | None = None) -> ConicCandidates:
    """All 0/1 patterns with four lines of value 1 on each side that annihilate the radical.

    The value 2 on ``H`` is enforced by requiring every fragment sum to be 2.
    The search meets in the middle: alpha-parts and beta-parts are matched
    by their partial values on the radical relations and fragments.
    """
    cfg = humbert_configuration() if cfg is None else cfg
    a = len(cfg.alpha)
    rad = radical(cfg)
    frags = fragments(cfg)

    def key(sub):
        vals = [sum(r[v] for v in sub) for r in rad]
        fr = [sum(1 for v in f if v in sub) for f in frags]
        return tuple(vals), tuple(fr)

    right: dict[tuple, list] = {}
    for sub in combinations(range(a, cfg.n), 4):
        right.setdefault(key(sub), []).append(sub)
    found = []
    for sub in combinations(range(a), 4):
        vals, fr = key(sub)
        want = (tuple(-x for x in vals), tuple(2 - x for x in fr))
        for other in right.get(want, []):
            found.append(ConicFunctional(frozenset(sub), frozenset(other)))
    found.sort(key=lambda c: c.support())

    old = {}
    for r, s in cells(cfg):
        al = frozenset(cfg.index(x) for x in cfg.quartets["alpha"][r])
        be = frozenset(cfg.index(x) for x in cfg.quartets["beta"][s])
        old[(r, s)] = ConicFunctional(al, be)
    rest = [c for c in found if c not in old.values()]
    group = symmetry_group(cfg) if group is None else group
    by_support = {c.support(): c for c in rest}
    parts = orbits(group, list(by_support), act_on_set)
    new_orbits = [[by_support[s] for s in orb] for orb in parts]
    chosen_support = tuple(k - 1 for k in data.NEW_CONIC_PATTERN)
    chosen = by_support.get(chosen_support)
    if chosen is None:
        raise ExtensionError("the reference conic pattern is not a candidate")
    return ConicCandidates(found, old, new_orbits, chosen)


# ---------------------------------------------------------------------------
# the extended lattice


def extend_lattice(cfg: Configuration, c: ConicFunctional, check_overlattices: bool = True) -> IntegralLattice:
    """``(Z Gamma + Z H + Z C) / rad`` for a conic functional ``c``.

    Raises unless the result has rank 16, a valid polarization and no valid
    even overlattice of finite index.
    """
    base = cfg.labels
    extra = {"C": {x: c.value(i) for i, x in enumerate(base)}}
    basis = data.HUMBERT_BASIS + ["C"] if cfg == humbert_configuration() else None
    try:
        lat = extended_lattice(base, graph_gram(cfg), extra, {("C", "C"): -2}, basis)
    except LatticeError:
        if basis is None:
            raise
        # the preferred basis only fits a genuine rank-16 extension
        lat = extended_lattice(base, graph_gram(cfg), extra, {("C", "C"): -2}, None)
    sums = set()
    for f in fragments(cfg):
        v = [0] * lat.rank
        for i in f:
            v = [p + q for p, q in zip(v, lat[base[i]])]
        sums.add(tuple(v))
    if len(sums) != 1:
        raise ExtensionError("fragment sums differ in the extension")
    lat.add_class("H", list(sums.pop()))
    if lat.degree(lat["C"]) != 2:
        raise ExtensionError("adjoined conic does not have degree 2")
    if lat.rank != 16:
        raise ExtensionError(f"extension has rank {lat.rank}, expected 16")
    rpt = polarization_valid(lat)
    if not rpt.ok:
        raise ExtensionError(f"extension is not a valid sextic lattice: {rpt.reason}")
    if check_overlattices:
        for coeffs, over in even_overlattices_of_prime_index(lat):
            if polarization_valid(over).ok:
                raise ExtensionError(f"overlattice by discriminant element {coeffs} is also valid")
    return lat


@dataclass
class ExtendedCurves:
    """Lines and conics of the extension, named and in a fixed order.

    ``names`` lists the 24 lines, then ``C11..C33``, then ``N1..N12``; new
    conics come in pairs with equal line intersections, odd members first.
    """

    lattice: IntegralLattice
    census: CurveCensus
    names: list[str]
    classes: dict[str, tuple[int, ...]]
    colours: list[int]

    def matrix(self) -> list[list[int]]:
        vs = [self.classes[x] for x in self.names]
        return [[self.lattice.pair(u, w) for w in vs] for u in vs]


def name_curves(cfg: Configuration, lat: IntegralLattice, census: CurveCensus) -> ExtendedCurves:
    lines = census.curves[1]
    conics = census.curves[2]
    line_set = {tuple(lat[x]) for x in cfg.labels}
    if {c.coords for c in lines} != line_set:
        raise ExtensionError("lines of the extension are not the original 24")
    c_index = lat.basis_labels.index("C")
    old = [c for c in conics if c.coords[c_index] == 0]
    new = [c for c in conics if c.coords[c_index] != 0]
    cells_map = classify_conics(old, lat, cfg)
    classes = {x: tuple(lat[x]) for x in cfg.labels}
    names = list(cfg.labels)
    for (r, s) in sorted(cells_map):
        nm = f"C{r + 1}{s + 1}"
        classes[nm] = cells_map[(r, s)].coords
        names.append(nm)
    ordered = _order_new_conics(lat, cfg, new)
    for k, c in enumerate(ordered):
        nm = f"N{k + 1}"
        classes[nm] = c.coords
        names.append(nm)
    for nm, v in classes.items():
        if nm not in lat.classes:
            lat.add_class(nm, v)
    colours = [lat.degree(classes[x]) for x in names]
    return ExtendedCurves(lat, census, names, classes, colours)


def _order_new_conics(lat, cfg, new: list[DivisorClass]) -> list[DivisorClass]:
    c0 = tuple(lat["C"])
    pairs: dict[tuple, list[DivisorClass]] = {}
    for c in new:
        pairs.setdefault(lat.intersections(c.coords, cfg.labels), []).append(c)
    if any(len(p) != 2 for p in pairs.values()):
        raise ExtensionError("new conics do not pair up by line intersections")
    plist = sorted(pairs.values(), key=lambda p: (c0 not in [x.coords for x in p], min(x.coords for x in p)))
    first = sorted(plist[0], key=lambda x: x.coords != c0)
    # choose one member of each pair so that the chosen six are pairwise disjoint
    for bits in product((0, 1), repeat=len(plist) - 1):
        picks = [first[0]] + [p[b] for p, b in zip(plist[1:], bits)]
        if all(lat.pair(x.coords, y.coords) == 0 for x, y in combinations(picks, 2)):
            out = []
            others = [first[1]] + [p[1 - b] for p, b in zip(plist[1:], bits)]
            for x, y in zip(picks, others):
                out += [x, y]
            return out
    raise ExtensionError("no disjoint sextuple among the new conics")


def colored_symmetry(curves: ExtendedCurves) -> PermGroup:
    """Automorphisms of the intersection graph of lines and conics, coloured by degree."""
    m = curves.matrix()
    w = [[0 if i == j else x for j, x in enumerate(row)] for i, row in enumerate(m)]
    return PermGroup(len(w), all_automorphisms(w, curves.colours))


def line_action(group: PermGroup, nlines: int = 24) -> tuple[PermGroup, PermGroup]:
    """Image of the restriction to the first ``nlines`` vertices, and its kernel."""
    image = PermGroup(nlines, {g[:nlines] for g in group.elements})
    ident = tuple(range(nlines))
    kernel = group.stabilizer(lambda g: g[:nlines] == ident)
    return image, kernel


def projective_involutions(curves: ExtendedCurves, group: PermGroup) -> list[tuple[tuple[int, ...], int]]:
    """Elements of the coloured group acting as ``+-id`` on the discriminant, with sign."""
    lat = curves.lattice
    idx = {x: i for i, x in enumerate(curves.names)}

    def to_images(g):
        return {x: curves.names[g[idx[x]]] for x in lat.generators}

    # the adjoined generator C is a curve; locate it among the named conics
    c_name = next(x for x in curves.names if curves.classes[x] == tuple(lat["C"]) and x != "C")
    idx["C"] = idx[c_name]
    return projective_aut_group(lat, group.elements, to_images)


# ---------------------------------------------------------------------------
# the 27 invariant divisors


@dataclass
class CubicReport:
    names: list[str]
    half_matrix: list[list[int]]
    diagonal_ok: bool
    srg: tuple[int, int, int, int] | None
    tritangent: tuple[str, str, str] | None
    double_six: bool
    gamma_fixes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.diagonal_ok and self.srg == (27, 10, 1, 5) and self.tritangent is not None and self.double_six


def strongly_regular_parameters(adj: list[list[int]]) -> tuple[int, int, int, int] | None:
    n = len(adj)
    degs = {sum(r) for r in adj}
    if len(degs) != 1:
        return None
    lam, mu = set(), set()
    for i, j in combinations(range(n), 2):
        common = sum(adj[i][k] and adj[j][k] for k in range(n))
        (lam if adj[i][j] else mu).add(common)
    if len(lam) > 1 or len(mu) > 1:
        return None
    return n, degs.pop(), lam.pop() if lam else 0, mu.pop() if mu else 0


def is_double_six(adj: list[list[int]], a: list[int], b: list[int]) -> bool:
    """Pairwise disjoint sextuples with ``a_i`` meeting ``b_j`` exactly when ``i != j``."""
    if any(adj[x][y] for s in (a, b) for x, y in combinations(s, 2)):
        return False
    return all(adj[x][y] == int(i != j) for i, x in enumerate(a) for j, y in enumerate(b))


def invariant_divisors(curves: ExtendedCurves, gamma: tuple[int, ...]) -> CubicReport:
    """Split lines ``L + gamma(L)``, invariant old conics and new conics, halved."""
    lat = curves.lattice
    names = curves.names
    idx = {x: i for i, x in enumerate(names)}
    fixed = [x for x in names if names[gamma[idx[x]]] == x]
    divisors: list[tuple[str, tuple[int, ...]]] = []
    for x in names[:24]:
        y = names[gamma[idx[x]]]
        if x.startswith("L"):
            v = tuple(p + q for p, q in zip(curves.classes[x], curves.classes[y]))
            divisors.append((f"{x}+{y}", v))
    divisors += [(x, curves.classes[x]) for x in names if x.startswith("C") and x in fixed]
    divisors += [(x, curves.classes[x]) for x in names if x.startswith("N")]
    if len(divisors) != 27:
        raise ExtensionError(f"found {len(divisors)} invariant divisors, expected 27")
    full = [[lat.pair(u, w) for _, w in divisors] for _, u in divisors]
    if any(x % 2 for row in full for x in row):
        raise ExtensionError("invariant divisors do not halve integrally")
    half = [[x // 2 for x in row] for row in full]
    diag = all(half[i][i] == -1 for i in range(27))
    adj = [[int(i != j and half[i][j] == 1) for j in range(27)] for i in range(27)]
    if any(half[i][j] not in (0, 1) for i in range(27) for j in range(27) if i != j):
        raise ExtensionError("halved intersections are not 0/1")
    srg = strongly_regular_parameters(adj)
    mid = [i for i, (x, _) in enumerate(divisors) if x.startswith("C")]
    tri = None
    if len(mid) == 3 and all(adj[i][j] for i, j in combinations(mid, 2)):
        tri = tuple(divisors[i][0] for i in mid)
    new = [i for i, (x, _) in enumerate(divisors) if x.startswith("N")]
    odd, even = new[0::2], new[1::2]
    six = any(is_double_six(adj, odd, [even[k] for k in p]) for p in permutations(range(6)))
    return CubicReport([x for x, _ in divisors], half, diag, srg, tri, six, fixed)


@dataclass
class ExtensionReport:
    candidates: ConicCandidates
    lattice: IntegralLattice
    curves: ExtendedCurves
    group: PermGroup
    line_image: PermGroup
    line_kernel: PermGroup
    involutions: list
    gamma: tuple[int, ...] | None
    cubic: CubicReport | None


def extension_lab(cfg: Configuration | None = None) -> ExtensionReport:
    cfg = humbert_configuration() if cfg is None else cfg
    g = symmetry_group(cfg)
    cand = symmetric_conic_candidates(cfg, g)
    lat = extend_lattice(cfg, cand.chosen)
    census = rational_curves(lat, 2)
    curves = name_curves(cfg, lat, census)
    grp = colored_symmetry(curves)
    image, kernel = line_action(grp)
    inv = projective_involutions(curves, grp)
    anti = [p for p, s in inv if s == -1]
    gamma = anti[0] if len(anti) == 1 else None
    cubic = invariant_divisors(curves, gamma) if gamma is not None else None
    return ExtensionReport(cand, lat, curves, grp, image, kernel, inv, gamma, cubic)


def recursive_conics(curves: ExtendedCurves, cfg: Configuration) -> dict[str, list[tuple[str, str, str]]]:
    """For each new conic ``C'``: the triples ``(L, M, name)`` with ``H - C' - L - M`` a new conic."""
    lat = curves.lattice
    new = {curves.classes[x]: x for x in curves.names if x.startswith("N")}
    out = {}
    for x in curves.names:
        if not x.startswith("N"):
            continue
        c = curves.classes[x]
        rows = []
        for i in range(len(cfg.alpha)):
            for j in range(len(cfg.alpha), cfg.n):
                li, mj = cfg.labels[i], cfg.labels[j]
                if cfg.adjacent(i, j) and lat.pair(c, lat[li]) == 1 and lat.pair(c, lat[mj]) == 1:
                    v = tuple(h - p - q - r for h, p, q, r in zip(lat.h, c, lat[li], lat[mj]))
                    rows.append((li, mj, new.get(v)))
        out[x] = rows
    return out


# ---------------------------------------------------------------------------
# grid subsets


def grid_group() -> PermGroup:
    """Row permutations, column permutations and transpose acting on the nine cells."""
    cl = [(r, s) for r in range(3) for s in range(3)]
    index = {c: i for i, c in enumerate(cl)}
    gens = []
    for p in ((1, 0, 2), (1, 2, 0)):
        gens.append(tuple(index[(p[r], s)] for r, s in cl))
        gens.append(tuple(index[(r, p[s])] for r, s in cl))
    gens.append(tuple(index[(s, r)] for r, s in cl))
    return PermGroup.generated_by(gens, 9)


def parse_cells(items) -> tuple[int, ...]:
    return tuple(sorted((int(x[0]) - 1) * 3 + int(x[1]) - 1 for x in items))


@dataclass
class StrataReport:
    group_order: int
    strata: list[tuple[int, tuple[int, ...], int]]  # (rho, cells, orbit index)
    distinct: bool
    orbit_sizes: dict[int, list[int]]  # subset size -> orbit sizes


def degeneration_strata(max_size: int = 6) -> StrataReport:
    g = grid_group()
    subsets = [s for k in range(1, max_size + 1) for s in combinations(range(9), k)]
    parts = orbits(g, subsets, act_on_set)
    where = {s: i for i, orb in enumerate(parts) for s in orb}
    strata = []
    for rho, items in data.DEGENERATION_STRATA:
        s = parse_cells(items)
        strata.append((rho, s, where[s]))
    distinct = len({o for _, _, o in strata}) == len(strata)
    sizes: dict[int, list[int]] = {}
    for orb in parts:
        sizes.setdefault(len(orb[0]), []).append(len(orb))
    return StrataReport(g.order(), strata, distinct, {k: sorted(v) for k, v in sorted(sizes.items())})


def cell_label(i: int) -> str:
    return f"{i // 3 + 1}{i % 3 + 1}"
