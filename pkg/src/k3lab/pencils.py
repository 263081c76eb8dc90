"""Affine Dynkin subgraphs of a line configuration and the elliptic pencils they span."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .config import Configuration, symmetry_group
from .curves import CurveCensus, DivisorClass
from .exact import integer_kernel, signature
from .graphs import PermGroup, act_on_set, orbits
from .lattice import IntegralLattice

TYPES = ("A3", "A5", "A7", "A11", "D4", "D5", "D6", "D8", "E6", "E7", "E8")

# fibers of larger degree may hide components of degree above the census bound
COMPLETE_UP_TO_DEGREE = 12


class PencilError(ValueError):
    pass


@dataclass(frozen=True)
class AffineDynkinType:
    name: str
    size: int
    edges: tuple[tuple[int, int], ...]
    marks: tuple[int, ...]

    def adjacency(self) -> list[list[int]]:
        a = [[0] * self.size for _ in range(self.size)]
        for u, v in self.edges:
            a[u][v] = a[v][u] = 1
        return a

    def degree(self) -> int:
        """Sum of marks, i.e. the fiber degree when every node is a line."""
        return sum(self.marks)


def diagram_marks(adj: Sequence[Sequence[int]]) -> tuple[int, ...] | None:
    """Positive primitive kernel vector of ``adj - 2I`` if it is one-dimensional."""
    n = len(adj)
    m = [[adj[i][j] - 2 * (i == j) for j in range(n)] for i in range(n)]
    ker = integer_kernel(m)
    if len(ker) != 1:
        return None
    v = ker[0]
    if all(x < 0 for x in v):
        v = [-x for x in v]
    if not all(x > 0 for x in v):
        return None
    return tuple(v)


def affine_dynkin(name: str) -> AffineDynkinType:
    """The diagram ``A_n`` (cycle), ``D_n`` or ``E_6,7,8`` in its affine form."""
    kind, n = name[0].upper(), int(name[1:])
    edges: list[tuple[int, int]] = []
    if kind == "A":
        if n < 2:
            raise ValueError("cycles need at least three nodes here")
        size = n + 1
        edges = [(i, (i + 1) % size) for i in range(size)]
    elif kind == "D":
        if n < 4:
            raise ValueError("D_n needs n >= 4")
        size = n + 1
        chain = list(range(n - 3))
        edges = [(i, i + 1) for i in chain[:-1]]
        k = n - 3
        edges += [(chain[0], k), (chain[0], k + 1), (chain[-1], k + 2), (chain[-1], k + 3)]
    elif kind == "E" and n in (6, 7, 8):
        arms = {6: (2, 2, 2), 7: (3, 3, 1), 8: (5, 2, 1)}[n]
        size, k = n + 1, 1
        for arm in arms:
            prev = 0
            for _ in range(arm):
                edges.append((prev, k))
                prev, k = k, k + 1
    else:
        raise ValueError(f"unknown affine Dynkin type {name!r}")
    tmp = AffineDynkinType(name, size, tuple(edges), ())
    marks = diagram_marks(tmp.adjacency())
    if marks is None or min(marks) != 1:
        raise AssertionError(f"bad marks for {name}")
    return AffineDynkinType(name, size, tuple(edges), marks)


# ---------------------------------------------------------------------------
# induced subgraph search


def _search_order(t: AffineDynkinType) -> tuple[list[int], list[int | None]]:
    adj = t.adjacency()
    root = max(range(t.size), key=lambda v: (sum(adj[v]), -v))
    order, parent = [root], [None]
    seen = {root}
    i = 0
    while i < len(order):
        u = order[i]
        for w in range(t.size):
            if adj[u][w] and w not in seen:
                seen.add(w)
                order.append(w)
                parent.append(u)
        i += 1
    return order, parent


def dynkin_subgraphs(cfg: Configuration, t: AffineDynkinType) -> list[tuple[int, ...]]:
    """Vertex sets of all induced subgraphs of ``cfg`` isomorphic to ``t``, sorted."""
    adj = cfg.adjacency_matrix()
    nbrs = [cfg.neighbours(v) for v in range(cfg.n)]
    d = t.adjacency()
    order, parent = _search_order(t)
    # earlier diagram vertices and whether each must be adjacent
    checks = [[(order[j], d[order[k]][order[j]]) for j in range(k)] for k in range(t.size)]
    found: set[tuple[int, ...]] = set()
    image = [None] * t.size

    def rec(k: int, used: set[int]) -> None:
        if k == t.size:
            found.add(tuple(sorted(image[v] for v in range(t.size))))
            return
        v = order[k]
        pool = range(cfg.n) if parent[k] is None else nbrs[image[parent[k]]]
        for x in pool:
            if x in used:
                continue
            if all(adj[x][image[u]] == want for u, want in checks[k]):
                image[v] = x
                used.add(x)
                rec(k + 1, used)
                used.discard(x)
        image[v] = None

    rec(0, set())
    return sorted(found)


def subgraph_orbits(group: PermGroup, subsets: Sequence[tuple[int, ...]]) -> list[list[tuple[int, ...]]]:
    parts = orbits(group, subsets, act_on_set)
    return sorted(parts, key=lambda o: (len(o), o[0]))


# ---------------------------------------------------------------------------
# fiber classes and pencils


def fiber_class(
    vertices: Sequence[int],
    lat: IntegralLattice,
    cfg: Configuration,
    curves: Sequence[DivisorClass] | None = None,
) -> DivisorClass:
    """Mark-weighted sum of the lines of an affine Dynkin subgraph.

    With ``curves`` given, the class is also checked to be nef against them.
    """
    vs = list(vertices)
    sub = [[int(cfg.adjacent(u, v)) for v in vs] for u in vs]
    marks = diagram_marks(sub)
    if marks is None:
        raise PencilError(f"subgraph {vs} is not an affine Dynkin diagram")
    f = [0] * lat.rank
    for m, v in zip(marks, vs):
        f = [a + m * b for a, b in zip(f, lat[cfg.labels[v]])]
    if lat.square(f) != 0:
        raise PencilError(f"fiber class of {vs} has square {lat.square(f)}")
    if curves is not None:
        for c in curves:
            if lat.pair(f, c.coords) < 0:
                raise PencilError(f"fiber class of {vs} meets {c.coords} negatively")
    return DivisorClass.of(lat, f, role="fiber")


@dataclass
class Fiber:
    components: list[DivisorClass]
    marks: tuple[int, ...]
    type_name: str

    @property
    def size(self) -> int:
        return len(self.components)


@dataclass
class PencilReport:
    """Reducible fibers and sections of one pencil, as far as the census sees.

    ``sections`` are census curves meeting the fiber class once;
    ``line_sections`` the lines among them.
    """

    fiber: DivisorClass
    fiber_degree: int
    source: tuple[int, ...] | None
    fibers: list[Fiber]
    partial: list[list[DivisorClass]] = field(default_factory=list)
    sections: list[DivisorClass] = field(default_factory=list)
    line_sections: list[str] = field(default_factory=list)
    complete: bool = False

    @property
    def has_section(self) -> bool:
        return bool(self.sections)

    def fiber_types(self) -> list[str]:
        return sorted(f.type_name for f in self.fibers)

    def to_json(self) -> dict:
        return {
            "fiber_class": list(self.fiber.coords),
            "fiber_degree": self.fiber_degree,
            "source": list(self.source) if self.source is not None else None,
            "fibers": [
                {"type": f.type_name, "components": [c.name or list(c.coords) for c in f.components]}
                for f in self.fibers
            ],
            "section": self.has_section,
            "section_degrees": sorted({c.degree for c in self.sections}),
            "line_sections": self.line_sections,
            "complete": self.complete,
        }


def _fiber_type(adj: Sequence[Sequence[int]], marks: Sequence[int]) -> str:
    n = len(adj)
    if n == 2:
        return "A1"
    degs = [sum(1 for w in row if w) for row in adj]
    if max(marks) == 1:
        return f"A{n - 1}"
    if max(degs) == 4 or degs.count(3) == 2:
        return f"D{n - 1}"
    return f"E{n - 1}"


def pencil_analysis(
    f: DivisorClass | Sequence[int],
    census: CurveCensus,
    lines: Sequence[str] | None = None,
    source: tuple[int, ...] | None = None,
) -> PencilReport:
    """Reducible fibers of the pencil ``|f|`` visible in the curve census.

    Curves orthogonal to ``f`` are grouped into connected components of
    their intersection graph.  A semidefinite component must be an affine
    Dynkin diagram whose mark-weighted sum is ``f``; a negative definite one
    is part of a fiber with components beyond the census and is kept as
    ``partial``.  The list is flagged complete only for fiber degree at most
    12 with nothing partial.
    """
    lat = census.lattice
    fc = f if isinstance(f, DivisorClass) else DivisorClass.of(lat, f, role="fiber")
    fv = fc.coords
    if lat.square(fv) != 0:
        raise PencilError("fiber class is not isotropic")
    names = {tuple(lat[x]): x for x in lat.generators}
    curves = []
    for c in census.all_curves():
        k = lat.pair(fv, c.coords)
        if k < 0:
            raise PencilError(f"fiber class is not nef: meets {c.coords} with {k}")
        if k == 0:
            curves.append(
                c if c.name or c.coords not in names else DivisorClass(c.coords, c.degree, c.self_int, name=names[c.coords])
            )
    n = len(curves)
    w = [[lat.pair(a.coords, b.coords) if i != j else 0 for j, b in enumerate(curves)] for i, a in enumerate(curves)]
    seen = [False] * n
    comps = []
    for i in range(n):
        if seen[i]:
            continue
        seen[i] = True
        comp, stack = [i], [i]
        while stack:
            x = stack.pop()
            for y in range(n):
                if w[x][y] and not seen[y]:
                    seen[y] = True
                    comp.append(y)
                    stack.append(y)
        comps.append(sorted(comp))
    degree = lat.degree(fv)
    fibers, partial = [], []
    for comp in comps:
        sub = [[w[x][y] for y in comp] for x in comp]
        gram = [[sub[i][j] - 2 * (i == j) for j in range(len(comp))] for i in range(len(comp))]
        pos, neg, zero = signature(gram)
        if pos or zero > 1:
            raise PencilError(f"curves {[curves[x].coords for x in comp]} are not fiber components")
        if zero == 0:
            # negative definite: a fiber some of whose components lie beyond the census
            partial.append([curves[x] for x in comp])
            continue
        marks = diagram_marks(sub)
        total = [0] * lat.rank
        for m, x in zip(marks or (), comp):
            total = [a + m * b for a, b in zip(total, curves[x].coords)]
        if marks is None or tuple(total) != tuple(fv):
            raise PencilError(f"curves {[curves[x].coords for x in comp]} do not sum to the fiber class")
        fibers.append(Fiber([curves[x] for x in comp], marks, _fiber_type(sub, marks)))
    complete = degree <= COMPLETE_UP_TO_DEGREE and not partial
    fibers.sort(key=lambda fb: (-fb.size, [c.coords for c in fb.components]))
    lines = lat.generators if lines is None else lines
    sections = [c for c in census.all_curves() if lat.pair(fv, c.coords) == 1]
    line_sections = [x for x in lines if lat.pair(fv, lat[x]) == 1]
    return PencilReport(fc, degree, source, fibers, partial, sections, line_sections, complete)


def mordell_weil_rank(report: PencilReport, rho: int) -> int:
    """Shioda-Tate: ``rho - 2 - sum(#components - 1)`` over reducible fibers."""
    if not report.has_section:
        raise PencilError("pencil has no section among the known curves")
    if not report.complete or report.partial:
        raise PencilError("reducible fibers are not known completely")
    return rho - 2 - sum(fb.size - 1 for fb in report.fibers)


@dataclass
class PencilOrbit:
    size: int
    representative: tuple[int, ...]
    section: bool
    line_section: bool
    fibers: list[str]


@dataclass
class PencilCensusRow:
    type_name: str
    total: int
    orbits: list[PencilOrbit]

    def to_json(self) -> dict:
        return {
            "type": self.type_name,
            "total": self.total,
            "orbits": [
                {
                    "size": o.size,
                    "section": o.section,
                    "line_section": o.line_section,
                    "representative": list(o.representative),
                    "fibers": o.fibers,
                }
                for o in self.orbits
            ],
        }


def pencil_census(
    cfg: Configuration,
    lat: IntegralLattice,
    types: Sequence[str] = TYPES,
    group: PermGroup | None = None,
    census: CurveCensus | None = None,
) -> list[PencilCensusRow]:
    """Counts, orbit sizes and section flags of affine Dynkin subgraphs by type.

    A pencil counts as having a section when some curve of the census
    (degree up to 6 by default) meets the fiber class once.  The reducible
    fiber types seen in each representative pencil are recorded too.
    """
    from .curves import rational_curves

    group = symmetry_group(cfg) if group is None else group
    if census is None:
        census = rational_curves(lat, 6)
    rows = []
    for name in types:
        t = affine_dynkin(name)
        subs = dynkin_subgraphs(cfg, t)
        out = []
        for orb in subgraph_orbits(group, subs):
            rep = orb[0]
            f = fiber_class(rep, lat, cfg)
            rpt = pencil_analysis(f, census, cfg.labels, rep)
            out.append(PencilOrbit(len(orb), rep, rpt.has_section, bool(rpt.line_sections), rpt.fiber_types()))
        rows.append(PencilCensusRow(name, len(subs), out))
    return rows
