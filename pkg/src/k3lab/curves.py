"""Census of smooth rational curves by degree.

Candidates of each degree are the (-2)-vectors ``v`` with ``v.H = d``.  A
candidate is kept when it meets every curve already kept (all of lower
degree) non-negatively; a reducible class always has a component of lower
degree that it meets negatively, so the filter is exact.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .config import Configuration, cells
from .graphs import PermGroup, orbits
from .lattice import IntegralLattice, LatticeError, polarization_valid, vectors_of_degree
from .exact import matvec


class CurveError(ValueError):
    pass


@dataclass(frozen=True)
class DivisorClass:
    coords: tuple[int, ...]
    degree: int
    self_int: int
    role: str = "rational curve"
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.role == "rational curve" and (self.self_int != -2 or self.degree < 1):
            raise CurveError(f"{self.coords} cannot be a rational curve class")

    @classmethod
    def of(cls, lat: IntegralLattice, coords: Sequence[int], role="rational curve", name=None):
        c = tuple(int(x) for x in coords)
        return cls(c, lat.degree(c), lat.square(c), role, name)

    def to_json(self) -> dict:
        out = {"coords": list(self.coords), "degree": self.degree, "square": self.self_int}
        if self.name:
            out["name"] = self.name
        return out


@dataclass
class CurveCensus:
    """Accepted classes per degree with their orbit partition.

    ``orbits[d]`` lists orbits as sorted index lists into ``curves[d]``;
    orbits are ordered by their least member.
    """

    lattice: IntegralLattice
    curves: dict[int, list[DivisorClass]]
    orbits: dict[int, list[list[int]]] = field(default_factory=dict)

    def counts(self) -> dict[int, int]:
        return {d: len(v) for d, v in self.curves.items()}

    def orbit_sizes(self, degree: int) -> list[int]:
        return sorted(len(o) for o in self.orbits.get(degree, []))

    def all_curves(self, max_degree: int | None = None) -> list[DivisorClass]:
        return [
            c
            for d in sorted(self.curves)
            if max_degree is None or d <= max_degree
            for c in self.curves[d]
        ]

    def orbit_of(self, degree: int, index: int) -> int:
        for k, orb in enumerate(self.orbits.get(degree, [])):
            if index in orb:
                return k
        raise KeyError(index)

    def to_json(self) -> dict:
        out = {}
        for d, cl in self.curves.items():
            ids = {}
            for k, orb in enumerate(self.orbits.get(d, [])):
                for i in orb:
                    ids[i] = k
            out[str(d)] = {
                "count": len(cl),
                "orbit_sizes": self.orbit_sizes(d),
                "classes": [dict(c.to_json(), orbit=ids.get(i)) for i, c in enumerate(cl)],
            }
        return out


def rational_curves(
    lat: IntegralLattice,
    max_degree: int,
    group: PermGroup | None = None,
    shuffle: random.Random | None = None,
) -> CurveCensus:
    """Classes of irreducible smooth rational curves of degree ``1..max_degree``.

    ``group`` acts on ``lat.generators`` (the named line classes); classes
    are then identified by their intersections with the generators, which
    is faithful because the generators span the lattice rationally.
    ``shuffle`` permutes candidates inside each degree before filtering.
    """
    report = polarization_valid(lat)
    if not report.ok:
        witness = (report.roots or report.isotropic or [None])[0]
        raise LatticeError(f"polarization invalid: {report.reason}; witness {witness}")
    accepted_walls: list[list[int]] = []  # gram * r for every accepted r
    curves: dict[int, list[DivisorClass]] = {}
    for d in range(1, max_degree + 1):
        cands = vectors_of_degree(lat, d, -2)
        if shuffle is not None:
            shuffle.shuffle(cands)
        keep = []
        for v in cands:
            if all(sum(a * b for a, b in zip(v, w)) >= 0 for w in accepted_walls):
                keep.append(v)
        # walls added only after the whole degree: the test uses lower degrees only
        accepted_walls.extend(matvec(lat.gram, v) for v in keep)
        curves[d] = [DivisorClass.of(lat, v) for v in sorted(keep)]
    census = CurveCensus(lat, curves)
    if group is not None:
        for d, cl in curves.items():
            census.orbits[d] = class_orbits(lat, cl, group)
    return census


def class_orbits(lat: IntegralLattice, classes: Sequence[DivisorClass], group: PermGroup):
    """Orbit partition of ``classes`` under a permutation group on the generators."""
    names = lat.generators
    if group.degree != len(names):
        raise ValueError("group degree does not match the number of generators")
    keys = [lat.intersections(c.coords, names) for c in classes]
    where = {k: i for i, k in enumerate(keys)}
    if len(where) != len(keys):
        raise LatticeError("generators do not separate the classes")

    def act(g, t):
        out = [0] * len(t)
        for i, x in enumerate(t):
            out[g[i]] = x
        return tuple(out)

    parts = orbits(group, keys, act)
    idx = [sorted(where[k] for k in orb) for orb in parts]
    return sorted(idx)


# ---------------------------------------------------------------------------
# conics and quartics of the Humbert lattice


def classify_conics(conics: Sequence[DivisorClass], lat: IntegralLattice, cfg: Configuration):
    """Index conics by grid cell ``(r, s)`` (0-based quartet numbers).

    Each conic must meet exactly the four alpha-lines of one quartet and the
    four beta-lines of one quartet, and two conics meet with multiplicity 2
    exactly when they share neither a row nor a column.
    """
    a = len(cfg.alpha)
    out: dict[tuple[int, int], DivisorClass] = {}
    for c in conics:
        t = lat.intersections(c.coords, cfg.labels)
        if any(x not in (0, 1) for x in t):
            raise CurveError(f"conic {c.coords} meets a line with multiplicity {max(t)}")
        hit_a = {cfg.quartet_of(v) for v in range(a) if t[v]}
        hit_b = {cfg.quartet_of(v) for v in range(a, cfg.n) if t[v]}
        if sum(t[:a]) != 4 or sum(t[a:]) != 4 or len(hit_a) != 1 or len(hit_b) != 1:
            raise CurveError(f"conic {c.coords} does not match a cell pattern")
        key = (hit_a.pop(), hit_b.pop())
        if key in out:
            raise CurveError(f"two conics share cell {key}")
        out[key] = DivisorClass(c.coords, c.degree, c.self_int, name=f"C{key[0] + 1}{key[1] + 1}")
    if sorted(out) != cells(cfg):
        raise CurveError("conics are not in bijection with the cells")
    for (r, s), c in out.items():
        for (u, w), e in out.items():
            want = -2 if (r, s) == (u, w) else (2 if r != u and s != w else 0)
            if lat.pair(c.coords, e.coords) != want:
                raise CurveError(f"unexpected C{r + 1}{s + 1}.C{u + 1}{w + 1}")
    return out


def classify_quartics(quartics: Sequence[DivisorClass], lat: IntegralLattice, cfg: Configuration):
    """Match each quartic with the skew pair ``(L, M)`` such that it equals ``H - L - M``."""
    a = len(cfg.alpha)
    h = lat.h
    residual = {}
    for i in range(a):
        for j in range(a, cfg.n):
            if not cfg.adjacent(i, j):
                li, mj = cfg.labels[i], cfg.labels[j]
                v = tuple(x - y - z for x, y, z in zip(h, lat[li], lat[mj]))
                residual[v] = (li, mj)
    out: dict[tuple[str, str], DivisorClass] = {}
    for q in quartics:
        pair = residual.get(q.coords)
        if pair is None:
            raise CurveError(f"quartic {q.coords} is not H - L - M for a skew pair")
        t = dict(zip(cfg.labels, lat.intersections(q.coords, cfg.labels)))
        if t[pair[0]] != 3 or t[pair[1]] != 3:
            raise CurveError(f"quartic for {pair} does not meet its pair three times")
        if any(x not in (0, 1) for k, x in t.items() if k not in pair):
            raise CurveError(f"quartic for {pair} meets another line more than once")
        out[pair] = DivisorClass(q.coords, q.degree, q.self_int, name=f"Q({pair[0]},{pair[1]})")
    return out
