"""Isomorph-free generation of hyperbolic (12_6, 12_6) configurations.

Beta-lines are added one at a time as 6-subsets of the twelve alpha-lines
(``d``-subsets of ``n`` in general).
With ``P`` the alpha-by-beta incidence matrix, the Gram matrix ``A - 2I``
has the same positive index as ``P^T P - 4I`` (Schur complement against
the negative definite alpha block), and that index can only grow when a
beta-line is added.

A complete configuration has ``P J = d J``, so ``P = (d/n) J + R`` with
``R`` orthogonal to the all-ones vector on both sides and
``P^T P = (d^2/n) J + R^T R``.  The all-ones direction carries the
eigenvalue ``d^2 - 4`` of ``P^T P - 4I``; for ``d > 2`` that is the one
positive direction, so hyperbolicity says ``R^T R <= 4I``.
On a partial configuration the Gram ``[c_ij - d^2/n]`` of the ``R``-columns
(``c_ij`` common neighbours, ``c_ii = d``) is a principal block of
``R^T R`` and must already be ``<= 4I``.  For ``n = 12, d = 6`` this means
any two beta-lines share 2, 3 or 4 neighbours.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .config import Configuration, check_33_property, from_matrix
from .exact import positive_index, signature, solve_rational, bilinear
from .graphs import canonical_form
from .lattice import IntegralLattice, graph_gram, quotient_lattice

SIZE = 12
DEGREE = 6


class BudgetExceeded(RuntimeError):
    def __init__(self, partial: list, nodes: int):
        super().__init__(f"work budget exhausted after {nodes} nodes")
        self.partial = partial
        self.nodes = nodes


@dataclass
class PartialConfiguration:
    """Twelve alpha-slots and a list of beta-lines, each a sorted 6-tuple of alpha indices."""

    betas: tuple[tuple[int, ...], ...] = ()

    def degrees(self, size: int = SIZE) -> list[int]:
        d = [0] * size
        for b in self.betas:
            for i in b:
                d[i] += 1
        return d

    def gram_schur(self) -> list[list[int]]:
        """``P^T P - 4I`` on the beta-lines added so far."""
        return [
            [len(set(b) & set(c)) - 4 * (i == j) for j, c in enumerate(self.betas)]
            for i, b in enumerate(self.betas)
        ]

    def excess(self, size: int = SIZE) -> list[list[Fraction]]:
        """``R^T R - 4I`` on the beta-lines added so far; must stay negative semidefinite."""
        return [
            [x - Fraction(len(b) * len(c), size) for x, c in zip(row, self.betas)]
            for row, b in zip(self.gram_schur(), self.betas)
        ]

    def adjacency(self, size: int = SIZE) -> list[list[int]]:
        k = len(self.betas)
        n = size + k
        a = [[0] * n for _ in range(n)]
        for j, b in enumerate(self.betas):
            for i in b:
                a[i][size + j] = a[size + j][i] = 1
        return a

    def configuration(self, size: int = SIZE) -> Configuration:
        rows = [[int(i in b) for b in self.betas] for i in range(size)]
        return from_matrix(rows)


def _certificate(betas, size: int, swap: bool) -> tuple:
    p = PartialConfiguration(tuple(betas))
    adj = p.adjacency(size)
    colours = [0] * len(adj) if swap else [0] * size + [1] * len(betas)
    return canonical_form(adj, colours)[0]


@dataclass
class CensusResult:
    configurations: list[Configuration]
    level_counts: list[int]
    nodes: int
    complete: bool
    certificates: list[tuple] = field(default_factory=list)


def _extend(args) -> tuple[dict[tuple, tuple], int]:
    """Children of one partial configuration, keyed by certificate."""
    betas, size, degree = args
    part = PartialConfiguration(betas)
    remaining = size - len(betas) - 1  # beta-lines still to add after this one
    deg = part.degrees(size)
    sets = [set(b) for b in betas]
    out: dict[tuple, tuple] = {}
    tried = 0
    # 2x2 blocks of R^T R <= 4I bound every pairwise overlap
    mean = Fraction(degree * degree, size)
    slack = 4 - degree + mean
    for s in combinations(range(size), degree):
        nd = list(deg)
        for i in s:
            nd[i] += 1
        # every slot must still be able to reach the full degree
        if any(x > degree or x + remaining < degree for x in nd):
            continue
        ss = set(s)
        if any(abs(len(ss & b) - mean) > slack for b in sets):
            continue
        tried += 1
        cand = PartialConfiguration(betas + (s,))
        if positive_index(cand.excess(size)) > 0:
            continue
        cert = _certificate(cand.betas, size, swap=False)
        out.setdefault(cert, cand.betas)
    return out, tried


def enumerate_hyperbolic_configurations(
    budget: int | None = None,
    size: int = SIZE,
    degree: int = DEGREE,
    workers: int = 1,
    progress=None,
) -> CensusResult:
    """All ``(size_degree, size_degree)`` bipartite graphs with ``Z Gamma / rad`` hyperbolic.

    Search is level by level: the partial configurations with ``k``
    beta-lines are kept up to isomorphism (alpha and beta relabelling) via
    canonical forms.  ``budget`` caps the number of partial configurations
    expanded; if it runs out, ``BudgetExceeded`` is raised before the next
    level starts.  ``workers > 1`` expands a level in separate processes;
    the merge is by sorted certificate, so the result does not depend on
    it.  ``progress(level, classes, nodes)`` is called after each level.
    """
    if degree <= 2:
        raise ValueError("the overlap prune needs degree > 2")
    level: list[tuple] = [()]
    counts = [1]
    nodes = 0
    pool = ProcessPoolExecutor(workers) if workers > 1 else None
    try:
        for k in range(size):
            if budget is not None and nodes + len(level) > budget:
                raise BudgetExceeded([], nodes)
            nodes += len(level)
            jobs = [(betas, size, degree) for betas in level]
            results = pool.map(_extend, jobs, chunksize=8) if pool else map(_extend, jobs)
            nxt: dict[tuple, tuple] = {}
            for children, _ in results:
                for cert, betas in children.items():
                    nxt.setdefault(cert, betas)
            level = [nxt[c] for c in sorted(nxt)]
            counts.append(len(level))
            if progress is not None:
                progress(k + 1, len(level), nodes)
            if not level:
                break
    finally:
        if pool is not None:
            pool.shutdown()
    return _finish([PartialConfiguration(b) for b in level], size, counts, nodes)


def _finish(level, size, counts=None, nodes=0):
    out: dict[tuple, Configuration] = {}
    for part in level:
        if len(part.betas) != size:
            continue
        cfg = part.configuration(size)
        if positive_index(graph_gram(cfg)) != 1:
            continue
        cert = _certificate(part.betas, size, swap=True)
        out.setdefault(cert, cfg)
    certs = sorted(out)
    if counts is None:
        return [out[c] for c in certs]
    return CensusResult([out[c] for c in certs], counts, nodes, True, certs)


def polarization_vector(lat: IntegralLattice) -> tuple[list[Fraction], Fraction] | None:
    """Rational ``h`` with ``h.N = 1`` for every generator ``N``, and ``h^2``."""
    rows = [[sum(a * b for a, b in zip(lat[x], col)) for col in lat.gram] for x in lat.generators]
    h = solve_rational(rows, [1] * len(rows))
    if h is None:
        return None
    return h, bilinear(lat.gram, h, h)


def configuration_lattice(cfg: Configuration) -> IntegralLattice:
    return quotient_lattice(cfg.labels, graph_gram(cfg))


def is_hyperbolic(cfg: Configuration) -> bool:
    pos, neg, zero = signature(graph_gram(cfg))
    return pos == 1


def satisfies_33_property(cfg: Configuration) -> bool:
    return not check_33_property(cfg)
