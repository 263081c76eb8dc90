"""Bipartite line configurations and their combinatorics."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterable

from . import data
from .graphs import PermGroup, Perm, all_automorphisms, compose, orbits


class ConfigurationError(ValueError):
    pass


@dataclass(frozen=True)
class Configuration:
    """Incidence graph between alpha-lines and beta-lines.

    Vertices are numbered ``0..a-1`` for alpha and ``a..a+b-1`` for beta;
    ``adjacency[i][j]`` tells whether alpha ``i`` meets beta ``j``.
    """

    alpha: tuple[str, ...]
    beta: tuple[str, ...]
    adjacency: tuple[tuple[int, ...], ...]
    quartets: dict | None = field(default=None, compare=False)

    def __post_init__(self):
        if len(self.adjacency) != len(self.alpha) or any(
            len(row) != len(self.beta) for row in self.adjacency
        ):
            raise ConfigurationError("adjacency shape does not match the labels")
        names = list(self.alpha) + list(self.beta)
        if len(set(names)) != len(names):
            raise ConfigurationError("duplicate line labels")
        if self.quartets is not None:
            for side, labels in (("alpha", self.alpha), ("beta", self.beta)):
                groups = self.quartets.get(side)
                if groups is None or sorted(x for g in groups for x in g) != sorted(labels):
                    raise ConfigurationError(f"quartets do not partition the {side} side")

    # -- basic accessors ----------------------------------------------------

    @property
    def labels(self) -> list[str]:
        return list(self.alpha) + list(self.beta)

    @property
    def n(self) -> int:
        return len(self.alpha) + len(self.beta)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def adjacent(self, u: int, v: int) -> bool:
        a = len(self.alpha)
        if u > v:
            u, v = v, u
        return u < a <= v and bool(self.adjacency[u][v - a])

    def neighbours(self, v: int) -> list[int]:
        a = len(self.alpha)
        if v < a:
            return [a + j for j, x in enumerate(self.adjacency[v]) if x]
        return [i for i in range(a) if self.adjacency[i][v - a]]

    def adjacency_matrix(self) -> list[list[int]]:
        n = self.n
        return [[int(self.adjacent(u, v)) for v in range(n)] for u in range(n)]

    def degrees(self) -> list[int]:
        return [len(self.neighbours(v)) for v in range(self.n)]

    def is_regular(self, k: int) -> bool:
        return all(d == k for d in self.degrees())

    def quartet_of(self, v: int) -> int:
        """Index (0, 1, 2, ...) of the quartet containing vertex ``v``."""
        if self.quartets is None:
            raise ConfigurationError("configuration has no quartets")
        a = len(self.alpha)
        side = "alpha" if v < a else "beta"
        name = self.labels[v]
        for r, group in enumerate(self.quartets[side]):
            if name in group:
                return r
        raise ConfigurationError(name)

    def side(self, v: int) -> int:
        return 0 if v < len(self.alpha) else 1

    # -- serialisation -------------------------------------------------------

    def to_json(self) -> dict:
        edges = [
            [self.alpha[i], self.beta[j]]
            for i in range(len(self.alpha))
            for j in range(len(self.beta))
            if self.adjacency[i][j]
        ]
        out = {"alpha": list(self.alpha), "beta": list(self.beta), "edges": edges}
        if self.quartets is not None:
            out["quartets"] = {k: [list(g) for g in v] for k, v in self.quartets.items()}
        return out

    @classmethod
    def from_json(cls, doc: dict) -> "Configuration":
        try:
            alpha = tuple(doc["alpha"])
            beta = tuple(doc["beta"])
            edges = doc["edges"]
        except (KeyError, TypeError) as exc:
            raise ConfigurationError(f"malformed configuration: missing {exc}") from None
        ai = {x: i for i, x in enumerate(alpha)}
        bi = {x: j for j, x in enumerate(beta)}
        adj = [[0] * len(beta) for _ in alpha]
        for e in edges:
            if len(e) != 2:
                raise ConfigurationError(f"bad edge {e!r}")
            a, b = e
            if a in bi and b in ai:
                a, b = b, a
            if a not in ai or b not in bi:
                raise ConfigurationError(f"edge {e!r} does not join an alpha and a beta line")
            adj[ai[a]][bi[b]] = 1
        quartets = doc.get("quartets")
        if quartets is not None:
            quartets = {k: [tuple(g) for g in v] for k, v in quartets.items()}
        return cls(alpha, beta, tuple(tuple(r) for r in adj), quartets)

    @classmethod
    def load(cls, path: str | Path) -> "Configuration":
        try:
            doc = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise ConfigurationError(f"{path}: not valid JSON ({exc})") from None
        return cls.from_json(doc)

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_json(), indent=1))


def from_matrix(rows: Iterable[Iterable[int]], prefix=("L", "M"), quartets=False) -> Configuration:
    rows = [tuple(int(x) for x in r) for r in rows]
    a, b = len(rows), len(rows[0])
    alpha = tuple(f"{prefix[0]}{i + 1}" for i in range(a))
    beta = tuple(f"{prefix[1]}{j + 1}" for j in range(b))
    q = None
    if quartets:
        q = {
            "alpha": [alpha[i : i + 4] for i in range(0, a, 4)],
            "beta": [beta[i : i + 4] for i in range(0, b, 4)],
        }
    return Configuration(alpha, beta, tuple(rows), q)


def humbert_configuration() -> Configuration:
    """The (12_6, 12_6) configuration of lines on a Humbert sextic."""
    rows = [[int(j + 1 in nb) for j in range(12)] for nb in data.HUMBERT_NEIGHBOURS]
    return from_matrix(rows, quartets=True)


def gamma2_configuration() -> Configuration:
    return from_matrix([[int(c == "1") for c in r] for r in data.GAMMA2_ROWS])


def flat_label(k: int) -> str:
    """Name for the flat index 1..24 (13..24 are beta-lines)."""
    return f"L{k}" if k <= 12 else f"M{k - 12}"


# ---------------------------------------------------------------------------
# symmetry


def symmetry_group(cfg: Configuration, swap_parts: bool = True) -> PermGroup:
    """Full automorphism group of the incidence graph.

    With ``swap_parts`` the alpha and beta sides may be exchanged;
    otherwise each side is preserved.
    """
    colours = [0] * cfg.n if swap_parts else [cfg.side(v) for v in range(cfg.n)]
    adj = cfg.adjacency_matrix()
    elements = all_automorphisms(adj, colours)
    if swap_parts:
        # a disconnected graph could mix parts; keep only side-respecting maps
        elements = [g for g in elements if _respects_sides(cfg, g)]
    return PermGroup(cfg.n, elements)


def _respects_sides(cfg: Configuration, g: Perm) -> bool:
    flips = {cfg.side(v) != cfg.side(g[v]) for v in range(cfg.n)}
    return len(flips) == 1


def permutation_from_cycles(cfg: Configuration, alpha_cycles, beta_cycles) -> Perm:
    """Vertex permutation from 1-based cycle notation on each family."""
    a = len(cfg.alpha)
    perm = list(range(cfg.n))
    for cycles, off in ((alpha_cycles, 0), (beta_cycles, a)):
        for cyc in cycles:
            for x, y in zip(cyc, cyc[1:] + cyc[:1]):
                perm[off + x - 1] = off + y - 1
    return tuple(perm)


def part_swap(cfg: Configuration) -> Perm:
    a = len(cfg.alpha)
    return tuple([a + i for i in range(a)] + list(range(a)))


def printed_generators(cfg: Configuration) -> dict[str, Perm]:
    out = {"swap": part_swap(cfg)}
    for name in ("sigma1", "sigma2"):
        cycles = data.PRINTED_GENERATORS[name]
        out[name] = permutation_from_cycles(cfg, cycles["alpha"], cycles["beta"])
    return out


# ---------------------------------------------------------------------------
# fragments and quadrangles


def _complete_bipartite(cfg: Configuration, p: int, q: int) -> list[tuple[int, ...]]:
    a = len(cfg.alpha)
    out = []
    for A in combinations(range(a), p):
        common = set(cfg.neighbours(A[0]))
        for x in A[1:]:
            common &= set(cfg.neighbours(x))
        for B in combinations(sorted(common), q):
            out.append(A + B)
    return out


def fragments(cfg: Configuration) -> list[tuple[int, ...]]:
    """All (3,3)-fragments (complete K(3,3) subgraphs), as sorted vertex tuples."""
    return _complete_bipartite(cfg, 3, 3)


def quadrangles(cfg: Configuration) -> list[tuple[int, ...]]:
    return _complete_bipartite(cfg, 2, 2)


def is_proper(cfg: Configuration, quad: tuple[int, ...]) -> bool:
    return cfg.quartet_of(quad[0]) == cfg.quartet_of(quad[1])


def fragments_and_quadrangles(cfg: Configuration):
    quads = quadrangles(cfg)
    proper = [q for q in quads if is_proper(cfg, q)]
    improper = [q for q in quads if not is_proper(cfg, q)]
    return fragments(cfg), proper, improper


def cells(cfg: Configuration) -> list[tuple[int, int]]:
    nq_a = len(cfg.quartets["alpha"])
    nq_b = len(cfg.quartets["beta"])
    return [(r, s) for r in range(nq_a) for s in range(nq_b)]


def cell_members(cfg: Configuration, r: int, s: int) -> tuple[int, ...]:
    a = len(cfg.alpha)
    return tuple(
        v
        for v in range(cfg.n)
        if cfg.quartet_of(v) == (r if v < a else s)
    )


def check_33_property(cfg: Configuration) -> list[tuple]:
    """Violations of the (3,3)-property.

    Every K(3,2) must extend to exactly one K(3,3), and no two lines of the
    same family may share more than three neighbours.  Each violation is
    ``(kind, vertices)``.
    """
    out = []
    a = len(cfg.alpha)
    sides = [list(range(a)), list(range(a, cfg.n))]
    nb = [set(cfg.neighbours(v)) for v in range(cfg.n)]
    for side in sides:
        for u, v in combinations(side, 2):
            if len(nb[u] & nb[v]) > 3:
                out.append(("too-many-common", (u, v)))
        for triple in combinations(side, 3):
            common = nb[triple[0]] & nb[triple[1]] & nb[triple[2]]
            if len(common) < 2:
                continue
            for pair in combinations(sorted(common), 2):
                completions = common - set(pair)
                if len(completions) != 1:
                    out.append(("completion", tuple(sorted(triple + pair))))
    return out


def orbit_sizes(parts: list[list]) -> list[int]:
    return sorted(len(o) for o in parts)


def induced_on_cells(cfg: Configuration, group: PermGroup) -> PermGroup:
    """Permutation action of a configuration group on the (alpha_r, beta_s) cells."""
    cl = cells(cfg)
    index = {c: i for i, c in enumerate(cl)}
    reps = {c: cell_members(cfg, *c) for c in cl}
    member_to_cell = {}
    for c, mem in reps.items():
        member_to_cell[frozenset(mem)] = c

    def image(g):
        out = []
        for c in cl:
            img = frozenset(g[v] for v in reps[c])
            out.append(index[member_to_cell[img]])
        return tuple(out)

    return PermGroup(len(cl), {image(g) for g in group.elements})


__all__ = [
    "Configuration",
    "ConfigurationError",
    "humbert_configuration",
    "gamma2_configuration",
    "symmetry_group",
    "fragments",
    "quadrangles",
    "fragments_and_quadrangles",
    "check_33_property",
    "orbits",
    "compose",
]
