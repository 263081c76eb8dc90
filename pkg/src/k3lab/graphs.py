"""Colour refinement, automorphism enumeration and canonical forms.

Graphs are given as a symmetric integer weight matrix (0 meaning no edge)
together with an initial vertex colouring.  The algorithms are the usual
individualisation-refinement scheme; they are written for the small graphs
that occur here (tens of vertices, groups of order up to ~10^6).
"""

from __future__ import annotations

from collections import deque
from typing import Callable, Hashable, Iterable, Sequence

Perm = tuple[int, ...]


def refine(weights: Sequence[Sequence[int]], colours: Sequence[int]) -> list[int]:
    """Coarsest equitable refinement of ``colours``.

    Cell labels are ranks of the sorted signatures, so two isomorphic
    inputs receive matching labels.
    """
    n = len(weights)
    nbrs = [[(u, w) for u, w in enumerate(row) if w] for row in weights]
    labels = list(colours)
    count = len(set(labels))
    while True:
        sigs = [
            (labels[v], tuple(sorted((labels[u], w) for u, w in nbrs[v]))) for v in range(n)
        ]
        order = {s: i for i, s in enumerate(sorted(set(sigs)))}
        labels = [order[s] for s in sigs]
        if len(order) == count:
            return labels
        count = len(order)


def _individualize(labels: Sequence[int], v: int) -> list[int]:
    # v gets a label strictly between its old cell and the next one
    return [2 * x + (1 if u == v else 0) for u, x in enumerate(labels)]


def _target_cell(labels: Sequence[int]) -> list[int] | None:
    """Vertices of the first smallest non-singleton cell, or ``None`` if discrete."""
    cells: dict[int, list[int]] = {}
    for v, x in enumerate(labels):
        cells.setdefault(x, []).append(v)
    best = None
    for x in sorted(cells):
        c = cells[x]
        if len(c) > 1 and (best is None or len(c) < len(best)):
            best = c
    return best


def _histogram(labels: Sequence[int]) -> tuple:
    hist: dict[int, int] = {}
    for x in labels:
        hist[x] = hist.get(x, 0) + 1
    return tuple(sorted(hist.items()))


def is_automorphism(weights, colours, perm: Sequence[int]) -> bool:
    n = len(weights)
    if any(colours[perm[v]] != colours[v] for v in range(n)):
        return False
    return all(weights[perm[u]][perm[v]] == weights[u][v] for u in range(n) for v in range(u, n))


def all_automorphisms(weights: Sequence[Sequence[int]], colours: Sequence[int]) -> list[Perm]:
    """Every automorphism of a coloured weighted graph, sorted.

    A reference leaf is built by always individualising the first vertex of
    the target cell; every other branch that keeps the same cell histogram
    is followed, and each discrete leaf yields a candidate map that is
    checked explicitly.
    """
    n = len(weights)
    base = refine(weights, colours)
    ref_path = []  # (cell label chosen, histogram after refinement)
    lab = base
    while True:
        cell = _target_cell(lab)
        if cell is None:
            break
        v = cell[0]
        chosen = lab[v]
        lab = refine(weights, _individualize(lab, v))
        ref_path.append((chosen, _histogram(lab)))
    ref_leaf = lab

    if not ref_path:
        return [tuple(range(n))]
    found: list[Perm] = []

    def rec(level: int, labels: list[int]) -> None:
        chosen, hist = ref_path[level]
        for w in [u for u, x in enumerate(labels) if x == chosen]:
            nxt = refine(weights, _individualize(labels, w))
            if _histogram(nxt) != hist:
                continue
            if level + 1 < len(ref_path):
                rec(level + 1, nxt)
                continue
            where = {x: u for u, x in enumerate(nxt)}
            if len(where) != n:
                continue
            perm = tuple(where[ref_leaf[v]] for v in range(n))
            if is_automorphism(weights, colours, perm):
                found.append(perm)

    rec(0, base)
    return sorted(found)


def canonical_form(
    weights: Sequence[Sequence[int]], colours: Sequence[int]
) -> tuple[tuple, list[int]]:
    """Canonical certificate and labelling of a coloured weighted graph.

    The certificate is the lexicographically least relabelled weight matrix
    (with colours) over the leaves of the refinement search tree.  Children
    equivalent under automorphisms already found that fix the current prefix
    are skipped, and once a leaf matches the first or the best leaf the
    search returns to the level where the two paths diverged: everything
    below is the image of an explored subtree.
    """
    n = len(weights)
    best: list = [None, None, None]  # certificate, order, path
    first: list = [None, None, None]
    autos: list[Perm] = []

    def certificate(labels):
        order = sorted(range(n), key=lambda v: labels[v])
        return (
            tuple(colours[v] for v in order),
            tuple(tuple(weights[u][v] for v in order) for u in order),
        ), order

    def common(p, q):
        k = 0
        while k < len(p) and k < len(q) and p[k] == q[k]:
            k += 1
        return k

    def leaf(labels, path):
        cert, order = certificate(labels)
        if first[0] is None:
            first[:] = cert, order, path
            best[:] = cert, order, path
            return None
        for ref in (first, best):
            if ref[0] == cert:
                # order maps position -> vertex; composing two gives an automorphism
                perm = [0] * n
                for pos, v in enumerate(ref[1]):
                    perm[v] = order[pos]
                autos.append(tuple(perm))
                return common(path, ref[2])
        if cert < best[0]:
            best[:] = cert, order, path
        return None

    def rec(labels, prefix):
        cell = _target_cell(labels)
        if cell is None:
            return leaf(labels, prefix)
        depth = len(prefix)
        done: list[int] = []
        for w in cell:
            if done:
                stab = [p for p in autos if all(p[x] == x for x in prefix)]
                if stab and any(w in orbit_of(stab, d) for d in done):
                    continue
            back = rec(refine(weights, _individualize(labels, w)), prefix + [w])
            done.append(w)
            if back is not None and back < depth:
                return back
        return None

    rec(refine(weights, colours), [])
    order = best[1]
    labelling = [0] * n
    for pos, v in enumerate(order):
        labelling[v] = pos
    return best[0], labelling


def orbit_of(gens: Iterable[Perm], x: int) -> set[int]:
    gens = list(gens)
    seen = {x}
    queue = [x]
    while queue:
        y = queue.pop()
        for g in gens:
            z = g[y]
            if z not in seen:
                seen.add(z)
                queue.append(z)
    return seen


# ---------------------------------------------------------------------------
# permutation groups


def compose(p: Perm, q: Perm) -> Perm:
    """Apply ``p`` first, then ``q``."""
    return tuple(q[x] for x in p)


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def perm_order(p: Perm) -> int:
    from math import lcm

    seen = [False] * len(p)
    out = 1
    for i in range(len(p)):
        if not seen[i]:
            k, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = p[j]
                k += 1
            out = lcm(out, k)
    return out


def closure(gens: Iterable[Perm], degree: int, limit: int = 10**6) -> list[Perm]:
    ident = tuple(range(degree))
    gens = [g for g in gens if g != ident]
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = compose(x, g)
            if y not in seen:
                seen.add(y)
                if len(seen) > limit:
                    raise ValueError("group larger than the enumeration limit")
                queue.append(y)
    return sorted(seen)


class PermGroup:
    """A finite permutation group with its full element list cached."""

    def __init__(self, degree: int, elements: Iterable[Perm], generators: Iterable[Perm] | None = None):
        self.degree = degree
        self.elements = sorted(set(tuple(e) for e in elements))
        self._set = set(self.elements)
        self.generators = (
            list(generators) if generators is not None else self._pick_generators()
        )

    @classmethod
    def generated_by(cls, gens: Iterable[Perm], degree: int) -> "PermGroup":
        gens = [tuple(g) for g in gens]
        return cls(degree, closure(gens, degree), None)

    def _pick_generators(self) -> list[Perm]:
        ident = tuple(range(self.degree))
        gens: list[Perm] = []
        span = {ident}
        for e in self.elements:
            if e not in span:
                gens.append(e)
                span = set(closure(gens, self.degree))
                if len(span) == len(self.elements):
                    break
        return gens

    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, p) -> bool:
        return tuple(p) in self._set

    def __iter__(self):
        return iter(self.elements)

    def is_closed(self) -> bool:
        return all(compose(a, b) in self._set for a in self.generators for b in self.elements) and all(
            inverse(a) in self._set for a in self.elements
        )

    def is_transitive(self) -> bool:
        return len(orbit_of(self.generators, 0)) == self.degree if self.degree else True

    def stabilizer(self, predicate: Callable[[Perm], bool]) -> "PermGroup":
        return PermGroup(self.degree, [g for g in self.elements if predicate(g)])

    def setwise_stabilizer(self, subset: Iterable[int]) -> "PermGroup":
        s = frozenset(subset)
        return self.stabilizer(lambda g: frozenset(g[x] for x in s) == s)


def orbits(
    group: PermGroup,
    objects: Iterable[Hashable],
    action: Callable[[Perm, Hashable], Hashable],
) -> list[list]:
    """Orbit partition of ``objects`` under ``group``.

    Each orbit is sorted, so its first entry is the least representative;
    orbits are listed in order of representatives.  Raises if the action
    leaves the given object set.
    """
    objs = sorted(set(objects))
    index = {o: i for i, o in enumerate(objs)}
    seen = [False] * len(objs)
    out = []
    for i, o in enumerate(objs):
        if seen[i]:
            continue
        seen[i] = True
        orbit = [o]
        queue = [o]
        while queue:
            x = queue.pop()
            for g in group.generators:
                y = action(g, x)
                j = index.get(y)
                if j is None:
                    raise ValueError(f"action maps {x!r} outside the object set")
                if not seen[j]:
                    seen[j] = True
                    orbit.append(y)
                    queue.append(y)
        out.append(sorted(orbit))
    return out


def act_on_set(g: Perm, s: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(g[x] for x in s))
