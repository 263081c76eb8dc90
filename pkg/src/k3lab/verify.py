"""Reference checks of the published numbers, grouped by topic.

Each check returns a list of ``Verdict``; the CLI ``verify`` command and the
acceptance tests share these definitions of what "matches" means.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from . import data
from .config import (
    fragments_and_quadrangles,
    gamma2_configuration,
    humbert_configuration,
    induced_on_cells,
    check_33_property,
    printed_generators,
    symmetry_group,
)
from .curves import classify_conics, classify_quartics, rational_curves
from .exact import signature
from .lattice import (
    discriminant_form,
    forms_isometric,
    form_from_gram,
    lattice_from_graph,
    projective_aut_group,
    verify_dual_vectors,
)


@dataclass
class Verdict:
    name: str
    ok: bool
    detail: str = ""
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "detail": self.detail}


class Context:
    """Lazily computed shared objects for the Humbert configuration."""

    @cached_property
    def cfg(self):
        return humbert_configuration()

    @cached_property
    def lattice(self):
        return lattice_from_graph(self.cfg)

    @cached_property
    def group(self):
        return symmetry_group(self.cfg)

    @cached_property
    def census(self):
        return rational_curves(self.lattice, 6, self.group)

    @cached_property
    def extension(self):
        from .extension import extension_lab

        return extension_lab(self.cfg)


def dual_vectors_in_basis(lat) -> list[list[Fraction]]:
    """The listed discriminant generators, reordered to the lattice basis."""
    pos = [data.DUAL_COORDINATE_ORDER.index(x) for x in lat.basis_labels]
    return [[v[p] for p in pos] for v in data.DUAL_GENERATORS]


def half_sum(lat, coeffs: dict) -> list[Fraction]:
    out = [Fraction(0)] * lat.rank
    for name, c in coeffs.items():
        out = [a + c * b for a, b in zip(out, lat[name])]
    return out


def _v(name, ok, detail=""):
    return Verdict(name, bool(ok), detail)


def check_lattice(ctx: Context) -> list[Verdict]:
    lat = ctx.lattice
    form = discriminant_form(lat)
    sig = signature(lat.gram)
    return [
        _v("rank 15", lat.rank == 15, f"rank {lat.rank}"),
        _v("discriminant group [2,2,2,2,16]", form.orders == [2, 2, 2, 2, 16], str(form.orders)),
        _v("|det| = 256", abs(lat.det()) == 256, str(lat.det())),
        _v("signature (1,14)", sig == (1, 14, 0), str(sig)),
        _v("H^2 = 6", lat.square(lat.h) == 6),
    ]


def check_discriminant(ctx: Context) -> list[Verdict]:
    lat = ctx.lattice
    form = discriminant_form(lat)
    ref = form_from_gram([2, 2, 2, 2, 16], data.DISCRIMINANT_GRAM)
    out = [_v("q_S isometric to u2+u2+[3/16]", forms_isometric(form, ref) is not None)]
    try:
        vecs = dual_vectors_in_basis(lat)
        ok = verify_dual_vectors(lat, vecs) == data.DISCRIMINANT_GRAM
        coeffs = [form.coefficients(v) for v in vecs]
        gen = len({form.reduce(c) for c in _span(form, coeffs)}) == form.size
        out.append(_v("listed dual vectors have the listed Gram", ok))
        out.append(_v("listed dual vectors generate the discriminant group", gen))
    except Exception as exc:  # report, do not crash the suite
        out.append(_v("listed dual vectors", False, str(exc)))
    return out


def _span(form, coeffs):
    seen = {form.reduce([0] * len(form.orders))}
    frontier = list(seen)
    while frontier:
        x = frontier.pop()
        for c in coeffs:
            y = form.reduce([a + b for a, b in zip(x, c)])
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return seen


def check_transcendental(ctx: Context) -> list[Verdict]:
    from .lattice import IntegralLattice

    lat = ctx.lattice
    t = IntegralLattice(data.TRANSCENDENTAL_GRAM, [f"t{i}" for i in range(7)])
    sig = signature(t.gram)
    qt = discriminant_form(t)
    qs = discriminant_form(lat)
    out = [
        _v("signature(T) = (2,5)", sig == (2, 5, 0), str(sig)),
        _v("q_T anti-isometric to q_S", forms_isometric(qt, qs, negate=True) is not None),
    ]
    for name, coeffs in data.DELTA_VECTORS.items():
        d = half_sum(lat, coeffs)
        integral = all(x.denominator == 1 for x in d)
        out.append(
            _v(
                f"{name}: square -2, degree 0, not in S",
                lat.square(d) == -2 and lat.degree(d) == 0 and not integral,
                f"square {lat.square(d)}, degree {lat.degree(d)}",
            )
        )
    return out


def check_symmetry(ctx: Context) -> list[Verdict]:
    cfg, g = ctx.cfg, ctx.group
    frag, proper, improper = fragments_and_quadrangles(cfg)
    stab = g.setwise_stabilizer(frag[0])
    cellg = induced_on_cells(cfg, g)
    gens = printed_generators(cfg)
    lat = ctx.lattice
    names = cfg.labels
    pa = projective_aut_group(lat, g.elements, lambda p: {names[i]: names[p[i]] for i in range(cfg.n)})
    return [
        _v("|Sym| = 1152", g.order() == 1152, str(g.order())),
        _v("transitive on lines", g.is_transitive()),
        _v("listed generators lie in Sym", all(p in g for p in gens.values())),
        _v("listed generators generate Sym", len(type(g).generated_by(gens.values(), cfg.n)) == 1152),
        _v("fragment stabilizer has order 72", stab.order() == 72, str(stab.order())),
        _v("action on the 9 cells has order 72", cellg.order() == 72, str(cellg.order())),
        _v("rho^-1(+-id) is trivial", [s for _, s in pa] == [1], str(len(pa))),
    ]


def check_counts(ctx: Context) -> list[Verdict]:
    cfg, lat = ctx.cfg, ctx.lattice
    frag, proper, improper = fragments_and_quadrangles(cfg)
    total = [0] * lat.rank
    for i in range(1, 13):
        total = [a + b + c for a, b, c in zip(total, lat[f"L{i}"], lat[f"M{i}"])]
    g2 = gamma2_configuration()
    viol = check_33_property(g2)
    witness = {"L1", "L3", "M1", "M3", "M4"}
    hit = any({g2.labels[v] for v in vs} <= witness for _, vs in viol)
    return [
        _v("16 fragments", len(frag) == 16, str(len(frag))),
        _v("18 proper quadrangles", len(proper) == 18, str(len(proper))),
        _v("144 improper quadrangles", len(improper) == 144, str(len(improper))),
        _v("sum of lines = 4H", total == [4 * x for x in lat.h]),
        _v("(3,3)-property holds for the Humbert graph", not check_33_property(cfg)),
        _v("(3,3)-property fails for the second graph with the listed witness", bool(viol) and hit),
    ]


def check_curves(ctx: Context) -> list[Verdict]:
    c = ctx.census
    out = []
    for d, (count, sizes) in data.RATIONAL_CURVE_COUNTS.items():
        got = len(c.curves.get(d, []))
        out.append(_v(f"degree {d}: {count} curves", got == count, str(got)))
        out.append(_v(f"degree {d}: orbits {sizes}", c.orbit_sizes(d) == sorted(sizes), str(c.orbit_sizes(d))))
    lines = {tuple(ctx.lattice[x]) for x in ctx.cfg.labels}
    out.append(_v("degree-1 classes are the 24 lines", {x.coords for x in c.curves[1]} == lines))
    try:
        classify_conics(c.curves[2], ctx.lattice, ctx.cfg)
        classify_quartics(c.curves[4], ctx.lattice, ctx.cfg)
        out.append(_v("conic and quartic patterns", True))
    except Exception as exc:
        out.append(_v("conic and quartic patterns", False, str(exc)))
    return out


def check_pencils(ctx: Context) -> list[Verdict]:
    from .pencils import pencil_census

    rows = pencil_census(ctx.cfg, ctx.lattice, group=ctx.group, census=ctx.census)
    out = []
    for r in rows:
        want = data.PENCIL_TABLE[r.type_name]
        got = sorted((o.size, o.section) for o in r.orbits)
        total = sum(s for s, _ in want)
        out.append(_v(f"{r.type_name}: {total} subgraphs", r.total == total, str(r.total)))
        out.append(_v(f"{r.type_name}: orbits and sections", got == sorted(want), str(got)))
    return out


def check_fibers(ctx: Context) -> list[Verdict]:
    from .config import flat_label, is_proper, quadrangles
    from .pencils import fiber_class, mordell_weil_rank, pencil_analysis

    cfg, lat, census = ctx.cfg, ctx.lattice, ctx.census
    curves = census.all_curves()
    out = []
    quads = quadrangles(cfg)
    prop = next(q for q in quads if is_proper(cfg, q))
    imp = next(q for q in quads if not is_proper(cfg, q))
    rp = pencil_analysis(fiber_class(prop, lat, cfg, curves), census, cfg.labels, prop)
    out.append(_v("proper quadrangle: fibers A3, A3, A1, A1", rp.fiber_types() == ["A1", "A1", "A3", "A3"], str(rp.fiber_types())))
    conic_pairs = all(c.degree == 2 for f in rp.fibers if f.type_name == "A1" for c in f.components)
    out.append(_v("proper quadrangle: the A1 fibers are conic pairs", conic_pairs))
    try:
        mw = mordell_weil_rank(rp, lat.rank)
    except Exception as exc:
        mw = str(exc)
    out.append(_v("proper quadrangle: Mordell-Weil rank 5", mw == 5, str(mw)))
    ri = pencil_analysis(fiber_class(imp, lat, cfg, curves), census, cfg.labels, imp)
    a2 = [f for f in ri.fibers if f.type_name == "A2"]
    ok = ri.fiber_types() == ["A2", "A3", "A3"] and len(a2) == 1 and sorted(c.degree for c in a2[0].components) == [1, 1, 2]
    out.append(_v("improper quadrangle: fibers A3, A3 and A2 = conic + two lines", ok, str(ri.fiber_types())))
    cyc = [cfg.index(flat_label(k)) for k in data.A11_CYCLE]
    induced = all(
        cfg.adjacent(u, v) == (abs(i - j) in (1, len(cyc) - 1))
        for i, u in enumerate(cyc)
        for j, v in enumerate(cyc)
        if i != j
    )
    out.append(_v("listed 12-cycle is induced", induced))
    f = fiber_class(sorted(cyc), lat, cfg, curves)
    r11 = pencil_analysis(f, census, cfg.labels, tuple(sorted(cyc)))
    out.append(_v("12-cycle pencil: no other reducible fibers", r11.fiber_types() == ["A11"], str(r11.fiber_types())))
    # f in 4 S^dual: f pairs to a multiple of 4 with every basis vector
    in_4dual = all(x % 4 == 0 for x in [lat.pair(f.coords, e) for e in _unit_vectors(lat.rank)])
    out.append(_v("12-cycle fiber class lies in 4 S^dual", in_4dual))
    on_cycle = {tuple(lat[cfg.labels[v]]) for v in cyc}
    others = [c for c in census.curves[1] + census.curves[2] if c.coords not in on_cycle]
    four = all(lat.pair(f.coords, c.coords) == 4 for c in others)
    out.append(_v("lines off the cycle and all conics are 4-fold sections", four and len(others) == 21))
    d4 = sorted(cfg.index(flat_label(k)) for k in data.D4_EXAMPLE)
    comp = sorted(cfg.index(flat_label(k)) for k in data.D4_COMPLEMENT)
    rd = pencil_analysis(fiber_class(d4, lat, cfg, curves), census, cfg.labels, tuple(d4))
    sets = [sorted(cfg.index(c.name) for c in fb.components) for fb in rd.fibers if fb.type_name == "D4"]
    i4 = [fb for fb in rd.fibers if fb.type_name == "A3"]
    i4_ok = len(i4) == 1 and sorted(c.degree for c in i4[0].components) == [1, 1, 2, 2]
    out.append(_v("short D4 pencil: complementary D4", sorted(sets) == sorted([d4, comp])))
    out.append(_v("short D4 pencil: I4 fiber of two lines and two conics", i4_ok))
    return out


def _unit_vectors(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def check_extension(ctx: Context) -> list[Verdict]:
    from .extension import degeneration_strata, recursive_conics

    r = ctx.extension
    cand = r.candidates
    names = r.curves.names
    idx = {x: i for i, x in enumerate(names)}
    old_orbits = {frozenset(names[i] for i in o if names[i].startswith("C")) for o in _vertex_orbits(r.group)}
    old_orbits.discard(frozenset())
    strata = degeneration_strata()
    gamma_ok = False
    if r.gamma is not None:
        g = r.gamma
        want = {}
        for i in range(1, 13):
            want[f"L{i}"] = f"M{i - 1}" if i % 2 == 0 else f"M{i + 1}"
        gamma_ok = all(names[g[idx[x]]] == y for x, y in want.items()) and all(
            names[g[idx[f"C{r_}{s}"]]] == f"C{s}{r_}" for r_ in (1, 2, 3) for s in (1, 2, 3)
        ) and all(g[idx[x]] == idx[x] for x in names if x.startswith("N"))
    rec = recursive_conics(r.curves, ctx.cfg)
    rec_ok = all(len(v) == 4 and all(nm is not None for _, _, nm in v) for v in rec.values())
    kernel_swaps = False
    if r.line_kernel.order() == 2:
        k = next(p for p in r.line_kernel.elements if p != tuple(range(len(p))))
        new = [i for i, x in enumerate(names) if x.startswith("N")]
        odd, even = set(new[0::2]), set(new[1::2])
        kernel_swaps = {k[i] for i in odd} == even
    return [
        _v("candidates: 9 old patterns and one further orbit", len(cand.old) == 9 and len(cand.new_orbits) == 1, str([len(o) for o in cand.new_orbits])),
        _v("rank 16", r.lattice.rank == 16),
        _v("24 lines and 21 conics", r.curves.census.counts() == {1: 24, 2: 21}, str(r.curves.census.counts())),
        _v("|coloured group| = 192", r.group.order() == 192, str(r.group.order())),
        _v("old conics: two orbits, one is {C11,C22,C33}", len(old_orbits) == 2 and frozenset({"C11", "C22", "C33"}) in old_orbits),
        _v("line-action kernel is an involution swapping the double-sixes", kernel_swaps),
        _v("rho^-1(+-id) = Z/2 with anti-symplectic generator", sorted(s for _, s in r.involutions) == [-1, 1]),
        _v("gamma acts on lines and conics as listed", gamma_ok),
        _v("recursive rule produces new conics", rec_ok),
        _v("27 divisors: halved diagonal -1", r.cubic is not None and r.cubic.diagonal_ok),
        _v("27 divisors: srg(27,10,1,5)", r.cubic is not None and r.cubic.srg == (27, 10, 1, 5), str(r.cubic.srg if r.cubic else None)),
        _v("27 divisors: tritangent triple", r.cubic is not None and r.cubic.tritangent is not None),
        _v("27 divisors: double-six", r.cubic is not None and r.cubic.double_six),
        _v("grid group has order 72", strata.group_order == 72),
        _v("eight strata lie in eight orbits", strata.distinct),
    ]


def _vertex_orbits(group):
    from .graphs import orbit_of

    seen, out = set(), []
    for v in range(group.degree):
        if v not in seen:
            o = orbit_of(group.generators, v)
            seen |= o
            out.append(sorted(o))
    return out


def check_census(ctx: Context, budget: int | None = None, workers: int = 1) -> list[Verdict]:
    from .moduli import BudgetExceeded, configuration_lattice, enumerate_hyperbolic_configurations, polarization_vector
    from .graphs import canonical_form

    try:
        res = enumerate_hyperbolic_configurations(budget=budget, workers=workers)
    except BudgetExceeded as exc:
        return [_v("hyperbolic census within budget", False, str(exc))]
    cfgs = res.configurations
    certs = {canonical_form(c.adjacency_matrix(), [0] * c.n)[0] for c in cfgs}
    g1 = canonical_form(ctx.cfg.adjacency_matrix(), [0] * 24)[0]
    g2c = gamma2_configuration()
    g2 = canonical_form(g2c.adjacency_matrix(), [0] * 24)[0]
    ok_rank = True
    for c in cfgs:
        lat = configuration_lattice(c)
        pv = polarization_vector(lat)
        ok_rank &= lat.rank == 15 and pv is not None and pv[1] == 6
    return [
        _v("six isomorphism classes", len(cfgs) == 6, str(len(cfgs))),
        _v("contains both listed graphs", g1 in certs and g2 in certs),
        _v("all of rank 15 with h^2 = 6", ok_rank),
    ]


GROUPS = {
    "lattice": check_lattice,
    "discriminant": check_discriminant,
    "transcendental": check_transcendental,
    "symmetry": check_symmetry,
    "counts": check_counts,
    "curves": check_curves,
    "pencils": check_pencils,
    "fibers": check_fibers,
    "extension": check_extension,
}


def run_all(include_census: bool = False, budget: int | None = None, workers: int = 1) -> list[tuple[str, list[Verdict]]]:
    ctx = Context()
    out = []
    for name, fn in GROUPS.items():
        t = time.perf_counter()
        vs = fn(ctx)
        dt = time.perf_counter() - t
        for v in vs:
            v.seconds = dt
        out.append((name, vs))
    if include_census:
        out.append(("census", check_census(ctx, budget, workers)))
    return out
