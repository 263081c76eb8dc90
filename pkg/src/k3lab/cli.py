"""Command-line front end: ``k3lab <command> [options]``."""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Sequence

from .config import (
    Configuration,
    ConfigurationError,
    check_33_property,
    fragments_and_quadrangles,
    humbert_configuration,
    symmetry_group,
)
from .lattice import LatticeError, PolarizationUndefined

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_CONFIG = 3
EXIT_PRECONDITION = 4
EXIT_BUDGET = 5

COMMANDS = ("info", "discriminant", "symmetry", "curves", "pencils", "extend", "strata", "census", "verify")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="k3lab", description="Exact lattice computations for the Humbert sextic line configuration.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--config", metavar="FILE", help="configuration JSON (default: built-in Humbert)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("info", parents=[common], help="configuration and lattice summary")
    sub.add_parser("discriminant", parents=[common], help="discriminant form of the lattice")
    sub.add_parser("symmetry", parents=[common], help="symmetry group and its discriminant action")
    c = sub.add_parser("curves", parents=[common], help="census of smooth rational curves")
    c.add_argument("--max-degree", type=int, default=6, metavar="N")
    pe = sub.add_parser("pencils", parents=[common], help="affine Dynkin subgraphs and their pencils")
    pe.add_argument("--type", metavar="NAME", help="one of A3 A5 A7 A11 D4 D5 D6 D8 E6 E7 E8")
    sub.add_parser("extend", parents=[common], help="rank-16 extension by a symmetric conic")
    sub.add_parser("strata", parents=[common], help="orbits of split-conic grid subsets")
    ce = sub.add_parser("census", parents=[common], help="hyperbolic (12_6,12_6) configurations")
    ce.add_argument("--budget", type=int, metavar="N", help="cap on extension attempts")
    v = sub.add_parser("verify", parents=[common], help="check the published numbers")
    v.add_argument("target", choices=["paper"], help="what to verify")
    v.add_argument("--census", action="store_true", help="also run the moduli census (about 10 minutes)")
    v.add_argument("--budget", type=int, metavar="N", help="work budget for the census (implies --census)")
    return p


def threads() -> int:
    raw = os.environ.get("K3LAB_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise ConfigurationError(f"K3LAB_THREADS must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise ConfigurationError("K3LAB_THREADS must be a positive integer")
    return n


def _load(args) -> Configuration:
    if args.config:
        try:
            return Configuration.load(args.config)
        except OSError as exc:
            raise ConfigurationError(f"cannot read {args.config}: {exc.strerror}") from None
    return humbert_configuration()


def _lattice(cfg):
    from .lattice import lattice_from_graph

    return lattice_from_graph(cfg)


# ---------------------------------------------------------------------------
# commands; each returns (results, verdicts, text lines)


def cmd_info(args, cfg):
    from .exact import signature
    from .lattice import discriminant_form

    frag, proper, improper = fragments_and_quadrangles(cfg) if cfg.quartets else (None, None, None)
    lat = _lattice(cfg)
    sig = signature(lat.gram)
    form = discriminant_form(lat)
    res = {
        "lines": cfg.n,
        "alpha": len(cfg.alpha),
        "beta": len(cfg.beta),
        "degrees": sorted(set(cfg.degrees())),
        "fragments": len(frag) if frag is not None else None,
        "proper_quadrangles": len(proper) if proper is not None else None,
        "improper_quadrangles": len(improper) if improper is not None else None,
        "property_33": not check_33_property(cfg),
        "rank": lat.rank,
        "det": lat.det(),
        "signature": list(sig),
        "H_square": lat.square(lat.h),
        "discriminant": form.orders,
    }
    text = [f"{k}: {v}" for k, v in res.items()]
    return res, [], text


def cmd_discriminant(args, cfg):
    from .lattice import discriminant_form

    lat = _lattice(cfg)
    form = discriminant_form(lat)
    gram = [[str(x) for x in row] for row in form.gram]
    res = {"orders": form.orders, "gram": gram, "generators": [[str(x) for x in g] for g in form.generators]}
    text = [f"orders: {form.orders}", "gram (q mod 2 on the diagonal, b mod 1 elsewhere):"]
    text += ["  " + " ".join(f"{x:>5}" for x in row) for row in gram]
    return res, [], text


def cmd_symmetry(args, cfg):
    from .config import induced_on_cells
    from .lattice import projective_aut_group

    g = symmetry_group(cfg)
    lat = _lattice(cfg)
    names = cfg.labels
    pa = projective_aut_group(lat, g.elements, lambda p: {names[i]: names[p[i]] for i in range(cfg.n)})
    res = {
        "order": g.order(),
        "transitive": g.is_transitive(),
        "generators": [list(x) for x in g.generators],
        "projective": [{"element": list(p), "sign": s} for p, s in pa],
    }
    if cfg.quartets:
        frag = fragments_and_quadrangles(cfg)[0]
        res["fragment_stabilizer"] = g.setwise_stabilizer(frag[0]).order() if frag else None
        res["cell_action"] = induced_on_cells(cfg, g).order()
    text = [f"|Sym| = {res['order']}, transitive: {res['transitive']}"]
    if "cell_action" in res:
        text.append(f"fragment stabilizer: {res['fragment_stabilizer']}, action on cells: {res['cell_action']}")
    text.append(f"elements acting as +-id on the discriminant: {len(pa)} (signs {[s for _, s in pa]})")
    return res, [], text


def cmd_curves(args, cfg):
    from .curves import rational_curves

    if args.max_degree < 1:
        raise ConfigurationError("--max-degree must be at least 1")
    lat = _lattice(cfg)
    census = rational_curves(lat, args.max_degree, symmetry_group(cfg))
    res = {"counts": {str(d): n for d, n in census.counts().items()}, "degrees": census.to_json()}
    text = [
        f"degree {d}: {n}" + (f" = {' + '.join(map(str, census.orbit_sizes(d)))}" if n else "")
        for d, n in census.counts().items()
    ]
    return res, [], text


def cmd_pencils(args, cfg):
    from .curves import rational_curves
    from .pencils import TYPES, pencil_census

    types = TYPES
    if args.type:
        t = args.type.upper().replace("~", "")
        if t not in TYPES:
            raise ConfigurationError(f"unknown type {args.type!r}; expected one of {' '.join(TYPES)}")
        types = (t,)
    lat = _lattice(cfg)
    g = symmetry_group(cfg)
    census = rational_curves(lat, 6, g)
    rows = pencil_census(cfg, lat, types, g, census)
    res = [r.to_json() for r in rows]
    text = []
    for r in rows:
        parts = " + ".join(f"{o.size}{'*' if o.section else ''}" for o in r.orbits)
        text.append(f"{r.type_name}: {r.total} = {parts} ({len(r.orbits)} orbits)")
    return res, [], text


def cmd_extend(args, cfg):
    from .extension import extension_lab

    if cfg != humbert_configuration():
        raise ConfigurationError("the extension lab is defined for the built-in configuration only")
    r = extension_lab(cfg)
    cu = r.cubic
    res = {
        "candidates": len(r.candidates.patterns),
        "new_orbit_sizes": sorted(len(o) for o in r.candidates.new_orbits),
        "chosen": list(r.candidates.chosen.flat()),
        "rank": r.lattice.rank,
        "curves": {str(k): v for k, v in r.curves.census.counts().items()},
        "group_order": r.group.order(),
        "line_action_order": r.line_image.order(),
        "kernel_order": r.line_kernel.order(),
        "involution_signs": sorted(s for _, s in r.involutions),
        "cubic": None
        if cu is None
        else {
            "srg": list(cu.srg) if cu.srg else None,
            "diagonal": cu.diagonal_ok,
            "tritangent": list(cu.tritangent) if cu.tritangent else None,
            "double_six": cu.double_six,
            "names": cu.names,
        },
    }
    text = [
        f"symmetric conic patterns: {res['candidates']} (9 old + {res['new_orbit_sizes']})",
        f"rank {res['rank']}; curves {res['curves']}; |group| = {res['group_order']}",
        f"+-id on discriminant: signs {res['involution_signs']}",
    ]
    if cu is not None:
        text.append(f"27 divisors: srg {cu.srg}, tritangent {cu.tritangent}, double-six {cu.double_six}")
    return res, [], text


def cmd_strata(args, cfg):
    from .extension import cell_label, degeneration_strata

    r = degeneration_strata()
    res = {
        "group_order": r.group_order,
        "strata": [{"rho": rho, "cells": [cell_label(i) for i in s], "orbit": o} for rho, s, o in r.strata],
        "distinct": r.distinct,
        "orbit_sizes": {str(k): v for k, v in r.orbit_sizes.items()},
    }
    text = [f"grid group order {r.group_order}"]
    text += [f"rho={rho}: {{{','.join(cell_label(i) for i in s)}}} -> orbit {o}" for rho, s, o in r.strata]
    text.append(f"pairwise inequivalent: {r.distinct}")
    return res, [], text


def cmd_census(args, cfg):
    from .moduli import enumerate_hyperbolic_configurations

    r = enumerate_hyperbolic_configurations(budget=args.budget, workers=threads())
    res = {
        "count": len(r.configurations),
        "level_counts": r.level_counts,
        "configurations": [c.to_json() for c in r.configurations],
    }
    text = [f"hyperbolic configurations: {len(r.configurations)}", f"classes per level: {r.level_counts}"]
    return res, [], text


def cmd_verify(args, cfg):
    from .verify import run_all

    census = args.census or args.budget is not None
    groups = run_all(include_census=census, budget=args.budget, workers=threads())
    verdicts, text = [], []
    for name, vs in groups:
        for v in vs:
            verdicts.append(dict(v.to_json(), group=name))
            mark = "PASS" if v.ok else "FAIL"
            text.append(f"[{mark}] {name}: {v.name}" + (f" ({v.detail})" if v.detail and not v.ok else ""))
    return {"target": args.target}, verdicts, text


HANDLERS = {
    "info": cmd_info,
    "discriminant": cmd_discriminant,
    "symmetry": cmd_symmetry,
    "curves": cmd_curves,
    "pencils": cmd_pencils,
    "extend": cmd_extend,
    "strata": cmd_strata,
    "census": cmd_census,
    "verify": cmd_verify,
}


def run(argv: Sequence[str] | None = None, out=None) -> int:
    from .moduli import BudgetExceeded

    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    t0 = time.perf_counter()
    try:
        threads()
        cfg = _load(args)
        results, verdicts, text = HANDLERS[args.command](args, cfg)
    except PolarizationUndefined as exc:
        print(f"k3lab {args.command}: precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ConfigurationError as exc:
        print(f"k3lab {args.command}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except LatticeError as exc:
        print(f"k3lab {args.command}: precondition failed: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except BudgetExceeded as exc:
        print(f"k3lab {args.command}: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    ok = all(v["ok"] for v in verdicts)
    if args.json:
        doc = {
            "command": args.command,
            "input": args.config or "builtin:humbert",
            "results": results,
            "verdicts": verdicts,
            "ok": ok,
        }
        out.write(json.dumps(doc, sort_keys=True, indent=1) + "\n")
    else:
        for line in text:
            out.write(line + "\n")
        out.write(f"({time.perf_counter() - t0:.1f}s)\n")
    return EXIT_OK if ok else EXIT_MISMATCH


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
