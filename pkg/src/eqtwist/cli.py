"""Command line interface.

Exit codes: 0 success, 1 validation failure, 2 budget exhausted,
3 internal invariant breach.  Inputs are parsed and cross validated
before any cohomology is computed, so code 1 always points at the
input files and code 3 at the library itself.

JSON output is printed with sorted keys and fixed indentation, so a
rerun on the same inputs is byte identical.
"""

import argparse
import json
import math
import re
import sys

from .abgroups import FgAbGroup
from .bredon import (EquivariantCochains, GroupTwistProvider,
                     twisted_complex, untwisted_complex)
from .cartan import canonical_theory, check_axioms, crosscheck_theorem
from .classifying import SimplicialFiniteGroup, classifying_complex
from .coefficients import CoefficientSystem, LocalSystem
from .edgepaths import EdgeActionSystem, PathChoice
from .em import CocycleModel
from .equivariant import GSimplicialSet, fixed_point_system
from .fixtures import load_json, load_setup, load_theory_data
from .groups import FiniteGroup, OrbitCategory
from .twisting import GroupTwist, classifying_map

DEFAULT_BUDGET = 200000


class InputError(Exception):
    pass


class BudgetError(Exception):
    pass


class InternalError(Exception):
    pass


def _loading(fn, *args, **kwargs):
    """Run a loader; any ValueError is the input's fault."""
    try:
        return fn(*args, **kwargs)
    except ValueError as ex:
        raise InputError(str(ex)) from ex


def _computing(fn, *args, **kwargs):
    """Run a computation on validated inputs; any ValueError now is an
    invariant breach inside the library."""
    try:
        return fn(*args, **kwargs)
    except ValueError as ex:
        raise InternalError(str(ex)) from ex


def group_text(rank: int, torsion) -> str:
    parts = ["Z"] * rank + [f"Z/{t}" for t in torsion]
    return " + ".join(parts) if parts else "0"


def cohomology_entry(group, n: int) -> dict:
    rank, torsion = group.normal_form()
    return {"degree": n, "rank": rank, "torsion": list(torsion)}


# validate -----------------------------------------------------------

def _theta_naturality(cat, ph, twist):
    """Build the classifying map on every fixed complex and compare
    along the orbit category, without assuming orbit constancy first;
    a non natural twist is then reported by the morphism it breaks."""
    trunc = ph.complexes[cat.subgroups[0].key].truncation
    wbar = classifying_complex(
        SimplicialFiniteGroup.constant(twist.pi, trunc), trunc)
    maps = {}
    for s in cat.subgroups:
        maps[s.key] = classifying_map(ph.complexes[s.key], twist, wbar)
    for m in cat.all_morphisms():
        tr = ph.maps[m.key]
        for cid, ref in tr.values.items():
            if maps[m.src.key].apply(ref) != maps[m.tgt.key].values[cid]:
                raise ValueError(
                    f"classifying maps disagree along {m.key}")


def cmd_validate(args):
    checked = []

    def load():
        gx = GSimplicialSet.from_json(load_json(args.complex))
        checked.append("complex")
        cat = OrbitCategory(gx.group)
        ph = fixed_point_system(gx, cat)
        checked.append("fixed point system")
        system = None
        if args.coeffs:
            system = CoefficientSystem.from_json(cat, load_json(args.coeffs))
            checked.append("coefficient system")
        if not args.twist:
            if args.action:
                raise ValueError("an action file needs a twist file")
            return
        tdata = load_json(args.twist)
        adata = load_json(args.action) if args.action else None
        if "pi" in tdata:
            pi = FiniteGroup.from_json(tdata["pi"])
            twist = GroupTwist.from_json(gx.space, pi, tdata["values"])
            checked.append("twisting identities")
            _theta_naturality(cat, ph, twist)
            checked.append("classifying map naturality")
            twist.check_equivariant(gx)
            if adata is not None and system is None:
                raise ValueError("a coefficient action needs --coeffs")
            if system is not None:
                if adata is None:
                    local = LocalSystem.trivial(system, pi)
                elif "phi" in adata:
                    local = LocalSystem.from_json(system, pi, adata)
                    checked.append("coefficient action")
                else:
                    raise ValueError(
                        "action file for a group twist must carry 'phi'")
                GroupTwistProvider(local, twist, gx=gx)
        elif "kappa" in tdata:
            PathChoice.from_json(ph, tdata["kappa"])
            checked.append("edge paths")
            if adata is not None:
                if system is None:
                    raise ValueError(
                        "edge actions need a coefficient system")
                if "edges" not in adata:
                    raise ValueError(
                        "action file for an edge path twist must carry "
                        "'edges'")
                EdgeActionSystem.from_json(ph, system, adata["edges"])
                checked.append("edge holonomies")
        else:
            raise ValueError("twist file carries neither 'pi' nor 'kappa'")

    _loading(load)
    payload = {"ok": True, "checked": checked}
    lines = ["ok"] + [f"checked: {c}" for c in checked]
    return payload, lines


# fixedpoints --------------------------------------------------------

def cmd_fixedpoints(args):
    setup = _loading(load_setup, args.complex)
    entries = []
    for s in sorted(setup.cat.subgroups, key=lambda s: (s.order, s.key)):
        fc = setup.ph.complexes[s.key]
        cells = {str(q): sorted(fc.cells[q]) for q in range(fc.truncation + 1)}
        entries.append({"subgroup": s.key, "order": s.order, "cells": cells})
    payload = {"subgroups": entries}
    lines = []
    for e in entries:
        counts = ", ".join(f"dim {q}: {len(ids)}"
                           for q, ids in sorted(e["cells"].items(),
                                                key=lambda kv: int(kv[0])))
        lines.append(f"fixed complex of ({e['subgroup']}): {counts}")
    return payload, lines


# cohomology commands ------------------------------------------------

def _degree_list(args):
    if args.degree is None and args.nmax is None:
        raise InputError("give either --degree or --nmax")
    if args.degree is not None and args.nmax is not None:
        raise InputError("--degree and --nmax exclude each other")
    if args.degree is not None:
        if args.degree < 0:
            raise InputError("--degree must be nonnegative")
        return [args.degree]
    if args.nmax < 0:
        raise InputError("--nmax must be nonnegative")
    return list(range(args.nmax + 1))


def _cochain_setup(setup, degrees, budget):
    ecn = min(setup.gx.space.truncation, max(degrees) + 1)
    ec = EquivariantCochains(setup.gx, setup.cat, setup.system, ecn)
    cost = sum(ec.groups[n].ngens for n in range(ec.nmax + 1))
    if cost > budget:
        raise BudgetError(
            f"cochain setup needs {cost} generator columns, "
            f"budget is {budget}")
    return ec


def _cohomology_payload(args, cc, ec, degrees):
    entries = []
    for n in degrees:
        if n <= ec.nmax:
            group = cc.cohomology(n).group
            entries.append(cohomology_entry(group, n))
        else:
            entries.append({"degree": n, "rank": 0, "torsion": []})
    lines = [f"H^{e['degree']} = " + group_text(e["rank"], e["torsion"])
             for e in entries]
    if args.degree is not None:
        return entries[0], lines
    return {"cohomology": entries}, lines


def cmd_bredon(args):
    degrees = _degree_list(args)
    setup = _loading(load_setup, args.complex, args.coeffs)
    if setup.system is None:
        raise InputError("bredon needs --coeffs")
    ec = _cochain_setup(setup, degrees, args.budget)
    cc = _computing(untwisted_complex, ec)
    return _cohomology_payload(args, cc, ec, degrees)


def cmd_twisted(args):
    degrees = _degree_list(args)
    setup = _loading(load_setup, args.complex, args.coeffs,
                     args.twist, args.action)
    if setup.system is None:
        raise InputError("twisted needs --coeffs")
    if setup.provider is None or setup.twist_kind is None:
        raise InputError("twisted needs --twist")
    ec = _cochain_setup(setup, degrees, args.budget)
    cc = _computing(twisted_complex, ec, setup.provider)
    return _cohomology_payload(args, cc, ec, degrees)


# cartan-check -------------------------------------------------------

def _parse_bounds(text):
    m = re.fullmatch(r"(\d+),(\d+)", text.strip())
    if not m:
        raise ValueError("--bounds must look like 'i,p'")
    return int(m.group(1)), int(m.group(2))


def _canonical_cost(cat, system, i_max, p_max):
    per_level = 0
    for i in range(i_max + 1):
        for q in range(p_max + 1):
            per_level += math.comb(q + 1, i + 1)
    return sum(system.values[s.key].ngens for s in cat.subgroups) * per_level


def cmd_cartan_check(args):
    def load():
        if args.group:
            grp = FiniteGroup.from_json(load_json(args.group))
        elif args.complex:
            grp = GSimplicialSet.from_json(load_json(args.complex)).group
        else:
            grp = FiniteGroup.trivial()
        cat = OrbitCategory(grp)
        system = CoefficientSystem.from_json(cat, load_json(args.coeffs))
        th = load_theory_data(args.theory)
        i_max, p_max = th["i_max"], th["p_max"]
        if args.bounds:
            i_max, p_max = _parse_bounds(args.bounds)
        return cat, system, i_max, p_max

    cat, system, i_max, p_max = _loading(load)
    cost = _canonical_cost(cat, system, i_max, p_max)
    if cost > args.budget:
        raise BudgetError(
            f"theory needs {cost} generator columns, budget is {args.budget}")
    theory = _computing(canonical_theory, cat, system, i_max, p_max)
    rep = _computing(check_axioms, theory)
    payload = {
        "i_max": i_max,
        "p_max": p_max,
        "all_ok": rep.all_ok,
        "axioms": [{"axiom": a,
                    "ok": rep.ok(a),
                    "failures": [str(f) for f in rep.failures[a]],
                    "info": [str(i) for i in rep.info[a]]}
                   for a in rep.AXIOMS],
    }
    return payload, rep.lines()


# crosscheck ---------------------------------------------------------

def _lift_cost(setup, nmax):
    space = setup.gx.space
    maxdim = max((q for q, ids in space.cells.items() if ids), default=0)
    top = min(maxdim, space.truncation)
    ngens = max(setup.system.values[s.key].ngens
                for s in setup.cat.subgroups)
    cost = 0
    for n in range(nmax + 2):
        for q in range(top + 1):
            cost += len(space.cells[q]) * ngens * math.comb(q + 1, n + 1)
    return cost


def cmd_crosscheck(args):
    setup = _loading(load_setup, args.complex, args.coeffs,
                     args.twist, args.action)
    if setup.system is None:
        raise InputError("crosscheck needs --coeffs")
    nmax = args.nmax if args.nmax is not None else 2
    if nmax < 0:
        raise InputError("--nmax must be nonnegative")
    theory = None
    if args.theory:
        th = _loading(load_theory_data, args.theory)
        if th["i_max"] < nmax + 1:
            raise InputError("theory bounds truncate below --nmax + 1")
        theory = _computing(canonical_theory, setup.cat, setup.system,
                            th["i_max"], th["p_max"])
    cost = _lift_cost(setup, nmax)
    if cost > args.budget:
        raise BudgetError(
            f"lift system needs {cost} generator columns, "
            f"budget is {args.budget}")
    report = _computing(crosscheck_theorem, setup.gx, setup.cat,
                        setup.system, setup.provider, nmax, theory)
    lines = []
    for e in report["degrees"]:
        verdict = "match" if e["match"] else "MISMATCH"
        lines.append(f"H^{e['degree']}: bredon {e['bredon']}, "
                     f"lift {e['lift']}: {verdict}")
    lines.append("all degrees match" if report["all_match"]
                 else "normal forms disagree")
    if report.get("iso") is not None:
        lines.append(f"cochain level iso: {report['iso']}, "
                     f"commutes with differentials: {report['commutes']}")
    return report, lines


# em-info ------------------------------------------------------------

def _finite_order(group):
    rank, torsion = group.normal_form()
    if rank:
        raise ValueError("cocycle level is infinite")
    order = 1
    for t in torsion:
        order *= t
    return order


def cmd_em_info(args):
    def load():
        m = re.fullmatch(r"Z(\d+)", args.A)
        if not m or int(m.group(1)) < 1:
            raise ValueError("--A must name a finite cyclic group like Z2")
        if args.n < 1:
            raise ValueError("--n must be at least 1")
        if args.q < 0:
            raise ValueError("--q must be nonnegative")
        return FgAbGroup.from_relations(1, [[int(m.group(1))]])

    a = _loading(load)
    cost = sum(math.comb(q + 1, args.n + 1) for q in range(args.q + 1))
    if cost > args.budget:
        raise BudgetError(
            f"cocycle model needs {cost} generator columns, "
            f"budget is {args.budget}")
    model = _computing(CocycleModel, a, args.n, args.q)
    orders = [_finite_order(g) for g in model.levels]
    payload = {"A": args.A, "n": args.n, "q": args.q, "orders": orders}
    lines = [f"levels of K({args.A}, {args.n}) up to dimension {args.q}: "
             + ", ".join(str(o) for o in orders)]
    return payload, lines


# wiring -------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(
        prog="eqtwist",
        description="Exact twisted Bredon cohomology of finite "
                    "G-simplicial sets")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "text"],
                        default="json")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="bound on assembled generator columns")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common],
                       help="parse and cross validate input files")
    p.add_argument("--complex", required=True)
    p.add_argument("--coeffs")
    p.add_argument("--twist")
    p.add_argument("--action")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("fixedpoints", parents=[common],
                       help="list the fixed complexes over the orbit "
                            "category")
    p.add_argument("--complex", required=True)
    p.set_defaults(fn=cmd_fixedpoints)

    p = sub.add_parser("bredon", parents=[common],
                       help="untwisted equivariant cohomology")
    p.add_argument("--complex", required=True)
    p.add_argument("--coeffs", required=True)
    p.add_argument("--degree", type=int)
    p.add_argument("--nmax", type=int)
    p.set_defaults(fn=cmd_bredon)

    p = sub.add_parser("twisted", parents=[common],
                       help="twisted equivariant cohomology")
    p.add_argument("--complex", required=True)
    p.add_argument("--coeffs", required=True)
    p.add_argument("--twist", required=True)
    p.add_argument("--action")
    p.add_argument("--degree", type=int)
    p.add_argument("--nmax", type=int)
    p.set_defaults(fn=cmd_twisted)

    p = sub.add_parser("cartan-check", parents=[common],
                       help="check the theory axioms within bounds")
    p.add_argument("--theory", required=True)
    p.add_argument("--coeffs", required=True)
    p.add_argument("--group")
    p.add_argument("--complex")
    p.add_argument("--bounds", help="override the bounds, as 'i,p'")
    p.set_defaults(fn=cmd_cartan_check)

    p = sub.add_parser("crosscheck", parents=[common],
                       help="compare twisted cohomology with the lift "
                            "complex of the theory")
    p.add_argument("--complex", required=True)
    p.add_argument("--coeffs", required=True)
    p.add_argument("--twist")
    p.add_argument("--action")
    p.add_argument("--theory")
    p.add_argument("--nmax", type=int)
    p.set_defaults(fn=cmd_crosscheck)

    p = sub.add_parser("em-info", parents=[common],
                       help="level cardinalities of an Eilenberg-MacLane "
                            "complex")
    p.add_argument("--A", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(fn=cmd_em_info)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as ex:
        # argparse exits 2 on usage errors; that code is reserved for
        # exhausted budgets, so fold them into the input error code
        return 0 if ex.code in (0, None) else 1
    try:
        payload, lines = args.fn(args)
    except InputError as ex:
        sys.stderr.write(f"error: {ex}\n")
        return 1
    except BudgetError as ex:
        sys.stderr.write(f"budget exhausted: {ex}\n")
        return 2
    except InternalError as ex:
        sys.stderr.write(f"internal invariant breach: {ex}\n")
        return 3
    if args.format == "json":
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True))
        sys.stdout.write("\n")
    else:
        for line in lines:
            sys.stdout.write(line + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
