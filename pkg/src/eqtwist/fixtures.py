"""Bundled example inputs and the loaders shared by the command line
tool and the test suite.

File formats:

  complex   truncation, simplices, faces, group, action
            (the serialization of GSimplicialSet)
  coeffs    {"constant": {gens, rels}} or explicit values and maps,
            read against the orbit category of the complex
  twist     {"pi": <group>, "values": {cell: element}} for a group
            valued twisting function, or
            {"kappa": {"basepoint": v, "paths": {subgroup: {vertex:
            [[edge, +-1], ...]}}}} for an edge path datum
  action    {"phi": {subgroup: {element: matrix}}} for a group acting
            on the coefficients, or
            {"edges": {subgroup: {edge: matrix}}} for edge holonomies
  theory    {"canonical": true, "i_max": i, "p_max": p}

All loaders validate as they go and raise ValueError with the offending
item named.
"""

import json
import os

from .bredon import (EdgePathProvider, EquivariantCochains,
                     GroupTwistProvider, TrivialTwistProvider)
from .coefficients import CoefficientSystem, LocalSystem
from .edgepaths import EdgeActionSystem, PathChoice
from .equivariant import GSimplicialSet, fixed_point_system
from .groups import FiniteGroup, OrbitCategory
from .twisting import GroupTwist

FIXTURE_DIR = os.path.join(os.path.dirname(__file__), "fixtures")


def fixture_path(name: str) -> str:
    return os.path.join(FIXTURE_DIR, name)


def load_json(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


class Setup:
    """Everything the cohomology commands need, parsed and validated."""

    __slots__ = ("gx", "cat", "ph", "system", "provider",
                 "twist_kind", "twist", "pi", "choice", "actions")

    def __init__(self):
        self.gx = None
        self.cat = None
        self.ph = None
        self.system = None
        self.provider = None
        self.twist_kind = None
        self.twist = None
        self.pi = None
        self.choice = None
        self.actions = None


def load_setup(complex_path: str, coeffs_path: str | None = None,
               twist_path: str | None = None,
               action_path: str | None = None) -> Setup:
    """Parse and cross validate the referenced files.

    Everything is checked before any cohomology is computed, so a
    ValueError out of here always means bad input, not a broken run.
    """
    out = Setup()
    out.gx = GSimplicialSet.from_json(load_json(complex_path))
    out.cat = OrbitCategory(out.gx.group)
    out.ph = fixed_point_system(out.gx, out.cat)
    if coeffs_path is not None:
        out.system = CoefficientSystem.from_json(out.cat,
                                                 load_json(coeffs_path))
    if twist_path is None:
        if action_path is not None:
            raise ValueError("an action file needs a twist file")
        if out.system is not None:
            out.provider = TrivialTwistProvider(out.system)
        return out
    tdata = load_json(twist_path)
    adata = load_json(action_path) if action_path is not None else None
    if "pi" in tdata:
        out.twist_kind = "group"
        out.pi = FiniteGroup.from_json(tdata["pi"])
        out.twist = GroupTwist.from_json(out.gx.space, out.pi,
                                         tdata["values"])
        if out.system is not None:
            if adata is None:
                local = LocalSystem.trivial(out.system, out.pi)
            elif "phi" in adata:
                local = LocalSystem.from_json(out.system, out.pi, adata)
            else:
                raise ValueError(
                    "action file for a group twist must carry 'phi'")
            out.provider = GroupTwistProvider(local, out.twist, gx=out.gx)
        else:
            out.twist.check_equivariant(out.gx)
    elif "kappa" in tdata:
        out.twist_kind = "kappa"
        out.choice = PathChoice.from_json(out.ph, tdata["kappa"])
        if out.system is not None:
            if adata is None or "edges" not in adata:
                raise ValueError(
                    "an edge path twist needs an action file with 'edges'")
            out.actions = EdgeActionSystem.from_json(out.ph, out.system,
                                                     adata["edges"])
            out.provider = EdgePathProvider(out.ph, out.choice, out.actions)
    else:
        raise ValueError("twist file carries neither 'pi' nor 'kappa'")
    return out


def load_theory_data(theory_path: str) -> dict:
    data = load_json(theory_path)
    if not data.get("canonical"):
        raise ValueError("only canonical theory descriptors are supported")
    i_max = int(data["i_max"])
    p_max = int(data["p_max"])
    if i_max < 1 or p_max < 1:
        raise ValueError("theory bounds must be positive")
    return {"i_max": i_max, "p_max": p_max}
