"""JSON descriptions of maps and surfaces for the file-based subcommands.

Weighted self-map::

    {"field": 2, "vars": ["t0:1", "t1:1", "t2:2"], "components": ["t0 + t1", "t1", "t2 + t0*t1"]}

De Jonquieres map (variable ``x``, base as a Mobius matrix)::

    {"kind": "dejonquieres", "field": 2, "base": [1, 1, 0, 1],
     "fiber": ["x^3 + x^2 + x", "x^4 + x^2 + 1", "x^2 + x", "x^3 + x^2 + x"]}
"""

from __future__ import annotations

from typing import Any, Mapping

from ..algebra import PolyRing, make_ring
from ..birmaps import DeJonquieresMap, WeightedSelfMap, dj_order, wp_make, wp_order
from ..surfaces import (
    DP1Surface,
    WeightedHypersurface,
    discriminant,
    dp1_singular_witness,
    dp1_tau,
    field_from_spec,
    is_singular_at,
    point_to_json,
)


def map_from_json(data: Mapping[str, Any]) -> WeightedSelfMap | DeJonquieresMap:
    fld = field_from_spec(data.get("field", 2))
    kind = data.get("kind", "weighted")
    if kind == "dejonquieres":
        ring = PolyRing(fld, (data.get("var", "x"),), (1,))
        return DeJonquieresMap.make(ring, data["base"], [ring(e) for e in data["fiber"]])
    if kind != "weighted":
        raise ValueError(f"unknown map kind {kind!r}")
    decls = list(data["vars"])
    if "weights" in data:
        decls = [f"{n.split(':')[0]}:{w}" for n, w in zip(decls, data["weights"])]
    ring = make_ring(fld, decls)
    return wp_make(ring, data["components"])


def map_order_report(g, cutoff: int = 64) -> dict:
    if isinstance(g, DeJonquieresMap):
        order = dj_order(g, cutoff)
        return {"kind": "dejonquieres", "map": g.to_json(), "order": order, "exceeded": order is None}
    order = wp_order(g, cutoff)
    return {"kind": "weighted", "map": g.to_json(), "order": order, "exceeded": order is None}


def surface_report(X: WeightedHypersurface | DP1Surface, data: Mapping[str, Any]) -> dict:
    if isinstance(X, DP1Surface):
        verdict = dp1_singular_witness(X)
        tau = dp1_tau(X)
        return {
            "surface": X.to_json(),
            "F": str(X.F),
            "singularity": verdict.to_json(),
            "tau": tau.to_json(),
            "tau_order": wp_order(tau),
            "discriminant": str(discriminant(X.fibration())),
        }
    out: dict = {"surface": X.to_json(), "degree": X.degree}
    points = data.get("points", [])
    if points:
        out["points"] = [
            {"point": point_to_json([X.field.element(c) for c in p]), "singular": is_singular_at(X, p)} for p in points
        ]
    return out
