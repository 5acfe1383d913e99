"""JSON (de)serialization for cones, Reeb vectors, documents, graphs and
plans.  All domain numbers are exact: integers stay integers, rationals
serialize as strings "p/q", quadratic numbers as {"rat","irr","d"}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .cone import GoodCone, load_cone, validate
from .exactnum import QuadNumber
from .graph import EdgeItem, FatVertex, IsotropyGraph, RegularVertex
from .reeb import ReebVector


class DocumentError(ValueError):
    pass


def frac_str(x: Fraction) -> str:
    return str(Fraction(x))


def parse_frac(value) -> Fraction:
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise DocumentError(f"expected integer or 'p/q' string, got {value!r}")


def quad_to_json(x: QuadNumber) -> dict:
    return {"rat": frac_str(x.rat), "irr": frac_str(x.irr), "d": x.d}


def quad_from_json(obj) -> QuadNumber:
    return QuadNumber(parse_frac(obj["rat"]), parse_frac(obj["irr"]), int(obj["d"]))


def cone_to_json(cone: GoodCone) -> dict:
    return {"normals": [list(n) for n in cone.normals]}


def cone_from_json(obj) -> GoodCone:
    if "normals" not in obj:
        raise DocumentError("cone JSON needs a 'normals' field")
    return load_cone(obj["normals"])


def reeb_to_json(r: ReebVector) -> dict:
    return {
        "p": [frac_str(x) for x in r.p],
        "q": [frac_str(x) for x in r.q],
        "d": r.d,
    }


def reeb_from_json(obj) -> ReebVector:
    return ReebVector(
        tuple(parse_frac(x) for x in obj["p"]),
        tuple(parse_frac(x) for x in obj["q"]),
        int(obj.get("d", 2)),
    )


@dataclass(frozen=True)
class Document:
    cone: GoodCone
    reeb: Optional[ReebVector] = None
    metadata: dict = field(default_factory=dict)


def document_to_json(doc: Document) -> dict:
    out = {"cone": cone_to_json(doc.cone), "metadata": dict(doc.metadata)}
    out["reeb"] = reeb_to_json(doc.reeb) if doc.reeb is not None else None
    return out


def document_from_json(obj, revalidate: bool = True) -> Document:
    if "normals" in obj:  # bare cone file
        cone = cone_from_json(obj)
        reeb = None
        meta = {}
    else:
        cone = cone_from_json(obj["cone"])
        reeb = reeb_from_json(obj["reeb"]) if obj.get("reeb") else None
        meta = dict(obj.get("metadata", {}))
    if revalidate:
        report = validate(cone)
        if not report.is_good:
            raise DocumentError(f"document cone is not good: {report.failures[:4]}")
    return Document(cone=cone, reeb=reeb, metadata=meta)


def graph_to_json(g: IsotropyGraph) -> dict:
    def enc_extreme(v):
        if isinstance(v, FatVertex):
            return {
                "kind": "fat",
                "direction": list(v.direction),
                "genus": v.genus,
                "multiplicities": list(v.multiplicities),
                "orbifold_euler": frac_str(v.orbifold_euler),
                "normal_euler": {
                    "b": v.normal_euler[0],
                    "f": v.normal_euler[1],
                    "f_reversed": v.normal_euler_rev,
                },
            }
        return {"kind": "regular", "order": v.order, "direction": list(v.direction)}

    def enc_item(item):
        if isinstance(item, EdgeItem):
            return {
                "kind": "edge",
                "multiplicity": item.multiplicity,
                "isotropy": {
                    "order": item.isotropy.order,
                    "generator": [frac_str(x) for x in item.isotropy.generator],
                },
            }
        return {"kind": "vertex", "order": item.order, "direction": list(item.direction)}

    from .graph import canonical_form

    return {
        "reeb_class": [quad_to_json(x) for x in g.reeb_class],
        "min": enc_extreme(g.minimum),
        "max": enc_extreme(g.maximum),
        "chains": [[enc_item(i) for i in ch] for ch in g.chains],
        "canonical": canonical_form(g),
    }
