"""Command-line surface: one subcommand per library operation, JSON on
stdout, SVG rendering of moment cross-sections, and a content-addressed
document catalog.

Exit codes: 0 success, 1 mathematical impossibility (validation failure,
obstruction, exhausted search), 2 usage or malformed input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys

from typing import List, Optional, Sequence

from . import construct
from .cone import (
    GoodCone,
    InvalidCone,
    face_invariants,
    validate,
)
from .euler import ChainDataError, verify_global_identity
from .exactnum import DegenerateInput, NoProgression, SearchExhausted
from .graph import (
    GraphAssemblyError,
    count_nontrivial_chains,
    extract_graph,
    toric_condition_check,
)
from .reeb import (
    InadmissibleReeb,
    RankError,
    is_admissible,
    isotropy_profile,
    moment_polygon,
    rank_of,
)
from .serial import (
    Document,
    DocumentError,
    cone_to_json,
    document_from_json,
    document_to_json,
    graph_to_json,
)
from .surgery import (
    CutSpec,
    PlanningError,
    SurgeryRejected,
    blowdown_delete,
    cut,
    plan_blowdown_sequence,
    replay,
)

DOMAIN_ERRORS = (
    InvalidCone,
    SurgeryRejected,
    InadmissibleReeb,
    RankError,
    SearchExhausted,
    PlanningError,
    ChainDataError,
    GraphAssemblyError,
    DegenerateInput,
    NoProgression,
    DocumentError,
)


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise UsageError(f"no such file: {path}")
    except json.JSONDecodeError as exc:
        raise UsageError(
            f"malformed JSON in {path} at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        )


class UsageError(ValueError):
    pass


def _load_document(path: str) -> Document:
    return document_from_json(_load_json(path))


def _need_reeb(doc: Document):
    if doc.reeb is None:
        raise UsageError("this operation needs a document with a 'reeb' field")
    return doc.reeb


def _parse_vec(text: str, length: int = 3):
    parts = text.split(",")
    if len(parts) != length:
        raise UsageError(f"expected {length} comma-separated integers, got {text!r}")
    return tuple(int(x) for x in parts)


def _emit(obj) -> None:
    json.dump(obj, sys.stdout, indent=2, sort_keys=False)
    sys.stdout.write("\n")


# ---------------------------------------------------------------------------
# SVG rendering.
# ---------------------------------------------------------------------------


def render_svg(doc: Document, out_path: str) -> None:
    """Draw the exact moment cross-section: project the affine slice by
    dropping the coordinate where the Reeb vector is largest in absolute
    value (presentation-only float comparison), label faces with their
    isotropy magnitudes, and highlight flat faces."""
    reeb = _need_reeb(doc)
    cone = doc.cone
    if not is_admissible(cone, reeb):
        raise InadmissibleReeb("reeb vector is not admissible for this cone")
    profile = isotropy_profile(cone, reeb)
    poly = moment_polygon(cone, reeb)
    coords = [abs(float(c)) for c in reeb.coords()]
    drop = coords.index(max(coords))
    keep = [j for j in range(3) if j != drop]
    pts = [(float(v[keep[0]]), float(v[keep[1]])) for v in poly.vertices]
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    span = max(max(xs) - min(xs), max(ys) - min(ys)) or 1.0
    scale = 400.0 / span
    margin = 40.0

    def sx(p):
        return margin + (p[0] - min(xs)) * scale

    def sy(p):
        return margin + (max(ys) - p[1]) * scale

    lines: List[str] = []
    lines.append(
        '<svg xmlns="http://www.w3.org/2000/svg" width="480" height="480" '
        'viewBox="0 0 480 480">'
    )
    point_str = " ".join(f"{sx(p):.6f},{sy(p):.6f}" for p in pts)
    lines.append(
        f'<polygon points="{point_str}" fill="#eef4ff" stroke="#233" stroke-width="1"/>'
    )
    n = len(pts)
    for i in range(n):
        a = pts[(i - 1) % n]
        b = pts[i % n]
        flat = i in profile.flats
        color = "#c22" if flat else "#358"
        width = "4" if flat else "2"
        lines.append(
            f'<line x1="{sx(a):.6f}" y1="{sy(a):.6f}" x2="{sx(b):.6f}" y2="{sy(b):.6f}" '
            f'stroke="{color}" stroke-width="{width}"/>'
        )
        mx, my = (sx(a) + sx(b)) / 2, (sy(a) + sy(b)) / 2
        label = f"k={profile.k[i]}" + (" (flat)" if flat else "")
        lines.append(
            f'<text x="{mx:.6f}" y="{my:.6f}" font-size="12" fill="#111">{label}</text>'
        )
    for i, p in enumerate(pts):
        lines.append(
            f'<circle cx="{sx(p):.6f}" cy="{sy(p):.6f}" r="3" fill="#233"/>'
        )
    lines.append("</svg>")
    with open(out_path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# Catalog.
# ---------------------------------------------------------------------------


def _doc_hash(doc: Document) -> str:
    payload = json.dumps(document_to_json(doc), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(payload.encode()).hexdigest()


class CatalogError(ValueError):
    pass


def catalog_add(store: str, doc: Document) -> str:
    os.makedirs(store, exist_ok=True)
    index_path = os.path.join(store, "index.json")
    lock_path = os.path.join(store, "index.lock")
    import fcntl

    with open(lock_path, "a+") as lock:
        fcntl.flock(lock, fcntl.LOCK_EX)
        try:
            index = {}
            if os.path.exists(index_path):
                with open(index_path) as fh:
                    index = json.load(fh)
            digest = _doc_hash(doc)
            payload = document_to_json(doc)
            file_name = f"{digest}.json"
            target = os.path.join(store, file_name)
            if digest in index:
                with open(target) as fh:
                    existing = json.load(fh)
                if existing != payload:
                    raise CatalogError(f"hash collision with differing content: {digest}")
            else:
                with open(target, "w") as fh:
                    json.dump(payload, fh, sort_keys=True, indent=1)
                index[digest] = {
                    "name": doc.metadata.get("name", ""),
                    "file": file_name,
                }
                with open(index_path, "w") as fh:
                    json.dump(index, fh, sort_keys=True, indent=1)
            return digest
        finally:
            fcntl.flock(lock, fcntl.LOCK_UN)


def catalog_list(store: str) -> list:
    index_path = os.path.join(store, "index.json")
    if not os.path.exists(index_path):
        return []
    with open(index_path) as fh:
        index = json.load(fh)
    return [
        {"hash": digest, "name": entry.get("name", "")}
        for digest, entry in sorted(index.items())
    ]


def catalog_get(store: str, digest: str) -> dict:
    index_path = os.path.join(store, "index.json")
    if not os.path.exists(index_path):
        raise CatalogError("empty catalog")
    with open(index_path) as fh:
        index = json.load(fh)
    if digest not in index:
        raise CatalogError(f"no document with hash {digest}")
    with open(os.path.join(store, index[digest]["file"])) as fh:
        return json.load(fh)


# ---------------------------------------------------------------------------
# Subcommands.
# ---------------------------------------------------------------------------


def _cmd_validate(args) -> int:
    doc = document_from_json(_load_json(args.file), revalidate=False)
    report = validate(doc.cone)
    _emit(
        {
            "is_good": report.is_good,
            "failures": [{"kind": k, "indices": list(ix)} for k, ix in report.failures],
        }
    )
    return 0 if report.is_good else 1


def _cmd_invariants(args) -> int:
    doc = _load_document(args.file)
    inv = face_invariants(doc.cone, args.face)
    _emit(
        {
            "b": inv.b,
            "f": inv.f,
            "blowdown": math.gcd(inv.b, inv.f) == 1,
            "gluing": [list(row) for row in inv.gluing],
        }
    )
    return 0


def _cmd_rank(args) -> int:
    doc = _load_document(args.file)
    reeb = _need_reeb(doc)
    _emit({"rank": rank_of(reeb), "admissible": is_admissible(doc.cone, reeb)})
    return 0


def _cmd_profile(args) -> int:
    doc = _load_document(args.file)
    reeb = _need_reeb(doc)
    profile = isotropy_profile(doc.cone, reeb)
    _emit(
        {
            "v0": list(profile.v0),
            "k": list(profile.k),
            "flats": sorted(profile.flats),
            "vertex_orders": list(profile.vertex_orders),
            "lieG_basis": [list(profile.lieG_basis[0]), list(profile.lieG_basis[1])],
        }
    )
    return 0


def _cmd_graph(args) -> int:
    doc = _load_document(args.file)
    reeb = _need_reeb(doc)
    g = extract_graph(doc.cone, reeb)
    out = graph_to_json(g)
    out["nontrivial_chains"] = count_nontrivial_chains(g)
    _emit(out)
    return 0


def _cmd_euler_check(args) -> int:
    doc = _load_document(args.file)
    reeb = _need_reeb(doc)
    ybar = _parse_vec(args.ybar) if args.ybar else None
    report = verify_global_identity(doc.cone, reeb, ybar)
    _emit(report.to_dict())
    return 0 if report.ok else 1


def _cmd_blowup(args) -> int:
    doc = _load_document(args.file)
    result = cut(doc.cone, CutSpec(_parse_vec(args.t)))
    _emit(
        {
            "kind": result.kind,
            "index": result.index,
            "cone": cone_to_json(result.cone),
        }
    )
    return 0


def _cmd_blowdown(args) -> int:
    doc = _load_document(args.file)
    try:
        result = blowdown_delete(doc.cone, args.face)
    except SurgeryRejected as exc:
        failures = (
            [{"kind": k, "indices": list(ix)} for k, ix in exc.report.failures]
            if exc.report
            else []
        )
        _emit({"error": str(exc), "failures": failures})
        return 1
    _emit({"cone": cone_to_json(result)})
    return 0


def _cmd_plan(args) -> int:
    doc = _load_document(args.file)
    keep = [int(x) for x in args.keep.split(",")]
    plan = plan_blowdown_sequence(doc.cone, keep, box=args.box)
    final = replay(plan, doc.cone)
    _emit({"steps": plan.to_json(), "final": cone_to_json(final)})
    return 0


def _cmd_construct(args) -> int:
    if args.family == "example":
        cone, reeb = construct.example_family(args.k, d=args.d)
    elif args.family == "obstructed":
        cone, reeb = construct.obstructed_family(args.k, seed=args.seed, d=args.d)
    else:
        raise UsageError(f"unknown family {args.family!r}")
    doc = Document(
        cone=cone,
        reeb=reeb,
        metadata={"name": f"{args.family}-k{args.k}", "provenance": "constructed"},
    )
    _emit(document_to_json(doc))
    return 0


def _cmd_close(args) -> int:
    obj = _load_json(args.file)
    normals = obj["normals"] if isinstance(obj, dict) else obj
    closing = construct.close_chain([tuple(n) for n in normals])
    closed = GoodCone(tuple(tuple(int(x) for x in n) for n in normals) + (closing,))
    _emit({"closing": list(closing), "cone": cone_to_json(closed)})
    return 0


def _cmd_toric_check(args) -> int:
    v = toric_condition_check(
        _parse_vec(args.vmin, 2), _parse_vec(args.vmax, 2), box=args.box
    )
    if v is None:
        _emit({"found": False, "box": args.box})
        return 1
    _emit({"found": True, "v": list(v)})
    return 0


def _cmd_render(args) -> int:
    doc = _load_document(args.file)
    render_svg(doc, args.out)
    _emit({"written": args.out})
    return 0


def _cmd_catalog(args) -> int:
    if args.action == "add":
        if not args.file:
            raise UsageError("catalog add needs a document file")
        doc = _load_document(args.file)
        digest = catalog_add(args.store, doc)
        _emit({"hash": digest})
        return 0
    if args.action == "list":
        _emit(catalog_list(args.store))
        return 0
    if args.action == "get":
        if not args.file:
            raise UsageError("catalog get needs a document hash")
        _emit(catalog_get(args.store, args.file))
        return 0
    raise UsageError(f"unknown catalog action {args.action!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="goodcones",
        description="Exact invariants and surgeries of good cones with Reeb rays.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="goodness check of a cone document")
    p.add_argument("file")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("invariants", help="lens-space invariants of a face")
    p.add_argument("file")
    p.add_argument("--face", type=int, required=True)
    p.set_defaults(func=_cmd_invariants)

    p = sub.add_parser("rank", help="rank of the document's Reeb vector")
    p.add_argument("file")
    p.set_defaults(func=_cmd_rank)

    p = sub.add_parser("profile", help="rank-2 isotropy profile")
    p.add_argument("file")
    p.set_defaults(func=_cmd_profile)

    p = sub.add_parser("graph", help="graph of isotropy data")
    p.add_argument("file")
    p.set_defaults(func=_cmd_graph)

    p = sub.add_parser("euler-check", help="global Euler-sum identity report")
    p.add_argument("file")
    p.add_argument("--ybar", default=None, help="transverse circle a,b,c")
    p.set_defaults(func=_cmd_euler_check)

    p = sub.add_parser("blowup", help="cut by a half-space and classify")
    p.add_argument("file")
    p.add_argument("--t", required=True, help="cutting normal a,b,c")
    p.set_defaults(func=_cmd_blowup)

    p = sub.add_parser("blowdown", help="delete a face (orbit blow-down)")
    p.add_argument("file")
    p.add_argument("--face", type=int, required=True)
    p.set_defaults(func=_cmd_blowdown)

    p = sub.add_parser("plan", help="blow-down plan keeping the given faces")
    p.add_argument("file")
    p.add_argument("--keep", required=True, help="comma-separated face indices")
    p.add_argument("--box", type=int, default=64)
    p.set_defaults(func=_cmd_plan)

    p = sub.add_parser("construct", help="generate a constructive family")
    p.add_argument("--family", choices=("example", "obstructed"), required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--d", type=int, default=2, help="quadratic discriminant")
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("close", help="closing normal for a chain of normals")
    p.add_argument("file")
    p.set_defaults(func=_cmd_close)

    p = sub.add_parser("toric-check", help="unimodular vector between two rays")
    p.add_argument("--vmin", required=True, help="a,b")
    p.add_argument("--vmax", required=True, help="a,b")
    p.add_argument("--box", type=int, default=32)
    p.set_defaults(func=_cmd_toric_check)

    p = sub.add_parser("render", help="SVG of the moment cross-section")
    p.add_argument("file")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_render)

    p = sub.add_parser("catalog", help="content-addressed document store")
    p.add_argument("action", choices=("add", "list", "get"))
    p.add_argument("--store", required=True)
    p.add_argument("file", nargs="?", default=None, help="document file or hash")
    p.set_defaults(func=_cmd_catalog)

    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except UsageError as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 2
    except CatalogError as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 1
    except DOMAIN_ERRORS as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
