"""Graphs of isotropy data: extraction from (cone, Reeb) pairs, canonical
form and isomorphism under GL(2,Z) re-framings of the torus, chain counting,
the toric-condition checker, and fiber-sum assembly from germs of chains.

A graph is stored as two extreme vertices (fat = 3-dimensional component,
regular = isolated closed orbit) joined by an unordered collection of
chains; each chain is the ordered list of its edges (lens spaces with
isotropy order >= 2) and interior vertices (closed orbits), from the
minimum to the maximum.  Free lens spaces are not recorded: they carry no
isotropy data.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .cone import GoodCone, face_invariants
from .exactnum import (
    DegenerateInput,
    QuadNumber,
    Vec3,
    cross_primitive,
    det3,
    dot,
    lattice_complement,
)
from .reeb import (
    ReebVector,
    arc_decomposition,
    choose_transverse_circle,
    isotropy_profile,
    lie_g_coords,
    reeb_lie_g_coords,
)
from .construct_support import close_chain_normals


class GraphAssemblyError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteCyclicSubgroup:
    """Finite cyclic subgroup of T^2 = (Q/Z)^2, stored by its order and the
    lexicographically smallest generator of exact order."""

    order: int
    generator: Tuple[Fraction, Fraction]

    def __post_init__(self):
        g = tuple(Fraction(x) % 1 for x in self.generator)
        object.__setattr__(self, "generator", g)
        if self.order < 1:
            raise ValueError("order must be positive")
        if any((self.order * x) % 1 != 0 for x in g):
            raise ValueError("generator order does not divide the stated order")

    def canonical(self) -> "FiniteCyclicSubgroup":
        best = None
        for j in range(1, self.order + 1):
            if math.gcd(j, self.order) != 1:
                continue
            cand = tuple((j * x) % 1 for x in self.generator)
            if best is None or cand < best:
                best = cand
        return FiniteCyclicSubgroup(self.order, best if best else (Fraction(0), Fraction(0)))

    def transformed(self, a) -> "FiniteCyclicSubgroup":
        g = self.generator
        return FiniteCyclicSubgroup(
            self.order,
            (
                (a[0][0] * g[0] + a[0][1] * g[1]) % 1,
                (a[1][0] * g[0] + a[1][1] * g[1]) % 1,
            ),
        ).canonical()


@dataclass(frozen=True)
class FatVertex:
    """3-dimensional extreme: isotropy circle direction in Lie(G)_Z
    coordinates, Seifert data (genus, exceptional multiplicities, orbifold
    Euler number), and the normal Euler class as a residue (b, f).

    normal_euler_rev is the same Euler class read in the reversed cyclic
    orientation (a unit multiple of f mod b); the canonical form minimizes
    over the two readings so that orientation-reversing re-coordinatizations
    of the cone produce isomorphic graphs."""

    direction: Tuple[int, int]
    genus: int
    multiplicities: Tuple[int, ...]
    orbifold_euler: Fraction
    normal_euler: Tuple[int, int]
    normal_euler_rev: int


@dataclass(frozen=True)
class RegularVertex:
    """Closed-orbit vertex: component-group order and the primitive
    direction of the isotropy circle in Lie(G)_Z coordinates (the subgroup
    is the preimage of the unique Z/order of the quotient circle, so these
    two data determine it)."""

    order: int
    direction: Tuple[int, int]


@dataclass(frozen=True)
class EdgeItem:
    """Lens space with isotropy order >= 2 along a chain."""

    multiplicity: int
    isotropy: FiniteCyclicSubgroup


Extreme = object  # FatVertex | RegularVertex
ChainItem = object  # EdgeItem | RegularVertex


@dataclass(frozen=True)
class IsotropyGraph:
    reeb_class: Tuple[QuadNumber, QuadNumber]
    minimum: Extreme
    maximum: Extreme
    chains: Tuple[Tuple[ChainItem, ...], ...]

    @property
    def fat_vertices(self) -> Tuple[FatVertex, ...]:
        return tuple(v for v in (self.minimum, self.maximum) if isinstance(v, FatVertex))

    @property
    def edges(self) -> Tuple[EdgeItem, ...]:
        return tuple(
            item for ch in self.chains for item in ch if isinstance(item, EdgeItem)
        )

    @property
    def regular_vertices(self) -> Tuple[RegularVertex, ...]:
        interior = tuple(
            item for ch in self.chains for item in ch if isinstance(item, RegularVertex)
        )
        ends = tuple(
            v for v in (self.minimum, self.maximum) if isinstance(v, RegularVertex)
        )
        return ends + interior


def _canonical_sign(v: Tuple[int, int]) -> Tuple[int, int]:
    for x in v:
        if x > 0:
            return v
        if x < 0:
            return (-v[0], -v[1])
    raise DegenerateInput("zero direction")


def _edge_isotropy(profile, cone: GoodCone, face: int) -> FiniteCyclicSubgroup:
    """Subgroup of T^2 cut out by the face's lens space: generated by
    (1/k) n - sigma m in Lie(G), with m the lattice complement of v0 and
    sigma the sign of v0 . n."""
    n = cone.normal(face)
    s = dot(profile.v0, n)
    k = abs(s)
    sigma = 1 if s > 0 else -1
    m = lattice_complement(profile.v0)
    g_vec = tuple(Fraction(n[j], k) - sigma * m[j] for j in range(3))
    # coordinates in (u1, u2)
    u1, u2 = profile.lieG_basis
    den = det3(u1, u2, profile.v0)
    a = Fraction(det3(g_vec, u2, profile.v0), den)
    b = Fraction(det3(u1, g_vec, profile.v0), den)
    return FiniteCyclicSubgroup(order=k, generator=(a, b)).canonical()


def _vertex_direction(profile, cone: GoodCone, vertex: int) -> Tuple[int, int]:
    """Primitive Lie(G)_Z direction of the isotropy circle at the polygon
    vertex between faces `vertex` and `vertex`+1."""
    edge = cross_primitive(cone.normal(vertex), cone.normal(vertex + 1))
    y = cross_primitive(profile.v0, edge)
    a, b = lie_g_coords(profile, y)
    assert a.denominator == 1 and b.denominator == 1
    return _canonical_sign((int(a), int(b)))


def reversed_euler_residue(cone: GoodCone, face: int) -> int:
    """The face's normal Euler class read against the reversed cyclic
    orientation: recompute face_invariants on the orientation-reversed,
    mirror-imaged cone (the result is independent of the mirror chosen)."""
    k = len(cone)
    mirror = tuple(
        (n[0], n[1], -n[2]) for n in reversed(cone.normals)
    )
    rev = GoodCone(mirror)
    return face_invariants(rev, k - 1 - (face % k)).f


def _fat_vertex(profile, cone: GoodCone, face: int, genus: int = 0) -> FatVertex:
    k = len(cone)
    n = cone.normal(face)
    a, b = lie_g_coords(profile, n)
    direction = _canonical_sign((int(a), int(b)))
    k_lo = profile.k[(face - 1) % k]
    k_hi = profile.k[(face + 1) % k]
    inv = face_invariants(cone, face)
    mults = tuple(sorted(x for x in (k_lo, k_hi) if x >= 2))
    return FatVertex(
        direction=direction,
        genus=genus,
        multiplicities=mults,
        orbifold_euler=Fraction(-inv.b, k_lo * k_hi),
        normal_euler=(inv.b, inv.f),
        normal_euler_rev=reversed_euler_residue(cone, face),
    )


def extract_graph(
    cone: GoodCone, R: ReebVector, ybar: Optional[Vec3] = None
) -> IsotropyGraph:
    """Graph of isotropy data of the rank-2 pair: fat vertices for flat
    faces, regular vertices for polygon vertices away from flats, edges for
    faces with isotropy order >= 2, chains ordered by the canonical
    transverse moment functional, and the Reeb class in Lie(G)_Z
    coordinates."""
    profile = isotropy_profile(cone, R)
    if ybar is None:
        ybar = choose_transverse_circle(cone, R)
    arcs = arc_decomposition(cone, R, ybar)

    def extreme(ext) -> Extreme:
        if ext.kind == "flat":
            return _fat_vertex(profile, cone, ext.index)
        v = ext.index
        k1 = profile.k[v % len(cone)]
        k2 = profile.k[(v + 1) % len(cone)]
        return RegularVertex(
            order=math.gcd(k1, k2), direction=_vertex_direction(profile, cone, v)
        )

    chains: List[Tuple[ChainItem, ...]] = []
    for arc in (arcs.neg_arc, arcs.pos_arc):
        items: List[ChainItem] = []
        for pos, face in enumerate(arc):
            kf = profile.k[face]
            if kf >= 2:
                items.append(
                    EdgeItem(
                        multiplicity=kf, isotropy=_edge_isotropy(profile, cone, face)
                    )
                )
            if pos + 1 < len(arc):
                nxt = arc[pos + 1]
                # interior vertex between consecutive arc faces
                v = face if (face + 1) % len(cone) == nxt else nxt
                items.append(
                    RegularVertex(
                        order=math.gcd(profile.k[face], profile.k[nxt]),
                        direction=_vertex_direction(profile, cone, v),
                    )
                )
        if items:
            chains.append(tuple(items))

    return IsotropyGraph(
        reeb_class=reeb_lie_g_coords(profile, R),
        minimum=extreme(arcs.minimum),
        maximum=extreme(arcs.maximum),
        chains=tuple(chains),
    )


def count_nontrivial_chains(g: IsotropyGraph) -> int:
    """Chains carrying at least one edge or one interior vertex; empty
    boundary chains are never stored."""
    return len(g.chains)


# ---------------------------------------------------------------------------
# Canonical form and isomorphism.
# ---------------------------------------------------------------------------


def _hnf_2x2(m: Tuple[Tuple[int, int], Tuple[int, int]]):
    """Column-style Hermite form: unique U in GL(2,Z) with M U = H,
    H = [[h00, 0], [h10, h11]], h00 > 0, h11 > 0, 0 <= h10 < h11.
    Returns (H, U); M must be nonsingular."""
    a, b = m[0]
    c, d = m[1]
    u = ((1, 0), (0, 1))

    def colop(mat, uu, j_src, j_dst, q):
        # col_dst -= q * col_src
        m2 = tuple(
            tuple(
                row[jj] - q * row[j_src] if jj == j_dst else row[jj]
                for jj in range(2)
            )
            for row in mat
        )
        u2 = tuple(
            tuple(
                row[jj] - q * row[j_src] if jj == j_dst else row[jj]
                for jj in range(2)
            )
            for row in uu
        )
        return m2, u2

    def swap(mat, uu):
        return (
            tuple((row[1], row[0]) for row in mat),
            tuple((row[1], row[0]) for row in uu),
        )

    def negcol(mat, uu, j):
        return (
            tuple(tuple(-row[jj] if jj == j else row[jj] for jj in range(2)) for row in mat),
            tuple(tuple(-row[jj] if jj == j else row[jj] for jj in range(2)) for row in uu),
        )

    mat = ((a, b), (c, d))
    # eliminate mat[0][1]
    while mat[0][1] != 0:
        if mat[0][0] == 0 or (mat[0][1] != 0 and abs(mat[0][1]) < abs(mat[0][0])):
            mat, u = swap(mat, u)
            continue
        q = mat[0][1] // mat[0][0] if mat[0][0] != 0 else 0
        if q == 0:
            mat, u = swap(mat, u)
            continue
        mat, u = colop(mat, u, 0, 1, q)
    if mat[0][0] < 0:
        mat, u = negcol(mat, u, 0)
    if mat[1][1] < 0:
        mat, u = negcol(mat, u, 1)
    if mat[1][1] == 0:
        raise DegenerateInput("singular matrix in HNF")
    q = mat[1][0] // mat[1][1]
    if q:
        mat, u = colop(mat, u, 1, 0, q)
    return mat, u


def reeb_frame_matrix(g: IsotropyGraph):
    """The unique A in GL(2,Z) whose action on the Reeb class produces the
    canonical (Hermite) frame; two graphs can only be isomorphic via the
    composite of their frame matrices since a rank-2 Reeb class has trivial
    GL(2,Z) stabilizer."""
    r1, r2 = g.reeb_class
    p = (r1.rat, r2.rat)
    q = (r1.irr, r2.irr)
    den = 1
    for x in (*p, *q):
        den = den * x.denominator // math.gcd(den, x.denominator)
    # Let P have columns p and q; we want A with A P in (left) Hermite
    # form, i.e. P^T U in column Hermite form and A = U^T.  m below is P^T.
    m = (
        (int(p[0] * den), int(p[1] * den)),
        (int(q[0] * den), int(q[1] * den)),
    )
    _, u = _hnf_2x2(m)
    a = ((u[0][0], u[1][0]), (u[0][1], u[1][1]))  # A = U^T
    return a


def _apply_matrix_int(a, v: Tuple[int, int]) -> Tuple[int, int]:
    return (a[0][0] * v[0] + a[0][1] * v[1], a[1][0] * v[0] + a[1][1] * v[1])


def _apply_matrix_quad(a, v):
    return (
        a[0][0] * v[0] + a[0][1] * v[1],
        a[1][0] * v[0] + a[1][1] * v[1],
    )


def transform_graph(g: IsotropyGraph, a) -> IsotropyGraph:
    """Image of the graph under A in GL(2,Z) acting on all torus data."""

    def tr_extreme(v):
        if isinstance(v, FatVertex):
            return FatVertex(
                direction=_canonical_sign(_apply_matrix_int(a, v.direction)),
                genus=v.genus,
                multiplicities=v.multiplicities,
                orbifold_euler=v.orbifold_euler,
                normal_euler=v.normal_euler,
                normal_euler_rev=v.normal_euler_rev,
            )
        return RegularVertex(
            order=v.order,
            direction=_canonical_sign(_apply_matrix_int(a, v.direction)),
        )

    def tr_item(item):
        if isinstance(item, EdgeItem):
            return EdgeItem(
                multiplicity=item.multiplicity,
                isotropy=item.isotropy.transformed(a),
            )
        return tr_extreme(item)

    return IsotropyGraph(
        reeb_class=_apply_matrix_quad(a, g.reeb_class),
        minimum=tr_extreme(g.minimum),
        maximum=tr_extreme(g.maximum),
        chains=tuple(tuple(tr_item(i) for i in ch) for ch in g.chains),
    )


def _encode_quad(x: QuadNumber) -> str:
    return f"{x.rat}|{x.irr}|{x.d}"


def _encode_extreme(v, reversed_reading: bool = False) -> list:
    if isinstance(v, FatVertex):
        f = v.normal_euler_rev if reversed_reading else v.normal_euler[1]
        return [
            "fat",
            list(v.direction),
            v.genus,
            list(v.multiplicities),
            str(v.orbifold_euler),
            [v.normal_euler[0], f],
        ]
    return ["regular", v.order, list(v.direction)]


def _encode_item(item) -> list:
    if isinstance(item, EdgeItem):
        iso = item.isotropy.canonical()
        return ["edge", item.multiplicity, iso.order, [str(x) for x in iso.generator]]
    return ["vertex", item.order, list(item.direction)]


def canonical_form(g: IsotropyGraph) -> str:
    """Deterministic encoding, invariant under relabeling (chain order and
    min/max flip), under the GL(2,Z) action on all torus data, and under
    reversing the cyclic reading of the fat vertices' Euler residues."""
    a = reeb_frame_matrix(g)
    base = transform_graph(g, a)
    variants = []
    for flip in (False, True):
        if flip:
            cand = IsotropyGraph(
                reeb_class=base.reeb_class,
                minimum=base.maximum,
                maximum=base.minimum,
                chains=tuple(tuple(reversed(ch)) for ch in base.chains),
            )
        else:
            cand = base
        for reversed_reading in (False, True):
            payload = {
                "reeb": [_encode_quad(x) for x in cand.reeb_class],
                "min": _encode_extreme(cand.minimum, reversed_reading),
                "max": _encode_extreme(cand.maximum, reversed_reading),
                "chains": sorted(
                    json.dumps([_encode_item(i) for i in ch], sort_keys=True)
                    for ch in cand.chains
                ),
            }
            variants.append(
                json.dumps(payload, sort_keys=True, separators=(",", ":"))
            )
    return min(variants)


def isomorphic(g1: IsotropyGraph, g2: IsotropyGraph) -> bool:
    return canonical_form(g1) == canonical_form(g2)


# ---------------------------------------------------------------------------
# Toric condition checker.
# ---------------------------------------------------------------------------


def toric_condition_check(
    v_min: Tuple[int, int], v_max: Tuple[int, int], box: int = 32
) -> Optional[Tuple[int, int]]:
    """Search the open cone between v_min and v_max for an integer v with
    |det2(v, v_min)| = |det2(v, v_max)| = 1 (both pairs Z-bases); None when
    the bounded search is exhausted."""

    def det2(a, b):
        return a[0] * b[1] - a[1] * b[0]

    orient = det2(v_min, v_max)
    if orient == 0:
        raise DegenerateInput("v_min, v_max must be linearly independent")
    s = 1 if orient > 0 else -1
    candidates = []
    for x in range(-box, box + 1):
        for y in range(-box, box + 1):
            v = (x, y)
            if v == (0, 0) or math.gcd(abs(x), abs(y)) != 1:
                continue
            if s * det2(v_min, v) <= 0 or s * det2(v, v_max) <= 0:
                continue
            if abs(det2(v, v_min)) == 1 and abs(det2(v, v_max)) == 1:
                candidates.append(v)
    if not candidates:
        return None
    return min(candidates, key=lambda v: (v[0] * v[0] + v[1] * v[1], v))


# ---------------------------------------------------------------------------
# Fiber sums.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GermOfChain:
    """Chain germ with flat faces at both ends: the ordered face normals
    (first and last orthogonal to the Reeb plane) and the Reeb vector."""

    normals: Tuple[Vec3, ...]
    reeb: ReebVector

    def __post_init__(self):
        object.__setattr__(
            self, "normals", tuple(tuple(int(x) for x in n) for n in self.normals)
        )
        if len(self.normals) < 3:
            raise GraphAssemblyError("a germ needs flat ends and an interior")


@dataclass(frozen=True)
class LensBundleDescriptor:
    """Combinatorial data of a lens space bundle over a closed surface:
    base genus, the Reeb class in Lie(G)_Z coordinates, the two extreme
    moment values of the fiber, and the decorations of the two fat
    vertices (isotropy direction and normal Euler data)."""

    genus: int
    reeb_class: Tuple[QuadNumber, QuadNumber]
    moment_min: Tuple[QuadNumber, QuadNumber]
    moment_max: Tuple[QuadNumber, QuadNumber]
    fat_min: tuple  # (direction, (b, f), f_reversed_reading)
    fat_max: tuple


def germ_profile(germ: GermOfChain):
    """Profile-like data of a germ: v0, per-face isotropy magnitudes, the
    Lie(G) frame, Reeb class, and the two end moment values (constant on
    each flat end segment, computable from the inner vertices alone)."""
    from .reeb import _integer_span_normal  # shared normal computation

    R = germ.reeb
    v0 = _integer_span_normal(R)
    k = tuple(abs(dot(v0, n)) for n in germ.normals)
    if k[0] != 0 or k[-1] != 0:
        raise GraphAssemblyError("germ ends must be flat (v0 . n = 0)")
    if any(x == 0 for x in k[1:-1]):
        raise GraphAssemblyError("germ interior must not contain flats")
    from .exactnum import plane_lattice_basis

    u1, u2 = plane_lattice_basis(v0)

    def moment_point(face_a: int, face_b: int):
        ray = cross_primitive(germ.normals[face_a], germ.normals[face_b])
        rq = tuple(QuadNumber(R.p[j], R.q[j], R.d) for j in range(3))
        t = sum(rq[j] * ray[j] for j in range(3))
        if t.sign() < 0:
            ray = tuple(-x for x in ray)
            t = -t
        if t.sign() == 0:
            raise GraphAssemblyError("Reeb pairs degenerately with a germ edge")
        inv = t.inverse()
        point = tuple(inv * c for c in ray)
        return (
            sum(point[j] * u1[j] for j in range(3)),
            sum(point[j] * u2[j] for j in range(3)),
        )

    return {
        "v0": v0,
        "k": k,
        "basis": (u1, u2),
        "moment_min": moment_point(0, 1),
        "moment_max": moment_point(len(k) - 2, len(k) - 1),
    }


def _germ_reeb_class(germ: GermOfChain, basis, v0):
    u1, u2 = basis
    den = det3(u1, u2, v0)
    R = germ.reeb
    out = []
    for first in (True, False):
        if first:
            np_, nq = det3(R.p, u2, v0), det3(R.q, u2, v0)
        else:
            np_, nq = det3(u1, R.p, v0), det3(u1, R.q, v0)
        out.append(QuadNumber(Fraction(np_, den), Fraction(nq, den), R.d))
    return tuple(out)


def validate_germ(germ: GermOfChain) -> None:
    """Realizability: consecutive triples convex, adjacent pairs Delzant,
    and the chain closes to a good cone (close_chain search)."""
    from .cone import GoodCone as _GC, validate as _validate
    from .exactnum import is_delzant_pair

    ns = germ.normals
    for a, b, c in zip(ns, ns[1:], ns[2:]):
        if det3(a, b, c) <= 0:
            raise GraphAssemblyError(f"germ triple {a},{b},{c} is not convex")
    for a, b in zip(ns, ns[1:]):
        if not is_delzant_pair(a, b):
            raise GraphAssemblyError(f"germ pair {a},{b} is not Delzant")
    closing = close_chain_normals(ns)
    closed = _GC(tuple(ns) + (closing,))
    rep = _validate(closed)
    if not rep.is_good:
        raise GraphAssemblyError(f"germ does not close to a good cone: {rep.failures[:3]}")


def assemble_fiber_sum(
    bundle: LensBundleDescriptor, germs: Sequence[GermOfChain]
) -> IsotropyGraph:
    """Isotropy graph of the fiber sum: two fat vertices carrying the base
    genus and the union of the germs' end multiplicities, one chain per
    germ.  Germs must have flat ends and fibers matching the bundle (same
    Reeb class and extreme moment values, exactly)."""
    mults_min: List[int] = []
    mults_max: List[int] = []
    chains: List[Tuple[ChainItem, ...]] = []
    prod_min = 1
    prod_max = 1
    for germ in germs:
        validate_germ(germ)
        prof = germ_profile(germ)
        rc = _germ_reeb_class(germ, prof["basis"], prof["v0"])
        if rc != bundle.reeb_class:
            raise GraphAssemblyError("germ Reeb class does not match the bundle fiber")
        if prof["moment_min"] != bundle.moment_min or prof["moment_max"] != bundle.moment_max:
            raise GraphAssemblyError("germ extreme moment values do not match the bundle")
        k = prof["k"]
        end_lo, end_hi = k[1], k[-2]
        prod_min *= end_lo
        prod_max *= end_hi
        if end_lo >= 2:
            mults_min.append(end_lo)
        if end_hi >= 2:
            mults_max.append(end_hi)
        chains.append(_germ_chain_items(germ, prof))

    b_min, f_min = bundle.fat_min[1]
    b_max, f_max = bundle.fat_max[1]
    minimum = FatVertex(
        direction=_canonical_sign(tuple(bundle.fat_min[0])),
        genus=bundle.genus,
        multiplicities=tuple(sorted(mults_min)),
        orbifold_euler=Fraction(-b_min, prod_min),
        normal_euler=(b_min, f_min),
        normal_euler_rev=bundle.fat_min[2],
    )
    maximum = FatVertex(
        direction=_canonical_sign(tuple(bundle.fat_max[0])),
        genus=bundle.genus,
        multiplicities=tuple(sorted(mults_max)),
        orbifold_euler=Fraction(-b_max, prod_max),
        normal_euler=(b_max, f_max),
        normal_euler_rev=bundle.fat_max[2],
    )
    return IsotropyGraph(
        reeb_class=bundle.reeb_class,
        minimum=minimum,
        maximum=maximum,
        chains=tuple(ch for ch in chains if ch),
    )


def _germ_chain_items(germ: GermOfChain, prof) -> Tuple[ChainItem, ...]:
    """Chain items of the germ interior, in order from the flat minimum to
    the flat maximum, matching extract_graph's encoding on a closed cone."""
    from .reeb import IsotropyProfile

    v0 = prof["v0"]
    u1, u2 = prof["basis"]
    k = prof["k"]
    ns = germ.normals
    profile = IsotropyProfile(
        v0=v0,
        k=k,
        flats=frozenset({0, len(k) - 1}),
        vertex_orders=(),
        lieG_basis=(u1, u2),
    )

    class _ConeView:
        def __init__(self, normals):
            self.normals = normals

        def normal(self, i):
            return self.normals[i % len(self.normals)]

        def __len__(self):
            return len(self.normals)

    view = _ConeView(tuple(ns))
    items: List[ChainItem] = []
    interior = list(range(1, len(ns) - 1))
    for pos, face in enumerate(interior):
        if k[face] >= 2:
            items.append(
                EdgeItem(
                    multiplicity=k[face],
                    isotropy=_edge_isotropy(profile, view, face),
                )
            )
        if pos + 1 < len(interior):
            items.append(
                RegularVertex(
                    order=math.gcd(k[face], k[face + 1]),
                    direction=_vertex_direction(profile, view, face),
                )
            )
    return tuple(items)
