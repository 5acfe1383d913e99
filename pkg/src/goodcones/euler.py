"""Exact Euler numbers of locally free circle actions on S^3, S^1 x S^3
quotients and lens spaces, critical-level jumps, chain sums, and the global
Euler-sum identity on a good cone with a rank-2 Reeb vector.

All outputs are Fractions; nothing here touches floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .cone import GoodCone, InvalidCone
from .exactnum import Vec3, cross_primitive, det3, dot
from .reeb import (
    ArcDecomposition,
    Extreme,
    IsotropyProfile,
    ReebVector,
    arc_decomposition,
    choose_transverse_circle,
    isotropy_profile,
    lie_g_coords,
)


class ChainDataError(ValueError):
    """Chain data violates the integrality/positivity identity."""


def euler_s3(m1: int, m2: int) -> Fraction:
    """Euler number of the S^1-action t.(z1,z2) = (t^m1 z1, t^m2 z2) on S^3:
    -gcd(|m1|,|m2|) / (m1 m2)."""
    if m1 == 0 or m2 == 0:
        raise ValueError("weights must be nonzero")
    return Fraction(-math.gcd(abs(m1), abs(m2)), m1 * m2)


def euler_quotient(a0: int, a1: int, a2: int, b0: int, b1: int, b2: int) -> Fraction:
    """Euler number of the second circle factor acting on (S^1 x S^3)/sigma_1
    for the torus action with weight rows (a0,a1,a2), (b0,b1,b2):
    -a0 / ((a0 b1 - a1 b0)(a0 b2 - a2 b0))."""
    if a0 <= 0:
        raise ValueError("a0 must be positive")
    d1 = a0 * b1 - a1 * b0
    d2 = a0 * b2 - a2 * b0
    if d1 == 0 or d2 == 0:
        raise ValueError("degenerate torus action (vanishing 2x2 minor)")
    return Fraction(-a0, d1 * d2)


def euler_lens(p: int, q: int, m1: int, m2: int) -> Fraction:
    """Euler number of the weight-(m1, m2) circle subaction on L(p, q):
    -p gcd(|m1|,|m2|) / (m1 (p m2 - q m1)).

    The second factor of the denominator is the weight induced on the
    collapsing coordinate of the Heegaard torus at u = 1; at (p, q) = (1, 0)
    this reduces exactly to the S^3 formula."""
    if p < 1 or math.gcd(p, q) != 1:
        raise ValueError("need p >= 1 and gcd(p, q) = 1")
    if m1 == 0 or p * m2 - q * m1 == 0:
        raise ValueError("degenerate weights for this lens space")
    return Fraction(-p * math.gcd(abs(m1), abs(m2)), m1 * (p * m2 - q * m1))


def euler_near_B_orbit(a: int, m: int, n: int, is_max: bool) -> Fraction:
    """Level set near a closed-orbit extreme: -a/(m n) on the minimum side,
    +a/(m n) on the maximum side."""
    if a < 1 or m < 1 or n < 1:
        raise ValueError("multiplicities must be positive")
    val = Fraction(a, m * n)
    return val if is_max else -val


def euler_near_B_lens(
    n1: Vec3, n2: Vec3, ybar: Vec3, k1: int, k2: int, is_max: bool
) -> Fraction:
    """Level set near a 3-dimensional (lens space) extreme:
    +(1/(k1 k2)) det3(n1, n2, Ybar) near the minimum, - near the maximum."""
    if k1 < 1 or k2 < 1:
        raise ValueError("multiplicities must be positive")
    val = Fraction(det3(n1, n2, ybar), k1 * k2)
    return val if not is_max else -val


def critical_jump(a: int, k: int, kp: int) -> Fraction:
    """Jump of the level-set Euler number across an interior critical orbit:
    a/(k k')."""
    if a < 1 or k < 1 or kp < 1:
        raise ValueError("arguments must be positive")
    return Fraction(a, k * kp)


@dataclass(frozen=True)
class ChainDescriptor:
    """Multiplicities k_1..k_l of a chain's gradient manifolds and the
    transverse intersection weights a_{i,i+1} of its interior orbits."""

    k: Tuple[int, ...]
    a: Tuple[int, ...]

    def __post_init__(self):
        if len(self.a) != len(self.k) - 1:
            raise ValueError("need |a| = |k| - 1")
        if any(x < 1 for x in self.k) or any(x < 1 for x in self.a):
            raise ValueError("all entries must be >= 1")


def chain_euler_sum(chain: ChainDescriptor) -> Tuple[Fraction, int]:
    """Sum of a_{i,i+1}/(k_i k_{i+1}) along the chain, together with the
    positive integer d with sum = d / lcm(k_1, k_l)."""
    total = sum(
        (critical_jump(chain.a[i], chain.k[i], chain.k[i + 1]) for i in range(len(chain.a))),
        Fraction(0),
    )
    lcm = math.lcm(chain.k[0], chain.k[-1])
    d = total * lcm
    if d.denominator != 1 or d <= 0:
        raise ChainDataError(
            f"chain sum {total} times lcm {lcm} is not a positive integer"
        )
    return total, int(d)


# ---------------------------------------------------------------------------
# Global identity on a cone.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IdentityTerm:
    kind: str  # 'extreme-min' | 'extreme-max' | 'jump'
    location: Tuple[int, ...]
    a: Optional[int]
    k: Tuple[int, ...]
    value: Fraction


@dataclass(frozen=True)
class EulerReport:
    lhs: Fraction
    rhs: Fraction
    per_chain: Tuple[Tuple[int, int, int], ...]  # (chain index, d, lcm)
    ok: bool
    terms: Tuple[IdentityTerm, ...]

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "per_chain": [
                {"chain": c, "d": d, "lcm": l} for (c, d, l) in self.per_chain
            ],
            "terms": [
                {
                    "kind": t.kind,
                    "location": list(t.location),
                    "a": t.a,
                    "k": list(t.k),
                    "value": str(t.value),
                }
                for t in self.terms
            ],
        }


@dataclass
class IdentityData:
    """Everything verify_global_identity needs, exposed so that negative
    controls can mutate the k-table before evaluation."""

    cone: GoodCone
    profile: IsotropyProfile
    arcs: ArcDecomposition
    ybar: Vec3
    k: List[int]


def _vertex_intersection_weight(
    data: IdentityData, face_lo: int, face_hi: int
) -> int:
    """a = I(rho_1, Sigma) at the vertex between two faces: the component
    count gcd(k, k') times |det_2(Ybar, Y_Sigma)| in Lie(G)_Z coordinates,
    where Y_Sigma generates span(n, n') ∩ Lie(G).  Cross-checked against the
    direct determinant |det3(n, n', Ybar)|."""
    cone, profile, ybar = data.cone, data.profile, data.ybar
    n_lo, n_hi = cone.normal(face_lo), cone.normal(face_hi)
    k_lo = data.k[face_lo % len(cone)]
    k_hi = data.k[face_hi % len(cone)]
    g = k_hi if k_lo == 0 else (k_lo if k_hi == 0 else math.gcd(k_lo, k_hi))
    edge = cross_primitive(n_lo, n_hi)
    y_sigma = cross_primitive(profile.v0, edge)
    ys = lie_g_coords(profile, y_sigma)
    yb = lie_g_coords(profile, ybar)
    det2 = yb[0] * ys[1] - yb[1] * ys[0]
    a = g * abs(det2)
    if a.denominator != 1:
        raise ChainDataError(f"non-integral intersection count {a}")
    a = int(a)
    direct = abs(det3(n_lo, n_hi, ybar))
    if data.k == list(profile.k) and a != direct:
        raise ChainDataError(
            f"intersection count mismatch: gcd*det2={a} vs |det3|={direct}"
        )
    return a


def build_identity_data(
    cone: GoodCone, R: ReebVector, ybar: Optional[Vec3] = None
) -> IdentityData:
    profile = isotropy_profile(cone, R)
    if ybar is None:
        ybar = choose_transverse_circle(cone, R)
    arcs = arc_decomposition(cone, R, ybar)
    return IdentityData(
        cone=cone, profile=profile, arcs=arcs, ybar=ybar, k=list(profile.k)
    )


def _arc_jump_sign(data: IdentityData, arc) -> int:
    """Sign of det3(n_{i+1}, n_i, Ybar) along the arc's interior vertices
    (constant on valid data; 0 when the arc has no interior vertex)."""
    cone, ybar = data.cone, data.ybar
    signs = set()
    for lo, hi in zip(arc, arc[1:]):
        d = det3(cone.normal(hi), cone.normal(lo), ybar)
        signs.add(1 if d > 0 else (-1 if d < 0 else 0))
    if not signs:
        return 0
    if len(signs) > 1 or 0 in signs:
        raise ChainDataError(f"jump determinants change sign along arc {arc}")
    return signs.pop()


def evaluate_identity(data: IdentityData) -> EulerReport:
    """Exact lhs = e(H_max) - e(H_min) from boundary data versus the sum of
    interior critical jumps, with the per-chain integrality report.

    The two boundary arcs play asymmetric roles ("chain 1" has positive
    jump determinants det3(n_{i+1}, n_i, Ybar), "chain 2" negative ones);
    this labeling realizes the orientation convention under which the
    level-set Euler number increases through every critical value, and the
    extreme values are the signed boundary determinants

        e_min = -det3(n^1_bot, n^2_bot, Ybar)/(k k),
        e_max = +det3(n^2_top, n^1_top, Ybar)/(k k).
    """
    cone, arcs, ybar = data.cone, data.arcs, data.ybar
    terms: List[IdentityTerm] = []
    neg, pos = arcs.neg_arc, arcs.pos_arc
    if not neg or not pos:
        raise InvalidCone("degenerate arc decomposition")
    s_neg = _arc_jump_sign(data, neg)
    s_pos = _arc_jump_sign(data, pos)
    if s_neg == s_pos == 0:
        chain1, chain2 = neg, pos  # no jumps anywhere: labeling irrelevant
    elif s_pos >= 0 and s_neg <= 0:
        chain1, chain2 = pos, neg
    elif s_neg >= 0 and s_pos <= 0:
        chain1, chain2 = neg, pos
    else:
        raise ChainDataError("both arcs have positive jump determinants")

    def extreme_value(extreme: Extreme, is_max: bool) -> Fraction:
        if is_max:
            f1, f2 = chain1[-1], chain2[-1]
            val = Fraction(
                det3(cone.normal(f2), cone.normal(f1), ybar),
                data.k[f1] * data.k[f2],
            )
        else:
            f1, f2 = chain1[0], chain2[0]
            val = -Fraction(
                det3(cone.normal(f1), cone.normal(f2), ybar),
                data.k[f1] * data.k[f2],
            )
        a = None
        if extreme.kind == "vertex":
            a = _vertex_intersection_weight(data, extreme.index, extreme.index + 1)
        terms.append(
            IdentityTerm(
                kind="extreme-max" if is_max else "extreme-min",
                location=(extreme.index,),
                a=a,
                k=(data.k[f1], data.k[f2]),
                value=val,
            )
        )
        return val

    e_min = extreme_value(arcs.minimum, False)
    e_max = extreme_value(arcs.maximum, True)
    lhs = e_max - e_min

    rhs = Fraction(0)
    per_chain: List[Tuple[int, int, int]] = []
    ok = True
    for idx, arc in enumerate((chain1, chain2)):
        jumps: List[Fraction] = []
        a_list: List[int] = []
        for lo, hi in zip(arc, arc[1:]):
            a = _vertex_intersection_weight(data, lo, hi)
            k1, k2 = data.k[lo], data.k[hi]
            if k1 < 1 or k2 < 1:
                raise ChainDataError("interior face with k = 0")
            val = critical_jump(a, k1, k2)
            jumps.append(val)
            a_list.append(a)
            terms.append(
                IdentityTerm(
                    kind="jump", location=(lo, hi), a=a, k=(k1, k2), value=val
                )
            )
        rhs += sum(jumps, Fraction(0))
        if jumps:
            try:
                total, d = chain_euler_sum(
                    ChainDescriptor(
                        k=tuple(data.k[f] for f in arc), a=tuple(a_list)
                    )
                )
                per_chain.append((idx, d, math.lcm(data.k[arc[0]], data.k[arc[-1]])))
            except ChainDataError:
                ok = False
                per_chain.append((idx, 0, math.lcm(data.k[arc[0]], data.k[arc[-1]])))
    ok = ok and lhs == rhs and all(d >= 1 for _, d, _ in per_chain)
    return EulerReport(
        lhs=lhs, rhs=rhs, per_chain=tuple(per_chain), ok=ok, terms=tuple(terms)
    )


def verify_global_identity(
    cone: GoodCone, R: ReebVector, ybar: Optional[Vec3] = None
) -> EulerReport:
    """Check e(H_max/rho1) - e(H_min/rho1) = sum of chain jumps exactly,
    reporting every term and the per-chain positive integers d."""
    return evaluate_identity(build_identity_data(cone, R, ybar))
