"""Good cones in Z^3: validity, face adjacency, lens-space face invariants.

A cone is stored as a cyclically ordered tuple of primitive inward normals
(n^0, ..., n^k), oriented so det3(n^0, n^1, n^2) > 0.  Goodness means every
triple det3(n^i, n^{i+1}, n^j) is positive (cyclic convexity / correct face
order) and every adjacent pair extends to a Z-basis of Z^3.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import List, Tuple

from .exactnum import (
    DegenerateInput,
    Mat3,
    Vec3,
    cross_primitive,
    delzant_witness,
    det3,
    is_delzant_pair,
    is_primitive,
    mat_from_columns,
    mat_inverse_unimodular,
    mat_mul,
)


class InvalidCone(ValueError):
    """Raised when an operation requires a good cone and validation fails."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class ValidityReport:
    is_good: bool
    failures: Tuple[Tuple[str, Tuple[int, ...]], ...]


@dataclass(frozen=True)
class FaceInvariants:
    """Lens-space data of a face: order b of pi_1, Euler class f of the
    normal bundle as the canonical residue in [0, b), and the full gluing
    matrix between the two equivariant Heegaard trivializations."""

    b: int
    f: int
    gluing: Mat3


@dataclass(frozen=True)
class GoodCone:
    normals: Tuple[Vec3, ...]

    def __post_init__(self):
        normals = tuple(tuple(int(x) for x in n) for n in self.normals)
        for n in normals:
            if not is_primitive(n):
                raise DegenerateInput(f"normal {n} is not primitive")
        object.__setattr__(self, "normals", normals)

    def __len__(self):
        return len(self.normals)

    def normal(self, i: int) -> Vec3:
        return self.normals[i % len(self.normals)]

    def replace_normals(self, normals) -> "GoodCone":
        return GoodCone(tuple(normals))


def load_cone(normals) -> GoodCone:
    """Build a GoodCone from raw normal lists, enforcing primitivity and the
    orientation convention det3(n^0, n^1, n^2) > 0 (reversing with a warning
    when the input is oriented the other way)."""
    normals = [tuple(int(x) for x in n) for n in normals]
    if len(normals) < 3:
        raise DegenerateInput("a cone needs at least 3 normals")
    if det3(normals[0], normals[1], normals[2]) < 0:
        warnings.warn("normals reversed to match the orientation convention")
        normals = normals[::-1]
    return GoodCone(tuple(normals))


def validate(cone: GoodCone) -> ValidityReport:
    """Goodness check: positive convexity determinants for all cyclic triples
    (n^i, n^{i+1}, n^j) and a Delzant witness for every adjacent pair.

    Zero determinants are reported as face-order failures (improper face
    structure), negative ones as convexity failures.
    """
    k = len(cone)
    if k < 3:
        raise DegenerateInput("a cone needs at least 3 normals")
    failures: List[Tuple[str, Tuple[int, ...]]] = []
    for i in range(k):
        ni, ni1 = cone.normal(i), cone.normal(i + 1)
        for j in range(k):
            if j == i or j == (i + 1) % k:
                continue
            d = det3(ni, ni1, cone.normal(j))
            if d == 0:
                failures.append(("face-order", (i, j)))
            elif d < 0:
                failures.append(("convexity-det", (i, j)))
    for i in range(k):
        if not is_delzant_pair(cone.normal(i), cone.normal(i + 1)):
            failures.append(("delzant-pair", (i,)))
    return ValidityReport(is_good=not failures, failures=tuple(failures))


def require_valid(cone: GoodCone) -> None:
    report = validate(cone)
    if not report.is_good:
        raise InvalidCone(f"cone is not good: {report.failures[:4]}", report)


def edge_ray(cone: GoodCone, i: int) -> Vec3:
    """Primitive inward edge ray between faces i and i+1.

    For a good cone the cross product of an adjacent pair is itself
    primitive (the pair is Delzant), and convexity makes it pair
    positively with every other normal.
    """
    ray = cross_primitive(cone.normal(i), cone.normal(i + 1))
    return ray


def edge_rays(cone: GoodCone) -> Tuple[Vec3, ...]:
    return tuple(edge_ray(cone, i) for i in range(len(cone)))


def face_invariants(cone: GoodCone, i: int) -> FaceInvariants:
    """Invariants of the lens space over face i, from the adjacent triple
    (n^{i-1}, n^i, n^{i+1}) in the roles (n1, n2, n3):

        b = det3(n1, n2, n3)
        f = det3(n1, n3, l2) mod b,   det3(n3, l2, n2) = 1
        gluing = (l2, n3, n2)^{-1} (l1, n1, n2),  det3(l1, n1, n2) = 1

    b equals |gluing[0][1]| and f ≡ gluing[2][1] (mod b); the upper-left 2x2
    block of the gluing matrix is a Heegaard attaching map of determinant -1.
    """
    n1, n2, n3 = cone.normal(i - 1), cone.normal(i), cone.normal(i + 1)
    b = det3(n1, n2, n3)
    if b <= 0:
        raise InvalidCone(f"faces {i-1},{i},{i+1} are not a convex triple")
    l2 = delzant_witness(n2, n3)
    l1 = delzant_witness(n1, n2)
    if l2 is None or l1 is None:
        raise InvalidCone(f"adjacent pair at face {i} has no Delzant witness")
    # det3(n2, n3, l2) = 1 gives det3(n3, l2, n2) = 1 by cyclic permutation,
    # and det3(n1, n2, l1) = 1 gives det3(l1, n1, n2) = 1.
    f = det3(n1, n3, l2) % b
    left = mat_from_columns(l2, n3, n2)
    right = mat_from_columns(l1, n1, n2)
    gluing = mat_mul(mat_inverse_unimodular(left), right)
    assert abs(gluing[0][1]) == b and (gluing[2][1] - f) % b == 0
    heegaard = gluing[0][0] * gluing[1][1] - gluing[0][1] * gluing[1][0]
    assert heegaard == -1
    return FaceInvariants(b=b, f=f, gluing=gluing)


def can_blowdown_to_orbit(cone: GoodCone, i: int) -> bool:
    """True iff the face-i lens space can be blown down to a closed orbit:
    the normal Euler class generates H^2, i.e. gcd(b, f) = 1 (gcd(b,0)=b)."""
    inv = face_invariants(cone, i)
    return math.gcd(inv.b, inv.f) == 1


def gluing_matrix(cone: GoodCone, i: int) -> Mat3:
    """Transition matrix T of the consecutive-witness relation

        (n^{i+2}, l^{i+1}, n^{i+1}) = (n^i, l^i, n^{i+1}) T

    with l^j the canonical witness of the pair (n^j, n^{j+1}).  T is integer
    with third column (0, 0, 1); its (2,1) and (3,1) entries are the c_i, e_i
    whose common factor obstructs deleting face i+1 (gcd(c_i, e_i) is
    independent of the witness choices)."""
    ni, ni1, ni2 = cone.normal(i), cone.normal(i + 1), cone.normal(i + 2)
    li = delzant_witness(ni, ni1)
    li1 = delzant_witness(ni1, ni2)
    if li is None or li1 is None:
        raise InvalidCone(f"faces {i}, {i+1}, {i+2} are not Delzant-adjacent")
    left = mat_from_columns(ni, li, ni1)
    right = mat_from_columns(ni2, li1, ni1)
    t = mat_mul(mat_inverse_unimodular(left), right)
    assert tuple(row[2] for row in t) == (0, 0, 1)
    return t
