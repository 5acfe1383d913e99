"""Chain-closing search: given consecutive-convex chain normals, find one
more normal making the cyclic list a good cone.

The search runs on the affine lattice slice {v0 . t = 1}, v0 the primitive
normal of the plane spanned by the first and last chain normals (any point
of the slice is automatically Delzant-paired with both ends), translating
along first+last into the feasible cone.
"""

from __future__ import annotations

import math
from typing import Sequence, Tuple

from .exactnum import (
    SearchExhausted,
    Vec3,
    cross_primitive,
    det3,
    dot,
    plane_lattice_basis,
    solve_dot_one,
    vec_add,
    vec_scale,
)


def close_chain_normals(chain: Sequence[Vec3], max_steps: int = 1 << 20) -> Vec3:
    """Closing normal for the chain (first, ..., last): satisfies
    det3(last, t, m^j) > 0 for all j < last and det3(t, first, m^j) > 0 for
    all j > first, with Delzant pairs (last, t) and (t, first) guaranteed by
    the slice construction."""
    chain = [tuple(int(x) for x in n) for n in chain]
    if len(chain) < 2:
        raise ValueError("need at least two chain normals")
    first, last = chain[0], chain[-1]
    for a, b, c in zip(chain, chain[1:], chain[2:]):
        if det3(a, b, c) <= 0:
            raise ValueError(f"chain triple {a},{b},{c} is not positively convex")
    v0 = cross_primitive(first, last)
    t0 = solve_dot_one(v0)
    u1, u2 = plane_lattice_basis(v0)
    drift = vec_add(first, last)  # in the slice's lattice plane

    def feasible(t: Vec3) -> bool:
        g = math.gcd(math.gcd(abs(t[0]), abs(t[1])), abs(t[2]))
        if g != 1:
            return False
        for j in range(len(chain) - 1):
            if det3(last, t, chain[j]) <= 0:
                return False
        for j in range(1, len(chain)):
            if det3(t, first, chain[j]) <= 0:
                return False
        return True

    s = 0
    while s <= max_steps:
        base = vec_add(t0, vec_scale(s, drift))
        for j1 in range(-3, 4):
            for j2 in range(-3, 4):
                cand = vec_add(base, vec_add(vec_scale(j1, u1), vec_scale(j2, u2)))
                if feasible(cand):
                    return cand
        s = s + 1 if s < 64 else s * 2
    raise SearchExhausted(
        f"no closing normal found within {max_steps} translation steps "
        "(the construction guarantees existence; raise the bound)"
    )
