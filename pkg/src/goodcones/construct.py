"""Constructive families: the explicit quadric-normal example family, the
obstructed family built by the coprimality-breaking induction, chain
closing, and the weighted-homogeneity checker.
"""

from __future__ import annotations

import math
import random
from typing import List, Sequence, Tuple

from .cone import GoodCone, gluing_matrix, load_cone, validate
from .construct_support import close_chain_normals
from .exactnum import Vec3, cross, det3, dot, vec_add, vec_scale
from .reeb import ReebVector, reeb_from_vectors


def example_family(k: int, d: int = 2) -> Tuple[GoodCone, ReebVector]:
    """Normals n^i = (1, i, i^2 - i + 1) for 0 <= i <= k+1 closed by
    n^{k+2} = (1, 1, k+2), with the canonical Reeb n^0 + sqrt(d) n^{k+1}.
    Every interior face is an RP^3 with trivial normal bundle."""
    if k < 2:
        raise ValueError("k must be at least 2")
    normals = [(1, i, i * i - i + 1) for i in range(k + 2)]
    normals.append((1, 1, k + 2))
    cone = GoodCone(tuple(normals))
    reeb = reeb_from_vectors(normals[0], normals[k + 1], d)
    return cone, reeb


def _xgcd(a: int, b: int):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def obstructed_family(
    k: int, seed: int = 0, d: int = 2
) -> Tuple[GoodCone, ReebVector]:
    """Good cone with a length-k chain none of whose lens spaces blows down
    to a closed orbit.  Induction: n^{s+1} = a n^{s-1} + c l^{s-1} + e n^s
    with c = 2, a negative odd and e positive even of seed-derived
    magnitudes grown until the two slope inequalities hold; each step's
    witness l^s keeps det3(n^s, n^{s+1}, l^s) = 1 while gcd(c, e) = 2 blocks
    the blow-down.  The chain is closed by the slice search."""
    if k < 2:
        raise ValueError("k must be at least 2")
    rng = random.Random(seed)
    ns: List[Vec3] = [(1, 0, 1), (1, 1, 1)]
    ls: List[Vec3] = [(0, 0, 1)]
    for s in range(1, k + 1):
        n_prev, n_cur, l_prev = ns[s - 1], ns[s], ls[s - 1]
        c = 2
        a = -(1 + 2 * rng.randint(0, 3))
        e = 2 * (1 + rng.randint(0, 3))
        # (ii'): a (n^s x n^{s-1})_3 + c (n^s x l^{s-1})_3 > 0; the first
        # cross-term is negative by the induction, so growing |a| settles it.
        while a * cross(n_cur, n_prev)[2] + c * cross(n_cur, l_prev)[2] <= 0:
            a = 2 * a - 1
        # (i'): a (n^0 x n^{s-1})_3 + c (n^0 x l^{s-1})_3 + e (n^0 x n^s)_3 > 0
        head = cross(ns[0], n_prev)[2] * a + c * cross(ns[0], l_prev)[2]
        coeff = cross(ns[0], n_cur)[2]
        while head + e * coeff <= 0:
            e *= 2
        n_new = vec_add(vec_add(vec_scale(a, n_prev), vec_scale(c, l_prev)), vec_scale(e, n_cur))
        # witness: det T = ad - bc = -1 with gcd(a, 2) = 1
        g, x, y = _xgcd(a, c)
        assert g == 1
        dd, b = -x, y
        assert a * dd - b * c == -1
        l_new = vec_add(vec_add(vec_scale(b, n_prev), vec_scale(dd, l_prev)), vec_scale(0, n_cur))
        assert det3(n_cur, n_new, l_new) == 1, (n_cur, n_new, l_new)
        ns.append(n_new)
        ls.append(l_new)
    closing = close_chain_normals(ns)
    cone = GoodCone(tuple(ns) + (closing,))
    report = validate(cone)
    if not report.is_good:
        raise RuntimeError(f"obstructed family failed validation: {report.failures[:4]}")
    reeb = reeb_from_vectors(ns[0], ns[k + 1], d)
    return cone, reeb


def close_chain(chain_normals: Sequence[Vec3]) -> Vec3:
    """Closing normal making the chain a good cone (validated here)."""
    closing = close_chain_normals(chain_normals)
    cone = GoodCone(tuple(tuple(int(x) for x in n) for n in chain_normals) + (closing,))
    report = validate(cone)
    if not report.is_good:
        raise RuntimeError(
            f"closing normal {closing} does not validate: {report.failures[:4]}"
        )
    return closing


def verify_obstructed_conditions(cone: GoodCone, k: int) -> bool:
    """Independent re-check of the construction's six conditions on a
    (k+3)-normal cone: cross-product and determinant positivity, Delzant
    witnesses for all adjacent pairs (via validate), and the shared factor
    of the transition-matrix entries c_i, e_i for every interior step."""
    ns = cone.normals
    if len(ns) != k + 3:
        return False
    for i in range(1, k + 2):
        if cross(ns[0], ns[i])[2] <= 0:
            return False
    for i in range(0, k + 1):
        if cross(ns[i], ns[i + 1])[2] <= 0:
            return False
    for i in range(0, k):
        if det3(ns[i], ns[i + 1], ns[i + 2]) <= 0:
            return False
    for j in range(0, k + 1):
        if j not in (k + 1, k + 2) and det3(ns[k + 1], ns[k + 2], ns[j]) <= 0:
            return False
    for j in range(1, k + 2):
        if det3(ns[k + 2], ns[0], ns[j]) <= 0:
            return False
    if not validate(cone).is_good:
        return False
    for i in range(0, k):
        t = gluing_matrix(cone, i)
        c_i, e_i = t[1][0], t[2][0]
        if math.gcd(abs(c_i), abs(e_i)) == 1:
            return False
    return True


def weighted_homogeneous_check(
    exponents: Sequence[Sequence[int]], w: Sequence[int], degree: int
) -> bool:
    """True iff every monomial exponent vector a satisfies w . a = degree
    (the polynomial scales as lambda^degree under the weight-w action)."""
    if not exponents:
        raise ValueError("empty exponent list")
    return all(
        sum(int(wi) * int(ai) for wi, ai in zip(w, a)) == degree for a in exponents
    )
