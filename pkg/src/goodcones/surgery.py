"""Contact blow-up and blow-down as exact cone surgeries: half-space cuts,
normal deletion, range replacement, blow-down normal search (Dirichlet
prime construction with a bounded lattice fallback), blow-down planning,
and the local blow-up parameter solver.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple

from .cone import GoodCone, require_valid, validate
from .exactnum import (
    DegenerateInput,
    QuadNumber,
    SearchExhausted,
    Vec3,
    delzant_witness,
    det3,
    dot,
    is_delzant_pair,
    is_prime,
    is_primitive,
    mat_from_columns,
    mat_inverse_unimodular,
    mat_vec,
    plane_lattice_basis,
    solve_dot_one,
    vec_add,
    vec_scale,
)


class SurgeryRejected(ValueError):
    """Cut/delete/replace does not realize one of the two modeled surgeries."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class PlanningError(RuntimeError):
    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step


@dataclass(frozen=True)
class CutSpec:
    t: Vec3

    def __post_init__(self):
        t = tuple(int(x) for x in self.t)
        if not is_primitive(t):
            raise DegenerateInput(f"cutting normal {t} is not primitive")
        object.__setattr__(self, "t", t)


@dataclass(frozen=True)
class SurgeryResult:
    cone: GoodCone
    kind: str  # 'orbit-blowup' | 'lens-blowup'
    index: int  # cut vertex (orbit) or replaced face (lens), in the old cone
    diagnostics: Tuple[str, ...] = ()


def cone_hash(cone: GoodCone) -> str:
    payload = json.dumps(
        {"normals": [list(n) for n in cone.normals]},
        sort_keys=True,
        separators=(",", ":"),
    )
    return hashlib.sha256(payload.encode()).hexdigest()


def edge_rays_cached(cone: GoodCone):
    from .cone import edge_rays

    return edge_rays(cone)


def cut(cone: GoodCone, spec: CutSpec) -> SurgeryResult:
    """Intersect with the half-space {t . v >= 0} and classify.

    S = edges strictly cut (t . e < 0): a single edge is an orbit blow-up
    (insert t at that vertex, one more closed orbit); the two edges of one
    face and nothing else is a lens blow-up (replace that face's normal by
    t, orbit count unchanged).  Anything else is rejected, as is any result
    failing validation.
    """
    require_valid(cone)
    t = spec.t
    rays = edge_rays_cached(cone)
    k = len(cone)
    negative = [i for i, e in enumerate(rays) if dot(t, e) < 0]
    if not negative:
        raise SurgeryRejected("no edge strictly cut: cut is a no-op")
    if len(negative) == 1:
        v = negative[0]
        normals = list(cone.normals)
        normals.insert(v + 1, t)
        result = GoodCone(tuple(normals))
        report = validate(result)
        if not report.is_good:
            raise SurgeryRejected(
                f"orbit cut at vertex {v} yields a non-good cone", report
            )
        return SurgeryResult(cone=result, kind="orbit-blowup", index=v)
    if len(negative) == 2:
        a, b = negative
        # The two edge rays of face i are i-1 and i.
        if (a + 1) % k == b:
            face = b
        elif (b + 1) % k == a:
            face = a
        else:
            raise SurgeryRejected(
                f"cut edges {negative} are not the two edges of one face"
            )
        normals = list(cone.normals)
        normals[face] = t
        result = GoodCone(tuple(normals))
        report = validate(result)
        if not report.is_good:
            raise SurgeryRejected(
                f"lens cut at face {face} yields a non-good cone", report
            )
        return SurgeryResult(cone=result, kind="lens-blowup", index=face)
    raise SurgeryRejected(
        f"cut removes {len(negative)} edges ({negative}): not a modeled surgery"
    )


def blowdown_delete(cone: GoodCone, i: int) -> GoodCone:
    """Remove normal i (inverse of an orbit blow-up).  Fails with the
    validation report when the remaining normals are not good, in particular
    when (n^{i-1}, n^{i+1}) is not a Delzant pair."""
    require_valid(cone)
    i %= len(cone)
    normals = [n for j, n in enumerate(cone.normals) if j != i]
    result = GoodCone(tuple(normals))
    report = validate(result)
    if not report.is_good:
        raise SurgeryRejected(f"cannot blow down face {i}", report)
    return result


def replace_range(cone: GoodCone, rng: Sequence[int], t: Vec3) -> GoodCone:
    """Replace a contiguous run of normals by the single normal t.  The new
    half-space must contain the old cone (t pairs >= 0 with every old edge
    ray: attachment only enlarges), and the result must validate."""
    require_valid(cone)
    t = tuple(int(x) for x in t)
    if not is_primitive(t):
        raise DegenerateInput(f"replacement normal {t} is not primitive")
    k = len(cone)
    rng = [r % k for r in rng]
    if not rng:
        raise SurgeryRejected("empty replacement range")
    for a, b in zip(rng, rng[1:]):
        if (a + 1) % k != b:
            raise SurgeryRejected(f"range {rng} is not contiguous")
    if len(rng) >= k:
        raise SurgeryRejected("range must be a proper subset of the faces")
    if len(rng) == 1 and cone.normals[rng[0]] == t:
        return cone
    for e in edge_rays_cached(cone):
        if dot(t, e) < 0:
            raise SurgeryRejected(
                f"replacement normal {t} cuts the cone (edge {e}): not an attachment"
            )
    rng_set = set(rng)
    normals = []
    for j in range(k):
        if j == rng[0]:
            normals.append(t)
        elif j not in rng_set:
            normals.append(cone.normals[j])
    result = GoodCone(tuple(normals))
    report = validate(result)
    if not report.is_good:
        raise SurgeryRejected(f"replacement by {t} is not a good cone", report)
    return result


# ---------------------------------------------------------------------------
# Blow-down normal search.
# ---------------------------------------------------------------------------


def _theta_member(n_prev: Vec3, n_i: Vec3, n_next: Vec3, t: Vec3) -> bool:
    return (
        det3(n_prev, n_i, t) > 0
        and det3(n_i, n_next, t) > 0
        and det3(n_prev, n_next, t) < 0
    )


def _primitive_or_none(v: Vec3) -> Optional[Vec3]:
    g = math.gcd(math.gcd(abs(v[0]), abs(v[1])), abs(v[2]))
    if g == 0:
        return None
    return (v[0] // g, v[1] // g, v[2] // g)


def _blowdown_candidates(
    cone: GoodCone,
    i: int,
    constraint: Optional[Tuple[Vec3, int]],
    box: int,
    extra_delzant: Sequence[Vec3],
) -> Iterator[Vec3]:
    """Admissible blow-down normals for face i, prime construction first,
    then a deterministic expanding box (combinations of the local normals,
    or the constraint's affine lattice slice)."""
    k = len(cone)
    i %= k
    n_prev, n_i, n_next = cone.normal(i - 1), cone.normal(i), cone.normal(i + 1)
    pairs = [n_prev, n_next, *extra_delzant]

    def admissible(t: Optional[Vec3]) -> bool:
        if t is None or t == (0, 0, 0) or not is_primitive(t):
            return False
        if not _theta_member(n_prev, n_i, n_next, t):
            return False
        if constraint is not None and dot(constraint[0], t) != constraint[1]:
            return False
        return all(is_delzant_pair(p, t) for p in pairs)

    seen = set()

    def emit(t: Optional[Vec3]):
        if t is not None and t not in seen and admissible(t):
            seen.add(t)
            return True
        return False

    if constraint is None:
        t = _prime_construction(cone, i, admissible)
        if emit(t):
            yield t
        for radius in range(1, box + 1):
            for s1 in range(-radius, radius + 1):
                for s2 in range(-radius, radius + 1):
                    for s3 in range(-radius, radius + 1):
                        if max(abs(s1), abs(s2), abs(s3)) != radius:
                            continue
                        cand = _primitive_or_none(
                            vec_add(
                                vec_add(
                                    vec_scale(s1, n_prev), vec_scale(s2, n_i)
                                ),
                                vec_scale(s3, n_next),
                            )
                        )
                        if emit(cand):
                            yield cand
        return

    v0, value = constraint
    t0 = vec_scale(value, solve_dot_one(v0)) if value != 0 else (0, 0, 0)
    u1, u2 = plane_lattice_basis(v0)
    for radius in range(0, box + 1):
        for a in range(-radius, radius + 1):
            for b in range(-radius, radius + 1):
                if max(abs(a), abs(b)) != radius:
                    continue
                cand = vec_add(t0, vec_add(vec_scale(a, u1), vec_scale(b, u2)))
                if emit(cand):
                    yield cand


def _prime_construction(cone: GoodCone, i: int, admissible) -> Optional[Vec3]:
    """Dirichlet-progression construction: in a chart with n^{i+1} = e3, n^{i+2} = e2,
    set t = s1 x + s2 y + z (x = n^{i-1}, y = n^i, z a Delzant witness of
    (x, y)); pick s-parameters so t's first coordinate is (up to sign) a
    prime avoiding the two obstructing minors, then test the three listed
    shifts."""
    n_next, n_next2 = cone.normal(i + 1), cone.normal(i + 2)
    w = delzant_witness(n_next, n_next2)
    wz = delzant_witness(cone.normal(i - 1), cone.normal(i))
    if w is None or wz is None:
        return None
    base = mat_from_columns(w, n_next2, n_next)
    if det3(w, n_next2, n_next) == -1:
        base = mat_from_columns((-w[0], -w[1], -w[2]), n_next2, n_next)
    u = mat_inverse_unimodular(base)
    x = mat_vec(u, cone.normal(i - 1))
    y = mat_vec(u, cone.normal(i))
    z = mat_vec(u, wz)
    minor12 = y[0] * x[1] - x[0] * y[1]
    minor13 = y[0] * x[2] - x[0] * y[2]
    if minor12 == 0 or minor13 == 0 or (x[0] == 0 and y[0] == 0):
        return None
    # coefficient of s1 in t.(y x e3) is x1 y2 - x2 y1; epsilon makes the
    # s1, s2 drift enter the target cone
    eps = 1 if -minor12 > 0 else -1
    s10 = s20 = None
    for s in range(2, 64):
        for a in range(1, s):
            b = s - a
            if math.gcd(a * x[0] + b * y[0], z[0]) == 1 and a * x[0] + b * y[0] != 0:
                s10, s20 = a, b
                break
        if s10 is not None:
            break
    if s10 is None:
        return None
    step = eps * (s10 * x[0] + s20 * y[0])
    for c in range(1, 4096):
        t1 = c * step + z[0]
        if abs(t1) < 2 or not is_prime(abs(t1)):
            continue
        if minor12 % abs(t1) == 0 or minor13 % abs(t1) == 0:
            continue
        for shift in range(3):
            s1 = c * eps * s10 - shift * y[0]
            s2 = c * eps * s20 + shift * x[0]
            cand_chart = tuple(s1 * x[j] + s2 * y[j] + z[j] for j in range(3))
            cand = mat_vec(base, cand_chart)
            if admissible(cand):
                return cand
    return None


def find_blowdown_normal(
    cone: GoodCone,
    i: int,
    constraint: Optional[Tuple[Vec3, int]] = None,
    box: int = 64,
    extra_delzant: Sequence[Vec3] = (),
) -> Optional[Vec3]:
    """Primitive t in the open cone Theta(i) = {det3(n^{i-1}, n^i, .) > 0,
    det3(n^i, n^{i+1}, .) > 0, det3(n^{i-1}, n^{i+1}, .) < 0}, Delzant-paired
    with n^{i-1} and n^{i+1} (and any extra vectors); optionally restricted
    to the affine slice v0 . t = value.  None when the bounded search is
    exhausted."""
    require_valid(cone)
    for t in _blowdown_candidates(cone, i, constraint, box, extra_delzant):
        return t
    return None


# ---------------------------------------------------------------------------
# Blow-down planning.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PlanStep:
    op: str  # 'replace' | 'delete' | 'cut'
    params: dict
    pre: str
    post: str


@dataclass(frozen=True)
class SurgeryPlan:
    steps: Tuple[PlanStep, ...]

    def to_json(self) -> list:
        return [
            {"op": s.op, **s.params, "pre": s.pre, "post": s.post}
            for s in self.steps
        ]


def apply_plan_step(cone: GoodCone, step: PlanStep) -> GoodCone:
    if cone_hash(cone) != step.pre:
        raise PlanningError(f"pre-hash mismatch at step {step.op}", step)
    if step.op == "delete":
        result = blowdown_delete(cone, step.params["i"])
    elif step.op == "replace":
        result = replace_range(cone, step.params["range"], tuple(step.params["t"]))
    elif step.op == "cut":
        result = cut(cone, CutSpec(tuple(step.params["t"]))).cone
    else:
        raise PlanningError(f"unknown op {step.op}", step)
    if cone_hash(result) != step.post:
        raise PlanningError(f"post-hash mismatch at step {step.op}", step)
    return result


def replay(plan: SurgeryPlan, cone: GoodCone) -> GoodCone:
    for step in plan.steps:
        cone = apply_plan_step(cone, step)
    return cone


def plan_blowdown_sequence(
    cone: GoodCone, keep: Sequence[int], box: int = 64
) -> SurgeryPlan:
    """Reduce the contiguous complement of `keep` to a single face by
    alternating lens blow-downs (replace the run's head by a fresh normal)
    and orbit blow-downs (delete the next face of the run), peeling from the
    low end.  The final cone's normals are keep ∪ {one new closing normal}.
    Every emitted step records pre/post hashes; replay verifies them."""
    require_valid(cone)
    k = len(cone)
    keep_set = {x % k for x in keep}
    removed = [i for i in range(k) if i not in keep_set]
    if not removed:
        return SurgeryPlan(steps=())
    starts = [
        s
        for s in removed
        if all(((s + off) % k) in removed for off in range(len(removed)))
        and ((s - 1) % k) not in removed
    ]
    if not starts:
        raise PlanningError(f"removed faces {removed} are not contiguous")
    run = [cone.normals[(starts[0] + off) % k] for off in range(len(removed))]

    steps: List[PlanStep] = []
    current = cone
    while len(run) >= 2:
        f = current.normals.index(run[0])
        placed = False
        for t in _blowdown_candidates(current, f, None, box, ()):
            try:
                c1 = replace_range(current, [f], t)
            except SurgeryRejected:
                continue
            idx = c1.normals.index(run[1])
            try:
                c2 = blowdown_delete(c1, idx)
            except SurgeryRejected:
                continue
            steps.append(
                PlanStep(
                    op="replace",
                    params={"range": [f], "t": list(t)},
                    pre=cone_hash(current),
                    post=cone_hash(c1),
                )
            )
            steps.append(
                PlanStep(
                    op="delete",
                    params={"i": idx},
                    pre=cone_hash(c1),
                    post=cone_hash(c2),
                )
            )
            current = c2
            run = [t] + run[2:]
            placed = True
            break
        if not placed:
            raise PlanningError(
                f"no blow-down normal reduces the run at face {f} within box {box}"
            )
    return SurgeryPlan(steps=tuple(steps))


# ---------------------------------------------------------------------------
# Local blow-up parameters (cutting a neighborhood of a 1-dim extreme so the
# new extreme is 3-dimensional).
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LocalBlowupSolution:
    l: QuadNumber
    u: int
    v: int
    r1: QuadNumber
    r2: QuadNumber
    a0: int
    a1: int
    a2: int


def solve_local_blowup(
    lam0: QuadNumber,
    lam1: QuadNumber,
    m1: int,
    m2: int,
    radius_sq_inv: Fraction,
    height_bound: int = 4096,
) -> LocalBlowupSolution:
    """Cutting data for a blow-up along a 1-dimensional minimal orbit with
    isotropy weights (m1, m2): radii r_i = l m_i with l = lam1 - (u/v) lam0,
    u/v rational of minimal height with gcd(v, m1) = gcd(v, m2) = 1 and both
    radii above the bound.  The S^1 weights come out as a0 = v, a1 = u m1,
    a2 = u m2, which satisfy gcd(a0, a1) = gcd(a0, a2) = 1 (free action) and
    a1 m2 - a2 m1 = 0 (the new extreme is 3-dimensional)."""
    if lam0.is_zero():
        raise ValueError("lam0 must be nonzero")
    ratio = lam1 / lam0
    if ratio.is_rational():
        raise ValueError("(lam0, lam1) must be rationally independent (rank 2)")
    if m1 == 0 or m2 == 0 or math.gcd(abs(m1), abs(m2)) != 1:
        raise ValueError("weights must be nonzero coprime integers")
    bound = Fraction(radius_sq_inv)
    for h in range(1, height_bound + 1):
        for v in range(1, h + 1):
            if math.gcd(v, abs(m1)) != 1 or math.gcd(v, abs(m2)) != 1:
                continue
            us = range(-h, h + 1) if v == h else (-h, h)
            for u in us:
                if max(abs(u), v) != h:
                    continue
                if math.gcd(abs(u), v) != 1:
                    continue
                l = lam1 - Fraction(u, v) * lam0
                r1 = l * m1
                r2 = l * m2
                if (r1 - bound).sign() > 0 and (r2 - bound).sign() > 0:
                    a0, a1, a2 = v, u * m1, u * m2
                    assert math.gcd(a0, abs(a1)) == 1 and math.gcd(a0, abs(a2)) == 1
                    assert a1 * m2 - a2 * m1 == 0
                    return LocalBlowupSolution(
                        l=l, u=u, v=v, r1=r1, r2=r2, a0=a0, a1=a1, a2=a2
                    )
    raise SearchExhausted(
        f"no admissible u/v below height {height_bound} with radii above {bound}"
    )


def can_blowdown_by_multiplicities(
    k0: int, k1: int, k2: int, l0_is_bmin: bool, l2_is_bmax: bool
) -> bool:
    """Multiplicity criterion for blowing down the middle gradient manifold:
    (k0 = k1 = 1 and the upper neighbor is B_max) or (the lower neighbor is
    B_min and k1 = k2 = 1)."""
    if k0 < 1 or k1 < 1 or k2 < 1:
        raise ValueError("multiplicities must be positive")
    return (k0 == 1 and k1 == 1 and l2_is_bmax) or (
        l0_is_bmin and k1 == 1 and k2 == 1
    )
