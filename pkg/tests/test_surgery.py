import math
from fractions import Fraction

import pytest

from goodcones.cone import GoodCone, load_cone, validate
from goodcones.construct import example_family
from goodcones.exactnum import (
    content,
    cross,
    det3,
    dot,
    is_delzant_pair,
    mat_vec,
    quad,
)
from goodcones.reeb import isotropy_profile, reeb_from_vectors
from goodcones.surgery import (
    CutSpec,
    PlanningError,
    SurgeryRejected,
    blowdown_delete,
    can_blowdown_by_multiplicities,
    cone_hash,
    cut,
    find_blowdown_normal,
    plan_blowdown_sequence,
    replace_range,
    replay,
    solve_local_blowup,
)

from conftest import (
    SIMPLICIAL,
    lens_cut_normal,
    random_good_cone,
    random_orbit_blowup,
    random_sl3,
)

FAMILY2 = load_cone([(1, 0, 1), (1, 1, 1), (1, 2, 3), (1, 3, 7), (1, 1, 4)])
BLOWN = GoodCone(((1, 0, 0), (0, 1, 0), (-1, 1, 1), (0, 0, 1)))


def test_orbit_cut_and_classification():
    res = cut(SIMPLICIAL, CutSpec((-1, 1, 1)))
    assert res.kind == "orbit-blowup"
    assert res.cone.normals == BLOWN.normals
    assert validate(res.cone).is_good
    assert len(res.cone) == len(SIMPLICIAL) + 1  # one more closed orbit


def test_cut_rejects_noop():
    with pytest.raises(SurgeryRejected):
        cut(SIMPLICIAL, CutSpec((1, 0, 0)))
    # the naive 2-D corner-cut normal e2+e3 pairs to zero with the edge:
    # nothing is strictly cut, so it is a no-op for the homogeneous cone
    with pytest.raises(SurgeryRejected):
        cut(SIMPLICIAL, CutSpec((0, 1, 1)))


def test_blowdown_delete_roundtrip():
    back = blowdown_delete(BLOWN, 2)
    assert back.normals == SIMPLICIAL.normals
    res = cut(back, CutSpec((-1, 1, 1)))
    assert res.cone.normals == BLOWN.normals


def test_blowdown_delete_obstructed_family_face():
    with pytest.raises(SurgeryRejected) as err:
        blowdown_delete(FAMILY2, 1)
    kinds = {k for k, _ in err.value.report.failures}
    assert "delzant-pair" in kinds
    # the minors of (n0, n2) share the factor 2
    assert content(cross((1, 0, 1), (1, 2, 3))) == 2


def test_replace_range_identity_and_double_blowdown():
    assert replace_range(SIMPLICIAL, [1], (0, 1, 0)).normals == SIMPLICIAL.normals
    # two consecutive corner cuts, then one replacement removes both
    step1 = cut(SIMPLICIAL, CutSpec((-1, 1, 1))).cone
    res2 = random_orbit = None
    step2 = None
    for t in ((-2, 1, 3), (-2, 3, 1), (-1, 1, 2), (-1, 2, 1)):
        try:
            r = cut(step1, CutSpec(t))
        except (SurgeryRejected, ValueError):
            continue
        if r.kind == "orbit-blowup":
            step2 = r.cone
            break
    assert step2 is not None
    inserted = [n for n in step2.normals if n not in SIMPLICIAL.normals]
    rng = sorted(step2.normals.index(n) for n in inserted)
    if rng[0] + 1 == rng[1]:
        merged = replace_range(step2, rng, inserted[0])
        assert validate(merged).is_good


def test_replace_range_rejects_cutting_normal():
    with pytest.raises(SurgeryRejected):
        replace_range(BLOWN, [2], (-9, 1, 1))  # this half-space cuts the cone


def test_orbit_roundtrips_random(rnd):
    done = 0
    for _ in range(100):
        cone = random_good_cone(rnd, cuts=rnd.randint(0, 2))
        res = random_orbit_blowup(rnd, cone)
        if res is None:
            continue
        t = res.cone.normals[res.index + 1]
        back = blowdown_delete(res.cone, res.index + 1)
        assert back.normals == cone.normals  # bit-exact
        again = cut(back, CutSpec(t))
        assert again.cone.normals == res.cone.normals
        done += 1
    assert done >= 90


def test_lens_roundtrips_random(rnd):
    done = 0
    tried = 0
    while done < 50 and tried < 400:
        tried += 1
        cone = random_good_cone(rnd, cuts=rnd.randint(0, 2))
        i = rnd.randrange(len(cone))
        t = lens_cut_normal(cone, i)
        if t is None:
            continue
        res = cut(cone, CutSpec(t))
        assert res.kind == "lens-blowup"
        assert len(res.cone) == len(cone)  # orbit count unchanged
        pos = res.cone.normals.index(t)
        back = replace_range(res.cone, [pos], cone.normal(i))
        assert back.normals == cone.normals  # bit-exact
        done += 1
    assert done == 50


def test_cut_equivariance_sl3(rnd):
    for _ in range(25):
        cone = random_good_cone(rnd, cuts=1)
        res = random_orbit_blowup(rnd, cone)
        if res is None:
            continue
        t = res.cone.normals[res.index + 1]
        u = random_sl3(rnd)
        cone_u = GoodCone(tuple(mat_vec(u, n) for n in cone.normals))
        res_u = cut(cone_u, CutSpec(mat_vec(u, t)))
        assert res_u.kind == res.kind
        assert res_u.cone.normals == tuple(mat_vec(u, n) for n in res.cone.normals)


def test_prime_construction_path_fires():
    # the Dirichlet-progression construction itself produces a witness on
    # the family faces (box fallback not needed)
    from goodcones.surgery import _prime_construction, _theta_member
    from goodcones.exactnum import is_primitive

    hits = 0
    for k in (2, 3):
        cone, _ = example_family(k)
        for i in range(1, k + 1):
            n_prev, n_i, n_next = cone.normal(i - 1), cone.normal(i), cone.normal(i + 1)

            def admissible(t, np=n_prev, ni=n_i, nn=n_next):
                if t is None or t == (0, 0, 0) or not is_primitive(t):
                    return False
                if not _theta_member(np, ni, nn, t):
                    return False
                return is_delzant_pair(np, t) and is_delzant_pair(t, nn)

            if _prime_construction(cone, i, admissible) is not None:
                hits += 1
    assert hits >= 4


def test_lens_duality_with_found_normal():
    # replacing face 1 by a found blow-down normal enlarges the cone; cutting
    # the result with the removed normal is a lens blow-up recovering the
    # original family bit-exactly
    t = find_blowdown_normal(FAMILY2, 1)
    assert t is not None
    enlarged = replace_range(FAMILY2, [1], t)
    res = cut(enlarged, CutSpec(FAMILY2.normal(1)))
    assert res.kind == "lens-blowup"
    assert res.cone.normals == FAMILY2.normals


def test_find_blowdown_normal_basic():
    t = find_blowdown_normal(SIMPLICIAL, 1)
    assert t is not None
    n_prev, n_i, n_next = SIMPLICIAL.normal(0), SIMPLICIAL.normal(1), SIMPLICIAL.normal(2)
    assert det3(n_prev, n_i, t) > 0
    assert det3(n_i, n_next, t) > 0
    assert det3(n_prev, n_next, t) < 0
    assert is_delzant_pair(n_prev, t) and is_delzant_pair(t, n_next)
    assert validate(replace_range(SIMPLICIAL, [1], t)).is_good


def test_find_blowdown_normal_constrained_after_reduction():
    # the constrained witness exists once the chain is a single face
    # (on the full family the coefficient lattice forces v0.t >= 2 on Theta)
    cone, reeb = example_family(2)
    prof = isotropy_profile(cone, reeb)
    plan = plan_blowdown_sequence(cone, [0, 3, 4])
    final = replay(plan, cone)
    new = [n for n in final.normals if n not in cone.normals]
    idx = final.normals.index(new[0])
    t = find_blowdown_normal(final, idx, constraint=(prof.v0, 1))
    assert t is not None and dot(prof.v0, t) == 1
    trivialized = replace_range(final, [idx], t)
    assert validate(trivialized).is_good


def test_find_blowdown_normal_exhaustion():
    # the constrained slice search reports emptiness on the full family
    cone, reeb = example_family(2)
    prof = isotropy_profile(cone, reeb)
    assert find_blowdown_normal(cone, 1, constraint=(prof.v0, 1), box=12) is None


def test_plan_empty_when_keep_all():
    plan = plan_blowdown_sequence(FAMILY2, range(5))
    assert plan.steps == ()


def test_plan_family3(rnd):
    cone, reeb = example_family(3)  # normals 0..5, chain faces 1..3
    keep = [0, 4, 5]
    plan = plan_blowdown_sequence(cone, keep)
    final = replay(plan, cone)
    assert validate(final).is_good
    assert len(final) == len(keep) + 1
    kept = {cone.normals[i] for i in keep}
    assert kept.issubset(set(final.normals))
    assert len(plan.steps) == 2 * (3 - 1)
    # replay determinism
    again = replay(plan, cone)
    assert again.normals == final.normals
    assert cone_hash(again) == cone_hash(final)


def test_plan_noncontiguous_keep_fails():
    with pytest.raises(PlanningError):
        plan_blowdown_sequence(FAMILY2, [0, 2])


def test_solve_local_blowup_examples():
    sol = solve_local_blowup(quad(1), quad(0, 1), 1, 1, Fraction(1))
    assert sol.a1 * 1 - sol.a2 * 1 == 0
    assert (sol.r1 - 1).sign() > 0 and (sol.r2 - 1).sign() > 0
    assert math.gcd(sol.a0, abs(sol.a1)) == 1 and math.gcd(sol.a0, abs(sol.a2)) == 1

    sol = solve_local_blowup(quad(1), quad(0, 1), 2, 3, Fraction(1))
    assert math.gcd(sol.v, 6) == 1
    assert sol.a1 * 3 - sol.a2 * 2 == 0


def test_solve_local_blowup_minimal_height_oracle():
    # exhaustive scan over all admissible u/v of height <= found height
    bound = Fraction(1)
    sol = solve_local_blowup(quad(1), quad(0, 1), 1, 1, bound)
    h_found = max(abs(sol.u), sol.v)
    for h in range(1, h_found):
        for v in range(1, h + 1):
            for u in range(-h, h + 1):
                if max(abs(u), v) != h or math.gcd(abs(u), v) != 1:
                    continue
                l = quad(0, 1) - Fraction(u, v) * quad(1)
                assert not ((l - bound).sign() > 0), "smaller admissible height exists"


def test_solve_local_blowup_errors():
    with pytest.raises(ValueError):
        solve_local_blowup(quad(1), quad(2), 1, 1, Fraction(1))  # rank 1
    with pytest.raises(ValueError):
        solve_local_blowup(quad(1), quad(0, 1), 2, 4, Fraction(1))  # not coprime
    from goodcones.exactnum import SearchExhausted

    with pytest.raises(SearchExhausted):
        # opposite-sign weights cannot both clear a positive bound
        solve_local_blowup(quad(1), quad(0, 1), 1, -1, Fraction(1), height_bound=40)


def test_can_blowdown_by_multiplicities_table():
    assert can_blowdown_by_multiplicities(1, 1, 5, False, True) is True
    assert can_blowdown_by_multiplicities(3, 1, 1, True, False) is True
    assert can_blowdown_by_multiplicities(2, 1, 1, False, False) is False
    with pytest.raises(ValueError):
        can_blowdown_by_multiplicities(0, 1, 1, True, True)
