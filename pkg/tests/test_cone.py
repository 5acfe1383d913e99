import math

import pytest

from goodcones.cone import (
    GoodCone,
    InvalidCone,
    can_blowdown_to_orbit,
    edge_ray,
    edge_rays,
    face_invariants,
    gluing_matrix,
    load_cone,
    validate,
)
from goodcones.exactnum import (
    DegenerateInput,
    cross,
    delzant_witness,
    det3,
    dot,
    is_delzant_pair,
    mat_columns,
    mat_from_columns,
    mat_mul,
    primitive_part,
)

from conftest import SIMPLICIAL, random_good_cone, random_sl3

FAMILY2 = load_cone([(1, 0, 1), (1, 1, 1), (1, 2, 3), (1, 3, 7), (1, 1, 4)])
FAMILY3 = load_cone([(1, 0, 1), (1, 1, 1), (1, 2, 3), (1, 3, 7), (1, 4, 13), (1, 1, 5)])


def test_validate_examples():
    assert validate(SIMPLICIAL).is_good
    assert validate(FAMILY2).is_good
    bad = GoodCone(((1, 0, 0), (0, 1, 0), (0, 0, -1)))
    report = validate(bad)
    assert not report.is_good
    assert any(kind == "convexity-det" for kind, _ in report.failures)


def test_validate_needs_three_normals():
    with pytest.raises(DegenerateInput):
        validate(GoodCone(((1, 0, 0), (0, 1, 0))))


def test_load_cone_reorients_with_warning():
    with pytest.warns(UserWarning):
        cone = load_cone([(1, 0, 0), (0, 1, 0), (0, 0, -1)])
    assert validate(cone).is_good  # the reversed list is a genuine cone


def test_constructor_rejects_non_primitive():
    with pytest.raises(DegenerateInput):
        GoodCone(((2, 0, 0), (0, 1, 0), (0, 0, 1)))


def oracle_is_good(cone):
    """LP-free face-lattice oracle: enumerate candidate edge rays from all
    normal pairs, keep those inside every half space, and require the
    incidence structure to be the cyclic one, plus Delzant adjacency."""
    normals = cone.normals
    k = len(normals)
    rays = {}
    for i in range(k):
        for j in range(i + 1, k):
            c = cross(normals[i], normals[j])
            if c == (0, 0, 0):
                return False  # parallel normals never bound a good cone
            for sign in (1, -1):
                r = primitive_part(tuple(sign * x for x in c))
                if all(dot(n, r) >= 0 for n in normals):
                    inc = frozenset(m for m in range(k) if dot(normals[m], r) == 0)
                    rays[r] = inc
    if len(rays) != k:
        return False
    adjacency = set()
    total = (0, 0, 0)
    for r, inc in rays.items():
        if len(inc) != 2:
            return False
        adjacency.add(inc)
        total = tuple(a + b for a, b in zip(total, r))
    expected = {frozenset({i, (i + 1) % k}) for i in range(k)}
    if adjacency != expected:
        return False
    if any(dot(n, total) <= 0 for n in normals):
        return False  # no interior
    if det3(normals[0], normals[1], normals[2]) < 0:
        return False  # cycle traversed against the orientation convention
    return all(is_delzant_pair(normals[i], normals[(i + 1) % k]) for i in range(k))


def test_validate_agrees_with_face_lattice_oracle(rnd):
    corpus = [SIMPLICIAL, FAMILY2, FAMILY3]
    for _ in range(25):
        corpus.append(random_good_cone(rnd, cuts=rnd.randint(0, 2)))
    mutated = []
    for cone in corpus[:15]:
        normals = list(cone.normals)
        which = rnd.randrange(3)
        if which == 0:
            i = rnd.randrange(len(normals))
            normals[i] = tuple(-x for x in normals[i])
        elif which == 1 and len(normals) >= 4:
            normals[1], normals[2] = normals[2], normals[1]
        else:
            normals[rnd.randrange(len(normals))] = (1, rnd.randint(-3, 3), rnd.randint(-3, 3))
        try:
            mutated.append(GoodCone(tuple(normals)))
        except DegenerateInput:
            continue
    for cone in corpus + mutated:
        if len(cone) < 3:
            continue
        assert validate(cone).is_good == oracle_is_good(cone), cone.normals


def test_edge_ray_examples():
    assert edge_ray(SIMPLICIAL, 0) == (0, 0, 1)
    assert edge_ray(FAMILY2, 0) == (-1, 0, 1)
    for cone in (SIMPLICIAL, FAMILY2, FAMILY3):
        k = len(cone)
        for i, ray in enumerate(edge_rays(cone)):
            assert dot(cone.normal(i), ray) == 0
            assert dot(cone.normal(i + 1), ray) == 0
            for j in range(k):
                if j in (i, (i + 1) % k):
                    continue
                assert dot(cone.normal(j), ray) > 0


def test_face_invariants_examples():
    inv = face_invariants(FAMILY2, 1)
    assert (inv.b, inv.f) == (2, 0)
    for i in range(3):
        inv = face_invariants(SIMPLICIAL, i)
        assert (inv.b, inv.f) == (1, 0)
    assert face_invariants(FAMILY3, 2).b == 2


def test_face_invariants_witness_independent(rnd):
    cone = FAMILY2
    for i in range(len(cone)):
        base = face_invariants(cone, i)
        n2, n3 = cone.normal(i), cone.normal(i + 1)
        l2 = delzant_witness(n2, n3)
        for _ in range(100):
            a, b = rnd.randint(-5, 5), rnd.randint(-5, 5)
            other = tuple(l2[j] + a * n2[j] + b * n3[j] for j in range(3))
            assert det3(n2, n3, other) == 1
            f_other = det3(cone.normal(i - 1), n3, other) % base.b
            assert f_other == base.f


def test_face_invariants_structure(rnd):
    for _ in range(10):
        cone = random_good_cone(rnd, cuts=rnd.randint(0, 2))
        for i in range(len(cone)):
            inv = face_invariants(cone, i)
            assert inv.b >= 1 and 0 <= inv.f < max(inv.b, 1)
            assert abs(inv.gluing[0][1]) == inv.b
            assert (inv.gluing[2][1] - inv.f) % inv.b == 0
            heegaard = (
                inv.gluing[0][0] * inv.gluing[1][1]
                - inv.gluing[0][1] * inv.gluing[1][0]
            )
            assert heegaard == -1


def test_can_blowdown_examples():
    assert can_blowdown_to_orbit(FAMILY2, 1) is False
    assert can_blowdown_to_orbit(SIMPLICIAL, 0) is True


def test_gluing_matrix_shape_and_roundtrip(rnd):
    # canonical-witness shape on a split corner: third column is e3 and the
    # defining equation reconstructs the left side exactly
    for cone in (SIMPLICIAL, FAMILY2, FAMILY3):
        for i in range(len(cone)):
            t = gluing_matrix(cone, i)
            assert tuple(row[2] for row in t) == (0, 0, 1)
            det2 = t[0][0] * t[1][1] - t[0][1] * t[1][0]
            assert det2 == -1  # det T = -1: both frames have determinant -1 vs +1
            ni, ni1, ni2 = cone.normal(i), cone.normal(i + 1), cone.normal(i + 2)
            li = delzant_witness(ni, ni1)
            li1 = delzant_witness(ni1, ni2)
            left = mat_from_columns(ni, li, ni1)
            right = mat_mul(left, t)
            assert mat_columns(right) == (ni2, li1, ni1)


def test_gluing_matrix_shared_factor_family3():
    t = gluing_matrix(FAMILY3, 1)
    c1, e1 = t[1][0], t[2][0]
    assert math.gcd(abs(c1), abs(e1)) % 2 == 0
