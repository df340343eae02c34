"""Tests for the two-simplex construction and its certification."""

import dataclasses
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rncgeom import (
    QQ,
    Configuration,
    PrimeField,
    ProjectivePoint,
    build_instance,
    castelnuovo_check,
    certificate_from_json,
    certificate_to_json,
    curve_contains,
    det,
    dual_configuration,
    evaluate_many,
    first_group,
    fit_rnc,
    hyperplane_intersection,
    instance_from_json,
    instance_to_json,
    lies_on_rnc,
    param_point,
    rank,
    reduce_instance_mod,
    sample_instance,
    second_group,
    verify_instance,
    vertex_polys,
)
from rncgeom.errors import (
    CharacteristicError,
    DegenerateInputError,
    MismatchError,
)
from rncgeom.projective import mat_inverse, mat_vec

from oracles import rand_distinct_fractions


def small_instance(d, seed=0):
    return sample_instance(d, QQ, seed=seed, height=10)


def group_of_label(d, k):
    return first_group(d) if k <= d + 1 else second_group(d)


# ---------------------------------------------------------------------------
# construction


def test_build_instance_shapes():
    params = [param_point(QQ, t) for t in (0, 1, 2, 3, 4, 5)]
    inst = build_instance(2, params, seed=7)
    assert inst.d == 2
    assert inst.field == QQ
    assert inst.seed == 7
    assert len(inst.params) == 6
    assert len(inst.curve_points) == 6
    assert len(inst.planes) == 6
    assert len(inst.vertices.points) == 6
    assert inst.vertices.dim == 2


def test_build_field_inferred_from_params():
    field = PrimeField(11)
    params = [param_point(field, t) for t in (0, 1, 2, 3, 4, 5)]
    inst = build_instance(2, params)
    assert inst.field == field
    assert inst.seed is None


def test_build_rejects_bad_degree():
    params = [param_point(QQ, t) for t in (0, 1, 2, 3)]
    with pytest.raises(ValueError):
        build_instance(1, params)


def test_build_rejects_wrong_count():
    params = [param_point(QQ, t) for t in (0, 1, 2, 3, 4)]
    with pytest.raises(MismatchError):
        build_instance(2, params)


def test_build_rejects_mixed_fields():
    params = [param_point(QQ, t) for t in (0, 1, 2, 3, 4)]
    params.append(param_point(PrimeField(11), 5))
    with pytest.raises(MismatchError):
        build_instance(2, params)


def test_build_rejects_repeated_parameter():
    # the repeat spans the two groups, so no single vertex sees both copies
    params = [param_point(QQ, t) for t in (0, 1, 2, 0, 4, 5)]
    with pytest.raises(DegenerateInputError):
        build_instance(2, params)
    params = [param_point(QQ, t) for t in (7, 1, 2, 3, 7, 5, 6, 8)]
    with pytest.raises(DegenerateInputError):
        build_instance(3, params)


def test_build_rejects_small_characteristic():
    field = PrimeField(3)
    params = [param_point(field, t % 3) for t in range(8)]
    with pytest.raises(CharacteristicError):
        build_instance(3, params)


def test_curve_points_and_planes_match_parameters():
    inst = small_instance(3, seed=4)
    for q, p, h in zip(inst.params, inst.curve_points, inst.planes):
        assert h.contains(p)
        # the osculating hyperplane meets the curve only at its own point
        for other, point in zip(inst.params, inst.curve_points):
            if other != q:
                assert not h.contains(point)


def test_vertex_incidence_pattern():
    for d in (2, 3):
        inst = small_instance(d, seed=1)
        n = 2 * d + 2
        for k in range(1, n + 1):
            vertex = inst.vertices.points[k - 1]
            on = {j for j in range(1, n + 1)
                  if inst.planes[j - 1].contains(vertex)}
            assert on == set(group_of_label(d, k)) - {k}


def test_vertices_equal_hyperplane_intersections():
    inst = small_instance(3, seed=2)
    for k in range(1, 9):
        planes = [inst.planes[j - 1]
                  for j in group_of_label(3, k) if j != k]
        assert hyperplane_intersection(planes) == inst.vertices.points[k - 1]


def test_group_vertices_span():
    for d in (2, 3):
        inst = small_instance(d, seed=3)
        for group in (first_group(d), second_group(d)):
            sub = Configuration(
                field=QQ, dim=d,
                points=tuple(inst.vertices.points[k - 1] for k in group))
            assert rank(sub) == d + 1


def test_hexagon_vertices():
    # six tangent lines of a conic; the three "diagonal" vertices from each
    # triple of tangents meet the opposite tangents nowhere
    params = [param_point(QQ, t) for t in (0, 1, 2, 3, 4, 5)]
    inst = build_instance(2, params)
    for k in range(1, 7):
        vertex = inst.vertices.points[k - 1]
        for j in group_of_label(2, k):
            pairing = inst.planes[j - 1].pairing(vertex)
            assert (pairing == 0) == (j != k)


def test_vertices_match_symbolic_specialization():
    qs = [param_point(QQ, Fraction(t)) for t in (0, 1, 2, 3, 4, 5, 6, 7)]
    inst = build_instance(3, qs)
    values = [(q.a, q.b) for q in qs]
    for k in range(1, 9):
        side = 1 if k <= 4 else 2
        sym = vertex_polys(3, k, side)
        coords = tuple(p.evaluate(values) for p in sym)
        assert ProjectivePoint(coords, QQ) == inst.vertices.points[k - 1]


# ---------------------------------------------------------------------------
# sampling


def test_sample_determinism():
    a = sample_instance(3, QQ, seed=5)
    b = sample_instance(3, QQ, seed=5)
    assert a == b
    c = sample_instance(3, QQ, seed=6)
    assert a != c


def test_sample_distinct_parameters():
    inst = sample_instance(3, QQ, seed=1)
    assert len(set(inst.params)) == 8
    # drawn values are finite, so no parameter lands at infinity
    assert all(q.b != 0 for q in inst.params)


def test_sample_respects_height():
    inst = sample_instance(2, QQ, seed=9, height=4)
    for q in inst.params:
        value = Fraction(q.a)
        assert abs(value.numerator) <= 4 * 4
        assert value.denominator <= 4


def test_sample_rejects_bad_height():
    with pytest.raises(ValueError):
        sample_instance(2, QQ, seed=0, height=0)


def test_sample_small_prime_rejected():
    with pytest.raises(CharacteristicError):
        sample_instance(2, PrimeField(5), seed=0)


def test_sample_prime_field():
    field = PrimeField(7)
    inst = sample_instance(2, field, seed=0)
    assert len(set(inst.params)) == 6
    assert inst.field == field


def test_sample_prime_matches_rational_reduction():
    # the two fields share one integer stream, so a seed diverges only when
    # two rational draws collide mod p and the prime run consumes extra draws
    agreements = 0
    for seed in range(10):
        rational = sample_instance(2, QQ, seed=seed)
        direct = sample_instance(2, PrimeField(101), seed=seed)
        try:
            reduced = reduce_instance_mod(rational, 101)
        except DegenerateInputError:
            continue
        if reduced.params == direct.params:
            agreements += 1
            assert reduced == direct
    assert agreements >= 5


# ---------------------------------------------------------------------------
# verification


def test_verify_sampled_instances():
    for d, expected_total in ((2, 1), (3, 56)):
        for seed in range(3):
            cert = verify_instance(small_instance(d, seed))
            assert cert.verdict
            assert cert.glp_ok
            assert cert.psi_total == expected_total
            assert cert.psi_zero == expected_total
            assert cert.psi_failures == ()
            assert cert.castelnuovo_ok is None
            assert cert.sample is None


def test_verify_with_castelnuovo():
    cert = verify_instance(small_instance(3, seed=0), with_castelnuovo=True)
    assert cert.castelnuovo_ok is True
    assert cert.verdict


def test_castelnuovo_contains_every_vertex():
    # the fitted curve must pass through all 2d+2 vertices, not just the
    # d+3 used to pin it down
    for d in (2, 3):
        inst = small_instance(d, seed=6)
        head = Configuration(field=QQ, dim=d,
                             points=inst.vertices.points[:d + 3])
        model = fit_rnc(head)
        for p in inst.vertices.points:
            assert curve_contains(model, p) is not None
        assert castelnuovo_check(inst)


def test_verify_sampled_equations():
    inst = small_instance(4, seed=0)
    cert = verify_instance(inst, sample=25, sample_seed=3)
    assert cert.sample == 25
    assert cert.psi_total == 25
    assert cert.verdict


def test_verify_records_seed_and_field():
    inst = sample_instance(2, PrimeField(101), seed=12)
    cert = verify_instance(inst)
    assert cert.seed == 12
    assert cert.field == PrimeField(101)
    assert cert.verdict


def test_tampered_vertex_fails():
    inst = small_instance(3, seed=8)
    rng = random.Random(99)
    points = list(inst.vertices.points)
    points[2] = ProjectivePoint(
        tuple(Fraction(rng.randint(-30, 30)) for _ in range(4)), QQ)
    tampered = dataclasses.replace(
        inst, vertices=Configuration(field=QQ, dim=3, points=tuple(points)))
    cert = verify_instance(tampered)
    assert not cert.verdict
    assert cert.psi_failures
    assert cert.psi_zero < cert.psi_total


def test_degenerate_vertices_fail_glp():
    inst = small_instance(2, seed=8)
    points = list(inst.vertices.points)
    points[1] = points[0]
    tampered = dataclasses.replace(
        inst, vertices=Configuration(field=QQ, dim=2, points=tuple(points)))
    cert = verify_instance(tampered)
    assert not cert.glp_ok
    assert not cert.verdict


def test_evaluator_hook():
    inst = small_instance(3, seed=5)
    seen = []

    def evaluator(config, eqs):
        seen.append(len(eqs))
        return evaluate_many(config, eqs)

    cert = verify_instance(inst, evaluator=evaluator)
    assert seen == [56]
    assert cert == verify_instance(inst)


@settings(max_examples=25)
@given(seed=st.integers(min_value=0, max_value=10 ** 6))
def test_verdict_holds_for_random_seeds(seed):
    assert verify_instance(sample_instance(2, QQ, seed=seed)).verdict


# ---------------------------------------------------------------------------
# symmetry


def test_verdict_invariant_under_group_permutations():
    base = [Fraction(t) for t in (-3, -1, 0, 2, 5, 9)]
    orders = [
        base,
        [base[2], base[0], base[1]] + base[3:],       # permute first group
        base[:3] + [base[5], base[3], base[4]],       # permute second group
        base[3:] + base[:3],                          # swap the groups
    ]
    reference = None
    for values in orders:
        inst = build_instance(2, [param_point(QQ, t) for t in values])
        assert verify_instance(inst).verdict
        vertex_set = set(inst.vertices.points)
        if reference is None:
            reference = vertex_set
        assert vertex_set == reference


def test_verdict_invariant_under_projective_transformation(rng):
    inst = small_instance(2, seed=11)
    while True:
        matrix = [[Fraction(rng.randint(-5, 5)) for _ in range(3)]
                  for _ in range(3)]
        if det(matrix, QQ) != 0:
            break
    inverse_t = [list(row) for row in zip(*mat_inverse(matrix, QQ))]
    points = tuple(
        ProjectivePoint(tuple(mat_vec(matrix, p.coords)), QQ)
        for p in inst.vertices.points)
    curve_points = tuple(
        ProjectivePoint(tuple(mat_vec(matrix, p.coords)), QQ)
        for p in inst.curve_points)
    planes = tuple(
        dataclasses.replace(h, coeffs=tuple(mat_vec(inverse_t, h.coeffs)))
        for h in inst.planes)
    moved = dataclasses.replace(
        inst, curve_points=curve_points, planes=planes,
        vertices=Configuration(field=QQ, dim=2, points=points))
    # incidences survive the transformation, and so does the verdict
    for k in range(1, 7):
        vertex = moved.vertices.points[k - 1]
        for j in group_of_label(2, k):
            assert moved.planes[j - 1].contains(vertex) == (j != k)
    cert = verify_instance(moved, with_castelnuovo=True)
    assert cert.verdict
    assert cert.castelnuovo_ok is True


# ---------------------------------------------------------------------------
# dual configuration


def test_dual_configuration_lies_on_curve():
    for d in (2, 3):
        inst = small_instance(d, seed=7)
        dual = dual_configuration(inst)
        assert dual.dim == d
        assert len(dual.points) == 2 * d + 2
        assert lies_on_rnc(dual)


def test_dual_point_at_zero_parameter():
    qs = [param_point(QQ, t) for t in (0, 1, 2, 3, 4, 5, 6, 7)]
    inst = build_instance(3, qs)
    dual = dual_configuration(inst)
    assert dual.points[0] == ProjectivePoint(
        (Fraction(1), Fraction(0), Fraction(0), Fraction(0)), QQ)


def test_dual_points_distinct(rng):
    ts = rand_distinct_fractions(rng, 8)
    inst = build_instance(3, [param_point(QQ, t) for t in ts])
    dual = dual_configuration(inst)
    assert len(set(dual.points)) == 8


# ---------------------------------------------------------------------------
# reduction mod p


def test_reduce_preserves_structure():
    inst = small_instance(2, seed=3)
    reduced = reduce_instance_mod(inst, 101)
    assert reduced.field == PrimeField(101)
    assert reduced.d == 2
    assert reduced.seed == inst.seed
    assert verify_instance(reduced).verdict


def test_reduce_sends_big_denominator_to_infinity():
    # 1/101 is the point [1 : 101], which reduces to [1 : 0] mod 101
    values = [Fraction(1, 101), 1, 2, 3, 4, 5]
    inst = build_instance(2, [param_point(QQ, t) for t in values])
    reduced = reduce_instance_mod(inst, 101)
    field = PrimeField(101)
    assert reduced.params[0] == param_point(field, 1, 0)
    assert verify_instance(reduced).verdict


def test_reduce_rejects_collisions():
    values = [0, 1, 2, 3, 4, 101]
    inst = build_instance(2, [param_point(QQ, t) for t in values])
    with pytest.raises(DegenerateInputError):
        reduce_instance_mod(inst, 101)


def test_reduce_requires_rational_instance():
    inst = sample_instance(2, PrimeField(101), seed=0)
    with pytest.raises(MismatchError):
        reduce_instance_mod(inst, 101)


# ---------------------------------------------------------------------------
# serialization


def test_instance_json_round_trip():
    inst = small_instance(2, seed=4)
    obj = instance_to_json(inst)
    assert obj["schema"] == "vonstaudt-inst/1"
    assert instance_from_json(obj) == inst


def test_instance_json_rebuilds_from_params():
    inst = small_instance(3, seed=4)
    obj = instance_to_json(inst)
    for key in ("points", "planes", "vertices"):
        del obj[key]
    assert instance_from_json(obj) == inst


def test_instance_json_keeps_stored_vertices():
    # a tampered file must load as stored, so negative controls survive
    # a round trip instead of being silently repaired
    inst = small_instance(2, seed=4)
    obj = instance_to_json(inst)
    obj["vertices"]["points"][0] = ["1", "17", "-3"]
    loaded = instance_from_json(obj)
    assert loaded != inst
    assert loaded.vertices.points[0] == ProjectivePoint(
        (Fraction(1), Fraction(17), Fraction(-3)), QQ)
    assert not verify_instance(loaded).verdict


def test_instance_json_prime_round_trip():
    inst = sample_instance(2, PrimeField(101), seed=2)
    assert instance_from_json(instance_to_json(inst)) == inst


def test_certificate_json_round_trip():
    cert = verify_instance(small_instance(2, seed=1), with_castelnuovo=True)
    obj = certificate_to_json(cert)
    assert obj["schema"] == "vonstaudt-cert/1"
    assert certificate_from_json(obj) == cert


def test_certificate_json_keeps_failures():
    inst = small_instance(3, seed=8)
    points = list(inst.vertices.points)
    points[0] = ProjectivePoint(
        (Fraction(3), Fraction(1), Fraction(4), Fraction(1)), QQ)
    tampered = dataclasses.replace(
        inst, vertices=Configuration(field=QQ, dim=3, points=tuple(points)))
    cert = verify_instance(tampered)
    assert cert.psi_failures
    restored = certificate_from_json(certificate_to_json(cert))
    assert restored == cert


def test_certificate_json_rejects_unknown_schema():
    cert = verify_instance(small_instance(2, seed=1))
    obj = certificate_to_json(cert)
    obj["schema"] = "vonstaudt-cert/9"
    with pytest.raises(ValueError):
        certificate_from_json(obj)
