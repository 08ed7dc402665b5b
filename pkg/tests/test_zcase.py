from random import Random

import pytest

from parh.exel import PartialGroupAlgebra, SElement
from parh.groups import INTEGERS, build_named_group
from parh.linalg import GF, QQ, SizeCapError, in_span, subspace_equal
from parh.zcase import (
    CancellationResult,
    VkSpan,
    WindowSpace,
    WindowEscapeError,
    b_window_basis,
    cancellation_decompose,
    cancellation_reconstructs,
    combine_idempotents,
    f_element,
    ig_decompose,
    k_tensor_ig_vanishes,
    orthogonal_parts,
    quotient_check,
    random_b_idempotent,
    random_cancellation_instance,
    random_ig_element,
    verify_f_relations,
    window_basis,
)

ZALG = PartialGroupAlgebra(INTEGERS, QQ)


def _f(i, field=QQ):
    return f_element(i, field)


# ---------------------------------------------------------------------------
# Generators and relations.


def test_f_zero_vanishes():
    assert _f(0).is_zero()


def test_f_one_canonical_form():
    pair = SElement(INTEGERS, (0, 1), 1)
    flat = SElement(INTEGERS, (0, 1), 0)
    assert _f(1).coeffs == {pair: QQ.one, flat: QQ.of(-1)}


def test_f_accepts_group_elements():
    c3 = build_named_group("C3")
    g = c3.elements[1]
    alg = PartialGroupAlgebra(c3, QQ)
    assert f_element(g) == alg.bracket(1) - alg.idem(1)
    with pytest.raises(TypeError):
        f_element("g")


def test_f_augmentation_zero():
    for i in range(-5, 6):
        assert _f(i).augmentation().is_zero()


def test_basic_relation_spot_value():
    # e_1 f_2 has the two-term canonical form with member set {0, 1, 2}.
    both = SElement(INTEGERS, (0, 1, 2), 2)
    flat = SElement(INTEGERS, (0, 1, 2), 0)
    lhs = ZALG.idem(1) * _f(2)
    assert lhs.coeffs == {both: QQ.one, flat: QQ.of(-1)}
    assert lhs == ZALG.idem(2) * _f(1) + ZALG.bracket(1) * _f(1)


def test_relation_degenerates_at_zero():
    for j in (-2, 1, 3):
        assert ZALG.idem(0) * _f(j) == _f(j)
        assert ZALG.bracket(0) * _f(j) == _f(j)


def test_verify_f_relations_bound_five():
    report = verify_f_relations(5)
    assert report["ok"]
    assert report["failures"] == []
    assert report["checked"] == 22 + 2 * 121


def test_verify_f_relations_modular():
    assert verify_f_relations(3, GF(5))["ok"]


def test_verify_f_relations_rejects_bad_bound():
    with pytest.raises(ValueError):
        verify_f_relations(0)


# ---------------------------------------------------------------------------
# Idempotent combination.


def test_combine_single_is_identity_map():
    e = ZALG.idem(2)
    assert combine_idempotents([e]) == e


def test_combine_absorbs_duplicates():
    e = ZALG.idem(1)
    assert combine_idempotents([e, e]) == e


def test_combine_two_formula_and_span():
    e1, e2 = ZALG.idem(1), ZALG.idem(2)
    e = combine_idempotents([e1, e2])
    assert e == e1 + (ZALG.one() - e1) * e2
    assert e * e == e
    space = WindowSpace(QQ, 3)
    mults = [ZALG.monomial(s) for s in b_window_basis(3)]
    joint = [space.column(b * e) for b in mults]
    split = [space.column(b * e1) for b in mults]
    split += [space.column(b * e2) for b in mults]
    assert subspace_equal(joint, split, QQ)


def test_orthogonal_parts_mutually_annihilate():
    rng = Random(3)
    for group in (INTEGERS, build_named_group("C2xC2")):
        es = [random_b_idempotent(rng, group) for _ in range(3)]
        parts = orthogonal_parts(es)
        for i, p in enumerate(parts):
            assert p * p == p
            for q in parts[i + 1:]:
                assert (p * q).is_zero()
        assert combine_idempotents(es) == sum(parts[1:], parts[0])


def test_combine_rejects_non_idempotent():
    with pytest.raises(ValueError):
        combine_idempotents([ZALG.bracket(1)])
    with pytest.raises(ValueError):
        combine_idempotents([])


# ---------------------------------------------------------------------------
# Skew-symmetric cancellation.


def test_cancellation_base_case_matches_derivation():
    c2 = build_named_group("C2")
    alg = PartialGroupAlgebra(c2, QQ)
    ea = alg.idem(1)
    es = [ea, ea]
    rs = [alg.one(), -alg.one()]
    result = cancellation_decompose(es, rs)
    assert result.matrix[0][1] == alg.one()
    assert result.matrix[1][0] == -alg.one()
    assert result.matrix[0][0].is_zero() and result.matrix[1][1].is_zero()
    assert result.skew_symmetric()
    assert cancellation_reconstructs(es, rs, result)
    # reconstruction of the first slot: 1 = 1 * e_a + b_1 (1 - e_a)
    assert result.matrix[0][1] * ea + result.b[0] * (alg.one() - ea) == alg.one()


def test_cancellation_zero_coefficients():
    es = [ZALG.idem(1), ZALG.idem(2), ZALG.idem(1) * ZALG.idem(3)]
    rs = [ZALG.zero()] * 3
    result = cancellation_decompose(es, rs)
    assert all(x.is_zero() for row in result.matrix for x in row)
    assert all(x.is_zero() for x in result.b)


def test_cancellation_empty():
    assert cancellation_decompose([], []) == CancellationResult((), ())


def test_cancellation_rejects_bad_input():
    e = ZALG.idem(1)
    with pytest.raises(ValueError):
        cancellation_decompose([e], [ZALG.one(), ZALG.one()])
    with pytest.raises(ValueError):
        cancellation_decompose([ZALG.bracket(1)], [ZALG.zero()])
    with pytest.raises(ValueError):
        cancellation_decompose([e], [ZALG.one()])  # 1 * e_1 != 0


@pytest.mark.parametrize("ring", ["Z", "C2", "C3"])
def test_cancellation_random_instances(ring):
    group = INTEGERS if ring == "Z" else build_named_group(ring)
    rng = Random(11)
    for trial in range(15):
        k = rng.randint(1, 5)
        es, rs = random_cancellation_instance(rng, k, group)
        result = cancellation_decompose(es, rs)
        assert result.skew_symmetric(), (ring, trial)
        assert cancellation_reconstructs(es, rs, result), (ring, trial)


def test_cancellation_sampler_is_deterministic():
    a = random_cancellation_instance(Random(7), 3)
    b = random_cancellation_instance(Random(7), 3)
    assert a == b


# ---------------------------------------------------------------------------
# Windows.


def test_window_basis_counts():
    assert len(window_basis(0)) == 1
    assert len(window_basis(1)) == 8
    assert len(window_basis(2)) == 48


def test_window_basis_canonical():
    for s in window_basis(2):
        assert 0 in s.members and s.g in s.members
        assert all(abs(m) <= 2 for m in s.members)


def test_window_star_lands_in_doubled_window():
    # The window is not star-closed (({-1,0,1}, 1) stars out of bound 1),
    # but the star of a window element always fits in twice the bound and
    # starring twice returns the element.
    ws = set(window_basis(2))
    assert any(s.star() not in ws for s in ws)
    for s in ws:
        assert all(abs(m) <= 4 for m in s.star().members)
        assert s.star().star() == s


def test_window_basis_cap():
    with pytest.raises(SizeCapError):
        window_basis(12)


def test_window_space_escape_is_loud():
    space = WindowSpace(QQ, 1)
    with pytest.raises(WindowEscapeError):
        space.column(ZALG.idem(5))
    col = space.column(_f(1))
    assert space.element(col) == _f(1)


# ---------------------------------------------------------------------------
# Level spans.


def test_vk_span_contains_both_signs():
    span = VkSpan(1, 6)
    assert span.contains(_f(1))
    assert span.contains(_f(-1))
    assert span.contains(ZALG.zero())
    assert not span.contains(_f(2))


def test_vk_span_contains_action_products():
    span = VkSpan(1, 4)
    x = ZALG.idem(1) * _f(2) - ZALG.idem(2) * _f(1)
    assert span.contains(x)
    assert span.contains(ZALG.bracket(1) * _f(1))


def test_vk_span_membership_outside_window_is_loud():
    span = VkSpan(1, 4)
    with pytest.raises(WindowEscapeError):
        span.contains(_f(9))


def test_vk_span_validation():
    with pytest.raises(ValueError):
        VkSpan(0, 6)
    with pytest.raises(ValueError):
        VkSpan(3, 3)


# ---------------------------------------------------------------------------
# The quotient description.


def test_quotient_check_level_one():
    report = quotient_check(1, 6)
    assert report["ok"]
    assert report["s2_in_s1"] and report["s1_in_s2"]
    assert report["violations"] == []
    assert report["domain_bound"] == 2
    assert report["s1_dim"] == report["s2_dim"] == 28


def test_quotient_check_level_two():
    report = quotient_check(2, 8)
    assert report["s2_in_s1"] and report["s1_in_s2"]
    assert report["violations"] == []


def test_quotient_spot_memberships():
    span = VkSpan(1, 6)
    assert span.contains(ZALG.idem(1) * _f(2))
    assert ((ZALG.one() - ZALG.idem(2)) * _f(2)).is_zero()
    # the generator [1] is in neither subspace
    assert not span.contains(ZALG.bracket(1) * _f(2))
    domain = window_basis(2)
    space = WindowSpace(QQ, 2)
    gens = []
    zs = [ZALG.one() - ZALG.idem(2), ZALG.idem(1)]
    for r in domain:
        for z in zs:
            y = ZALG.monomial(r) * z
            if not y.is_zero() and all(abs(m) <= 2 for s in y.coeffs for m in s.members):
                gens.append(space.column(y))
    assert in_span(space.column(ZALG.bracket(1)), gens, QQ) is None


def test_quotient_check_modular():
    assert quotient_check(1, 6, GF(5))["ok"]


def test_quotient_check_validation():
    with pytest.raises(ValueError):
        quotient_check(0, 10)
    with pytest.raises(ValueError):
        quotient_check(1, 5)


# ---------------------------------------------------------------------------
# Decomposition over the f generators.


def test_ig_decompose_single_generator():
    out = ig_decompose(_f(1))
    assert set(out) == {1}
    assert out[1] == ZALG.idem(1)


def test_ig_decompose_length_two_product():
    x = ZALG.bracket(1) * ZALG.bracket(2) - ZALG.idem(1) * ZALG.idem(3)
    out = ig_decompose(x)
    assert set(out) == {3}
    assert out[3] == ZALG.idem(1) * ZALG.idem(3)


def test_ig_decompose_zero_and_errors():
    assert ig_decompose(ZALG.zero()) == {}
    with pytest.raises(ValueError):
        ig_decompose(ZALG.idem(1))


def test_ig_decompose_finite_group():
    c3 = build_named_group("C3")
    alg = PartialGroupAlgebra(c3, GF(2))
    x = alg.bracket(1) * alg.bracket(1) - alg.idem(1) * alg.idem(2)
    out = ig_decompose(x)
    total = alg.zero()
    for g, b in out.items():
        total = total + b * f_element(c3.element(g), GF(2))
    assert total == x


def test_ig_decompose_roundtrip_seeded():
    rng = Random(5)
    for _ in range(30):
        x = random_ig_element(rng)
        out = ig_decompose(x)
        total = ZALG.zero()
        for g, b in out.items():
            assert b.is_in_b()
            assert b * ZALG.idem(g) == b
            total = total + b * _f(g)
        assert total == x


def test_k_tensor_ig_vanishes():
    report = k_tensor_ig_vanishes(5)
    assert report["ok"] and report["checked"] == 10
    with pytest.raises(ValueError):
        k_tensor_ig_vanishes(0)
