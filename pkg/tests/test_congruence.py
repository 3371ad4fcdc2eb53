import pytest

from chevlab.congruence import (
    CertificateError,
    check_normal,
    cross_factor_commute_check,
    full_subgroup,
    ideal_certificate,
    kernel_subgroup,
    level_set,
    materialized_subgroup,
    omit_root_generation_check,
    weyl_level_equality,
)
from chevlab.groups import commutator, elementary
from chevlab.reps import make_representation
from chevlab.rings import ZmodRing, ideal_from_generators, parse_ring_spec
from chevlab.roots import build_root_system


A2 = build_root_system("A2")
B2 = build_root_system("B2")
C2 = build_root_system("C2")
G2 = build_root_system("G2")


def kernel_mod(rs, tag, n, gens):
    rep = make_representation(rs, tag)
    ring = ZmodRing(n)
    ideal = ideal_from_generators(ring, gens)
    return rep, ring, kernel_subgroup(rep, ring, ideal)


def test_level_set_kernel_sl3_z4():
    rep, ring, n = kernel_mod(A2, "defining-A", 4, [2])
    for alpha in A2.roots:
        ls = level_set(n, alpha)
        assert ls.values == frozenset({0, 2})
        assert ls.is_ideal


def test_level_set_full_group():
    rep = make_representation(A2, "defining-A")
    ring = ZmodRing(4)
    n = full_subgroup(rep, ring)
    assert level_set(n, (1, -1, 0)).values == frozenset(ring.elements())


def test_level_set_trivial_subgroup():
    rep = make_representation(A2, "defining-A")
    ring = ZmodRing(2)
    triv = materialized_subgroup(rep, ring, [], cap=10)
    assert level_set(triv, (1, -1, 0)).values == frozenset({0})


def test_weyl_level_equality():
    rep, ring, n = kernel_mod(A2, "defining-A", 4, [2])
    assert weyl_level_equality(n, (1, -1, 0), (0, 1, -1))
    assert weyl_level_equality(n, (1, -1, 0), (1, -1, 0))
    rep, ring, n = kernel_mod(C2, "defining-C", 9, [3])
    assert weyl_level_equality(n, (2, 0), (0, 2))
    with pytest.raises(CertificateError):
        weyl_level_equality(n, (2, 0), (1, 1))


def test_check_normal_kernel():
    _, _, n = kernel_mod(A2, "defining-A", 4, [2])
    assert check_normal(n)


def test_certificate_sl3_z4():
    rep, ring, n = kernel_mod(A2, "defining-A", 4, [2])
    trace = ideal_certificate(n)
    assert trace.ideal.element_set() == frozenset({0, 2})
    assert "a2-multiplication" in trace.step_kinds()
    assert len(trace.per_root) == 6
    assert all(count == 2 for _, count in trace.per_root)


def test_certificate_full_group():
    rep = make_representation(A2, "defining-A")
    ring = ZmodRing(4)
    trace = ideal_certificate(full_subgroup(rep, ring))
    assert trace.ideal.is_unit_ideal()


def test_certificate_sp4_z9():
    rep, ring, n = kernel_mod(C2, "defining-C", 9, [3])
    trace = ideal_certificate(n)
    assert trace.ideal.element_set() == frozenset({0, 3, 6})
    kinds = trace.step_kinds()
    assert "quarter-parameter" in kinds
    assert "difference-of-commutators" in kinds
    assert "long-coverage" in kinds


def test_certificate_b2_z9():
    rep, ring, n = kernel_mod(B2, "defining-B", 9, [3])
    trace = ideal_certificate(n)
    assert trace.ideal.element_set() == frozenset({0, 3, 6})


def test_certificate_refuses_sp4_z4():
    rep, ring, n = kernel_mod(C2, "defining-C", 4, [2])
    with pytest.raises(CertificateError, match="2 is not a unit"):
        ideal_certificate(n)


def test_refusal_is_about_division_only():
    # the doubling identity itself still holds over Z/4 as a matrix identity
    from chevlab.chevalley import build_basis

    rep = make_representation(B2, "defining-B")
    ring = ZmodRing(4)
    table = build_basis(B2)
    coeffs = table.commutator_coefficients((1, 0), (0, 1))
    c = coeffs[(1, 1)]
    for r in ring.elements():
        for s in ring.elements():
            lhs = commutator(
                elementary(rep, ring, (1, 0), r),
                elementary(rep, ring, (0, 1), s),
            )
            assert lhs == elementary(rep, ring, (1, 1), (c * r * s) % 4)


def test_certificate_b3_no_unit_requirement():
    b3 = build_root_system("B3")
    rep = make_representation(b3, "defining-B")
    ring = ZmodRing(4)  # 2 is not a unit; B3 must still work
    ideal = ideal_from_generators(ring, [2])
    n = kernel_subgroup(rep, ring, ideal)
    trace = ideal_certificate(n)
    assert trace.ideal.element_set() == frozenset({0, 2})
    assert "corrected-mixed-identity" in trace.step_kinds()


def test_certificate_c3_requires_unit():
    c3 = build_root_system("C3")
    rep = make_representation(c3, "defining-C")
    ring = ZmodRing(4)
    n = kernel_subgroup(rep, ring, ideal_from_generators(ring, [2]))
    with pytest.raises(CertificateError, match="2 is not a unit"):
        ideal_certificate(n)


def test_certificate_c3_z9():
    c3 = build_root_system("C3")
    rep = make_representation(c3, "defining-C")
    ring = ZmodRing(9)
    n = kernel_subgroup(rep, ring, ideal_from_generators(ring, [3]))
    trace = ideal_certificate(n)
    assert trace.ideal.element_set() == frozenset({0, 3, 6})


def test_certificate_g2_gf3():
    rep = make_representation(G2, "adjoint")
    ring = ZmodRing(3)
    trace = ideal_certificate(full_subgroup(rep, ring))
    assert trace.ideal.is_unit_ideal()
    assert "short-isolation" in trace.step_kinds()


def test_certificate_g2_z25_kernel():
    rep = make_representation(G2, "adjoint")
    ring = ZmodRing(25)
    n = kernel_subgroup(rep, ring, ideal_from_generators(ring, [5]))
    trace = ideal_certificate(n)
    assert trace.ideal.element_set() == frozenset({0, 5, 10, 15, 20})


def test_certificate_rank1_rejected():
    a1 = build_root_system("A", 1)
    rep = make_representation(a1, "defining-A")
    ring = ZmodRing(4)
    with pytest.raises(CertificateError, match="rank"):
        ideal_certificate(full_subgroup(rep, ring))


def test_omit_root_generation_a2_gf2_against_enumeration():
    rep = make_representation(A2, "defining-A")
    ring = ZmodRing(2)
    for alpha in A2.roots:
        fast = omit_root_generation_check(rep, ring, alpha)
        slow = omit_root_generation_check(rep, ring, alpha, exhaustive=True)
        assert fast and slow


def test_omit_root_generation_b2_gf2_against_enumeration():
    rep = make_representation(C2, "defining-C")
    ring = ZmodRing(2)
    for alpha in C2.roots:
        fast = omit_root_generation_check(rep, ring, alpha)
        slow = omit_root_generation_check(rep, ring, alpha, exhaustive=True)
        assert fast and slow


def test_omit_root_rejects_rank1():
    a1 = build_root_system("A", 1)
    rep = make_representation(a1, "defining-A")
    ring = ZmodRing(2)
    with pytest.raises(Exception):
        omit_root_generation_check(rep, ring, (1, -1))


def test_cross_factor_commute_z2xz3():
    rep = make_representation(A2, "defining-A")
    ring = parse_ring_spec("Z/2 x Z/3")
    report = cross_factor_commute_check(rep, ring)
    assert report.ok
    assert report.pairs_checked == 2 * 6 * 6


def test_cross_factor_commute_z2xz2_opposite_roots():
    rep = make_representation(A2, "defining-A")
    ring = parse_ring_spec("Z/2 x Z/2")
    report = cross_factor_commute_check(rep, ring)
    assert report.ok


def test_cross_factor_requires_product():
    rep = make_representation(A2, "defining-A")
    with pytest.raises(Exception):
        cross_factor_commute_check(rep, ZmodRing(6))


def test_certificate_refuses_g2_z4():
    rep = make_representation(G2, "adjoint")
    ring = ZmodRing(4)
    n = kernel_subgroup(rep, ring, ideal_from_generators(ring, [2]))
    with pytest.raises(CertificateError, match="2 is not a unit"):
        ideal_certificate(n)


def test_certificate_refuses_b2_gf2():
    rep = make_representation(B2, "defining-B")
    ring = ZmodRing(2)
    with pytest.raises(CertificateError, match="2 is not a unit"):
        ideal_certificate(full_subgroup(rep, ring))


def test_certificate_d4_simply_laced():
    d4 = build_root_system("D4")
    rep = make_representation(d4, "defining-D")
    ring = ZmodRing(4)
    n = kernel_subgroup(rep, ring, ideal_from_generators(ring, [2]))
    trace = ideal_certificate(n)
    assert trace.ideal.element_set() == frozenset({0, 2})
    assert trace.branch.startswith("simply-laced")


def test_certificate_f4_long_a2_branch():
    f4 = build_root_system("F4")
    rep = make_representation(f4, "adjoint")
    ring = ZmodRing(4)  # 2 not a unit: the F4 route must not need it
    n = kernel_subgroup(rep, ring, ideal_from_generators(ring, [2]))
    trace = ideal_certificate(n)
    assert trace.ideal.element_set() == frozenset({0, 2})
    assert "corrected-mixed-identity" in trace.step_kinds()
