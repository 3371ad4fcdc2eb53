import pytest

from chevlab import linalg
from chevlab.groups import (
    CapExceeded,
    ElementaryWord,
    all_elementaries,
    commutator,
    congruence_reduce,
    elementary,
    elementary_generator_words,
    identity_element,
    in_congruence_kernel,
    subgroup_closure,
    torus_and_weyl,
    verify_steinberg_relations,
    weyl_conjugation_check,
)
from chevlab.reps import make_representation, available_tags
from chevlab.rings import ZmodRing, ideal_from_generators, parse_ring_spec
from chevlab.roots import build_root_system


A2 = build_root_system("A2")
B2 = build_root_system("B2")
C2 = build_root_system("C2")
G2 = build_root_system("G2")


def test_elementary_sl3_matrix():
    rep = make_representation(A2, "defining-A")
    ring = ZmodRing(5)
    g = elementary(rep, ring, (1, -1, 0), 3)
    assert g.mat == ((1, 3, 0), (0, 1, 0), (0, 0, 1))


def test_elementary_zero_is_identity():
    for rs, tag in [(A2, "defining-A"), (B2, "defining-B"), (G2, "adjoint")]:
        rep = make_representation(rs, tag)
        ring = ZmodRing(4)
        for r in rs.roots:
            assert elementary(rep, ring, r, 0).is_identity()


def test_elementary_additivity_exhaustive():
    for rs, tag in [(A2, "defining-A"), (C2, "defining-C")]:
        rep = make_representation(rs, tag)
        ring = ZmodRing(4)
        for r in rs.roots:
            for s in ring.elements():
                for t in ring.elements():
                    lhs = elementary(rep, ring, r, s) * elementary(rep, ring, r, t)
                    assert lhs == elementary(rep, ring, r, (s + t) % 4)


def test_adjoint_g2_unipotent():
    rep = make_representation(G2, "adjoint")
    ring = ZmodRing(4)
    g = elementary(rep, ring, (0, 1), 1)
    assert rep.dim == 14
    n = tuple(
        tuple(ring.sub(v, ring.one if i == j else ring.zero) for j, v in enumerate(row))
        for i, row in enumerate(g.mat)
    )
    m = n
    for _ in range(3):
        m = linalg.mat_mul(ring, m, n)
    assert all(v == ring.zero for row in m for v in row)


def test_commutator_a2_paper_identity_z6():
    rep = make_representation(A2, "defining-A")
    ring = ZmodRing(6)
    e12 = (1, -1, 0)
    e23 = (0, 1, -1)
    e13 = (1, 0, -1)
    for r in ring.elements():
        for s in ring.elements():
            lhs = commutator(
                elementary(rep, ring, e12, r), elementary(rep, ring, e23, s)
            )
            assert lhs == elementary(rep, ring, e13, (r * s) % 6)


def test_commutator_with_identity():
    rep = make_representation(A2, "defining-A")
    ring = ZmodRing(5)
    g = elementary(rep, ring, (1, -1, 0), 2)
    assert commutator(g, identity_element(rep, ring)).is_identity()


def test_inverse_of_elementary():
    rep = make_representation(B2, "defining-B")
    ring = ZmodRing(9)
    for r in B2.roots:
        for t in ring.elements():
            g = elementary(rep, ring, r, t)
            assert g.inverse() == elementary(rep, ring, r, (-t) % 9)


def test_torus_and_weyl_sl2_block():
    rs = build_root_system("A", 1)
    rep = make_representation(rs, "defining-A")
    ring = ZmodRing(5)
    alpha = (1, -1)
    w, h = torus_and_weyl(rep, ring, alpha, 1)
    assert w.mat == ((0, 1), (4, 0))
    assert h.is_identity()


def test_torus_sl3_z5():
    rep = make_representation(A2, "defining-A")
    ring = ZmodRing(5)
    # oracle: 2x2-block multiplication gives diag(2, 2^-1, 1); 3 = 2^-1 mod 5
    _, h = torus_and_weyl(rep, ring, (1, -1, 0), 2)
    assert h.mat == ((2, 0, 0), (0, 3, 0), (0, 0, 1))


def test_torus_lands_in_diagonal():
    for rs, tag in [(B2, "defining-B"), (C2, "defining-C"), (G2, "adjoint")]:
        rep = make_representation(rs, tag)
        ring = ZmodRing(9)
        for alpha in rs.simple:
            for u in ring.units():
                _, h = torus_and_weyl(rep, ring, alpha, u)
                for i, row in enumerate(h.mat):
                    for j, v in enumerate(row):
                        if i != j:
                            assert v == ring.zero


def test_weyl_conjugation_signs():
    rep = make_representation(A2, "defining-A")
    ring = ZmodRing(5)
    sign, ok = weyl_conjugation_check(rep, ring, (0,), (1, -1, 0))
    assert ok and sign in (1, -1)
    sign, ok = weyl_conjugation_check(rep, ring, (), (1, -1, 0))
    assert ok and sign == 1


def test_weyl_conjugation_b2_z9():
    rep = make_representation(B2, "defining-B")
    ring = ZmodRing(9)
    # reflection in e1-e2 (simple index 0) maps e1 to e2
    sign, ok = weyl_conjugation_check(rep, ring, (0,), (1, 0))
    assert ok
    assert B2.apply_word((0,), (1, 0)) == (0, 1)


def test_congruence_reduction():
    rep = make_representation(A2, "defining-A")
    ring = ZmodRing(4)
    ideal = ideal_from_generators(ring, [2])
    g = elementary(rep, ring, (1, -1, 0), 2)
    assert in_congruence_kernel(g, ideal)
    h = elementary(rep, ring, (1, -1, 0), 1)
    assert not in_congruence_kernel(h, ideal)
    red = congruence_reduce(h, ideal)
    assert red.ring.card == 2


def test_congruence_reduction_is_homomorphism():
    import random

    rep = make_representation(A2, "defining-A")
    ring = ZmodRing(4)
    ideal = ideal_from_generators(ring, [2])
    rng = random.Random(7)
    from chevlab.groups import random_elementary_word

    for _ in range(100):
        g = random_elementary_word(rep, ring, 4, rng).evaluate()
        h = random_elementary_word(rep, ring, 4, rng).evaluate()
        assert congruence_reduce(g * h, ideal) == congruence_reduce(
            g, ideal
        ) * congruence_reduce(h, ideal)


def test_closure_sl2_gf2():
    rs = build_root_system("A", 1)
    rep = make_representation(rs, "defining-A")
    ring = ZmodRing(2)
    gens = [
        elementary(rep, ring, (1, -1), 1),
        elementary(rep, ring, (-1, 1), 1),
    ]
    closure = subgroup_closure(gens, cap=100)
    assert len(closure) == 6


def test_closure_identity_only():
    rep = make_representation(A2, "defining-A")
    ring = ZmodRing(2)
    closure = subgroup_closure([identity_element(rep, ring)], cap=10)
    assert closure == frozenset({identity_element(rep, ring)})


def test_closure_cap():
    rep = make_representation(A2, "defining-A")
    ring = ZmodRing(3)
    with pytest.raises(CapExceeded):
        subgroup_closure(all_elementaries(rep, ring), cap=10)


def test_closure_word_tracking():
    rs = build_root_system("A", 1)
    rep = make_representation(rs, "defining-A")
    ring = ZmodRing(3)
    words = subgroup_closure(
        elementary_generator_words(rep, ring), cap=100, track_words=True
    )
    assert len(words) == 24  # |SL2(F3)|
    for element, word in words.items():
        assert word.evaluate() == element


def test_word_inverse_and_serialization():
    rep = make_representation(B2, "defining-B")
    ring = parse_ring_spec("Z/4 x GF(3)")
    w = ElementaryWord(
        rep, ring, [((1, 0), ring.from_int(3)), ((0, 1), ring.inject(1, 2))]
    )
    assert (w + w.inverse_word()).evaluate().is_identity()
    data = w.to_json()
    back = ElementaryWord.from_json(rep, ring, data)
    assert back.letters == w.letters


def test_steinberg_relations_a2_z4():
    rep = make_representation(A2, "defining-A")
    report = verify_steinberg_relations(rep, ZmodRing(4))
    assert report.ok
    assert report.exhaustive
    assert report.excluded_pairs == 6
    assert report.additivity_checked == 6 * 16


def test_steinberg_relations_g2_gf3_adjoint():
    rep = make_representation(G2, "adjoint")
    report = verify_steinberg_relations(rep, ZmodRing(3))
    assert report.ok


def test_representation_independence_unipotent_words():
    # a relation word built from the commutator expansion evaluates to the
    # identity in every available representation
    for rs in (A2, B2, C2):
        ring = ZmodRing(9)
        for tag in available_tags(rs):
            rep = make_representation(rs, tag)
            report = verify_steinberg_relations(
                rep, ring, mode="R2", loop_cap=16, sample=40, seed=3
            )
            assert report.ok


def test_cross_factor_elementaries_commute():
    rep = make_representation(A2, "defining-A")
    ring = parse_ring_spec("Z/2 x Z/3")
    for a in A2.roots:
        for b in A2.roots:
            for r in ring.factors[0].elements():
                for s in ring.factors[1].elements():
                    x = elementary(rep, ring, a, ring.inject(0, r))
                    y = elementary(rep, ring, b, ring.inject(1, s))
                    assert commutator(x, y).is_identity()


def test_form_preservation():
    ring = ZmodRing(9)
    for rs, tag in [(B2, "defining-B"), (C2, "defining-C")]:
        rep = make_representation(rs, tag)
        g = identity_element(rep, ring)
        for r in rs.roots:
            g = g * elementary(rep, ring, r, 5)
        assert rep.check_invariant(ring, g.mat)


def test_group_element_json_roundtrip():
    rep = make_representation(A2, "defining-A")
    ring = ZmodRing(4)
    g = elementary(rep, ring, (1, -1, 0), 3)
    data = g.to_json()
    from chevlab.groups import GroupElement

    assert GroupElement.from_json(rep, ring, data) == g


def test_adjoint_relations_exhaustive_small_rings():
    # both sides of the commutator expansion agree in the adjoint model
    # for every parameter pair over rings of order <= 9
    for rs, ring in [(A2, ZmodRing(4)), (B2, ZmodRing(3)), (G2, ZmodRing(2))]:
        rep = make_representation(rs, "adjoint")
        report = verify_steinberg_relations(rep, ring, mode="R2")
        assert report.ok and report.exhaustive


def test_debug_validation_mode():
    from chevlab import groups

    groups.set_debug_validation(True)
    try:
        ring = ZmodRing(9)
        for rs, tag in [(A2, "defining-A"), (B2, "defining-B"), (C2, "defining-C")]:
            rep = make_representation(rs, tag)
            for r in rs.roots:
                elementary(rep, ring, r, 5)
    finally:
        groups.set_debug_validation(False)


def test_matmul_numpy_path_matches_pure_loop():
    import random

    from chevlab.linalg import mat_mul

    rng = random.Random(17)
    for ring in [parse_ring_spec("GF(4)"), parse_ring_spec("Z/4 x GF(3)"), ZmodRing(9)]:
        values = ring.elements()
        n = 8  # above the numpy dispatch threshold
        a = tuple(tuple(rng.choice(values) for _ in range(n)) for _ in range(n))
        b = tuple(tuple(rng.choice(values) for _ in range(n)) for _ in range(n))
        fast = mat_mul(ring, a, b)
        slow = tuple(
            tuple(
                _dot(ring, [a[i][k] for k in range(n)], [b[k][j] for k in range(n)])
                for j in range(n)
            )
            for i in range(n)
        )
        assert fast == slow


def _dot(ring, xs, ys):
    acc = ring.zero
    for x, y in zip(xs, ys):
        acc = ring.add(acc, ring.mul(x, y))
    return acc
