import pytest

from psiforge import (
    InternalCheckError,
    PreconditionError,
    classify_eca_morphism,
    classify_frame_map,
    classify_psi_morphism,
    dual_frame,
    enumerate_homs,
    example_3bamo,
    largest_eca,
    make_algebra,
    make_hom,
    morphism_duality_check,
    rel_to_op,
    smallest_diamond,
)
from psiforge.duality_frames import PsiFrame
from psiforge.morphisms import dual_map


def test_make_hom_identity(alg2):
    h = make_hom(alg2, alg2, (0, 1))
    for a in alg2.elements():
        assert h(a) == a


def test_make_hom_duplicating(alg1, alg2):
    h = make_hom(alg1, alg2, (0, 0))
    assert h(0) == 0 and h(1) == 3


def test_unique_hom_from_two_element(alg1, alg2, alg3):
    for target in (alg1, alg2, alg3):
        homs = enumerate_homs(alg1, target)
        assert len(homs) == 1
        h = homs[0]
        assert h(0) == 0 and h(1) == target.top


def test_hom_counts(alg1, alg2):
    assert len(enumerate_homs(alg2, alg2)) == 4
    assert len(enumerate_homs(alg2, alg1)) == 2
    assert len(enumerate_homs(alg1, alg2)) == 1


def test_identity_classification(alg2, psi_ops_k2):
    ident = make_hom(alg2, alg2, (0, 1))
    for op in psi_ops_k2[:4]:
        mc = classify_psi_morphism(ident, op, op)
        assert mc.full


def test_pointwise_comparable_identity_carrier(alg2, psi_ops_k2):
    ident = make_hom(alg2, alg2, (0, 1))
    found = False
    for o1 in psi_ops_k2:
        for o2 in psi_ops_k2:
            if o1.table == o2.table or not o1.pointwise_leq(o2):
                continue
            found = True
            mc = classify_psi_morphism(ident, o1, o2)
            assert mc.semi and not mc.hemi
            back = classify_psi_morphism(ident, o2, o1)
            assert back.hemi and not back.semi
    assert found


def test_two_element_into_smallest(alg1, alg2):
    h = make_hom(alg1, alg2, (0, 0))
    mc = classify_psi_morphism(h, smallest_diamond(alg1), smallest_diamond(alg2))
    # meets are preserved by any homomorphism, so this one is full
    assert mc.full


def test_classify_mismatched_algebras(alg1, alg2):
    h = make_hom(alg1, alg2, (0, 0))
    with pytest.raises(ValueError):
        classify_psi_morphism(h, smallest_diamond(alg2), smallest_diamond(alg2))


def test_frame_map_identity(alg2):
    fr = dual_frame(smallest_diamond(alg2))
    rep = classify_frame_map((0, 1), fr, fr)
    assert rep.passed


def test_frame_map_into_full_relation():
    ne = range(1, 4)
    full = PsiFrame(
        2,
        frozenset(
            (x, y1, y2, y3) for x in range(2) for y1 in ne for y2 in ne for y3 in ne
        ),
    )
    sparse = PsiFrame(2, frozenset({(0, 3, 3, 3)}))
    rep = classify_frame_map((1, 0), sparse, full)
    assert rep.result("Sp2").passed


def test_semi_corresponds_to_sp3_not_sp2(alg2, psi_ops_k2):
    """The crosswise pairing: an inclusion-style semi morphism dualizes to
    the existential lifting condition, not the forward one."""
    ident = make_hom(alg2, alg2, (0, 1))
    pairs = [
        (o1, o2)
        for o1 in psi_ops_k2
        for o2 in psi_ops_k2
        if o1.table != o2.table and o1.pointwise_leq(o2)
    ]
    assert pairs
    for o1, o2 in pairs[:3]:
        mc = classify_psi_morphism(ident, o1, o2)
        assert mc.semi and not mc.hemi
        fm = classify_frame_map(
            dual_map(ident), dual_frame(o2, monotone=True), dual_frame(o1, monotone=True)
        )
        assert fm.result("Sp3").passed
        assert not fm.result("Sp2").passed


def test_morphism_duality_all_homs_k2(alg2, psi_ops_k2):
    ops = psi_ops_k2[:4]
    for h in enumerate_homs(alg2, alg2):
        for o1 in ops:
            for o2 in ops:
                assert morphism_duality_check(h, o1, o2).passed


def test_morphism_duality_cross_size(alg1, alg2, rel_ops_k2):
    o1 = smallest_diamond(alg1)
    for h in enumerate_homs(alg1, alg2):
        for o2 in rel_ops_k2:
            assert morphism_duality_check(h, o1, o2).passed
    for h in enumerate_homs(alg2, alg1):
        for o2 in rel_ops_k2:
            assert morphism_duality_check(h, o2, o1).passed


def test_morphism_duality_refuses_non_psi(alg2):
    h = make_hom(alg2, alg2, (0, 1))
    with pytest.raises(PreconditionError):
        morphism_duality_check(h, example_3bamo(), smallest_diamond(alg2))


def test_eca_morphism_identity_similarity(alg2, ecas_k2):
    ident = make_hom(alg2, alg2, (0, 1))
    for rel in ecas_k2:
        cls, rep = classify_eca_morphism(ident, rel, rel)
        assert cls.similarity
        assert rep.passed


def test_hom_into_largest_is_preserving(alg1, alg2, ecas_k1, ecas_k2):
    big = largest_eca(alg2)
    for rel in ecas_k1:
        for h in enumerate_homs(alg1, alg2):
            cls, rep = classify_eca_morphism(h, rel, big)
            assert cls.preserving
            assert rep.passed
    for rel in ecas_k2:
        for h in enumerate_homs(alg2, alg2):
            cls, rep = classify_eca_morphism(h, rel, big)
            assert cls.preserving
            assert rep.passed


def test_eca_morphism_equivalences_all_homs(alg2, ecas_k2):
    for h in enumerate_homs(alg2, alg2):
        for r1 in ecas_k2:
            for r2 in ecas_k2:
                _, rep = classify_eca_morphism(h, r1, r2)
                assert rep.passed


def test_eca_morphism_refuses_non_eca(alg2, ecas_k2):
    from psiforge import full_relation

    ident = make_hom(alg2, alg2, (0, 1))
    with pytest.raises(PreconditionError):
        classify_eca_morphism(ident, full_relation(alg2), ecas_k2[0])


def test_composition_closure(alg2, psi_ops_k2):
    homs = enumerate_homs(alg2, alg2)
    ops = psi_ops_k2[:3]
    for g in homs:
        for h in homs:
            comp = h.compose(g)
            for o1 in ops:
                for o2 in ops:
                    for o3 in ops:
                        m1 = classify_psi_morphism(g, o1, o2)
                        m2 = classify_psi_morphism(h, o2, o3)
                        mc = classify_psi_morphism(comp, o1, o3)
                        if m1.semi and m2.semi:
                            assert mc.semi
                        if m1.hemi and m2.hemi:
                            assert mc.hemi
                        if m1.full and m2.full:
                            assert mc.full


def test_contravariance(alg1, alg2):
    for g in enumerate_homs(alg1, alg2):
        for h in enumerate_homs(alg2, alg2):
            comp = h.compose(g)
            assert dual_map(comp) == tuple(
                dual_map(g)[i] for i in dual_map(h)
            )


def test_bijective_full_inverts(alg2, psi_ops_k2):
    swap = make_hom(alg2, alg2, (1, 0))
    assert swap.is_bijective
    inv = swap.inverse()
    for a in alg2.elements():
        assert inv(swap(a)) == a
    non_bij = make_hom(alg2, alg2, (0, 0))
    assert not non_bij.is_bijective
    with pytest.raises(ValueError):
        non_bij.inverse()


def test_hom_json_round_trip(alg1, alg2):
    from psiforge.morphisms import hom_from_json

    h = make_hom(alg1, alg2, (0, 0))
    back = hom_from_json(h.to_json())
    assert back.atom_map == h.atom_map
