import pytest

from psiforge import (
    Congruence,
    Filter,
    PreconditionError,
    all_filters_classified,
    check_strict,
    classify_filter,
    congruence_filter_maps,
    congruence_from_filter,
    congruence_to_filter,
    example_3bamo,
    is_simple,
    is_subdirectly_irreducible,
    largest_eca,
    make_algebra,
    rel_to_op,
    relational_iff_simple_strict_check,
    smallest_diamond,
    variety_spot_checks,
)
from psiforge.filter_congruence import (
    closed_filter_generators,
    congruence_from_partition,
    congruence_is_boolean_compatible,
    congruence_respects_op,
    enumerate_subalgebras,
    filter_is_closed,
)


def all_partitions(items):
    """Oracle helper: every partition of a small list."""
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for smaller in all_partitions(rest):
        for i, block in enumerate(smaller):
            yield smaller[:i] + [[first] + block] + smaller[i + 1:]
        yield [[first]] + smaller


def test_trivial_and_improper_filters_closed_and_modal(alg2, psi_ops_k2):
    for op in list(psi_ops_k2) + [example_3bamo()]:
        for g in (alg2.top, 0):
            cf = classify_filter(op, Filter(alg2, g))
            assert cf.is_closed and cf.is_modal


def test_smallest_k2_filter_flags(alg2):
    op = smallest_diamond(alg2)
    cf = classify_filter(op, Filter(alg2, 1))
    # computed flags; the one law that must hold: closed implies modal
    assert not cf.is_closed or cf.is_modal
    # mu is the identity here, so every filter is modal and (R1)(R2) make
    # every modal filter closed
    assert cf.is_modal and cf.is_closed


def test_relational_k2_only_trivial_modal(rel_ops_k2, alg2):
    for op in rel_ops_k2:
        modal_gens = [
            cf.filter.generator for cf in all_filters_classified(op) if cf.is_modal
        ]
        assert sorted(modal_gens) == [0, alg2.top]


def test_smallest_k2_every_filter_modal(alg2):
    op = smallest_diamond(alg2)
    assert all(cf.is_modal for cf in all_filters_classified(op))


def test_k1_has_exactly_two_filters(alg1):
    op = smallest_diamond(alg1)
    assert len(all_filters_classified(op)) == 2


def test_closed_implies_modal_everywhere(psi_ops_k2):
    for op in list(psi_ops_k2) + [example_3bamo()]:
        for cf in all_filters_classified(op):
            assert not cf.is_closed or cf.is_modal


def test_su_mid_reduction_on_psi(psi_ops_k2):
    for op in psi_ops_k2:
        for cf in all_filters_classified(op):
            assert cf.is_closed == cf.closed_via_su_mid


def test_modal_generator_shortcut(psi_ops_k2):
    for op in psi_ops_k2:
        for cf in all_filters_classified(op):
            assert cf.is_modal == cf.modal_via_generator


def test_congruence_trivial_cases(alg2):
    identity = congruence_from_partition(alg2, [[a] for a in alg2.elements()])
    assert congruence_to_filter(identity).generator == alg2.top
    one_block = congruence_from_partition(alg2, [list(alg2.elements())])
    assert congruence_to_filter(one_block).generator == 0


def test_congruence_filter_k2_example(alg2):
    theta = congruence_from_filter(alg2, Filter(alg2, 1))
    assert sorted(map(sorted, theta.blocks())) == [[0, 2], [1, 3]]
    assert congruence_to_filter(theta).generator == 1


def test_congruence_round_trips(alg2):
    for g in alg2.elements():
        theta = congruence_from_filter(alg2, Filter(alg2, g))
        assert congruence_to_filter(theta).generator == g
        back = congruence_from_filter(alg2, congruence_to_filter(theta))
        assert back.reps == theta.reps


def test_congruence_dispatch(alg2):
    theta = congruence_filter_maps(alg2, Filter(alg2, 2))
    assert isinstance(theta, Congruence)
    assert congruence_filter_maps(alg2, theta).generator == 2


def test_incompatible_partition_rejected(alg2):
    bad = congruence_from_partition(alg2, [[0, 3], [1, 2]])
    assert not congruence_is_boolean_compatible(bad)
    with pytest.raises(ValueError):
        congruence_to_filter(bad)


def test_boolean_congruences_are_exactly_filter_induced(alg2):
    """Oracle: sweep every partition of the 4-element carrier."""
    filter_induced = {
        congruence_from_filter(alg2, Filter(alg2, g)).reps for g in alg2.elements()
    }
    compatible = set()
    for blocks in all_partitions(list(alg2.elements())):
        cong = congruence_from_partition(alg2, blocks)
        if congruence_is_boolean_compatible(cong):
            compatible.add(cong.reps)
    assert compatible == filter_induced


def test_op_compatibility_iff_closed_filter(psi_ops_k2, alg2):
    for op in psi_ops_k2:
        for g in alg2.elements():
            theta = congruence_from_filter(alg2, Filter(alg2, g))
            assert congruence_respects_op(op, theta) == filter_is_closed(
                op, Filter(alg2, g)
            )


def test_simple_on_relational(rel_ops_k2, ecas_k1):
    for op in rel_ops_k2:
        assert is_simple(op)
    op1 = rel_to_op(ecas_k1[0])
    assert is_simple(op1)


def test_smallest_k2_not_simple(alg2):
    op = smallest_diamond(alg2)
    assert not is_simple(op)
    # every filter is closed here (computed via the classifier)
    assert closed_filter_generators(op) == list(alg2.elements())
    assert not is_subdirectly_irreducible(op)


def test_simple_refuses_non_psi():
    with pytest.raises(PreconditionError):
        is_simple(example_3bamo())


def test_relational_iff_simple_strict(psi_ops_k2):
    for op in psi_ops_k2:
        assert relational_iff_simple_strict_check(op).passed


def test_si_implies_simple_on_strict(psi_ops_k2):
    for op in psi_ops_k2:
        if check_strict(op).passed and is_subdirectly_irreducible(op):
            assert is_simple(op)


def test_subalgebras_of_smallest_k2(alg2):
    subs = enumerate_subalgebras(smallest_diamond(alg2))
    assert (0, 3) in subs and (0, 1, 2, 3) in subs
    assert len(subs) == 2


def test_variety_spot_checks(psi_ops_k2, alg1):
    strict_ops = [op for op in psi_ops_k2 if check_strict(op).passed]
    strict_ops.append(smallest_diamond(alg1))
    assert len(strict_ops) >= 3
    assert variety_spot_checks(strict_ops).passed


def test_variety_refuses_non_strict(psi_ops_k2):
    non_strict = [op for op in psi_ops_k2 if not check_strict(op).passed]
    assert non_strict, "expected some non-strict pseudo-inference table"
    with pytest.raises(PreconditionError):
        variety_spot_checks(non_strict[:1])


def test_congruence_lattice_of_simple_is_two_chain(rel_ops_k2, alg2):
    for op in rel_ops_k2:
        assert closed_filter_generators(op) == [0, alg2.top]
