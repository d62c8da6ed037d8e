import pytest

from psiforge import (
    SizeCapError,
    check_eca,
    check_psi,
    check_strict,
    enumerate_ecas,
    enumerate_operators,
    find_counterexample,
    is_relational,
    largest_eca,
    make_algebra,
    named_axioms,
    parse,
    rel_to_op,
    smallest_diamond,
)
from psiforge.enumeration import (
    brute_force_operators,
    brute_force_relations,
    canonical_operator_table,
    canonical_relation_bits,
    enumerate_psi_operators,
    sample_3bamos,
    sample_psi_operators,
    sentence_holds_everywhere,
)
from psiforge.topo_models import eca_from_topology, three_point_space


def test_named_axiom_sizes():
    assert len(named_axioms("3bamo")) == 6
    assert len(named_axioms("psi")) == 10
    assert len(named_axioms("strict")) == 13
    with pytest.raises(ValueError):
        named_axioms("nonsense")


def test_axiom_sentences_hold_on_smallest(alg1, alg2):
    for alg in (alg1, alg2):
        assert sentence_holds_everywhere(named_axioms("strict"), smallest_diamond(alg))


def test_enumerate_ecas_k1_matches_brute_force(alg1, ecas_k1):
    brute = brute_force_relations(alg1)
    assert len(brute) == 1  # artifact-derived golden, cross-checked here
    canon = sorted({canonical_relation_bits(alg1, r.bits) for r in brute})
    assert canon == [r.bits for r in ecas_k1]


def test_enumerate_ecas_soundness(ecas_k1, ecas_k2):
    for rel in ecas_k1 + ecas_k2:
        assert check_eca(rel).passed


def test_enumerate_ecas_k2_contents(alg2, ecas_k2):
    assert len(ecas_k2) == 2  # golden count, oracle-checked in test_contact_relation
    bits = [r.bits for r in ecas_k2]
    assert canonical_relation_bits(alg2, largest_eca(alg2).bits) in bits
    _, topo = eca_from_topology(three_point_space())
    assert canonical_relation_bits(alg2, topo.bits) in bits


def test_enumerate_ecas_stable_and_parallel(alg2, ecas_k2):
    again = enumerate_ecas(alg2)
    assert [r.bits for r in again] == [r.bits for r in ecas_k2]
    par = enumerate_ecas(alg2, workers=4)
    assert [r.bits for r in par] == [r.bits for r in ecas_k2]


def test_enumerate_ecas_size_cap():
    with pytest.raises(SizeCapError):
        enumerate_ecas(make_algebra(4))


def test_enumerate_ecas_k3_times_out_quickly():
    with pytest.raises(SizeCapError):
        enumerate_ecas(make_algebra(3), timeout_s=0.01)


def test_enumerate_ecas_k3_best_effort():
    """The three-atom search under its timeout.

    No brute-force oracle exists at this size (168 undecided triples), so
    the checks are soundness, determinism, and membership of every
    independently constructed three-atom entailment relation.
    """
    alg3 = make_algebra(3)
    out = enumerate_ecas(alg3, timeout_s=120)
    assert len(out) == 7  # artifact-derived golden
    bits = [r.bits for r in out]
    assert bits == sorted(bits)
    for rel in out:
        assert check_eca(rel).passed
    assert canonical_relation_bits(alg3, largest_eca(alg3).bits) in bits
    from psiforge.topo_models import random_topologies

    seen = 0
    for top in random_topologies(60, seed=0xEC0, max_points=4):
        rca, rel = eca_from_topology(top)
        if rca.alg.atom_count == 3:
            seen += 1
            assert canonical_relation_bits(alg3, rel.bits) in bits
    assert seen > 0


def test_enumerate_operators_k1_exhaustive(alg1):
    enum = enumerate_operators(alg1, named_axioms("psi"))
    assert enum.label == "exhaustive"
    assert len(enum.operators) == 1
    assert enum.operators[0].table == smallest_diamond(alg1).table


def test_enumerate_operators_k1_strict_all_relational(alg1):
    enum = enumerate_operators(alg1, named_axioms("strict"))
    assert all(is_relational(op)[0] for op in enum.operators)


def test_enumerate_operators_k2_relational_bijective_with_ecas(alg2, ecas_k2):
    enum = enumerate_operators(alg2, named_axioms("psi"))
    assert enum.label == "relational-exhaustive"
    expected = sorted(
        {canonical_operator_table(alg2, rel_to_op(r).table) for r in ecas_k2}
    )
    assert [op.table for op in enum.operators] == expected


def test_enumerate_operators_refuses_infeasible(alg2):
    with pytest.raises(SizeCapError):
        enumerate_operators(alg2, named_axioms("psi"), mode="exhaustive")


def test_enumerate_operators_sampled_is_labelled(alg2):
    enum = enumerate_operators(alg2, named_axioms("psi"), mode="sampled", seed=5)
    assert enum.label == "sampled(seed=5)"
    assert not enum.exhaustive
    for op in enum.operators:
        assert check_psi(op).passed
    again = enumerate_operators(alg2, named_axioms("psi"), mode="sampled", seed=5)
    assert [o.table for o in again.operators] == [o.table for o in enum.operators]


def test_enumerate_psi_operators_golden(alg1, alg2, psi_ops_k2):
    k1 = enumerate_psi_operators(alg1)
    assert len(k1) == 1
    # golden count of canonical pseudo-inference tables on two atoms
    assert len(psi_ops_k2) == 10
    for op in psi_ops_k2:
        assert check_psi(op).passed
    # the relational ones and the least table are all present
    tables = {op.table for op in psi_ops_k2}
    assert canonical_operator_table(alg2, smallest_diamond(alg2).table) in tables


def test_canonical_forms_are_orbit_invariant(alg2, ecas_k2, psi_ops_k2):
    from psiforge.boolean_core import automorphisms
    from psiforge.enumeration import permute_operator_table, permute_relation_bits

    for rel in ecas_k2:
        for perm in automorphisms(alg2):
            moved = permute_relation_bits(alg2, perm, rel.bits)
            assert canonical_relation_bits(alg2, moved) == canonical_relation_bits(
                alg2, rel.bits
            )
    for op in psi_ops_k2[:4]:
        for perm in automorphisms(alg2):
            moved = permute_operator_table(alg2, perm, op.table)
            assert canonical_operator_table(alg2, moved) == canonical_operator_table(
                alg2, op.table
            )


def test_permuted_operator_satisfies_same_axioms(alg2, psi_ops_k2):
    from psiforge.boolean_core import automorphisms
    from psiforge.enumeration import permute_operator_table
    from psiforge import TernaryOperator

    swap = automorphisms(alg2)[1]
    for op in psi_ops_k2[:4]:
        moved = TernaryOperator(alg2, permute_operator_table(alg2, swap, op.table))
        assert check_psi(moved).passed


def test_sampled_generators_are_deterministic(alg2):
    a = [op.table for op in sample_psi_operators(alg2, count=6, seed=9)]
    b = [op.table for op in sample_psi_operators(alg2, count=6, seed=9)]
    assert a == b
    c = [op.table for op in sample_3bamos(alg2, count=6, seed=9)]
    d = [op.table for op in sample_3bamos(alg2, count=6, seed=9)]
    assert c == d


def test_find_counterexample_pi4_exhausted(alg2):
    pi4 = parse("dia(a,b,f) <= dia(b,a,f)")
    result = find_counterexample(pi4, alg2, named_axioms("psi"), mode="relational")
    assert not result.found
    assert "no counterexample" in result.exhausted_certificate


def test_find_counterexample_symmetry_question(alg1):
    # is the operator symmetric in its last two arguments? on the single
    # meet-table space it is; the sweep certifies exhaustion
    s = parse("dia(a,b,c) = dia(a,c,b)")
    result = find_counterexample(s, alg1, named_axioms("psi"))
    assert not result.found
    assert result.searched == 1


def test_find_counterexample_strictness_on_k1_3bamos(alg1):
    s = parse("dia(a,b,c) <= mu(dia(a,b,c))")
    result = find_counterexample(s, alg1, named_axioms("3bamo"))
    # both single-atom monotone tables satisfy strictness: exhausted
    assert not result.found
    assert result.searched == 2


def test_find_counterexample_found(alg1):
    s = parse("dia(a,b,c) = 0")
    result = find_counterexample(s, alg1, named_axioms("psi"))
    assert result.found
    assert result.assignment == {"a": 1, "b": 1, "c": 1}


def test_brute_force_guards(alg2):
    with pytest.raises(SizeCapError):
        brute_force_relations(alg2)
    with pytest.raises(SizeCapError):
        brute_force_operators(alg2, [])


def test_all_k1_3bamos(alg1):
    ops = brute_force_operators(alg1, named_axioms("3bamo"))
    assert len(ops) == 2  # the zero table and the meet table
    strict_ops = [op for op in ops if check_strict(op).passed]
    assert len(strict_ops) == 2
