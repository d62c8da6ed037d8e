"""Every failed axiom's witness must re-evaluate to a violation.  The
re-evaluators here are written independently of the checkers (plain
definitional reads), so an optimized sweep with a wrong witness index
cannot slip through."""
import random

import pytest

from psiforge import (
    TernaryRelation,
    check_3bamo,
    check_eca,
    check_extca,
    check_psi,
    check_strict,
    make_algebra,
    mu,
)
from psiforge.ternary_operator import TernaryOperator


def reevaluate_relation(rel, axiom, w):
    alg = rel.alg
    if axiom in ("EC0", "ExtCA0"):
        a, b, f, d = w
        return rel.holds(a, b, f) and not rel.holds(a | d, b, f | d)
    if axiom in ("EC1", "ExtCA1"):
        a, b, d, e, f = w
        return (
            rel.holds(a, b, d)
            and rel.holds(a, b, e)
            and rel.holds(d, e, f)
            and not rel.holds(a, b, f)
        )
    if axiom == "EC2":
        a, b, f = w
        return not rel.holds(a, b, a | f)
    if axiom == "EC3":
        a, f = w
        return rel.holds(a, a, f) and not alg.leq(a, f)
    if axiom in ("EC4", "ExtCA4"):
        a, b, f = w
        return rel.holds(a, b, f) and not rel.holds(b, a, f)
    if axiom == "ExtCA2":
        a, b, f = w
        return alg.leq(a, f) and not rel.holds(a, b, f)
    if axiom == "ExtCA3":
        a, b, f = w
        return rel.holds(a, b, f) and not alg.leq(a & b, f)
    raise AssertionError(f"unknown axiom {axiom}")


def reevaluate_operator(op, axiom, w):
    alg = op.alg
    top = alg.top
    if axiom == "MO1":
        a, b, c = w
        return 0 in (a, b, c) and op(a, b, c) != 0
    if axiom == "MO2":
        a, x, b, c = w
        return op(a | x, b, c) != op(a, b, c) | op(x, b, c)
    if axiom == "MO3":
        a, b, x, c = w
        return op(a, b | x, c) != op(a, b, c) | op(a, x, c)
    if axiom == "MO4":
        a, b, c, x = w
        return not alg.leq(op(a, b, c) | op(a, b, x), op(a, b, c | x))
    if axiom == "PI1":
        a, b, f, d, e = w
        rhs = op(a, b, alg.neg(d)) | op(a, b, alg.neg(e)) | op(d, e, f)
        return not alg.leq(op(a, b, f), rhs)
    if axiom == "PI2":
        a, b = w
        return op(a, b, alg.neg(a)) != 0
    if axiom == "PI3":
        a, f = w
        return not alg.leq(a & f, op(a, a, f))
    if axiom == "PI4":
        a, b, f = w
        return not alg.leq(op(a, b, f), op(b, a, f))
    if axiom == "R1":
        x, y, a, b = w
        lhs = op(x, y, a) & alg.neg(op(x, y, b))
        return not alg.leq(lhs, op(top, top, a & alg.neg(b)))
    if axiom == "R2":
        x, a, b, y = w
        lhs = op(x, a, y) & alg.neg(op(x, b, y))
        return not alg.leq(lhs, op(top, a & alg.neg(b), top))
    if axiom == "S":
        a, b, c = w
        return not alg.leq(op(a, b, c), mu(op, op(a, b, c)))
    raise AssertionError(f"unknown axiom {axiom}")


@pytest.mark.parametrize("k,count", [(1, 300), (2, 600), (3, 60)])
def test_relation_witnesses_reevaluate(k, count):
    alg = make_algebra(k)
    rng = random.Random(k * 1000 + 7)
    n = alg.size ** 3
    failures_seen = 0
    for _ in range(count):
        rel = TernaryRelation(alg, rng.getrandbits(n))
        for report in (check_eca(rel), check_extca(rel)):
            for result in report.results:
                if not result.passed:
                    failures_seen += 1
                    assert reevaluate_relation(rel, result.axiom, result.witness), (
                        result.axiom,
                        result.witness,
                    )
    assert failures_seen > 0


@pytest.mark.parametrize("k,count", [(1, 200), (2, 200)])
def test_operator_witnesses_reevaluate(k, count):
    alg = make_algebra(k)
    rng = random.Random(k * 77 + 1)
    n = alg.size ** 3
    failures_seen = 0
    for _ in range(count):
        table = tuple(rng.randrange(alg.size) for _ in range(n))
        op = TernaryOperator(alg, table)
        for report in (check_3bamo(op), check_psi(op), check_strict(op)):
            for result in report.results:
                if not result.passed:
                    failures_seen += 1
                    assert reevaluate_operator(op, result.axiom, result.witness), (
                        result.axiom,
                        result.witness,
                    )
    assert failures_seen > 0


def test_operator_witnesses_on_structured_near_misses():
    """Monotone tables perturbed by one entry: failures land in the PI/R/S
    laws rather than the MO ones, exercising those witnesses too."""
    from psiforge.enumeration import sample_3bamos

    alg = make_algebra(2)
    rng = random.Random(31)
    failures_seen = 0
    for base in sample_3bamos(alg, count=12, seed=13):
        table = list(base.table)
        spot = rng.randrange(len(table))
        table[spot] = rng.randrange(alg.size)
        op = TernaryOperator(alg, tuple(table))
        for report in (check_3bamo(op), check_psi(op), check_strict(op)):
            for result in report.results:
                if not result.passed:
                    failures_seen += 1
                    assert reevaluate_operator(op, result.axiom, result.witness)
    assert failures_seen > 0
