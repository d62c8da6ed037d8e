"""Enumeration of entailment relations and operator tables up to algebra
automorphism, plus counterexample search for user sentences.

The relation enumerator is a propagate-and-branch search: the positive
axiom seeds every triple it forces, the Horn rules (weakening, symmetry,
cut) are closed forward to a fixpoint, the conclusion-bounding axiom
contributes negative units, and the remaining undecided triples are
branched on (true branch first, lexicographic order).  Every complete
assignment reached this way satisfies all five axioms, which the test
suite cross-checks against naive brute force on the single-atom algebra.

Canonical form: the lexicographically least bitset (or operator table) in
the automorphism orbit; outputs are deduplicated and sorted by it, so
parallel subtree execution yields the same sequence as a sequential run.
"""
from __future__ import annotations

import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .boolean_core import (
    FiniteBooleanAlgebra,
    apply_automorphism,
    automorphisms,
)
from .contact_relation import TernaryRelation, check_eca, rel_to_op
from .errors import SizeCapError
from .terms import Sentence, holds, parse_axiom_file
from .ternary_operator import DEFAULT_SEED, TernaryOperator, smallest_diamond

ENUM_MAX_ATOMS_EXACT = 2
ENUM_MAX_ATOMS_BEST_EFFORT = 3

AXIOM_TEXTS = {
    "3bamo": """
        # weak normality and monotone distribution laws
        dia(0, b, c) = 0
        dia(a, 0, c) = 0
        dia(a, b, 0) = 0
        dia(a or x, b, c) = dia(a, b, c) or dia(x, b, c)
        dia(a, b or x, c) = dia(a, b, c) or dia(a, x, c)
        dia(a, b, c) or dia(a, b, x) <= dia(a, b, c or x)
    """,
    "pi": """
        # pseudo-inference laws
        dia(a, b, f) <= dia(a, b, not d) or dia(a, b, not e) or dia(d, e, f)
        dia(a, b, not a) = 0
        a and f <= dia(a, a, f)
        dia(a, b, f) <= dia(b, a, f)
    """,
    "strictness": """
        # strictness laws
        dia(x, y, a) and not dia(x, y, b) <= dia(1, 1, a and not b)
        dia(x, a, y) and not dia(x, b, y) <= dia(1, a and not b, 1)
        dia(a, b, c) <= mu(dia(a, b, c))
    """,
}


def named_axioms(name: str) -> list[Sentence]:
    """Built-in axiom sets: 3bamo, psi (= 3bamo + pi), strict (= psi + strictness)."""
    if name == "3bamo":
        return parse_axiom_file(AXIOM_TEXTS["3bamo"])
    if name == "psi":
        return parse_axiom_file(AXIOM_TEXTS["3bamo"]) + parse_axiom_file(AXIOM_TEXTS["pi"])
    if name == "strict":
        return named_axioms("psi") + parse_axiom_file(AXIOM_TEXTS["strictness"])
    raise ValueError(f"unknown axiom set {name!r}")


def psi_axioms() -> list[Sentence]:
    return named_axioms("psi")


def sentence_holds_everywhere(axioms: list[Sentence], op: TernaryOperator) -> bool:
    return all(holds(s, op)[0] for s in axioms)


# ---------------------------------------------------------------------------
# canonical forms


def permute_relation_bits(alg: FiniteBooleanAlgebra, perm: tuple[int, ...], bits: int) -> int:
    size = alg.size
    out = 0
    idx = 0
    for a in range(size):
        for b in range(size):
            for c in range(size):
                if bits >> idx & 1:
                    pa = apply_automorphism(alg, perm, a)
                    pb = apply_automorphism(alg, perm, b)
                    pc = apply_automorphism(alg, perm, c)
                    out |= 1 << ((pa * size + pb) * size + pc)
                idx += 1
    return out


def canonical_relation_bits(alg: FiniteBooleanAlgebra, bits: int) -> int:
    return min(permute_relation_bits(alg, p, bits) for p in automorphisms(alg))


def permute_operator_table(
    alg: FiniteBooleanAlgebra, perm: tuple[int, ...], table: tuple[int, ...]
) -> tuple[int, ...]:
    size = alg.size
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i
    inv = tuple(inv)
    out = []
    for a in range(size):
        for b in range(size):
            for c in range(size):
                pa = apply_automorphism(alg, inv, a)
                pb = apply_automorphism(alg, inv, b)
                pc = apply_automorphism(alg, inv, c)
                out.append(apply_automorphism(alg, perm, table[(pa * size + pb) * size + pc]))
    return tuple(out)


def canonical_operator_table(alg: FiniteBooleanAlgebra, table: tuple[int, ...]) -> tuple[int, ...]:
    return min(permute_operator_table(alg, p, table) for p in automorphisms(alg))


# ---------------------------------------------------------------------------
# relation enumeration


def brute_force_relations(alg: FiniteBooleanAlgebra) -> list[TernaryRelation]:
    """Naive oracle: test every bitset.  Single-atom algebras only."""
    if alg.atom_count != 1:
        raise SizeCapError("brute force over all relation bitsets needs a single atom")
    out = []
    for bits in range(1 << alg.size ** 3):
        rel = TernaryRelation(alg, bits)
        if check_eca(rel).passed:
            out.append(rel)
    return out


class _RelationSearch:
    """Propagate-and-branch search over relation assignments.

    State is two lists of conclusion bitmasks indexed by premise pair
    (a, b): pos[a*S+b] holds the conclusions forced true, neg the ones
    forced false.  Propagation is delta-driven: when a pair gains
    conclusions, only the consequences of the new bits are pushed
    (symmetry into the swapped pair, weakening into the joined pairs, and
    the cut rule both with the pair as main premise and as side premise).
    """

    def __init__(self, alg: FiniteBooleanAlgebra, deadline: float | None):
        self.alg = alg
        self.size = alg.size
        self.n_pairs = self.size ** 2
        self.deadline = deadline
        els = range(self.size)
        self.row = (1 << self.size) - 1
        # or_map[d][M] = {f | d : f in M} as a conclusion mask
        self.or_map = []
        for d in els:
            table = []
            for mask in range(1 << self.size):
                out = 0
                for f in els:
                    if mask >> f & 1:
                        out |= 1 << (f | d)
                table.append(out)
            self.or_map.append(table)
        self.ups = [
            sum(1 << c for c in els if a & c == a) for a in els
        ]

    def initial_state(self) -> tuple[list[int], list[int]] | None:
        size = self.size
        # conclusion weakening forces everything above a; symmetry of the
        # seeds forces everything above b as well
        pos = [
            self.ups[a] | self.ups[b] for a in range(size) for b in range(size)
        ]
        # the conclusion bound forbids (a, a, f) unless a <= f
        neg = [0] * self.n_pairs
        for a in range(size):
            neg[a * size + a] = self.row ^ self.ups[a]
        state = (pos, neg)
        if self.propagate(state, list(range(self.n_pairs))):
            return state
        return None

    def propagate(self, state, dirty: list[int]) -> bool:
        """Close pos under the three Horn rules; False on conflict."""
        pos, neg = state
        size = self.size
        or_map = self.or_map
        pending = dirty
        while pending:
            p = pending.pop()
            cur = pos[p]
            if cur & neg[p]:
                return False
            a, b = divmod(p, size)
            # symmetry
            q = b * size + a
            if cur & ~pos[q]:
                pos[q] |= cur
                pending.append(q)
            # weakening by every d
            for d in range(size):
                q = (a | d) * size + b
                grown = or_map[d][cur]
                if grown & ~pos[q]:
                    pos[q] |= grown
                    pending.append(q)
            # cut with (a, b) as main premise pair
            acc = cur
            m = cur
            while m:
                d = (m & -m).bit_length() - 1
                m &= m - 1
                e_bits = cur
                while e_bits:
                    e = (e_bits & -e_bits).bit_length() - 1
                    e_bits &= e_bits - 1
                    acc |= pos[d * size + e]
                if acc & ~cur:
                    break
            if acc & ~cur:
                pos[p] = acc
                pending.append(p)
                continue
            # cut with (a, b) as side premise pair: mains holding both
            # a and b as conclusions absorb this pair's conclusions
            need = (1 << a) | (1 << b)
            for q in range(self.n_pairs):
                if pos[q] & need == need and cur & ~pos[q]:
                    pos[q] |= cur
                    pending.append(q)
        for p in range(self.n_pairs):
            if pos[p] & neg[p]:
                return False
        return True

    def first_undecided(self, state) -> tuple[int, int] | None:
        pos, neg = state
        for p in range(self.n_pairs):
            free = self.row & ~(pos[p] | neg[p])
            if free:
                return p, (free & -free).bit_length() - 1
        return None

    def search(self, state, emit) -> None:
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise SizeCapError("relation enumeration timed out")
        spot = self.first_undecided(state)
        if spot is None:
            emit(state)
            return
        p, c = spot
        for positive in (True, False):
            pos, neg = state
            child = (list(pos), list(neg))
            if positive:
                child[0][p] |= 1 << c
                ok = self.propagate(child, [p])
            else:
                child[1][p] |= 1 << c
                ok = child[0][p] & child[1][p] == 0
            if ok:
                self.search(child, emit)

    def frontier(self, state, width: int) -> list:
        """Expand the search tree breadth-first into at least ``width``
        independent subproblems (for parallel execution)."""
        frontier = [state]
        while len(frontier) < width:
            grown = []
            advanced = False
            for st in frontier:
                spot = self.first_undecided(st)
                if spot is None:
                    grown.append(st)
                    continue
                advanced = True
                p, c = spot
                for positive in (True, False):
                    child = (list(st[0]), list(st[1]))
                    if positive:
                        child[0][p] |= 1 << c
                        ok = self.propagate(child, [p])
                    else:
                        child[1][p] |= 1 << c
                        ok = child[0][p] & child[1][p] == 0
                    if ok:
                        grown.append(child)
            frontier = grown
            if not advanced:
                break
        return frontier


def _state_bits(state, size: int) -> int:
    # triple (a, b, c) sits at bit p*size + c for pair index p = a*size + b
    bits = 0
    for p, mask in enumerate(state[0]):
        bits |= mask << (p * size)
    return bits


def enumerate_ecas(
    alg: FiniteBooleanAlgebra,
    workers: int = 1,
    timeout_s: float | None = None,
) -> list[TernaryRelation]:
    """All relations satisfying the entailment axioms, one canonical
    representative per automorphism orbit, sorted by canonical bitset.

    Exact up to two atoms; three atoms runs best-effort under a timeout
    (default 60 s) and larger algebras are refused.
    """
    if alg.atom_count > ENUM_MAX_ATOMS_BEST_EFFORT:
        raise SizeCapError("relation enumeration capped at 3 atoms")
    if alg.atom_count == ENUM_MAX_ATOMS_BEST_EFFORT and timeout_s is None:
        timeout_s = 60.0
    deadline = None if timeout_s is None else time.monotonic() + timeout_s
    searcher = _RelationSearch(alg, deadline)
    root = searcher.initial_state()
    found: set[int] = set()
    size = alg.size
    if root is not None:
        if workers <= 1:
            searcher.search(root, lambda st: found.add(_state_bits(st, size)))
        else:
            tasks = searcher.frontier(root, width=workers)

            def run(st) -> set[int]:
                local: set[int] = set()
                searcher.search(st, lambda s: local.add(_state_bits(s, size)))
                return local

            with ThreadPoolExecutor(max_workers=workers) as pool:
                for part in pool.map(run, tasks):
                    found |= part
    canon = sorted({canonical_relation_bits(alg, bits) for bits in found})
    return [TernaryRelation(alg, bits) for bits in canon]


# ---------------------------------------------------------------------------
# operator enumeration


@dataclass(frozen=True)
class OperatorEnumeration:
    operators: tuple[TernaryOperator, ...]
    label: str

    @property
    def exhaustive(self) -> bool:
        return not self.label.startswith("sampled")


def brute_force_operators(
    alg: FiniteBooleanAlgebra, axioms: list[Sentence]
) -> list[TernaryOperator]:
    """Naive oracle over every table; single-atom algebras only."""
    if alg.atom_count != 1:
        raise SizeCapError("brute force over all operator tables needs a single atom")
    n = alg.size ** 3
    out = []
    for packed in range(alg.size ** n):
        table = []
        x = packed
        for _ in range(n):
            table.append(x % alg.size)
            x //= alg.size
        op = TernaryOperator(alg, tuple(table))
        if sentence_holds_everywhere(axioms, op):
            out.append(op)
    return out


def enumerate_operators(
    alg: FiniteBooleanAlgebra,
    axioms: list[Sentence],
    mode: str = "auto",
    sample_count: int = 200,
    seed: int = DEFAULT_SEED,
) -> OperatorEnumeration:
    """Operator tables satisfying every sentence of ``axioms``, canonical
    up to automorphism.

    Modes: "exhaustive" (single atom only; anything larger is refused
    outright rather than silently sampled), "relational" (tables valued in
    {0, top}, via the relation enumerator), "sampled" (seeded, labelled,
    never claimed exhaustive).  "auto" picks exhaustive for one atom and
    relational for two.
    """
    if mode == "auto":
        mode = "exhaustive" if alg.atom_count == 1 else "relational"
    if mode == "exhaustive":
        if alg.atom_count != 1:
            raise SizeCapError(
                "exhaustive operator enumeration is infeasible beyond one atom; "
                "request relational or sampled mode explicitly"
            )
        ops = brute_force_operators(alg, axioms)
        tables = sorted({canonical_operator_table(alg, op.table) for op in ops})
        return OperatorEnumeration(
            tuple(TernaryOperator(alg, t) for t in tables), "exhaustive"
        )
    if mode == "relational":
        if alg.atom_count > ENUM_MAX_ATOMS_EXACT:
            raise SizeCapError("relational enumeration capped at 2 atoms")
        ops = [rel_to_op(rel) for rel in enumerate_ecas(alg)]
        ops = [op for op in ops if sentence_holds_everywhere(axioms, op)]
        tables = sorted({canonical_operator_table(alg, op.table) for op in ops})
        return OperatorEnumeration(
            tuple(TernaryOperator(alg, t) for t in tables), "relational-exhaustive"
        )
    if mode == "sampled":
        rng = random.Random(seed)
        base = smallest_diamond(alg)
        candidates: list[tuple[int, ...]] = []
        # random tables rarely satisfy the laws; join random relational
        # tables onto the least pseudo-inference operator to keep yield up
        relational_pool = (
            [rel_to_op(rel) for rel in enumerate_ecas(alg)]
            if alg.atom_count <= ENUM_MAX_ATOMS_EXACT
            else []
        )
        for _ in range(sample_count):
            table = tuple(rng.randrange(alg.size) for _ in range(alg.size ** 3))
            candidates.append(table)
            if relational_pool:
                other = rng.choice(relational_pool)
                candidates.append(
                    tuple(x | y for x, y in zip(base.table, other.table))
                )
        kept = set()
        for table in candidates:
            op = TernaryOperator(alg, table)
            if sentence_holds_everywhere(axioms, op):
                kept.add(canonical_operator_table(alg, table))
        return OperatorEnumeration(
            tuple(TernaryOperator(alg, t) for t in sorted(kept)),
            f"sampled(seed={seed})",
        )
    raise ValueError(f"unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# structured pseudo-inference tables
#
# The distribution laws make any candidate determined by its values on atom
# pairs: dia(a, b, c) is the join of m(u, v, c) over atoms u <= a, v <= b.
# Conversely the axioms force m symmetric, monotone in c, zero off the
# common support of u and v, and at least u on the diagonal, so sweeping
# exactly those maps and filtering with the full checker enumerates every
# pseudo-inference table (exhaustively for at most two atoms).


def _assemble_from_atom_maps(alg, m) -> TernaryOperator:
    atoms = alg.atoms()
    size = alg.size
    table = []
    for a in range(size):
        for b in range(size):
            row_pairs = [
                (u, v)
                for u in atoms
                if a & u
                for v in atoms
                if b & v
            ]
            for c in range(size):
                out = 0
                for u, v in row_pairs:
                    key = (u, v) if (u, v) in m else (v, u)
                    out |= m[key].get(c, 0)
                table.append(out)
    return TernaryOperator(alg, tuple(table))


def _atom_pair_supports(alg) -> dict[tuple[int, int], list[int]]:
    atoms = alg.atoms()
    return {
        (u, v): [c for c in alg.elements() if c & u and c & v]
        for i, u in enumerate(atoms)
        for v in atoms[i:]
    }


def _monotone_ok(support: list[int], m: dict[int, int]) -> bool:
    return all(
        m[c] & m[c2] == m[c]
        for c in support
        for c2 in support
        if c & c2 == c
    )


def enumerate_psi_operators(alg: FiniteBooleanAlgebra) -> list[TernaryOperator]:
    """Every pseudo-inference table on the algebra, canonically ordered.

    Exhaustive by the atom-pair decomposition; capped at two atoms, where
    the candidate space is still desk-scale.
    """
    if alg.atom_count > ENUM_MAX_ATOMS_EXACT:
        raise SizeCapError("exhaustive pseudo-inference enumeration capped at 2 atoms")
    from itertools import product as iproduct

    supports = _atom_pair_supports(alg)
    per_pair: list[list[dict[int, int]]] = []
    pairs = list(supports)
    for (u, v) in pairs:
        sup = supports[(u, v)]
        options = []
        for assign in iproduct(range(alg.size), repeat=len(sup)):
            m = dict(zip(sup, assign))
            if not _monotone_ok(sup, m):
                continue
            if u == v and not all((u & c) & m[c] == (u & c) for c in sup):
                continue
            options.append(m)
        per_pair.append(options)
    found = set()
    for combo in iproduct(*per_pair):
        op = _assemble_from_atom_maps(alg, dict(zip(pairs, combo)))
        if check_psi_quiet(op):
            found.add(canonical_operator_table(alg, op.table))
    return [TernaryOperator(alg, t) for t in sorted(found)]


def check_psi_quiet(op: TernaryOperator) -> bool:
    from .ternary_operator import check_3bamo, check_psi

    return check_3bamo(op).passed and check_psi(op).passed


def sample_psi_operators(
    alg: FiniteBooleanAlgebra, count: int, seed: int = DEFAULT_SEED, attempts: int = 400
) -> list[TernaryOperator]:
    """Seeded pseudo-inference samples via random structured atom maps,
    filtered by the full checker.  Deterministic for a fixed seed."""
    rng = random.Random(seed)
    supports = _atom_pair_supports(alg)
    pairs = list(supports)
    found: dict[tuple[int, ...], TernaryOperator] = {}
    by_popcount = sorted(alg.elements(), key=lambda c: (bin(c).count("1"), c))
    for _ in range(attempts):
        if len(found) >= count:
            break
        m: dict[tuple[int, int], dict[int, int]] = {}
        for (u, v) in pairs:
            sup = supports[(u, v)]
            vals: dict[int, int] = {}
            for c in by_popcount:
                if c not in sup:
                    continue
                lower = 0
                for c2 in sup:
                    if c2 != c and c2 & c == c2 and c2 in vals:
                        lower |= vals[c2]
                if u == v:
                    lower |= u & c
                vals[c] = lower | rng.randrange(alg.size)
            m[(u, v)] = vals
        op = _assemble_from_atom_maps(alg, m)
        if check_psi_quiet(op):
            found.setdefault(op.table, op)
    return list(found.values())


def sample_3bamos(
    alg: FiniteBooleanAlgebra, count: int, seed: int = DEFAULT_SEED, attempts: int = 400
) -> list[TernaryOperator]:
    """Seeded monotone-operator samples: independent random monotone maps
    per ordered atom pair, assembled by joins (the distribution laws then
    hold by construction; the checker confirms)."""
    from .ternary_operator import check_3bamo

    rng = random.Random(seed)
    atoms = alg.atoms()
    by_popcount = sorted(alg.elements(), key=lambda c: (bin(c).count("1"), c))
    found: dict[tuple[int, ...], TernaryOperator] = {}
    for _ in range(attempts):
        if len(found) >= count:
            break
        m: dict[tuple[int, int], dict[int, int]] = {}
        for u in atoms:
            for v in atoms:
                vals = {0: 0}
                for c in by_popcount:
                    if c == 0:
                        continue
                    lower = 0
                    for c2 in alg.elements():
                        if c2 != c and c2 & c == c2 and c2 in vals:
                            lower |= vals[c2]
                    vals[c] = lower | rng.randrange(alg.size)
                m[(u, v)] = vals
        size = alg.size
        table = []
        for a in range(size):
            for b in range(size):
                sel = [
                    m[(u, v)] for u in atoms if a & u for v in atoms if b & v
                ]
                for c in range(size):
                    out = 0
                    for vals in sel:
                        out |= vals[c]
                    table.append(out)
        op = TernaryOperator(alg, tuple(table))
        if check_3bamo(op).passed:
            found.setdefault(op.table, op)
    return list(found.values())


# ---------------------------------------------------------------------------
# counterexample search


@dataclass(frozen=True)
class CounterexampleResult:
    found: bool
    searched: int
    space_label: str
    operator: TernaryOperator | None = None
    assignment: dict[str, int] | None = None

    @property
    def exhausted_certificate(self) -> str | None:
        if self.found:
            return None
        return f"no counterexample among {self.searched} structures ({self.space_label})"


def find_counterexample(
    sentence: Sentence,
    alg: FiniteBooleanAlgebra,
    axioms: list[Sentence],
    mode: str = "auto",
) -> CounterexampleResult:
    """First structure (in canonical enumeration order) falsifying the
    sentence, or a certificate that the swept space contains none."""
    enum = enumerate_operators(alg, axioms, mode=mode)
    for op in enum.operators:
        ok, assignment = holds(sentence, op)
        if not ok:
            return CounterexampleResult(
                True, len(enum.operators), enum.label, op, assignment
            )
    return CounterexampleResult(False, len(enum.operators), enum.label)
