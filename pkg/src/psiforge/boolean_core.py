"""Finite Boolean algebras as powerset algebras on named atoms.

Every finite Boolean algebra is, up to isomorphism, the powerset algebra on
its atoms, so the carrier here is the set of bitmasks over k atoms: join,
meet and complement are single int operations, filters are principal, and
ultrafilters coincide with atoms.  All values are immutable; every function
is pure.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .errors import SizeCapError

# Hard cap on atom count: exhaustive sweeps over |A|^5 tuples and dense
# |A|^3 operator tables explode beyond this.
MAX_ATOMS = 6


@dataclass(frozen=True)
class FiniteBooleanAlgebra:
    """Powerset algebra on ``atom_count`` atoms.

    Elements are the ints 0 .. 2**atom_count - 1 read as atom-subset
    bitmasks; 0 is bottom and the full mask is top.
    """

    atom_count: int
    atom_names: tuple[str, ...]

    @property
    def size(self) -> int:
        return 1 << self.atom_count

    @property
    def top(self) -> int:
        return self.size - 1

    def elements(self) -> range:
        return range(self.size)

    def atoms(self) -> list[int]:
        return [1 << i for i in range(self.atom_count)]

    def contains(self, a: int) -> bool:
        return 0 <= a < self.size

    def join(self, a: int, b: int) -> int:
        return a | b

    def meet(self, a: int, b: int) -> int:
        return a & b

    def neg(self, a: int) -> int:
        return self.top ^ a

    def leq(self, a: int, b: int) -> bool:
        return a & b == a

    def implies(self, a: int, b: int) -> int:
        return self.neg(a) | b

    def xor(self, a: int, b: int) -> int:
        return a ^ b

    def to_json(self) -> dict:
        return {"atoms": self.atom_count, "names": list(self.atom_names)}


def make_algebra(k: int, names: list[str] | None = None) -> FiniteBooleanAlgebra:
    """Build the powerset algebra on k atoms, 1 <= k <= MAX_ATOMS.

    k = 0 would be the degenerate one-element algebra (0 = 1), which is
    excluded; larger k is rejected to keep exhaustive checks desk-scale.
    """
    if k < 1:
        raise SizeCapError("degenerate algebra: need at least 1 atom")
    if k > MAX_ATOMS:
        raise SizeCapError(f"atom count {k} exceeds hard cap {MAX_ATOMS}")
    if names is None:
        names = [f"a{i}" for i in range(k)]
    if len(names) != k or len(set(names)) != k:
        raise ValueError("atom_names must be k distinct identifiers")
    return FiniteBooleanAlgebra(k, tuple(names))


def algebra_from_json(data: dict) -> FiniteBooleanAlgebra:
    return make_algebra(int(data["atoms"]), data.get("names"))


_BOOL_OPS = {"join": 2, "meet": 2, "neg": 1, "leq": 2, "implies": 2}


def bool_eval(alg: FiniteBooleanAlgebra, op: str, args: tuple[int, ...]):
    """Evaluate a named Boolean operation; leq returns a bool, the rest masks."""
    if op not in _BOOL_OPS:
        raise ValueError(f"unknown Boolean operation {op!r}")
    if len(args) != _BOOL_OPS[op]:
        raise ValueError(f"{op} expects {_BOOL_OPS[op]} arguments, got {len(args)}")
    for a in args:
        if not alg.contains(a):
            raise ValueError(f"element {a} outside carrier of size {alg.size}")
    if op == "join":
        return alg.join(*args)
    if op == "meet":
        return alg.meet(*args)
    if op == "neg":
        return alg.neg(args[0])
    if op == "leq":
        return alg.leq(*args)
    return alg.implies(*args)


@dataclass(frozen=True)
class Filter:
    """Principal filter [generator) = {a : generator <= a}.

    In a finite Boolean algebra every filter is principal, so one element
    is enough.  generator = top gives the trivial filter {1}; generator = 0
    gives the improper filter A.
    """

    alg: FiniteBooleanAlgebra
    generator: int

    def __contains__(self, a: int) -> bool:
        return self.alg.leq(self.generator, a)

    def members(self) -> list[int]:
        g = self.generator
        return [a for a in self.alg.elements() if g & a == g]

    @property
    def is_trivial(self) -> bool:
        return self.generator == self.alg.top

    @property
    def is_improper(self) -> bool:
        return self.generator == 0


def beta(alg: FiniteBooleanAlgebra, a: int) -> frozenset[int]:
    """Stone map: the set of ultrafilters containing a.

    Ultrafilters are identified with atoms, and an atom-ultrafilter
    contains a exactly when the atom lies below a.
    """
    if not alg.contains(a):
        raise ValueError(f"element {a} outside carrier")
    return frozenset(at for at in alg.atoms() if at & a)


def filter_to_closedset(f: Filter) -> frozenset[int]:
    """The closed set of ultrafilters extending the filter: {U : F subset U}."""
    return beta(f.alg, f.generator)


def closedset_to_filter(alg: FiniteBooleanAlgebra, ultrafilters: frozenset[int] | set[int]) -> Filter:
    """The filter of elements whose Stone image contains the given set.

    Equals the principal filter of the join of the set's atoms; the empty
    set maps to the improper filter A.
    """
    g = 0
    for at in ultrafilters:
        g |= at
    return Filter(alg, g)


def filter_closedset_maps(alg: FiniteBooleanAlgebra, value):
    """Dispatch between the two mutually inverse antitone maps."""
    if isinstance(value, Filter):
        return filter_to_closedset(value)
    return closedset_to_filter(alg, value)


def automorphisms(alg: FiniteBooleanAlgebra) -> list[tuple[int, ...]]:
    """All atom permutations, each given as a tuple perm with perm[i] = image index."""
    return [tuple(p) for p in permutations(range(alg.atom_count))]


def apply_automorphism(alg: FiniteBooleanAlgebra, perm: tuple[int, ...], a: int) -> int:
    """Extend an atom permutation to an element by permuting mask bits."""
    out = 0
    for i in range(alg.atom_count):
        if a >> i & 1:
            out |= 1 << perm[i]
    return out
