"""Boolean homomorphisms between finite algebras, the operator-morphism
classes (semi / hemi / full), their dual frame maps, and the entailment
morphism classes (reflecting / preserving / similarity).

Finite Stone duality for maps: a homomorphism h from A to B is stored by
its dual atom map, sending each atom of B to an atom of A; h itself is
recovered as h(a) = {t in atoms(B) : atom_map(t) <= a}.  Every atom map
induces a homomorphism, so construction cannot fail and the preservation
check is a self-check.

Duality of morphisms.  With f = h^{-1} mapping the dual frame of the
TARGET algebra to the dual frame of the SOURCE, the semi inequality
(h dia <= dia h) corresponds to the existential lifting condition Sp3 on
f, and the hemi inequality to the forward preservation condition Sp2.
The two named map classes (semi-PSI = Sp1+Sp2, hemi-PSI = Sp1+Sp3) thus
pair up crosswise with the algebra classes; morphism_duality_check asserts
exactly this proved pairing.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .boolean_core import FiniteBooleanAlgebra, algebra_from_json
from .contact_relation import TernaryRelation, check_eca, rel_to_op
from .duality_frames import PsiFrame, dual_frame
from .errors import InternalCheckError, PreconditionError
from .report import AxiomResult, CheckReport, failed, first_violation as _first, passed
from .ternary_operator import TernaryOperator, check_psi


@dataclass(frozen=True)
class BooleanHom:
    """Homomorphism source -> target via its dual atom map.

    atom_map[t] is the source-atom index assigned to target atom t.
    """

    source: FiniteBooleanAlgebra
    target: FiniteBooleanAlgebra
    atom_map: tuple[int, ...]

    def __post_init__(self):
        if len(self.atom_map) != self.target.atom_count:
            raise ValueError("atom_map must cover every target atom")
        for i in self.atom_map:
            if not 0 <= i < self.source.atom_count:
                raise ValueError(f"atom index {i} outside source atoms")

    def __call__(self, a: int) -> int:
        out = 0
        for t, i in enumerate(self.atom_map):
            if a >> i & 1:
                out |= 1 << t
        return out

    @property
    def is_bijective(self) -> bool:
        return (
            self.source.atom_count == self.target.atom_count
            and len(set(self.atom_map)) == self.target.atom_count
        )

    def inverse(self) -> "BooleanHom":
        if not self.is_bijective:
            raise ValueError("only bijective homomorphisms invert")
        inv = [0] * self.source.atom_count
        for t, i in enumerate(self.atom_map):
            inv[i] = t
        return BooleanHom(self.target, self.source, tuple(inv))

    def compose(self, inner: "BooleanHom") -> "BooleanHom":
        """self after inner: inner maps A -> B, self maps B -> C."""
        if inner.target is not self.source and inner.target != self.source:
            raise ValueError("composition mismatch")
        return BooleanHom(
            inner.source,
            self.target,
            tuple(inner.atom_map[i] for i in self.atom_map),
        )

    def to_json(self) -> dict:
        return {
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "atom_map": list(self.atom_map),
        }


def make_hom(
    source: FiniteBooleanAlgebra, target: FiniteBooleanAlgebra, atom_map
) -> BooleanHom:
    """Build the homomorphism induced by an atom map and self-check that it
    preserves the Boolean structure."""
    h = BooleanHom(source, target, tuple(atom_map))
    for a in source.elements():
        for b in source.elements():
            if h(a | b) != h(a) | h(b) or h(a & b) != h(a) & h(b):
                raise InternalCheckError("induced map fails join/meet preservation")
        if h(source.neg(a)) != target.neg(h(a)):
            raise InternalCheckError("induced map fails complement preservation")
    if h(0) != 0 or h(source.top) != target.top:
        raise InternalCheckError("induced map fails 0/1 preservation")
    return h


def hom_from_json(data: dict) -> BooleanHom:
    return make_hom(
        algebra_from_json(data["source"]),
        algebra_from_json(data["target"]),
        tuple(int(i) for i in data["atom_map"]),
    )


def enumerate_homs(
    source: FiniteBooleanAlgebra, target: FiniteBooleanAlgebra
) -> list[BooleanHom]:
    """All homomorphisms source -> target (one per atom map)."""
    return [
        BooleanHom(source, target, am)
        for am in product(range(source.atom_count), repeat=target.atom_count)
    ]


@dataclass(frozen=True)
class MorphismClassification:
    semi: bool
    hemi: bool
    semi_witness: tuple[int, int, int] | None = None
    hemi_witness: tuple[int, int, int] | None = None

    @property
    def full(self) -> bool:
        return self.semi and self.hemi


def classify_psi_morphism(
    h: BooleanHom, op_source: TernaryOperator, op_target: TernaryOperator
) -> MorphismClassification:
    """semi: h(dia(a,b,c)) <= dia(h a, h b, h c) for all source triples;
    hemi: the reverse inequality; full is the conjunction."""
    if op_source.alg != h.source or op_target.alg != h.target:
        raise ValueError("operators do not live on the homomorphism's algebras")
    semi_w = hemi_w = None
    for a in h.source.elements():
        for b in h.source.elements():
            for c in h.source.elements():
                lhs = h(op_source(a, b, c))
                rhs = op_target(h(a), h(b), h(c))
                if semi_w is None and not h.target.leq(lhs, rhs):
                    semi_w = (a, b, c)
                if hemi_w is None and not h.target.leq(rhs, lhs):
                    hemi_w = (a, b, c)
                if semi_w is not None and hemi_w is not None:
                    return MorphismClassification(False, False, semi_w, hemi_w)
    return MorphismClassification(semi_w is None, hemi_w is None, semi_w, hemi_w)


def _image_mask(f: tuple[int, ...], y: int) -> int:
    out = 0
    for i, fi in enumerate(f):
        if y >> i & 1:
            out |= 1 << fi
    return out


def classify_frame_map(
    f: tuple[int, ...], frame1: PsiFrame, frame2: PsiFrame
) -> CheckReport:
    """Check the three map conditions for f : X1 -> X2 (f[i] = image point).

    Sp1 (preimages of clopens are clopen) is automatic on finite discrete
    spaces.  Sp2: R1-related triples push forward along f.  Sp3: whenever
    f(x) reaches Z in R2, some Y in R1(x) has componentwise image inside Z.
    """
    if len(f) != frame1.point_count:
        raise ValueError("map must be defined on every point of the first frame")
    for p in f:
        if not 0 <= p < frame2.point_count:
            raise ValueError(f"image point {p} outside the second frame")

    results = [passed("Sp1", "trivially satisfied (finite discrete space)")]

    def sp2():
        for x, y1, y2, y3 in sorted(frame1.entries):
            img = (f[x], _image_mask(f, y1), _image_mask(f, y2), _image_mask(f, y3))
            if img not in frame2.entries:
                yield (x, y1, y2, y3)

    def sp3():
        for x in range(frame1.point_count):
            rx = sorted(frame1.r_of(x))
            for x2, z1, z2, z3 in sorted(frame2.entries):
                if x2 != f[x]:
                    continue
                ok = any(
                    _image_mask(f, y1) & z1 == _image_mask(f, y1)
                    and _image_mask(f, y2) & z2 == _image_mask(f, y2)
                    and _image_mask(f, y3) & z3 == _image_mask(f, y3)
                    for (y1, y2, y3) in rx
                )
                if not ok:
                    yield (x, z1, z2, z3)

    results.append(_first("Sp2", sp2()))
    results.append(_first("Sp3", sp3()))
    return CheckReport("frame-map", tuple(results))


def dual_map(h: BooleanHom) -> tuple[int, ...]:
    """The dual point map runs from the target's dual frame to the
    source's and is the atom map itself under the atom identification."""
    return h.atom_map


def morphism_duality_check(
    h: BooleanHom, op_source: TernaryOperator, op_target: TernaryOperator
) -> CheckReport:
    """Assert the morphism-level duality for one homomorphism:

      semi  iff  the dual map satisfies Sp3,
      hemi  iff  the dual map satisfies Sp2,
      full  iff  both,

    plus the round trip: the algebra map induced by the dual point map via
    clopen preimages is h again.
    """
    for op, name in ((op_source, "source"), (op_target, "target")):
        rep = check_psi(op)
        if not rep.passed:
            bad = rep.failures()[0]
            raise PreconditionError(
                f"morphism_duality_check requires pseudo-inference operators; "
                f"{name} fails {bad.axiom} at {bad.witness}"
            )
    mc = classify_psi_morphism(h, op_source, op_target)
    frame_target = dual_frame(op_target, monotone=True)
    frame_source = dual_frame(op_source, monotone=True)
    f = dual_map(h)
    fm = classify_frame_map(f, frame_target, frame_source)
    sp2 = fm.result("Sp2").passed
    sp3 = fm.result("Sp3").passed

    results = [
        _bicond("semi-iff-Sp3", mc.semi, sp3),
        _bicond("hemi-iff-Sp2", mc.hemi, sp2),
        _bicond("full-iff-Sp2-and-Sp3", mc.full, sp2 and sp3),
    ]

    # round trip: preimage along the dual point map recovers h elementwise
    roundtrip = passed("hom-roundtrip")
    for a in h.source.elements():
        pre = 0
        for t in range(h.target.atom_count):
            if a >> f[t] & 1:
                pre |= 1 << t
        if pre != h(a):
            roundtrip = failed("hom-roundtrip", (a,))
            break
    results.append(roundtrip)
    return CheckReport("morphism-duality", tuple(results))


def _bicond(name: str, lhs: bool, rhs: bool) -> AxiomResult:
    note = f"algebra-side={lhs} frame-side={rhs}"
    return passed(name, note) if lhs == rhs else failed(name, (), note)


@dataclass(frozen=True)
class EcaMorphismClassification:
    reflecting: bool
    preserving: bool
    reflecting_witness: tuple[int, int, int] | None = None
    preserving_witness: tuple[int, int, int] | None = None

    @property
    def similarity(self) -> bool:
        return self.reflecting and self.preserving


def classify_eca_morphism(
    h: BooleanHom, rel_source: TernaryRelation, rel_target: TernaryRelation
) -> tuple[EcaMorphismClassification, CheckReport]:
    """Classify h against two entailment relations and verify the three
    equivalences with the operator-side classification of the translated
    operators: reflecting = semi, preserving = hemi, similarity = full.
    """
    for rel, name in ((rel_source, "source"), (rel_target, "target")):
        rep = check_eca(rel)
        if not rep.passed:
            bad = rep.failures()[0]
            raise PreconditionError(
                f"classify_eca_morphism requires EC relations; "
                f"{name} fails {bad.axiom} at {bad.witness}"
            )
    if rel_source.alg != h.source or rel_target.alg != h.target:
        raise ValueError("relations do not live on the homomorphism's algebras")

    refl_w = pres_w = None
    for a in h.source.elements():
        for b in h.source.elements():
            for c in h.source.elements():
                src = rel_source.holds(a, b, c)
                tgt = rel_target.holds(h(a), h(b), h(c))
                if refl_w is None and tgt and not src:
                    refl_w = (a, b, c)
                if pres_w is None and src and not tgt:
                    pres_w = (a, b, c)
    cls = EcaMorphismClassification(refl_w is None, pres_w is None, refl_w, pres_w)

    mc = classify_psi_morphism(h, rel_to_op(rel_source), rel_to_op(rel_target))
    results = (
        _bicond("reflecting-iff-semi", cls.reflecting, mc.semi),
        _bicond("preserving-iff-hemi", cls.preserving, mc.hemi),
        _bicond("similarity-iff-full", cls.similarity, mc.full),
    )
    return cls, CheckReport("eca-morphism", results)
