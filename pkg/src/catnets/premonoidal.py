"""Sequential tensors on the processes that share a fixed catalyst stock.

Fix an amount ``i`` of catalysts.  Two processes that each need the full
stock cannot run side by side, but they can run one after the other, and
there are two ways to schedule that: second argument first (``otimes_after``)
or first argument first (``otimes_before``).  Neither satisfies the
interchange law, so neither is a monoidal tensor; what survives is the
premonoidal structure: a tensor of objects plus whiskering of a morphism
by an object on either side, associative, unital, and functorial in each
argument separately.  :func:`check_premonoidal_laws` verifies those laws
bounded-exhaustively, and :func:`find_interchange_witness` searches for
concrete interchange failures.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BoundsTooLarge, GradeMismatch
from .groth import CatalystList, p_of
from .nets import CatalystNet, Marking
from .oracle import EnumerationBudget, enumerate_morphisms
from .terms import (
    CanonicalProcess,
    FiringSequence,
    Grade,
    canonical_compose,
    canonical_identity,
    canonicalize,
)

__all__ = [
    "GradedMorphism",
    "PremonoidalHandle",
    "otimes_after",
    "otimes_before",
    "whisker_left",
    "whisker_right",
    "box_objects",
    "check_premonoidal_laws",
    "find_interchange_witness",
    "premonoidal_of",
]


@dataclass(frozen=True)
class GradedMorphism:
    """A canonical process whose endpoints both carry catalyst content
    exactly ``grade``."""

    cnet: CatalystNet
    grade: Grade
    f: CanonicalProcess

    def __post_init__(self):
        for end in (self.f.dom, self.f.cod):
            if end.project(self.cnet.catalysts) != self.grade:
                raise GradeMismatch(
                    f"endpoint {end!r} does not carry catalyst content {self.grade!r}"
                )

    @property
    def free_dom(self) -> Marking:
        """Catalyst-free part of the domain."""
        return self.f.dom.without(self.cnet.catalysts)

    @property
    def free_cod(self) -> Marking:
        return self.f.cod.without(self.cnet.catalysts)


def _require_free(cnet: CatalystNet, m: Marking):
    if m.project(cnet.catalysts):
        raise GradeMismatch(f"{m!r} contains catalysts; whiskering takes a catalyst-free part")


def _same_grade(f: GradedMorphism, g: GradedMorphism):
    if f.cnet is not g.cnet and f.cnet != g.cnet:
        raise GradeMismatch("morphisms live over different nets")
    if f.grade != g.grade:
        raise GradeMismatch(f"grades differ: {f.grade!r} vs {g.grade!r}")


def otimes_after(f: GradedMorphism, g: GradedMorphism) -> GradedMorphism:
    """Schedule ``g`` first, then ``f``, over the shared catalyst stock."""
    _same_grade(f, g)
    dom = f.grade + f.free_dom + g.free_dom
    seq = FiringSequence(dom, g.f.steps + f.f.steps)
    return GradedMorphism(f.cnet, f.grade, canonicalize(seq))


def otimes_before(f: GradedMorphism, g: GradedMorphism) -> GradedMorphism:
    """Schedule ``f`` first, then ``g``; the mirror of :func:`otimes_after`."""
    _same_grade(f, g)
    dom = f.grade + f.free_dom + g.free_dom
    seq = FiringSequence(dom, f.f.steps + g.f.steps)
    return GradedMorphism(f.cnet, f.grade, canonicalize(seq))


def whisker_left(a: Marking, g: GradedMorphism) -> GradedMorphism:
    """Tensor with an idle catalyst-free marking: the image of ``g`` under
    the object ``grade + a`` acting on the left."""
    _require_free(g.cnet, a)
    seq = FiringSequence(g.f.dom + a, g.f.steps)
    return GradedMorphism(g.cnet, g.grade, canonicalize(seq))


def whisker_right(f: GradedMorphism, a2: Marking) -> GradedMorphism:
    _require_free(f.cnet, a2)
    seq = FiringSequence(f.f.dom + a2, f.f.steps)
    return GradedMorphism(f.cnet, f.grade, canonicalize(seq))


def box_objects(o1: Marking, o2: Marking, i: Grade, cnet: CatalystNet) -> Marking:
    """Tensor of objects in the graded sense: catalyst stock shared, free
    parts concatenated."""
    for o in (o1, o2):
        if o.project(cnet.catalysts) != i:
            raise GradeMismatch(f"object {o!r} does not carry catalyst content {i!r}")
    return i + o1.without(cnet.catalysts) + o2.without(cnet.catalysts)


@dataclass(frozen=True)
class PremonoidalHandle:
    """The processes at a fixed catalyst stock, with the sequential tensor.

    Morphisms between catalyst lists act trivially here: lists with equal
    content give handles with equal grade.
    """

    cnet: CatalystNet
    grade: Grade

    def lift(self, f: CanonicalProcess) -> GradedMorphism:
        return GradedMorphism(self.cnet, self.grade, f)

    def identity(self, free_part: Marking) -> GradedMorphism:
        _require_free(self.cnet, free_part)
        return self.lift(canonical_identity(self.grade + free_part))


def premonoidal_of(cnet: CatalystNet, x: CatalystList) -> PremonoidalHandle:
    return PremonoidalHandle(cnet, p_of(x))


def _enumerate_graded(
    cnet: CatalystNet, i: Grade, dom_pool, max_firings: int, budget: EnumerationBudget
) -> list[GradedMorphism]:
    budget = EnumerationBudget(max_firings, budget.max_states, budget.max_pairs)
    out = []
    seen = set()
    for dom in dom_pool:
        if dom.project(cnet.catalysts) != i:
            raise GradeMismatch(f"pool marking {dom!r} is not in grade {i!r}")
        for f in enumerate_morphisms(cnet, dom, budget):
            if f not in seen:
                seen.add(f)
                out.append(GradedMorphism(cnet, i, f))
    return out


def check_premonoidal_laws(
    cnet: CatalystNet,
    i: Grade,
    dom_pool,
    max_firings: int,
    budget: EnumerationBudget | None = None,
) -> list[dict]:
    """Bounded-exhaustive verification of the premonoidal laws at grade ``i``.

    Checks, over every morphism enumerated from the pool and every
    catalyst-free part in scope: unit laws for the object ``i``,
    associativity of the object tensor and of whiskering (including the
    mixed form), and functoriality of whiskering in each argument.  The
    laws are theorems; the checker's job is to catch implementation bugs.
    """
    budget = budget or EnumerationBudget()
    morphisms = _enumerate_graded(cnet, i, dom_pool, max_firings, budget)
    objects = sorted(
        {f.f.dom for f in morphisms} | {f.f.cod for f in morphisms} | {i},
        key=lambda m: m.items(),
    )
    frees = sorted(
        {o.without(cnet.catalysts) for o in objects} | {Marking.zero()},
        key=lambda m: m.items(),
    )
    composable = [
        (f, g) for f in morphisms for g in morphisms if f.f.cod == g.f.dom
    ]
    work = (
        len(objects) * len(objects)
        + len(frees) ** 2 * len(morphisms)
        + len(frees) * len(composable)
    )
    if work > budget.max_pairs:
        raise BoundsTooLarge(
            f"law check needs {work} comparisons, budget allows {budget.max_pairs}"
        )

    report = []

    def law(name, failures):
        entry = {"law": name, "status": "pass" if not failures else "fail"}
        if failures:
            entry["counterexample"] = failures[0]
        report.append(entry)

    net = cnet.net
    fails = []
    for o in objects:
        if box_objects(i, o, i, cnet) != o or box_objects(o, i, i, cnet) != o:
            fails.append({"object": o.show(net)})
    law("unit-object", fails)

    fails = []
    for f in morphisms:
        if whisker_left(Marking.zero(), f) != f or whisker_right(f, Marking.zero()) != f:
            fails.append({"morphism": f.f.show(net)})
    law("unit-whisker", fails)

    fails = []
    for o1 in objects:
        for o2 in objects:
            for o3 in objects:
                lhs = box_objects(box_objects(o1, o2, i, cnet), o3, i, cnet)
                rhs = box_objects(o1, box_objects(o2, o3, i, cnet), i, cnet)
                if lhs != rhs:
                    fails.append({"objects": [o.show(net) for o in (o1, o2, o3)]})
    law("object-associativity", fails)

    fails = []
    for a in frees:
        for b in frees:
            for f in morphisms:
                if whisker_left(a, whisker_left(b, f)) != whisker_left(a + b, f):
                    fails.append({"law-side": "left", "a": a.show(net), "b": b.show(net), "f": f.f.show(net)})
                if whisker_right(whisker_right(f, a), b) != whisker_right(f, a + b):
                    fails.append({"law-side": "right", "a": a.show(net), "b": b.show(net), "f": f.f.show(net)})
                if whisker_left(a, whisker_right(f, b)) != whisker_right(whisker_left(a, f), b):
                    fails.append({"law-side": "mixed", "a": a.show(net), "b": b.show(net), "f": f.f.show(net)})
    law("whisker-associativity", fails)

    fails = []
    for a in frees:
        for f, g in composable:
            fg = canonical_compose(f.f, g.f)
            left = whisker_left(a, GradedMorphism(cnet, i, fg))
            lhs = canonical_compose(whisker_left(a, f).f, whisker_left(a, g).f)
            if left.f != lhs:
                fails.append({"side": "left", "a": a.show(net), "f": f.f.show(net), "g": g.f.show(net)})
            right = whisker_right(GradedMorphism(cnet, i, fg), a)
            rhs = canonical_compose(whisker_right(f, a).f, whisker_right(g, a).f)
            if right.f != rhs:
                fails.append({"side": "right", "a": a.show(net), "f": f.f.show(net), "g": g.f.show(net)})
        for o in objects:
            ident = GradedMorphism(cnet, i, canonical_identity(o))
            if whisker_left(a, ident).f != canonical_identity(o + a):
                fails.append({"side": "identity", "a": a.show(net), "object": o.show(net)})
    law("whisker-functoriality", fails)

    return report


def find_interchange_witness(
    cnet: CatalystNet,
    i: Grade,
    dom_pool,
    max_firings: int,
    budget: EnumerationBudget | None = None,
) -> tuple[GradedMorphism, GradedMorphism] | None:
    """First pair of morphisms, in enumeration order, whose two sequential
    tensors disagree; ``None`` when every pair merges or commutes."""
    budget = budget or EnumerationBudget()
    morphisms = _enumerate_graded(cnet, i, dom_pool, max_firings, budget)
    if len(morphisms) ** 2 > budget.max_pairs:
        raise BoundsTooLarge(
            f"witness search needs {len(morphisms) ** 2} pairs, budget allows {budget.max_pairs}"
        )
    for f in morphisms:
        for g in morphisms:
            if otimes_after(f, g).f != otimes_before(f, g).f:
                return (f, g)
    return None
