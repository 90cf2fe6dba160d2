"""Processes of a Petri net as a commutative monoidal category.

Objects are markings; morphisms are processes built from the transitions
by tensoring (running side by side, written ``+``) and composing (running
one after the other, written ``>>`` in diagram order).  Tokens of the same
species are interchangeable, so a morphism is fully described by its
domain marking together with a firing sequence, taken up to *swap
equivalence*: two adjacent firings may be transposed exactly when the
marking entering the pair covers both sources at once.

Equality of morphisms is decided through a canonical form: the
lexicographically least firing sequence of the swap class (ordered by
transition id position by position), presented as layers of concurrently
enabled firings.  The brute-force swap-closure oracle in
:mod:`catnets.oracle` independently validates every decision this module
makes.

>>> from .nets import CatalystNet
>>> boatjeep = CatalystNet.build(
...     ["a", "b", "c", "d", "e"],
...     [("tau1", {"a": 1, "c": 2}, {"a": 1, "d": 2}),
...      ("tau2", {"b": 1, "d": 1}, {"b": 1, "e": 1})])
>>> tau2 = Gen(boatjeep.net.transition("tau2"))
>>> two_at_once = tau2 + tau2
>>> one_after_other = (tau2 + Id(boatjeep.net.marking({"b": 1, "d": 1}))) >> (
...     Id(boatjeep.net.marking({"b": 1, "e": 1})) + tau2)
>>> eq_fp(two_at_once, one_after_other)
True
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import (
    BudgetExceeded,
    CompositionMismatch,
    InvalidMorphism,
    NotEnabled,
    TermSizeExceeded,
)
from .nets import CatalystNet, Marking, NetMorphism, PetriNet, Transition, validate_net_morphism

__all__ = [
    "ProcessTerm",
    "Gen",
    "Id",
    "Tensor",
    "Compose",
    "MorphismType",
    "FiringSequence",
    "CanonicalProcess",
    "Grade",
    "infer_type",
    "serialize",
    "canonicalize",
    "canonical_of",
    "eq_fp",
    "compose",
    "tensor",
    "grade_of",
    "morphism_grade",
    "relabel",
    "canonical_identity",
    "canonical_compose",
    "canonical_tensor",
    "DEFAULT_MAX_FIRINGS",
    "DEFAULT_SEARCH_BUDGET",
]

# Canonicalization is quadratic in the firing count on the fast path and
# falls back to bounded search; both caps are overridable per call.
DEFAULT_MAX_FIRINGS = 10_000
DEFAULT_SEARCH_BUDGET = 250_000


class ProcessTerm:
    """Base class for process syntax trees."""

    __slots__ = ()

    def __add__(self, other: "ProcessTerm") -> "ProcessTerm":
        return tensor(self, other)

    def __rshift__(self, other: "ProcessTerm") -> "ProcessTerm":
        return compose(self, other)


@dataclass(frozen=True)
class Gen(ProcessTerm):
    """A single firing of a transition, as a morphism ``src -> tgt``."""

    transition: Transition


@dataclass(frozen=True)
class Id(ProcessTerm):
    """The identity process on a marking; ``Id(Marking())`` is the unit."""

    marking: Marking


@dataclass(frozen=True)
class Tensor(ProcessTerm):
    """Two processes running side by side."""

    left: ProcessTerm
    right: ProcessTerm


@dataclass(frozen=True)
class Compose(ProcessTerm):
    """Two processes in sequence, in diagram order: ``first`` then ``then``."""

    first: ProcessTerm
    then: ProcessTerm


@dataclass(frozen=True)
class MorphismType:
    dom: Marking
    cod: Marking


def infer_type(term: ProcessTerm) -> MorphismType:
    """Domain and codomain of a term.

    Raises :class:`CompositionMismatch`, carrying both offending markings
    and the path from the root, when a composition's endpoints do not meet.
    """
    results: dict[int, MorphismType] = {}
    stack: list[tuple[ProcessTerm, tuple[str, ...], bool]] = [(term, (), False)]
    while stack:
        node, path, expanded = stack.pop()
        if expanded:
            if isinstance(node, Tensor):
                lt = results[id(node.left)]
                rt = results[id(node.right)]
                results[id(node)] = MorphismType(lt.dom + rt.dom, lt.cod + rt.cod)
            else:  # Compose
                ft = results[id(node.first)]
                tt = results[id(node.then)]
                if ft.cod != tt.dom:
                    raise CompositionMismatch(ft.cod, tt.dom, path)
                results[id(node)] = MorphismType(ft.dom, tt.cod)
            continue
        if isinstance(node, Gen):
            results[id(node)] = MorphismType(node.transition.src, node.transition.tgt)
        elif isinstance(node, Id):
            results[id(node)] = MorphismType(node.marking, node.marking)
        elif isinstance(node, Tensor):
            stack.append((node, path, True))
            stack.append((node.right, path + ("right",), False))
            stack.append((node.left, path + ("left",), False))
        elif isinstance(node, Compose):
            stack.append((node, path, True))
            stack.append((node.then, path + ("then",), False))
            stack.append((node.first, path + ("first",), False))
        else:
            raise TypeError(f"not a process term: {node!r}")
    return results[id(term)]


def compose(t1: ProcessTerm, t2: ProcessTerm) -> ProcessTerm:
    """``t1`` then ``t2``; requires cod(t1) = dom(t2)."""
    cod = infer_type(t1).cod
    dom = infer_type(t2).dom
    if cod != dom:
        raise CompositionMismatch(cod, dom)
    return Compose(t1, t2)


def tensor(t1: ProcessTerm, t2: ProcessTerm) -> ProcessTerm:
    return Tensor(t1, t2)


@dataclass(frozen=True)
class FiringSequence:
    """A process flattened to one firing at a time, from a fixed domain.

    Identity wires are not recorded; they are recovered from ``dom``.
    """

    dom: Marking
    steps: tuple[Transition, ...]

    def markings(self) -> list[Marking]:
        """Markings entering each step, plus the final one; validates
        executability along the way."""
        out = [self.dom]
        m = self.dom
        for t in self.steps:
            if not t.src <= m:
                raise NotEnabled(
                    f"step {t.name!r} not enabled: needs {t.src!r}, marking is {m!r}"
                )
            m = m - t.src + t.tgt
            out.append(m)
        return out

    def replay(self) -> Marking:
        return self.markings()[-1]

    def is_executable(self) -> bool:
        try:
            self.replay()
        except NotEnabled:
            return False
        return True


def serialize(term: ProcessTerm, max_firings: int = DEFAULT_MAX_FIRINGS) -> FiringSequence:
    """Flatten a well-typed term to its left-factor-first firing sequence.

    Any serialization order gives an equal morphism (tensor factors commute
    past each other through identities), so the left-first order is purely
    a deterministic choice.  Compose chains flatten away.
    """
    dom = infer_type(term).dom
    steps: list[Transition] = []
    stack = [term]
    while stack:
        node = stack.pop()
        if isinstance(node, Gen):
            steps.append(node.transition)
            if len(steps) > max_firings:
                raise TermSizeExceeded(f"term exceeds {max_firings} firings")
        elif isinstance(node, Tensor):
            stack.append(node.right)
            stack.append(node.left)
        elif isinstance(node, Compose):
            stack.append(node.then)
            stack.append(node.first)
    return FiringSequence(dom, tuple(steps))


@dataclass(frozen=True)
class CanonicalProcess:
    """The layered normal form of a process.

    ``layers`` lists multisets of firings (each sorted by transition id);
    every layer is concurrently enabled at the marking entering it, and the
    flattened sequence is the lexicographically least representative of the
    swap class.  Structural equality of canonical forms therefore decides
    morphism equality.
    """

    dom: Marking
    layers: tuple[tuple[Transition, ...], ...]
    cod: Marking = field(compare=False)

    @property
    def steps(self) -> tuple[Transition, ...]:
        return tuple(t for layer in self.layers for t in layer)

    @property
    def n_firings(self) -> int:
        return sum(len(layer) for layer in self.layers)

    def is_identity(self) -> bool:
        return not self.layers

    def sort_key(self):
        return (
            self.n_firings,
            tuple(t.id for layer in self.layers for t in layer),
            tuple(len(layer) for layer in self.layers),
            self.dom.items(),
        )

    def show(self, net: PetriNet) -> str:
        if not self.layers:
            return f"id({self.dom.show(net)})"
        body = " ; ".join("{" + ", ".join(t.name for t in layer) + "}" for layer in self.layers)
        return f"{self.dom.show(net)} -[{body}]-> {self.cod.show(net)}"


def canonical_identity(m: Marking) -> CanonicalProcess:
    return CanonicalProcess(m, (), m)


def _swap_ok(t1: Transition, t2: Transition, entering: Marking) -> bool:
    # Transposition of two adjacent firings is legal iff both sources fit
    # in the marking entering the pair.
    return t1.src + t2.src <= entering


def _frontable_first_ids(
    steps: tuple[Transition, ...],
    dom: Marking,
    wanted: set[int],
    budget: int,
):
    """Search the swap closure of ``steps`` for representatives that begin
    with a wanted transition id.

    Returns ``{id: witness_sequence}`` for every wanted id that can be
    brought to the front.  The search is exhaustive within ``budget``
    visited sequences; exceeding it raises :class:`BudgetExceeded` because
    an inconclusive answer must never silently become "not frontable".
    """
    found: dict[int, tuple[Transition, ...]] = {}
    start = steps
    seen = {start}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        if state[0].id in wanted and state[0].id not in found:
            found[state[0].id] = state
            if set(found) == wanted:
                return found
        m = dom
        for i in range(len(state) - 1):
            if _swap_ok(state[i], state[i + 1], m):
                nxt = state[:i] + (state[i + 1], state[i]) + state[i + 2 :]
                if nxt not in seen:
                    if len(seen) >= budget:
                        raise BudgetExceeded(
                            f"canonicalization search exceeded {budget} sequences",
                            frontier=len(queue),
                        )
                    seen.add(nxt)
                    queue.append(nxt)
            m = m - state[i].src + state[i].tgt
    return found


def _pick_front(
    steps: tuple[Transition, ...], dom: Marking, budget: int
) -> tuple[Transition, tuple[Transition, ...]]:
    """The least transition id that can begin some representative of the
    class of ``steps``, together with the rest of that representative.

    Fast path: an occurrence can reach the front by plain leftward sliding
    iff every earlier firing can be transposed with it where they meet.
    Sliding is sound but not complete: rearranging *other* firings first
    can reroute token provenance and unlock a front position that sliding
    alone cannot reach.  Smaller-id candidates that sliding cannot confirm
    are settled by an exhaustive search of the swap closure.
    """
    markings = [dom]
    m = dom
    for t in steps[:-1]:
        m = m - t.src + t.tgt
        markings.append(m)

    slide_best: Transition | None = None
    slide_pos = -1
    for j, t in enumerate(steps):
        if slide_best is not None and t.id >= slide_best.id:
            continue
        if all(_swap_ok(steps[i], t, markings[i]) for i in range(j)):
            slide_best, slide_pos = t, j

    # ids below the sliding optimum that are present and enabled at dom
    candidates = {
        t.id
        for t in steps
        if t.id < slide_best.id and t.src <= dom
    }
    if candidates:
        found = _frontable_first_ids(steps, dom, candidates, budget)
        if found:
            witness = found[min(found)]
            return witness[0], witness[1:]
    return slide_best, steps[:slide_pos] + steps[slide_pos + 1 :]


def _group_layers(
    steps: tuple[Transition, ...], dom: Marking
) -> tuple[tuple[Transition, ...], ...]:
    # Greedy run grouping: a firing joins the current layer iff the layer's
    # combined sources still fit in the marking entering the layer.  The
    # grouping never reorders, so flattening the layers recovers the input.
    layers: list[tuple[Transition, ...]] = []
    current: list[Transition] = []
    layer_src = Marking.zero()
    entering = dom
    m = dom
    for t in steps:
        if current and not (layer_src + t.src <= entering):
            layers.append(tuple(current))
            current = []
            layer_src = Marking.zero()
            entering = m
        current.append(t)
        layer_src = layer_src + t.src
        m = m - t.src + t.tgt
    if current:
        layers.append(tuple(current))
    return tuple(layers)


def canonicalize(
    seq: FiringSequence,
    max_firings: int = DEFAULT_MAX_FIRINGS,
    search_budget: int = DEFAULT_SEARCH_BUDGET,
) -> CanonicalProcess:
    """Layered normal form of an executable firing sequence.

    Repeatedly extracts the least transition id that some representative of
    the swap class can fire first, then groups the resulting sequence into
    maximal concurrently-enabled layers.  Two executable sequences get
    structurally equal results exactly when they are swap equivalent; the
    oracle's closure search cross-checks this on every validation run.
    """
    if len(seq.steps) > max_firings:
        raise TermSizeExceeded(f"sequence exceeds {max_firings} firings")
    cod = seq.replay()
    remaining = seq.steps
    m = seq.dom
    out: list[Transition] = []
    while remaining:
        head, remaining = _pick_front(remaining, m, search_budget)
        out.append(head)
        m = m - head.src + head.tgt
    return CanonicalProcess(seq.dom, _group_layers(tuple(out), seq.dom), cod)


def canonical_of(term: ProcessTerm, max_firings: int = DEFAULT_MAX_FIRINGS) -> CanonicalProcess:
    return canonicalize(serialize(term, max_firings), max_firings)


def eq_fp(t1: ProcessTerm, t2: ProcessTerm) -> bool:
    """Morphism equality in the process category: equal types and equal
    canonical forms."""
    if infer_type(t1) != infer_type(t2):
        return False
    return canonical_of(t1) == canonical_of(t2)


def canonical_compose(f: CanonicalProcess, g: CanonicalProcess) -> CanonicalProcess:
    """Composite of canonical forms, in diagram order."""
    if f.cod != g.dom:
        raise CompositionMismatch(f.cod, g.dom)
    return canonicalize(FiringSequence(f.dom, f.steps + g.steps))


def canonical_tensor(f: CanonicalProcess, g: CanonicalProcess) -> CanonicalProcess:
    return canonicalize(FiringSequence(f.dom + g.dom, f.steps + g.steps))


# The amount of each catalyst is itself a marking, supported on the
# catalyst set only.
Grade = Marking


def grade_of(m: Marking, cnet: CatalystNet) -> Grade:
    """The catalyst content of a marking."""
    return m.project(cnet.catalysts)


def morphism_grade(t: ProcessTerm, cnet: CatalystNet) -> Grade:
    """The common catalyst content of a process's endpoints.

    Domain and codomain must agree because no transition creates or
    destroys a catalyst; a disagreement is a bug, not an input error.
    """
    ty = infer_type(t)
    g_dom = grade_of(ty.dom, cnet)
    g_cod = grade_of(ty.cod, cnet)
    assert g_dom == g_cod, f"grade drift: {g_dom!r} vs {g_cod!r}"
    return g_dom


def relabel(h: NetMorphism, t: ProcessTerm) -> ProcessTerm:
    """Transport a term along a net morphism, generator by generator."""
    diags = validate_net_morphism(h)
    if diags:
        raise InvalidMorphism(diags)
    results: dict[int, ProcessTerm] = {}
    stack: list[tuple[ProcessTerm, bool]] = [(t, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            if isinstance(node, Tensor):
                results[id(node)] = Tensor(results[id(node.left)], results[id(node.right)])
            else:
                results[id(node)] = Compose(results[id(node.first)], results[id(node.then)])
            continue
        if isinstance(node, Gen):
            results[id(node)] = Gen(h.map_transition(node.transition))
        elif isinstance(node, Id):
            results[id(node)] = Id(h.map_marking(node.marking))
        elif isinstance(node, Tensor):
            stack.append((node, True))
            stack.append((node.right, False))
            stack.append((node.left, False))
        elif isinstance(node, Compose):
            stack.append((node, True))
            stack.append((node.then, False))
            stack.append((node.first, False))
        else:
            raise TypeError(f"not a process term: {node!r}")
    return results[id(t)]
