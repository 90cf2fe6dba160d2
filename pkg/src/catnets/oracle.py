"""Brute-force reference implementations used to validate the engine.

The canonical-form engine in :mod:`catnets.terms` decides process equality
through a normal form.  This module decides the same questions the slow,
obviously-correct way: breadth-first search over the graph whose nodes are
executable firing sequences and whose edges transpose adjacent firings
when both sources fit in the marking entering the pair.  The two routes
share no decision code on purpose; any disagreement at desk scale is a
bug in the engine, and :func:`validate_canonicalizer` exists to find it.

Also here: exhaustive enumeration of small hom-sets, the catalyst-padding
functor and its bijectivity check, and randomized validation of term
relabeling along net morphisms.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import BudgetExceeded, GradeMismatch
from .nets import CatalystNet, Marking, NetMorphism, PetriNet, Transition, validate_net_morphism
from .terms import (
    CanonicalProcess,
    Compose,
    FiringSequence,
    Gen,
    Id,
    ProcessTerm,
    Tensor,
    canonical_identity,
    canonicalize,
    eq_fp,
    infer_type,
    relabel,
)

__all__ = [
    "EnumerationBudget",
    "swap_closure_eq",
    "enumerate_morphisms",
    "validate_canonicalizer",
    "pad",
    "check_padding_functor",
    "check_functor_F",
    "random_marking",
    "random_walk",
    "random_term",
]


@dataclass(frozen=True)
class EnumerationBudget:
    max_firings: int = 6
    max_states: int = 50_000
    max_pairs: int = 50_000

    def __post_init__(self):
        if self.max_firings <= 0 or self.max_states <= 0 or self.max_pairs <= 0:
            raise ValueError("budget fields must be positive")


def _entering_markings(dom: Marking, steps: tuple[Transition, ...]) -> list[Marking]:
    out = [dom]
    m = dom
    for t in steps[:-1]:
        m = m - t.src + t.tgt
        out.append(m)
    return out


def swap_closure_eq(
    s1: FiringSequence, s2: FiringSequence, budget: EnumerationBudget | None = None
) -> bool:
    """Whether ``s2`` is reachable from ``s1`` by legal adjacent swaps.

    Both sequences must be executable from the same domain.  A multiset
    mismatch of firings is an immediate ``False`` since swaps preserve it.
    Exceeding the state budget raises rather than guessing.
    """
    budget = budget or EnumerationBudget()
    if s1.dom != s2.dom:
        raise ValueError(f"domains differ: {s1.dom!r} vs {s2.dom!r}")
    s1.replay()
    s2.replay()
    if sorted(t.id for t in s1.steps) != sorted(t.id for t in s2.steps):
        return False
    start = tuple(t.id for t in s1.steps)
    goal = tuple(t.id for t in s2.steps)
    if start == goal:
        return True
    by_id = {t.id: t for t in s1.steps}
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for state in frontier:
            m = s1.dom
            for i in range(len(state) - 1):
                a, b = by_id[state[i]], by_id[state[i + 1]]
                if a.src + b.src <= m:
                    swapped = state[:i] + (state[i + 1], state[i]) + state[i + 2 :]
                    if swapped == goal:
                        return True
                    if swapped not in seen:
                        if len(seen) >= budget.max_states:
                            raise BudgetExceeded(
                                f"swap closure exceeded {budget.max_states} sequences",
                                frontier=len(nxt),
                            )
                        seen.add(swapped)
                        nxt.append(swapped)
                m = m - a.src + a.tgt
        frontier = nxt
    return False


def enumerate_morphisms(
    cnet: CatalystNet, dom: Marking, budget: EnumerationBudget
) -> list[CanonicalProcess]:
    """All processes out of ``dom`` with at most ``budget.max_firings``
    firings, one canonical form each, in a deterministic order."""
    found = {canonical_identity(dom)}
    states = [(dom, ())]
    explored = 1
    for _ in range(budget.max_firings):
        nxt = []
        for m, steps in states:
            for t in cnet.net.transitions:
                if not t.src <= m:
                    continue
                explored += 1
                if explored > budget.max_states:
                    raise BudgetExceeded(
                        f"enumeration exceeded {budget.max_states} sequences"
                    )
                seq = steps + (t,)
                found.add(canonicalize(FiringSequence(dom, seq)))
                nxt.append((m - t.src + t.tgt, seq))
        states = nxt
    return sorted(found, key=CanonicalProcess.sort_key)


def random_marking(net: PetriNet, rng: random.Random, max_count: int = 2) -> Marking:
    return Marking({sp.id: rng.randint(0, max_count) for sp in net.species})


def random_walk(
    net: PetriNet, dom: Marking, rng: random.Random, max_len: int
) -> FiringSequence:
    steps = []
    m = dom
    for _ in range(max_len):
        options = [t for t in net.transitions if t.src <= m]
        if not options:
            break
        t = rng.choice(options)
        steps.append(t)
        m = m - t.src + t.tgt
    return FiringSequence(dom, tuple(steps))


def _random_swaps(seq: FiringSequence, rng: random.Random, rounds: int) -> FiringSequence:
    steps = list(seq.steps)
    for _ in range(rounds):
        if len(steps) < 2:
            break
        markings = _entering_markings(seq.dom, tuple(steps))
        legal = [
            i
            for i in range(len(steps) - 1)
            if steps[i].src + steps[i + 1].src <= markings[i]
        ]
        if not legal:
            break
        i = rng.choice(legal)
        steps[i], steps[i + 1] = steps[i + 1], steps[i]
    return FiringSequence(seq.dom, tuple(steps))


def _seq_json(seq: FiringSequence) -> dict:
    return {
        "dom": {str(s): n for s, n in seq.dom.items()},
        "steps": [t.name for t in seq.steps],
    }


def validate_canonicalizer(
    cnet: CatalystNet,
    budget: EnumerationBudget | None = None,
    trials: int = 500,
    seed: int = 0,
) -> dict:
    """Randomized cross-check of canonical-form equality against the swap
    closure.

    Each trial draws a random executable sequence, derives one variant by
    legal swaps (guaranteed equivalent) and one by shuffling the same
    firings (equivalent or not), and demands that the engine's verdict
    match the closure's on both pairs.
    """
    budget = budget or EnumerationBudget()
    rng = random.Random(seed)
    net = cnet.net
    report = {"check": "canonicalizer", "status": "pass", "seed": seed, "trials": trials}
    if not net.transitions:
        report["note"] = "no transitions; vacuous"
        return report
    for trial in range(trials):
        dom = random_marking(net, rng)
        seq = random_walk(net, dom, rng, budget.max_firings)
        pairs = [(seq, _random_swaps(seq, rng, rng.randint(0, 8)), True)]
        shuffled = list(seq.steps)
        rng.shuffle(shuffled)
        cand = FiringSequence(dom, tuple(shuffled))
        if cand.is_executable():
            pairs.append((seq, cand, None))
        for left, right, expect in pairs:
            engine = canonicalize(left) == canonicalize(right)
            closure = swap_closure_eq(left, right, budget)
            ok = engine == closure and (expect is None or closure == expect)
            if not ok:
                report["status"] = "fail"
                report["counterexample"] = {
                    "trial": trial,
                    "left": _seq_json(left),
                    "right": _seq_json(right),
                    "engine": engine,
                    "closure": closure,
                    "expected": expect,
                }
                return report
    return report


def pad(f: CanonicalProcess, j: Marking, cnet: CatalystNet | None = None) -> CanonicalProcess:
    """Reinterpret a process as running alongside idle extra catalysts:
    the canonical form of the identity on ``j`` tensored with ``f``."""
    if cnet is not None and not set(j.support()) <= set(cnet.catalysts):
        raise GradeMismatch(f"padding {j!r} is not supported on the catalyst set")
    return canonicalize(FiringSequence(f.dom + j, f.steps))


def check_padding_functor(
    cnet: CatalystNet,
    i: Marking,
    j: Marking,
    dom: Marking,
    budget: EnumerationBudget | None = None,
) -> dict:
    """Is padding by ``j`` a bijection from the processes out of ``dom``
    onto the processes out of ``dom + j``, at bounded depth?

    For some nets it is (extra catalysts enable nothing new and collapse
    nothing); for others padding merges previously distinct interleavings.
    """
    budget = budget or EnumerationBudget(max_firings=2)
    if dom.project(cnet.catalysts) != i:
        raise GradeMismatch(f"{dom!r} does not carry catalyst content {i!r}")
    if not set(j.support()) <= set(cnet.catalysts):
        raise GradeMismatch(f"padding {j!r} is not supported on the catalyst set")
    source = enumerate_morphisms(cnet, dom, budget)
    target = enumerate_morphisms(cnet, dom + j, budget)
    report = {
        "check": "padding-functor",
        "status": "bijective",
        "source_count": len(source),
        "target_count": len(target),
    }
    images = {}
    for f in source:
        img = pad(f, j, cnet)
        if img in images:
            report["status"] = "not-injective"
            report["witness"] = {
                "first": images[img].show(cnet.net),
                "second": f.show(cnet.net),
                "image": img.show(cnet.net),
            }
            return report
        images[img] = f
    missing = [g for g in target if g not in images]
    if missing:
        report["status"] = "not-surjective"
        report["witness"] = {"unreached": missing[0].show(cnet.net)}
    return report


def random_term(
    net: PetriNet,
    rng: random.Random,
    dom: Marking | None = None,
    size: int = 4,
) -> ProcessTerm:
    """A random well-typed term, with a prescribed domain when given."""
    if dom is None:
        dom = random_marking(net, rng)
    if size <= 0:
        return Id(dom)
    kind = rng.randint(0, 3)
    if kind == 0:
        options = [t for t in net.transitions if t.src <= dom]
        if not options:
            return Id(dom)
        t = rng.choice(options)
        rest = dom - t.src
        return Gen(t) if rest.is_zero() else Tensor(Gen(t), Id(rest))
    if kind == 1:
        left = {}
        right = {}
        for s, n in dom.items():
            k = rng.randint(0, n)
            if k:
                left[s] = k
            if n - k:
                right[s] = n - k
        return Tensor(
            random_term(net, rng, Marking(left), size // 2),
            random_term(net, rng, Marking(right), size // 2),
        )
    if kind == 2:
        first = random_term(net, rng, dom, size // 2)
        then = random_term(net, rng, infer_type(first).cod, size // 2)
        return Compose(first, then)
    return Id(dom)


def check_functor_F(
    h: NetMorphism,
    budget: EnumerationBudget | None = None,
    trials: int = 200,
    seed: int = 0,
) -> dict:
    """Randomized check that relabeling terms along a net morphism
    preserves identities, composition, tensor, and process equality."""
    report = {"check": "relabeling-functor", "status": "pass", "seed": seed, "trials": trials}
    diags = validate_net_morphism(h)
    if diags:
        report["status"] = "invalid-morphism"
        report["diagnostics"] = diags
        return report
    rng = random.Random(seed)
    net = h.source_net
    for trial in range(trials):
        m = random_marking(net, rng)
        if relabel(h, Id(m)) != Id(h.map_marking(m)):
            report["status"] = "fail"
            report["counterexample"] = {"trial": trial, "law": "identity"}
            return report
        f = random_term(net, rng, m)
        g = random_term(net, rng, infer_type(f).cod)
        k = random_term(net, rng)
        checks = [
            ("compose", Compose(f, g), Compose(relabel(h, f), relabel(h, g))),
            ("tensor", Tensor(f, k), Tensor(relabel(h, f), relabel(h, k))),
            # the defining equation of a commutative tensor, transported
            ("eq-preservation", Tensor(f, k), relabel(h, Tensor(k, f))),
        ]
        for law, lhs, rhs in checks:
            if not eq_fp(relabel(h, lhs), rhs):
                report["status"] = "fail"
                report["counterexample"] = {"trial": trial, "law": law}
                return report
        ty = infer_type(f)
        img_ty = infer_type(relabel(h, f))
        if img_ty.dom != h.map_marking(ty.dom) or img_ty.cod != h.map_marking(ty.cod):
            report["status"] = "fail"
            report["counterexample"] = {"trial": trial, "law": "typing"}
            return report
    return report
