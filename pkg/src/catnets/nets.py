"""Petri nets, markings, the token game, catalysts, and net morphisms.

A net is a pair of functions ``src, tgt : T -> N[S]`` assigning to each
transition a source and a target multiset of species.  Markings are the
elements of the free commutative monoid ``N[S]``, stored sparsely so that
structural equality coincides with multiset equality.

>>> net = PetriNet.build(["a", "b", "c", "d", "e"],
...                      [("tau1", {"a": 1, "c": 2}, {"a": 1, "d": 2}),
...                       ("tau2", {"b": 1, "d": 1}, {"b": 1, "e": 1})])
>>> sorted(net.species_names(find_catalysts(net)))
['a', 'b']
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import CatalystViolation, NotEnabled, Underflow

__all__ = [
    "Species",
    "Marking",
    "Transition",
    "PetriNet",
    "CatalystNet",
    "NetMorphism",
    "ReachResult",
    "validate_net",
    "find_catalysts",
    "enabled",
    "fire",
    "reachable_bounded",
    "validate_net_morphism",
]


@dataclass(frozen=True)
class Species:
    """A place of the net; ids are dense indices in declaration order."""

    id: int
    name: str


class Marking:
    """A finite multiset of species ids with nonnegative multiplicities.

    Immutable and hashable.  Zero entries are never stored, so two
    markings are equal as Python values exactly when they are equal as
    multisets.  ``+`` is multiset sum, ``-`` is checked difference, and
    ``<=`` is the pointwise order.

    >>> m = Marking({0: 1, 2: 2})
    >>> m + Marking({2: 1})
    Marking({0: 1, 2: 3})
    >>> Marking({0: 1}) <= m
    True
    """

    __slots__ = ("_items",)

    def __init__(self, counts=None):
        items = []
        if counts:
            pairs = counts.items() if isinstance(counts, dict) else counts
            for sid, n in sorted(pairs):
                if n < 0:
                    raise ValueError(f"negative multiplicity {n} for species {sid}")
                if n > 0:
                    items.append((sid, n))
        object.__setattr__(self, "_items", tuple(items))

    @staticmethod
    def zero() -> "Marking":
        return _ZERO

    @staticmethod
    def single(sid: int, n: int = 1) -> "Marking":
        return Marking({sid: n})

    def items(self):
        return self._items

    def get(self, sid: int) -> int:
        for s, n in self._items:
            if s == sid:
                return n
        return 0

    def support(self):
        return tuple(s for s, _ in self._items)

    def total(self) -> int:
        return sum(n for _, n in self._items)

    def is_zero(self) -> bool:
        return not self._items

    def __bool__(self):
        return bool(self._items)

    def __add__(self, other: "Marking") -> "Marking":
        if not isinstance(other, Marking):
            return NotImplemented
        counts = dict(self._items)
        for s, n in other._items:
            counts[s] = counts.get(s, 0) + n
        return Marking(counts)

    def __sub__(self, other: "Marking") -> "Marking":
        if not isinstance(other, Marking):
            return NotImplemented
        counts = dict(self._items)
        for s, n in other._items:
            have = counts.get(s, 0)
            if have < n:
                raise Underflow(f"species {s}: {have} - {n} would be negative")
            counts[s] = have - n
        return Marking(counts)

    def __le__(self, other: "Marking") -> bool:
        if not isinstance(other, Marking):
            return NotImplemented
        return all(other.get(s) >= n for s, n in self._items)

    def __eq__(self, other):
        return isinstance(other, Marking) and self._items == other._items

    def __hash__(self):
        return hash(self._items)

    def project(self, sids) -> "Marking":
        """Restriction to the coordinates in ``sids`` (a set of species ids)."""
        return Marking([(s, n) for s, n in self._items if s in sids])

    def without(self, sids) -> "Marking":
        """Complementary restriction: drop the coordinates in ``sids``."""
        return Marking([(s, n) for s, n in self._items if s not in sids])

    def __repr__(self):
        return f"Marking({{{', '.join(f'{s}: {n}' for s, n in self._items)}}})"

    def show(self, net: "PetriNet") -> str:
        """Render with species names, e.g. ``a + 2 c``; the zero marking is ``0``."""
        if not self._items:
            return "0"
        parts = []
        for s, n in self._items:
            name = net.species[s].name
            parts.append(name if n == 1 else f"{n} {name}")
        return " + ".join(parts)


_ZERO = Marking()


@dataclass(frozen=True)
class Transition:
    """A generator of the token game: consumes ``src``, produces ``tgt``."""

    id: int
    name: str
    src: Marking
    tgt: Marking


@dataclass(frozen=True)
class PetriNet:
    species: tuple[Species, ...]
    transitions: tuple[Transition, ...]

    @staticmethod
    def build(species_names, transition_specs) -> "PetriNet":
        """Construct a net from names and ``(name, src_dict, tgt_dict)`` triples,
        where the dicts map species names to multiplicities."""
        species = tuple(Species(i, n) for i, n in enumerate(species_names))
        index = {sp.name: sp.id for sp in species}

        def as_marking(d):
            return Marking({index[name]: n for name, n in d.items()})

        transitions = tuple(
            Transition(i, name, as_marking(src), as_marking(tgt))
            for i, (name, src, tgt) in enumerate(transition_specs)
        )
        return PetriNet(species, transitions)

    def species_id(self, name: str) -> int:
        for sp in self.species:
            if sp.name == name:
                return sp.id
        raise KeyError(name)

    def species_names(self, sids) -> list[str]:
        return [self.species[s].name for s in sorted(sids)]

    def transition(self, name: str) -> Transition:
        for t in self.transitions:
            if t.name == name:
                return t
        raise KeyError(name)

    def marking(self, counts: dict[str, int]) -> Marking:
        """Marking from a ``{species name: count}`` dict."""
        return Marking({self.species_id(k): v for k, v in counts.items()})


@dataclass(frozen=True)
class CatalystNet:
    """A net with a chosen set of catalyst species.

    Every member of ``catalysts`` must be conserved by every transition;
    violating that is a construction-time error because everything built
    downstream assumes it.
    """

    net: PetriNet
    catalysts: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "catalysts", frozenset(self.catalysts))
        valid = find_catalysts(self.net)
        for sid in sorted(self.catalysts):
            if sid not in valid:
                name = self.net.species[sid].name
                offender = next(
                    t.name
                    for t in self.net.transitions
                    if t.src.get(sid) != t.tgt.get(sid)
                )
                raise CatalystViolation(name, offender)

    @staticmethod
    def build(species_names, transition_specs, catalyst_names=None) -> "CatalystNet":
        net = PetriNet.build(species_names, transition_specs)
        if catalyst_names is None:
            cats = find_catalysts(net)
        else:
            cats = frozenset(net.species_id(n) for n in catalyst_names)
        return CatalystNet(net, cats)


def validate_net(net: PetriNet) -> list[str]:
    """Check the structural invariants; returns one diagnostic per violation.

    An empty list means the net is well formed.
    """
    diags = []
    seen = {}
    for i, sp in enumerate(net.species):
        if sp.id != i:
            diags.append(f"species {sp.name!r}: id {sp.id} out of declaration order (expected {i})")
        if sp.name in seen:
            diags.append(f"species {sp.name!r}: duplicate name")
        seen[sp.name] = sp.id
    known = {sp.id for sp in net.species}
    tnames = set()
    for i, t in enumerate(net.transitions):
        if t.id != i:
            diags.append(f"transition {t.name!r}: id {t.id} out of declaration order (expected {i})")
        if t.name in tnames:
            diags.append(f"transition {t.name!r}: duplicate name")
        tnames.add(t.name)
        for side, m in (("source", t.src), ("target", t.tgt)):
            for sid in m.support():
                if sid not in known:
                    diags.append(f"transition {t.name!r}: {side} references unknown species id {sid}")
    return diags


def find_catalysts(net: PetriNet) -> frozenset[int]:
    """Species whose coefficient agrees in the source and target of every
    transition; species untouched by all transitions qualify vacuously."""
    return frozenset(
        sp.id
        for sp in net.species
        if all(t.src.get(sp.id) == t.tgt.get(sp.id) for t in net.transitions)
    )


def enabled(m: Marking, t: Transition) -> bool:
    return t.src <= m


def fire(m: Marking, t: Transition) -> Marking:
    """One step of the token game: ``m - src(t) + tgt(t)``."""
    if not t.src <= m:
        raise NotEnabled(f"transition {t.name!r} needs {t.src!r} but marking is {m!r}")
    return m - t.src + t.tgt


@dataclass(frozen=True)
class ReachResult:
    markings: frozenset[Marking]
    truncated: bool


def reachable_bounded(net: PetriNet, m0: Marking, max_markings: int, max_depth: int) -> ReachResult:
    """BFS closure of ``m0`` under firing, truncated at the given bounds.

    The result always contains ``m0``; ``truncated`` reports whether either
    bound cut the exploration short.
    """
    seen = {m0}
    frontier = deque([m0])
    truncated = False
    for _ in range(max_depth):
        if not frontier:
            break
        next_frontier = deque()
        while frontier:
            m = frontier.popleft()
            for t in net.transitions:
                if not t.src <= m:
                    continue
                m2 = m - t.src + t.tgt
                if m2 in seen:
                    continue
                if len(seen) >= max_markings:
                    truncated = True
                    continue
                seen.add(m2)
                next_frontier.append(m2)
        frontier = next_frontier
    # depth bound hit with fresh successors still pending
    for m in frontier:
        for t in net.transitions:
            if t.src <= m and (m - t.src + t.tgt) not in seen:
                truncated = True
                break
    return ReachResult(frozenset(seen), truncated)


@dataclass(frozen=True)
class NetMorphism:
    """A pair of maps (transitions, species) between two nets.

    ``transition_map[i]`` / ``species_map[i]`` give the image indices.  The
    maps must commute with sources and targets; that is checked by
    :func:`validate_net_morphism`, not assumed.
    """

    source_net: PetriNet
    target_net: PetriNet
    transition_map: tuple[int, ...]
    species_map: tuple[int, ...]

    @staticmethod
    def identity(net: PetriNet) -> "NetMorphism":
        return NetMorphism(
            net, net,
            tuple(range(len(net.transitions))),
            tuple(range(len(net.species))),
        )

    def map_marking(self, m: Marking) -> Marking:
        """The multiplicity-preserving linear extension of the species map."""
        counts = {}
        for s, n in m.items():
            s2 = self.species_map[s]
            counts[s2] = counts.get(s2, 0) + n
        return Marking(counts)

    def map_transition(self, t: Transition) -> Transition:
        return self.target_net.transitions[self.transition_map[t.id]]


def validate_net_morphism(h: NetMorphism) -> list[str]:
    """Check both commuting squares; returns one diagnostic per failure."""
    diags = []
    if len(h.transition_map) != len(h.source_net.transitions):
        diags.append("transition map does not cover the source net's transitions")
        return diags
    if len(h.species_map) != len(h.source_net.species):
        diags.append("species map does not cover the source net's species")
        return diags
    n_t = len(h.target_net.transitions)
    n_s = len(h.target_net.species)
    if any(not 0 <= j < n_t for j in h.transition_map):
        diags.append("transition map image out of range")
        return diags
    if any(not 0 <= j < n_s for j in h.species_map):
        diags.append("species map image out of range")
        return diags
    for t in h.source_net.transitions:
        img = h.map_transition(t)
        if h.map_marking(t.src) != img.src:
            diags.append(
                f"source square fails at {t.name!r}: "
                f"image of source is {h.map_marking(t.src)!r} but source of image is {img.src!r}"
            )
        if h.map_marking(t.tgt) != img.tgt:
            diags.append(
                f"target square fails at {t.name!r}: "
                f"image of target is {h.map_marking(t.tgt)!r} but target of image is {img.tgt!r}"
            )
    return diags
