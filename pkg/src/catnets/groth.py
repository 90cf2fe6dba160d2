"""Individual-token catalyst tracking.

Tokens of the same species are interchangeable in the process category,
so a process cannot say *which* boat carried a passenger.  Here catalysts
regain their individuality: an object is an ordered list of catalyst
tokens together with a marking carrying exactly that catalyst content,
and a morphism pairs a species-respecting permutation of the list with an
ordinary process.  Permuting two equal catalysts is now a nontrivial
morphism, while non-catalyst tokens stay collective.

Everything is componentwise: composition, tensor (block sum of
permutations), and the braiding, whose process component is an identity.

>>> from .nets import CatalystNet
>>> net = CatalystNet.build(
...     ["a", "b", "c", "d", "e"],
...     [("tau1", {"a": 1, "c": 2}, {"a": 1, "d": 2}),
...      ("tau2", {"b": 1, "d": 1}, {"b": 1, "e": 1})])
>>> b = net.net.species_id("b")
>>> o = GrothObject((b, b), net.net.marking({"b": 2, "d": 2}), net)
>>> swap = Permutation((1, 0))
>>> perm_check(swap, (b, b), (b, b))
True
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CompositionMismatch
from .nets import CatalystNet, Marking
from .terms import (
    CanonicalProcess,
    Grade,
    canonical_compose,
    canonical_identity,
    canonical_tensor,
)

__all__ = [
    "CatalystList",
    "Permutation",
    "GrothObject",
    "GrothMorphism",
    "p_of",
    "perm_check",
    "perm_compose",
    "perm_invert",
    "in_G_of",
    "lax_structure",
    "groth_id",
    "groth_compose",
    "groth_tensor",
    "groth_braiding",
    "eq_groth",
    "forget_to_fp",
    "forget_to_sc",
]

# An object of the free symmetric monoidal category on the catalyst set:
# an ordered list of catalyst species ids, repetitions allowed.
CatalystList = tuple[int, ...]


@dataclass(frozen=True)
class Permutation:
    """A bijection on positions, stored 0-based: position ``i`` goes to
    ``images[i]``."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation: {self.images}")

    @staticmethod
    def identity(n: int) -> "Permutation":
        return Permutation(tuple(range(n)))

    def __len__(self):
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.images))

    def apply_to(self, xs: tuple) -> tuple:
        """Rearrange a list: entry at position ``i`` lands at ``images[i]``."""
        out = [None] * len(xs)
        for i, x in enumerate(xs):
            out[self.images[i]] = x
        return tuple(out)


def p_of(x: CatalystList) -> Grade:
    """Forget the order: the multiset of catalysts in the list."""
    counts = {}
    for sid in x:
        counts[sid] = counts.get(sid, 0) + 1
    return Marking(counts)


def perm_check(sigma: Permutation, x: CatalystList, x2: CatalystList) -> bool:
    """Is ``sigma`` a morphism from list ``x`` to list ``x2``?  It must
    send every position to a position holding the same species."""
    if len(x) != len(x2) or len(sigma) != len(x):
        return False
    return all(x2[sigma(i)] == x[i] for i in range(len(x)))


def perm_compose(s1: Permutation, s2: Permutation) -> Permutation:
    """Diagram-order composite: first ``s1``, then ``s2``."""
    if len(s1) != len(s2):
        raise CompositionMismatch(len(s1), len(s2))
    return Permutation(tuple(s2(s1(i)) for i in range(len(s1))))


def perm_invert(s: Permutation) -> Permutation:
    out = [0] * len(s)
    for i, v in enumerate(s.images):
        out[v] = i
    return Permutation(tuple(out))


def _block_sum(s1: Permutation, s2: Permutation) -> Permutation:
    n = len(s1)
    return Permutation(s1.images + tuple(n + v for v in s2.images))


def _block_swap(n1: int, n2: int) -> Permutation:
    # sends the first block after the second
    return Permutation(tuple(n2 + i for i in range(n1)) + tuple(range(n2)))


def in_G_of(x: CatalystList, a: Marking, cnet: CatalystNet) -> bool:
    """Does marking ``a`` carry exactly the catalysts listed in ``x``?"""
    return a.project(cnet.catalysts) == p_of(x)


def lax_structure(
    x: CatalystList, y: CatalystList, a: Marking, b: Marking, cnet: CatalystNet
) -> Marking:
    """Tensoring across grades: markings sum, and the result carries the
    catalyst content of the concatenated lists.  The unit is the empty
    marking in the zero grade."""
    if not in_G_of(x, a, cnet):
        raise ValueError(f"{a!r} does not match catalyst list {x}")
    if not in_G_of(y, b, cnet):
        raise ValueError(f"{b!r} does not match catalyst list {y}")
    return a + b


@dataclass(frozen=True)
class GrothObject:
    """A catalyst list plus a marking carrying exactly those catalysts."""

    x: CatalystList
    a: Marking
    cnet: CatalystNet

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(self.x))
        for sid in self.x:
            if sid not in self.cnet.catalysts:
                raise ValueError(f"species id {sid} is not a chosen catalyst")
        if not in_G_of(self.x, self.a, self.cnet):
            raise ValueError(
                f"marking {self.a!r} does not carry the catalyst content of {self.x}"
            )

    def tensor(self, other: "GrothObject") -> "GrothObject":
        return GrothObject(self.x + other.x, self.a + other.a, self.cnet)


@dataclass(frozen=True)
class GrothMorphism:
    """A permutation of catalyst tokens together with a process.

    The process component is stored canonicalized, so equality of
    morphisms is structural equality of the pair.
    """

    dom: GrothObject
    cod: GrothObject
    sigma: Permutation
    f: CanonicalProcess

    def __post_init__(self):
        if not perm_check(self.sigma, self.dom.x, self.cod.x):
            raise ValueError(
                f"{self.sigma.images} does not map list {self.dom.x} to {self.cod.x}"
            )
        if self.f.dom != self.dom.a or self.f.cod != self.cod.a:
            raise ValueError("process endpoints do not match the object markings")


def groth_id(o: GrothObject) -> GrothMorphism:
    return GrothMorphism(o, o, Permutation.identity(len(o.x)), canonical_identity(o.a))


def groth_compose(m1: GrothMorphism, m2: GrothMorphism) -> GrothMorphism:
    """Componentwise composition, in diagram order."""
    if m1.cod.x != m2.dom.x:
        raise CompositionMismatch(m1.cod.x, m2.dom.x, ("catalyst list",))
    if m1.cod.a != m2.dom.a:
        raise CompositionMismatch(m1.cod.a, m2.dom.a, ("marking",))
    return GrothMorphism(
        m1.dom,
        m2.cod,
        perm_compose(m1.sigma, m2.sigma),
        canonical_compose(m1.f, m2.f),
    )


def groth_tensor(m1: GrothMorphism, m2: GrothMorphism) -> GrothMorphism:
    return GrothMorphism(
        m1.dom.tensor(m2.dom),
        m1.cod.tensor(m2.cod),
        _block_sum(m1.sigma, m2.sigma),
        canonical_tensor(m1.f, m2.f),
    )


def groth_braiding(o1: GrothObject, o2: GrothObject) -> GrothMorphism:
    """Exchange the two catalyst blocks; the process component is an
    identity because non-catalyst tokens have no individuality."""
    return GrothMorphism(
        o1.tensor(o2),
        o2.tensor(o1),
        _block_swap(len(o1.x), len(o2.x)),
        canonical_identity(o1.a + o2.a),
    )


def eq_groth(m1: GrothMorphism, m2: GrothMorphism) -> bool:
    """Componentwise equality; morphisms with different endpoints are
    simply unequal."""
    return (
        m1.dom.x == m2.dom.x
        and m1.cod.x == m2.cod.x
        and m1.sigma == m2.sigma
        and m1.f == m2.f
    )


def forget_to_fp(m: GrothMorphism) -> CanonicalProcess:
    """Drop the individuality of the catalyst tokens."""
    return m.f


def forget_to_sc(m: GrothMorphism) -> Permutation:
    """Keep only the catalyst bookkeeping."""
    return m.sigma
