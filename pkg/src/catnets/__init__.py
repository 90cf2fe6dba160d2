"""Petri nets with catalysts and the process categories they generate.

The library is organized in layers:

- :mod:`catnets.nets` — nets, markings, the token game, catalysts.
- :mod:`catnets.terms` — process terms, canonical forms, decidable
  process equality.
- :mod:`catnets.groth` — individual-token catalyst tracking: permutations
  of catalyst lists paired with processes.
- :mod:`catnets.premonoidal` — the sequential tensors that reuse a fixed
  stock of catalysts, and their law checkers.
- :mod:`catnets.oracle` — brute-force cross-validation of everything the
  canonical-form engine decides.
- :mod:`catnets.netdsl`, :mod:`catnets.dot`, :mod:`catnets.cli` — the text
  format, Graphviz export, and the command-line interface.
"""

from .nets import (
    CatalystNet,
    Marking,
    NetMorphism,
    PetriNet,
    Species,
    Transition,
    enabled,
    find_catalysts,
    fire,
    reachable_bounded,
    validate_net,
    validate_net_morphism,
)
from .terms import (
    CanonicalProcess,
    Compose,
    FiringSequence,
    Gen,
    Grade,
    Id,
    MorphismType,
    ProcessTerm,
    Tensor,
    canonical_of,
    canonicalize,
    compose,
    eq_fp,
    grade_of,
    infer_type,
    morphism_grade,
    relabel,
    serialize,
    tensor,
)

__version__ = "0.1.0"
