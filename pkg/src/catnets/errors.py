"""Exception types shared across the library."""


class CatnetsError(Exception):
    """Base class for all library errors."""


class Underflow(CatnetsError):
    """Multiset subtraction would drive some coefficient below zero."""


class NotEnabled(CatnetsError):
    """A transition was fired at a marking that does not cover its source."""


class CompositionMismatch(CatnetsError):
    """Sequential composition of processes whose endpoints do not meet.

    Carries the two offending markings and, for process terms, the path
    from the root of the syntax tree to the failing node.
    """

    def __init__(self, cod, dom, path=()):
        self.cod = cod
        self.dom = dom
        self.path = tuple(path)
        where = " at " + "/".join(self.path) if self.path else ""
        super().__init__(f"cannot compose: codomain {cod!r} != domain {dom!r}{where}")


class GradeMismatch(CatnetsError):
    """An operation that requires a fixed amount of catalysts was given
    operands whose catalyst content differs from that amount."""


class CatalystViolation(CatnetsError):
    """A declared catalyst is created or destroyed by some transition."""

    def __init__(self, species_name, transition_name):
        self.species_name = species_name
        self.transition_name = transition_name
        super().__init__(
            f"declared catalyst {species_name!r} is not conserved by "
            f"transition {transition_name!r}"
        )


class InvalidMorphism(CatnetsError):
    """A net morphism whose commuting squares fail validation."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(self.diagnostics))


class TermSizeExceeded(CatnetsError):
    """A process term expanded past the configured firing-count cap."""


class BudgetExceeded(CatnetsError):
    """An exhaustive search outgrew its budget.

    An inconclusive comparison is never reported as a boolean answer;
    this error is raised instead.
    """

    def __init__(self, message, frontier=None):
        self.frontier = frontier
        super().__init__(message)


class BoundsTooLarge(BudgetExceeded):
    """A bounded-exhaustive law check was asked to enumerate past its budget."""
