"""Exception hierarchy shared by the numerical and exact modules."""


class SnyderError(ValueError):
    """Base class for domain errors (CLI exit code 2)."""


class BranchCutError(SnyderError):
    """Matrix logarithm requested on or near the principal branch cut."""


class ChartError(SnyderError):
    """Point lies outside the upper chart (basepoint coordinate not positive)."""


class DenominatorError(SnyderError):
    """A closed-form denominator came within tolerance of zero."""


class DegreeError(SnyderError):
    """Star product requested beyond the order of the sum expansion."""


class FactorizationError(SnyderError):
    """A finite group element admits zero or several loop-times-stabilizer decompositions."""


class ActionError(SnyderError):
    """A finite group does not act on the loop by automorphisms."""


class TableError(SnyderError):
    """A Cayley table is malformed (not a Latin square with a two-sided identity)."""
