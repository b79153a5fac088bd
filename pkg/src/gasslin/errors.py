"""Exception types shared across the package."""


class GasslinError(Exception):
    """Base class for errors raised by this package."""


class ColoringMismatch(GasslinError):
    """Braid composition attempted with incompatible strand colorings."""


class InvalidColor(GasslinError):
    """A strand color outside 1..mu was supplied."""


class InconsistentColoring(GasslinError):
    """A coloring is not constant on the components of the closure."""


class GeneratorOutOfRange(GasslinError):
    """A free-group generator index outside 1..n was used."""


class NotSquare(GasslinError):
    """Determinant of a non-square matrix requested."""


class NotDivisible(GasslinError):
    """Exact polynomial division has a nonzero remainder."""


class VariableCountMismatch(GasslinError):
    """Arithmetic attempted between polynomials in different variable counts."""


class InternalMismatch(GasslinError):
    """Two supposedly equivalent computation routes disagreed."""


class PreconditionViolated(GasslinError):
    """A documented precondition of an operation does not hold."""


class HalfExponentResidue(GasslinError):
    """Exponent-halving hit an odd exponent that no unit shift removes."""


class WrongComponentCount(GasslinError):
    """An operation restricted to a specific number of components was misused."""


class NotInTorusStar(GasslinError):
    """A torus point with some coordinate equal to 1 where it must not be."""


class UnexpectedDelta(GasslinError):
    """A signature jump outside the range the crossing-change lemma allows."""


class NullityPositive(GasslinError):
    """An evaluation point where the relevant Hermitian form is degenerate."""


class NotDefinedHere(GasslinError):
    """The fixed-point count is not defined at the requested angles."""


class NonTransverse(GasslinError):
    """A fixed-point class with (numerically) singular linearization."""
