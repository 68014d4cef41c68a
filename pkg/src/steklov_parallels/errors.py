"""Exception hierarchy shared by the numerical modules and the CLI."""


class SteklovError(Exception):
    """Base class for every error raised by this package."""


class InputError(SteklovError, ValueError):
    """Invalid user input (exit code 2 on the command line)."""


class ParseError(InputError):
    pass


class NumericDegeneracy(SteklovError, ArithmeticError):
    """A configuration the numerics cannot handle (exit code 3)."""


class NonConvergence(SteklovError, RuntimeError):
    """An iterative method gave up (exit code 4)."""


class NoSignChange(InputError):
    pass


class NoConvergence(NonConvergence):
    pass


class SingularMass(NumericDegeneracy):
    """A zero weight reached the eigensolver; merge it with ``reduce_zero_weights`` first."""


class AllZero(InputError):
    pass


class NegativeDiscriminant(NumericDegeneracy):
    pass


class Tangent(NumericDegeneracy):
    """A catenary touches the unit circle instead of crossing it."""


class DomainError(InputError):
    pass


class IterationCap(NonConvergence):
    pass


class BracketNotFound(NonConvergence):
    pass
