"""Exception hierarchy.

Precondition failures derive from :class:`PreconditionError` (also a
``ValueError``); resource limits derive from :class:`ComputationLimit`.
The CLI maps the two families to exit codes 1 and 2.
"""


class DirichletError(Exception):
    """Base class for every error raised by this package."""


class PreconditionError(DirichletError, ValueError):
    pass


class ComputationLimit(DirichletError):
    pass


class PrecisionExhausted(ComputationLimit):
    """An enclosure could not decide a comparison within the precision cap."""


class InfeasibleEnumeration(ComputationLimit):
    """A pigeonhole box is larger than the configured enumeration cap."""


class CertificationFailed(ComputationLimit):
    """An inequality that should hold could not be certified."""


class IrrationalRequired(PreconditionError):
    pass


class NotCoprime(PreconditionError):
    pass


class NonTrivialCase(PreconditionError):
    pass


class SquareInput(PreconditionError):
    pass


class DegenerateBound(PreconditionError):
    pass


class DimensionError(PreconditionError):
    pass


class V3BoundFailed(DirichletError):
    """V(n) > 3**n at the requested n; the zeta(3) chain is not certified."""
