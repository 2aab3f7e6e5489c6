"""
Exceptions raised by the library.

Every error derives from :class:`LorentzEulerError` so callers (the command line
front end in particular) can separate numerical failures from programming errors.
Violated preconditions are also ``ValueError``; numerical breakdowns of the
integrators are also ``ArithmeticError``.
"""


class LorentzEulerError(Exception):
    """Root of the library's exception hierarchy."""


class NonFiniteComponent(LorentzEulerError, ValueError):
    """A coordinate is NaN or infinite."""


class OnConeError(LorentzEulerError, ValueError):
    """The point lies on the lightlike cone, where the chart or map is undefined."""


class InvalidRegion(LorentzEulerError, ValueError):
    """A cone region tag that does not name an open component was supplied."""


class NonpositiveScale(LorentzEulerError, ValueError):
    """A dilation factor must be positive."""


class LightlikeTangent(LorentzEulerError, ValueError):
    """The curve has a lightlike (degenerate) tangent at the requested parameter."""


class DegenerateSpeed(LorentzEulerError, ValueError):
    """The polar speed rho^2 - rho'^2 vanishes."""


class ConeContact(LorentzEulerError, ValueError):
    """The curve touches or crosses the lightlike cone."""


class NotSpacelike(LorentzEulerError, ValueError):
    """A spacelike curve was required."""


class NotSpacelikeGraph(LorentzEulerError, ValueError):
    """The graph has slope y'^2 >= 1."""


class WrongRegion(LorentzEulerError, ValueError):
    """The graph leaves the region it is required to stay in."""


class DomainViolation(LorentzEulerError, ValueError):
    """The parameter lies outside the admissible domain of the curve or family."""


class UnsupportedAlpha(LorentzEulerError, ValueError):
    """The construction is not available for this value of alpha."""


class InadmissiblePerturbation(LorentzEulerError, ValueError):
    """A perturbed curve is no longer spacelike or meets the lightlike cone."""


class InvalidEndpoints(LorentzEulerError, ValueError):
    """The endpoint pair does not satisfy the hypotheses of the comparison."""


class BlowUp(LorentzEulerError, ArithmeticError):
    """The radial function left the admissible band (floor, cap)."""


class StepTooLarge(LorentzEulerError, ArithmeticError):
    """The fixed step does not resolve the dynamics (order test failed)."""
