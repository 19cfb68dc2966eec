"""Exception hierarchy.

Two broad families matter to callers: ``ValidationError`` means the input
geometry or class data was rejected, ``ComputationError`` means a
localization computation could not be completed (typically a symptom of a
non-generic framing).  The CLI maps the families to distinct exit codes.
"""


class ToricGWError(Exception):
    """Base class for all package errors."""


class ValidationError(ToricGWError):
    """Input data rejected before any invariant computation starts."""


class ComputationError(ToricGWError):
    """A localization computation failed partway through."""


class NotUnimodular(ValidationError):
    "Raised when a claimed lattice basis has determinant other than +-1."


class NotSmooth(ValidationError):
    "Raised when a maximal cone is not generated by a lattice basis."


class InvalidFan(ValidationError):
    "Raised when two maximal cones do not intersect in a common face."


class NotCalabiYau(ValidationError):
    "Raised when no covector evaluates to 1 on every ray generator."


class NotAFlag(ValidationError):
    "Raised when a (wall, cone) pair is not an incident pair."


class BraneNotOuter(ValidationError):
    "Raised when the brane wall is compact or otherwise not outer."


class NoPositiveFunctional(ValidationError):
    "Raised when no functional is positive on every compact wall class."


class NoCertificate(ValidationError):
    "Raised when graph enumeration lacks a positivity certificate."


class NotEffective(ValidationError):
    "Raised when a class is not a nonnegative combination of wall classes."


class NotTangent(ValidationError):
    "Raised when a class pairs nonpositively with the added divisor."


class NonIntegerDegree(ValidationError):
    "Raised when edge weights do not differ by an integer multiple of the tangent weight."


class FanSpecError(ValidationError):
    "Raised when an input document does not match the FanSpec schema."


class OrderTooSmall(ComputationError):
    "Raised when dividing a polynomial by a higher variable power than it carries."


class PoleAtRestriction(ComputationError):
    "Raised when the iterated restriction hits a genuine pole."


class NonHomogeneous(ComputationError):
    "Raised when a staged factor is not homogeneous."


class ZeroWeightSlot(ComputationError):
    "Raised when a vertex integral receives an identically-zero weight."


class NonGenericFraming(ComputationError):
    "Raised when a torus weight degenerates in a way only special framings produce."
