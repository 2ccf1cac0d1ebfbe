"""Precondition errors raised by the disclab operations.

Every message names the violated precondition so CLI users see exactly
which input constraint failed.
"""


class DiscLabError(Exception):
    """Base class for all precondition violations in this package."""


class KernelCenterTooLarge(DiscLabError):
    """Kernel center must satisfy |a| <= 0.99."""


class DegreeTooSmall(DiscLabError):
    """Expansion degree cannot represent the requested spec."""


class MaxDegreeExceeded(DiscLabError):
    """Operation would push the coefficient degree past the configured cap."""


class PointOutsideClosedDisc(DiscLabError):
    """Evaluation point must satisfy |z| <= 1 + 1e-12."""


class PointOutsideOpenDisc(DiscLabError):
    """Interior sample points must satisfy |z| < 1."""


class NotSelfMap(DiscLabError):
    """Composition symbol must map the closed disc into itself."""


class InvalidRadius(DiscLabError):
    """Circle radius for integral means must lie in (0, 1]."""


class CenterOutsideOpenDisc(DiscLabError):
    """Criterion center must satisfy |a| < 1."""


class EmptyFamily(DiscLabError):
    """Operator-norm estimation needs at least one test function."""


class ZeroNormMember(DiscLabError):
    """Every test function must have a positive input-space norm."""


class BasisTooLarge(DiscLabError):
    """Finite-section basis size exceeds the supported maximum."""
