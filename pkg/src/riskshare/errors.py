"""Exception hierarchy shared by every module.

The CLI maps ``UsageError`` to exit status 2 and every other
``RiskShareError`` to exit status 1.
"""


class RiskShareError(Exception):
    """Base class for all engine errors."""


class UsageError(RiskShareError):
    """Malformed command line or config string."""


class InvalidParameter(RiskShareError, ValueError):
    pass


class UnknownFamily(RiskShareError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown family"


class DegenerateGrid(RiskShareError, ValueError):
    pass


class ShapeMismatch(RiskShareError):
    """The distortion does not have the shape an operation requires."""


class RootNotFound(RiskShareError):
    pass


class DegenerateDenominator(RiskShareError, ZeroDivisionError):
    pass


class DivergentIntegral(RiskShareError):
    pass


class UnsupportedCase(RiskShareError):
    """No closed form covers the requested case; use :mod:`riskshare.oracle`."""


class IncompatibleSignClass(RiskShareError):
    pass


class NotRepresentable(RiskShareError):
    pass


class TooLarge(RiskShareError):
    """Brute-force enumeration would exceed its candidate budget."""


class MarginalNotInvertible(RiskShareError):
    pass
