"""Exception types shared by all detline modules."""


class DetlineError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(DetlineError):
    """An argument lies outside the documented domain of an operation."""


class PoleAtOne(DetlineError):
    """The Hurwitz zeta function was requested at (or too close to) s = 1."""


class EvaluationError(DetlineError):
    """A user-supplied scalar field could not be evaluated at a stencil point."""


class DegenerateSpectrum(DetlineError):
    """The boundary condition admits a zero mode (spectral offset alpha = 0)."""


class WindowOverflow(DetlineError):
    """A requested mode index falls outside the Fourier mode window."""


class NotDetClass(DetlineError):
    """Operator is not of determinant class (identity plus window-supported)."""


class NotCommensurable(DetlineError):
    """Two operators do not differ by a window-supported perturbation."""


class NotInvertible(DetlineError):
    """A chart condition failed: the restricted operator is numerically singular."""


class DivisionByZeroPoint(DetlineError):
    """Ratio against the zero point of a determinant line."""
