"""Exception types raised by the numerical laboratory."""


class LiouvilleLabError(Exception):
    """Base class for all laboratory-specific failures."""


class QuadratureBudgetError(LiouvilleLabError):
    """Quadrature budget exceeded; carries the partial value and error estimate."""

    def __init__(self, message: str, value: float = float("nan"), estimate: float = float("nan")):
        super().__init__(message)
        self.value = value
        self.estimate = estimate


class NyquistError(LiouvilleLabError):
    """Nyquist violation: too few circle samples for the requested mode count."""


class StiffODEError(LiouvilleLabError):
    """Stiff or singular ODE: adaptive step size underflowed."""


class GradientMismatchError(LiouvilleLabError):
    """Finite-difference convergence slope too low for the claimed gradient."""


class MaximaError(LiouvilleLabError):
    """Maxima not localized: Newton diverged or precondition violated."""


class GrowthBoundError(LiouvilleLabError):
    """Growth bound violated: mode-solution certificate ratio too large."""


class InteractionMismatchError(LiouvilleLabError):
    """Interaction mismatch between closed form and quadrature."""


class KernelFitError(LiouvilleLabError):
    """Kernel fit failed: least-squares residual too large."""


class DichotomyError(LiouvilleLabError):
    """Dichotomy violated: gradient small at every root of unity."""


class DegenerateLayerError(LiouvilleLabError):
    """Degenerate layer: no boundary data and no bubble trace."""


class ContrastMismatchError(LiouvilleLabError):
    """Contrast mismatch: coefficient integral off its predicted value."""


class NotASolutionError(LiouvilleLabError):
    """Field handed to a Pohozaev check does not solve its equation."""


class UnresolvedSpectrumError(LiouvilleLabError):
    """Unresolved spectrum: eigenvalue still moving under mesh refinement."""


class ShootingError(LiouvilleLabError):
    """No radial solution found at this lambda/guess."""
