"""Exception hierarchy shared by the solver modules."""


class CSWENOError(Exception):
    """Base class for all errors raised by this package."""


class InvalidArgumentError(CSWENOError, ValueError):
    """An argument is outside the documented domain of an operation."""


class ConfigError(CSWENOError, ValueError):
    """Inconsistent problem, boundary or run configuration."""


class OracleError(CSWENOError, RuntimeError):
    """An exact-solution oracle failed (non-convergence, vacuum, ...)."""


class StateError(CSWENOError, RuntimeError):
    """An inadmissible physical state was encountered.

    ``cell`` is the flat (1D) or ``(i, j)`` (2D) index of the first offending
    cell when known; ``time`` and ``step`` are filled in by the integrator.
    """

    def __init__(self, message, cell=None, time=None, step=None):
        super().__init__(message)
        self.cell = cell
        self.time = time
        self.step = step

    def __str__(self):
        msg = super().__str__()
        extra = []
        if self.cell is not None:
            extra.append(f"cell={self.cell}")
        if self.time is not None:
            extra.append(f"t={self.time:.6g}")
        if self.step is not None:
            extra.append(f"step={self.step}")
        return f"{msg} ({', '.join(extra)})" if extra else msg
