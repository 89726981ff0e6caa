"""Exception hierarchy for FracDG.

Every error the CLI reports derives from :class:`FracDGError`:

* :class:`ValidationError` for bad inputs and mismatched solver components,
* :class:`OperationError` for numerical failures and failed checks,
* :class:`ResourceError` for files that cannot be read or written.
"""


class FracDGError(Exception):
    """Base class of all FracDG errors."""

    def __init__(self, message: str | None = None, *args):
        """Store ``message``, defaulting to the class name."""
        self.message = message or type(self).__name__
        super().__init__(self.message, *args)


class ValidationError(FracDGError):
    """Inputs or component combinations that can never work."""


class OperationError(FracDGError):
    """A computation ran but did not produce an acceptable result."""


class ResourceError(FracDGError):
    """A file could not be accessed."""


class _WithSubject(FracDGError):
    """Error about one value, shown after the message as ``(label: value)``."""

    label = "value"

    def __init__(self, subject: object, message: str, *args) -> None:
        super().__init__(message, *args)
        self._subject = subject

    def __str__(self) -> str:
        return f"{super().__str__()} ({self.label}: {self._subject})"


class InvalidInputError(_WithSubject, ValidationError):
    """A parameter lies outside its allowed range."""

    label = "input"

    def __init__(self, input_value: object, message: str | None = None, *args: object) -> None:
        """Initialize the InvalidInputError.

        Args:
            input_value: The rejected value.
            message: Optional custom error message.
            *args: Passed on to Exception.
        """
        super().__init__(input_value, message or f"Invalid input: {input_value}", *args)
        self.input_value = input_value


class ConfigurationError(ValidationError):
    """Solver components that do not fit together.

    Raised for a kernel whose validity window does not cover the history
    gaps of a mesh, or a fast solve requested without a kernel.
    """


class CertificationError(OperationError):
    """A sum-of-exponentials kernel misses its target accuracy."""

    def __init__(self, achieved: float, target: float, message: str | None = None, *args) -> None:
        """Initialize the CertificationError.

        Args:
            achieved: Best certified relative error.
            target: Requested relative accuracy.
            message: Optional custom error message.
            *args: Passed on to Exception.
        """
        message = message or (
            f"Kernel certification failed: error {achieved:.3e} exceeds target {target:.3e}."
        )
        super().__init__(message, *args)
        self.achieved = achieved
        self.target = target


class SolverError(_WithSubject, OperationError):
    """The linear system of one time step could not be solved."""

    label = "step"

    def __init__(self, step: int, message: str | None = None, *args) -> None:
        """Record the index ``step`` of the failing interval."""
        super().__init__(step, message or f"Time step {step} could not be solved.", *args)
        self.step = step


class ResidualGateError(OperationError):
    """A manufactured example does not satisfy its own equation."""


class ToleranceError(OperationError):
    """Computed results disagree with the published reference values."""

    def __init__(self, mismatches: list[str], message: str | None = None, *args):
        """Keep one description per out-of-tolerance entry in ``mismatches``."""
        super().__init__(
            message or f"{len(mismatches)} result(s) outside reference tolerance.", *args
        )
        self.mismatches = mismatches


class OutputError(_WithSubject, ResourceError):
    """Results could not be written, or saved results could not be read."""

    label = "path"

    def __init__(self, path: object, message: str | None = None, *args) -> None:
        """Record the file ``path`` involved."""
        super().__init__(path, message or f"Could not access '{path}'.", *args)
        self.path = path
