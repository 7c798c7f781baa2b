"""Exception types shared across the package."""


class Error(Exception):
    """Base class for all package errors."""


class NotHermitian(Error):
    """Input violates the Hermitian invariant."""


class NonConvergence(Error):
    """The underlying eigenvalue / singular value solver failed."""


class NotPositiveSemidefinite(Error):
    """Spectrum has genuinely negative eigenvalues where nonnegative ones are required."""


class SingularForNegativePower(Error):
    """Negative matrix power requested but the spectrum touches the PD floor."""


class SingularInput(Error):
    """Operation requires a nonsingular (or positive definite) input."""


class DimensionMismatch(Error):
    """Operands have incompatible shapes."""


class InvalidSpec(Error):
    """Norm selector is invalid for the given matrix (k out of range, p < 1)."""


class HypothesisViolation(Error):
    """Parameters fall outside the hypothesis of the evaluated statement."""


class NotCommuting(Error):
    """A commuting-kind instance was required."""


class NotUnitary(Error):
    """An operand expected to be unitary is not, beyond tolerance."""


class InvalidSpectrumLaw(Error):
    """Spectrum law parameters are invalid."""


class ConfigError(Error):
    """Sweep / search configuration failed validation."""


class SchemaVersionMismatch(Error):
    """Report file carries an unsupported schema version."""
