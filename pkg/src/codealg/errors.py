class CodeAlgebraError(Exception):
    """Base class for every error raised by this package."""


class AnalysisError(CodeAlgebraError):
    """A well-formed request whose mathematical preconditions fail."""
