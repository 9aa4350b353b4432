"""Exception hierarchy.

Claim mismatches are never raised; they are reported.  Everything here
signals a malformed input or a violated precondition.
"""


class StatmanError(Exception):
    """Base class for all errors raised by statman."""


class StructuralError(StatmanError):
    """Inputs are malformed (mismatched parameters, singular metric, wrong shape)."""


class EvaluationError(StatmanError):
    """A parameter needed for evaluation was not assigned."""


class DivisionError(StatmanError, ZeroDivisionError):
    """Division by an identically zero polynomial."""


class DomainError(StatmanError):
    """An argument lies outside the operation's domain (degenerate plane, boundary point)."""


class ClosureError(StatmanError):
    """A tangent subframe is not closed under brackets."""


class UnsupportedInputError(StatmanError):
    """Input is valid but outside what the constructor supports."""


class ParseError(StatmanError):
    """Lexical, syntactic or reference errors in a manifold document.

    ``diagnostics`` is a list of ``(line, column, kind, message)`` tuples.
    """

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        lines = [f"{line}:{col}: {kind} error: {msg}" for line, col, kind, msg in self.diagnostics]
        super().__init__("\n".join(lines))
