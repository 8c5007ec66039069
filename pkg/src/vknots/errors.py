"""Exception types shared across the package."""


class InvalidParameter(ValueError):
    """An argument is outside the operation's documented domain."""


class MalformedInput(ValueError):
    """Structurally broken input (ragged table, bad JSON document, ...)."""


class SearchBoundExceeded(RuntimeError):
    """A brute-force search bound would be exceeded; raise the bound to proceed."""


class CeilingExceeded(RuntimeError):
    """The exhaustive assignment scan would exceed the configured ceiling."""


class NotApplicable(ValueError):
    """A rewriting move does not apply at the requested site."""


class WrongKind(ValueError):
    """The operation is defined for a different kind of diagram."""


class PreconditionFailed(RuntimeError):
    """A checked mathematical precondition is violated.

    ``witness`` carries a concrete counterexample when one exists.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
