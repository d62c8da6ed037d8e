"""Exception types shared across the package."""


class PsiforgeError(Exception):
    """Base class for all errors raised by this package."""


class SizeCapError(PsiforgeError):
    """A requested construction or sweep exceeds its documented size cap."""


class PreconditionError(PsiforgeError):
    """A checker was invoked on input that fails its documented precondition."""


class InternalCheckError(PsiforgeError):
    """A property that must hold by construction failed; indicates a bug."""


class ParseError(PsiforgeError):
    """Syntax error in the term language, with a character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


class EvalError(PsiforgeError):
    """Term evaluation failed (unassigned variable, wrong operator)."""
