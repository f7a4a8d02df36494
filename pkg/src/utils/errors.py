from typing import Any, Optional, Sequence


class IplkitError(Exception):
    """Base class for errors raised by iplkit services"""
    pass


class FormulaSyntaxError(IplkitError):
    """Raised when formula text does not match the grammar"""

    def __init__(self, text: str, offset: int, expected: Sequence[str]):
        self.text = text
        self.offset = offset  # byte offset into the UTF-8 encoding of text
        self.expected = tuple(sorted(expected))
        expected_msg = ", ".join(self.expected) if self.expected else "end of input"
        super().__init__(f"syntax error at byte {offset}: expected one of {expected_msg}")


class ProofFileError(IplkitError):
    """Raised when a proof file is malformed (bad s-expression, constructor or arity)"""
    pass


class InputFileError(IplkitError):
    """Raised when a proof or context file cannot be read or is not UTF-8 text"""
    pass


class ModelFileError(IplkitError):
    """Raised when a model file cannot be read or violates a frame law"""

    def __init__(self, message: str, verdict: Optional[Any] = None):
        self.verdict = verdict
        super().__init__(message)


class DerivationPreconditionError(IplkitError):
    """Raised when weakening is asked for outside its preconditions"""
    pass


class FramePreconditionError(IplkitError):
    """Raised when forcing is evaluated on an invalid frame or an unknown world"""
    pass


class DecisionBudgetExceeded(IplkitError):
    """Raised when a derivability query expands more sequents than the configured budget"""

    def __init__(self, steps: int):
        self.steps = steps
        super().__init__(f"derivability search exceeded its budget of {steps} steps")


class FragmentTooLargeError(IplkitError):
    """Raised when a fragment is larger than the canonical model bound"""

    def __init__(self, size: int, bound: int):
        self.size = size
        self.bound = bound
        super().__init__(f"fragment has {size} formulas, bound is {bound}")


class PrimeExtensionPreconditionError(IplkitError):
    """Raised when a prime extension is requested for a theory that already derives its goal"""
    pass


class HenkinInvariantError(IplkitError):
    """Raised when a self-check of the canonical construction fails"""
    pass
