"""Exception hierarchy for the unopt package."""


class UnoptError(Exception):
    """Base class for all package errors."""


class DimensionError(UnoptError):
    """Operands have incompatible or unsupported dimensions."""


class ValidationError(UnoptError):
    """An input violates a contract (non-unitary matrix, bad qubit index, ...)."""


class ResourceError(UnoptError):
    """A dense-matrix or statevector operation would exceed the size guard."""


class DecompositionError(UnoptError):
    """A matrix decomposition failed to reach its tolerance."""


class PairSelectionError(UnoptError):
    """No usable gate pair could be selected within the retry budget."""


class RecipeError(UnoptError):
    """A recipe does not match the circuit it is applied to, or replay diverged."""


class QasmError(UnoptError):
    """OpenQASM text could not be parsed or emitted."""
