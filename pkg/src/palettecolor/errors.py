"""Exception types shared across the package.

The CLI maps these onto exit codes: input/format problems exit 2,
iteration-limit aborts exit 3, edge-budget violations exit 4.
"""


class PaletteColorError(Exception):
    """Base class for all package-specific errors."""


class InputError(PaletteColorError, ValueError):
    """Malformed input data or inconsistent configuration (CLI exit 2)."""


class EmptyInputError(InputError):
    """Input contained no usable records."""


class BadSymbolError(InputError):
    """A Pauli string contains a character outside {I, X, Y, Z}."""


class MixedLengthError(InputError):
    """Pauli strings in one set have differing lengths."""


class LengthMismatchError(InputError):
    """Two operands encode different qubit counts."""


class OracleTooLargeError(InputError):
    """Qubit count exceeds the dense matrix oracle cap."""


class BadIndexError(InputError):
    """A vertex index is negative or out of range."""


class EdgeListParseError(InputError):
    """Edge-list or MatrixMarket text could not be parsed."""


class BadParamsError(InputError):
    """Generator or algorithm parameters fail validation."""


class SameVertexError(PaletteColorError, ValueError):
    """An edge query named the same vertex twice."""


class InactiveVertexError(PaletteColorError, ValueError):
    """An edge query named a vertex outside the view's active set."""


class NotSubsetError(PaletteColorError, ValueError):
    """Induced-subgraph vertices are not a subset of the active set."""


class TooLargeForExactError(PaletteColorError, ValueError):
    """Exact all-pairs enumeration was requested above the size cap."""


class TooLargeForBaselineError(PaletteColorError, ValueError):
    """Baseline greedy coloring was requested above its size cap."""


class EmptyRecordsError(PaletteColorError, ValueError):
    """Tuner selection was called with no sweep records."""


class UntrainedModelError(PaletteColorError, ValueError):
    """Prediction was requested from a model with no training points."""


class EdgeBudgetExceededError(PaletteColorError, RuntimeError):
    """Projected conflict-edge count exceeds the configured budget (CLI exit 4)."""

    def __init__(self, projected: int, budget: int):
        super().__init__(
            f"conflict graph needs {projected} edges, budget is {budget}"
        )
        self.projected = projected
        self.budget = budget


class IterationLimitError(PaletteColorError, RuntimeError):
    """The coloring loop hit max_iterations with vertices still uncolored (CLI exit 3).

    Carries the partial result for diagnostics.
    """

    def __init__(self, message: str, partial_result=None):
        super().__init__(message)
        self.partial_result = partial_result
