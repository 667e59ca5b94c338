"""Exception types shared across the package.

Every user-facing input problem raises a subclass of :class:`InputError`,
each carrying a stable ``code`` string so callers (and the CLI) can
distinguish failure modes without parsing messages.
"""


class InputError(ValueError):
    """User-supplied data or options violate a precondition."""

    code = "invalid-input"


class MissingFileError(InputError):
    code = "missing-file"


class NonNumericCellError(InputError):
    code = "non-numeric-cell"


class InsufficientRowsError(InputError):
    code = "insufficient-rows"


class NoCovariateColumnsError(InputError):
    code = "no-covariate-columns"


class NonFiniteInputError(InputError):
    code = "non-finite-input"


class DimensionMismatchError(InputError):
    code = "dimension-mismatch"


class BasisSizeError(InputError):
    code = "basis-size-cap"


class FactorizationError(RuntimeError):
    """The shifted Gram matrix could not be factorized.

    With finite inputs the ridge shift makes the matrix positive definite,
    so this signals a non-finite or corrupted design matrix.
    """
