"""Exception types shared across the toolkit."""


class ValidationError(ValueError):
    """Raised when an input fails a domain or physicality check.

    The message names the offending field or quantity. The command-line
    interface maps this to exit code 2.
    """


class NumericalError(RuntimeError):
    """Raised when a numerical routine cannot meet its accuracy contract.

    The message reports the residual and conditioning information. The
    command-line interface maps this to exit code 3.
    """
