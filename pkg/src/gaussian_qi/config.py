"""Global configuration: quadrature normalization and entropy log base.

``hbar`` is fixed at 2 (vacuum covariance = identity) and cannot be changed;
the constant exists so the convention is named rather than sprinkled as a
magic number. The log base is a process-wide setting {2, e}, default 2, that
every entropy, capacity and rate honors; individual functions also accept a
``base`` argument to override it locally.
"""

from __future__ import annotations

import contextlib
import math

from .errors import ValidationError

HBAR = 2.0

# Gauss-Hermite nodes per axis for postselection key-rate quadrature.
postselection_nodes = 200

_LOG_BASE = 2.0


def _coerce_base(base) -> float:
    if base in (2, 2.0, "2"):
        return 2.0
    if base in ("e", math.e):
        return math.e
    raise ValidationError(f"log base must be 2 or 'e', got {base!r}")


def set_log_base(base) -> None:
    """Set the global log base to ``2`` or ``'e'``."""
    global _LOG_BASE
    _LOG_BASE = _coerce_base(base)


def get_log_base() -> float:
    """Return the active global log base (2.0 or e)."""
    return _LOG_BASE


def resolve_base(base=None) -> float:
    """Return ``base`` coerced to {2.0, e}, or the global base if ``None``."""
    if base is None:
        return _LOG_BASE
    return _coerce_base(base)


def log(x, base=None):
    """Logarithm of ``x`` in the configured (or given) base; array-aware."""
    import numpy as np

    return np.log(x) / math.log(resolve_base(base))


@contextlib.contextmanager
def log_base(base):
    """Context manager that temporarily switches the global log base."""
    global _LOG_BASE
    previous = _LOG_BASE
    _LOG_BASE = _coerce_base(base)
    try:
        yield
    finally:
        _LOG_BASE = previous
