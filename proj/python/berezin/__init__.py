"""Berezin covariant symbols for the Heisenberg group.

Thin wrapper around the C++ core. Arrays are NumPy; operators and states
are expressed in the lambda-scaled Hermite basis truncated to M modes per
axis, and grid functions are sampled on the phase-space grid returned by
``Context.grid_points()``.
"""

from ._core import (
    Context,
    InjectivityReport,
    ModelConfig,
    TruncationError,
    coadjoint,
    config_from_dict,
    inverse,
    multiply,
    run_verification,
)

__all__ = [
    "Context",
    "InjectivityReport",
    "ModelConfig",
    "TruncationError",
    "coadjoint",
    "config_from_dict",
    "inverse",
    "multiply",
    "run_verification",
]
