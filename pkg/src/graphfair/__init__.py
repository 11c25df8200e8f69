"""Envy-free and EFX allocation of edge-items on graphical valuation instances."""

from .core import (
    Allocation,
    CapacityError,
    Edge,
    GraphicalInstance,
    InputError,
    PreconditionError,
    WelfareReport,
    bundle_utility,
    is_efx,
    is_envy_free,
    is_non_wasteful,
    is_orientation,
    v_max,
    welfare,
)

__all__ = [
    "Allocation",
    "CapacityError",
    "Edge",
    "GraphicalInstance",
    "InputError",
    "PreconditionError",
    "WelfareReport",
    "bundle_utility",
    "is_efx",
    "is_envy_free",
    "is_non_wasteful",
    "is_orientation",
    "v_max",
    "welfare",
]
