"""Dirac oscillator in an axial magnetic field: closed-form spectrum and numerical oracle."""

from .core import (
    Component,
    Configuration,
    DomainError,
    NoRealBoundState,
    PhysicalParams,
    QuantumNumbers,
    enumerate_states,
    larmor_from_field,
    spin_and_planar,
)
from .spectrum import (
    EnergyLevel,
    Intermediates,
    bracket_K,
    degeneracy,
    energy,
    intermediates_consistency,
    scan_field,
    transition_lines,
    zero_field_bracket,
)

__all__ = [
    "Component",
    "Configuration",
    "DomainError",
    "EnergyLevel",
    "Intermediates",
    "NoRealBoundState",
    "PhysicalParams",
    "QuantumNumbers",
    "bracket_K",
    "degeneracy",
    "energy",
    "enumerate_states",
    "intermediates_consistency",
    "larmor_from_field",
    "scan_field",
    "spin_and_planar",
    "transition_lines",
    "zero_field_bracket",
]
