"""Physical parameters, quantum numbers and state enumeration.

Units: hbar = c = 1, energies in units of the rest energy mc^2. A system is
fully described by two ratios,

    a = hbar*omega   / mc^2   (oscillator quantum)
    b = hbar*omega_L / mc^2   (Larmor quantum)

so SI quantities only show up in :func:`larmor_from_field` and
:meth:`PhysicalParams.from_si`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable

from scipy import constants


class DomainError(ValueError):
    """An argument violates a documented precondition."""


class NoRealBoundState(ValueError):
    """A branch formula gives E^2 < 0, or loses radial confinement."""

    def __init__(self, message: str, qn: "QuantumNumbers | None" = None, E2: float | None = None):
        super().__init__(message)
        self.qn = qn
        self.E2 = E2


class Configuration(enum.Enum):
    """Spinor assignment. I: upper spinor carries m_s = -1/2; II: +1/2."""

    I = "I"
    II = "II"


class Component(enum.Enum):
    UPPER = "upper"
    LOWER = "lower"


def _finite(*values: float) -> bool:
    return all(math.isfinite(v) for v in values)


@dataclass(frozen=True)
class PhysicalParams:
    a: float
    b: float = 0.0
    rest_energy: float = 1.0

    def __post_init__(self):
        if not _finite(self.a, self.b, self.rest_energy):
            raise DomainError("PhysicalParams: a, b and rest_energy must be finite")
        if self.a <= 0:
            raise DomainError(f"PhysicalParams: a must be > 0, got {self.a}")
        if self.b < 0:
            raise DomainError(f"PhysicalParams: b must be >= 0, got {self.b}")
        if self.rest_energy <= 0:
            raise DomainError(f"PhysicalParams: rest_energy must be > 0, got {self.rest_energy}")

    @classmethod
    def from_si(
        cls,
        omega: float,
        B: float = 0.0,
        mass: float = constants.m_e,
        charge: float = constants.e,
        rest_energy: float = 1.0,
    ) -> "PhysicalParams":
        """Build the dimensionless ratios from omega [rad/s] and B [T]."""
        mc2 = mass * constants.c**2
        omega_L = larmor_from_field(B, mass, charge)
        return cls(constants.hbar * omega / mc2, constants.hbar * omega_L / mc2, rest_energy)

    def with_b(self, b: float) -> "PhysicalParams":
        return PhysicalParams(self.a, b, self.rest_energy)


def larmor_from_field(B: float, mass: float = constants.m_e, charge: float = constants.e) -> float:
    """Larmor angular frequency eB/2m in rad/s (SI form of eB/2mc)."""
    if not _finite(B, mass, charge):
        raise DomainError("larmor_from_field: non-finite argument")
    if mass <= 0 or charge <= 0:
        raise DomainError("larmor_from_field: mass and charge must be > 0")
    if B < 0:
        raise DomainError(f"larmor_from_field: B must be >= 0, got {B}")
    return charge * B / (2.0 * mass)


def spin_projection(config: Configuration, component: Component) -> float:
    if (config is Configuration.I) == (component is Component.UPPER):
        return -0.5
    return 0.5


def spin_and_planar(
    config: Configuration, component: Component, params: PhysicalParams
) -> tuple[float, float]:
    """Return (m_s, planar quantum). The planar quantum is a+b for I, a-b for II."""
    m_s = spin_projection(config, component)
    if config is Configuration.I:
        return m_s, params.a + params.b
    return m_s, params.a - params.b


@dataclass(frozen=True)
class QuantumNumbers:
    config: Configuration
    component: Component
    N: int
    n: int
    m_l: int

    def __post_init__(self):
        for name in ("N", "n", "m_l"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int):
                raise DomainError(f"{name} must be an integer, got {value!r}")
        if self.N < 0:
            raise DomainError(f"N must be >= 0, got {self.N}")
        if self.n < 0:
            raise DomainError(f"n must be >= 0, got {self.n}")
        if abs(self.m_l) > self.N:
            raise DomainError(f"|m_l| <= N violated: N={self.N}, m_l={self.m_l}")
        if (self.N - abs(self.m_l)) % 2:
            raise DomainError(f"parity violated: N - |m_l| must be even (N={self.N}, m_l={self.m_l})")

    @property
    def m_s(self) -> float:
        return spin_projection(self.config, self.component)

    @property
    def k(self) -> int:
        """Radial node count (N - |m_l|)/2."""
        return (self.N - abs(self.m_l)) // 2

    @property
    def n_prime(self) -> int:
        return self.N + self.n

    def label(self) -> str:
        return (
            f"config={self.config.value} component={self.component.value} "
            f"N={self.N} n={self.n} m_l={self.m_l}"
        )


ALL_CONFIGS = (Configuration.I, Configuration.II)
ALL_COMPONENTS = (Component.UPPER, Component.LOWER)


def m_l_values(N: int) -> range:
    """Signed m_l allowed at fixed N: -N, -N+2, ..., N."""
    return range(-N, N + 1, 2)


def enumerate_states(
    max_N: int,
    max_n: int,
    configs: Iterable[Configuration] = ALL_CONFIGS,
    components: Iterable[Component] = ALL_COMPONENTS,
) -> list[QuantumNumbers]:
    """All parity-valid states up to the cutoffs.

    Ordering is (config, component, N, n, m_l) ascending, with I < II and
    upper < lower.
    """
    if max_N < 0 or max_n < 0:
        raise DomainError("enumerate_states: cutoffs must be >= 0")
    cfgs = sorted(set(configs), key=ALL_CONFIGS.index)
    comps = sorted(set(components), key=ALL_COMPONENTS.index)
    return [
        QuantumNumbers(cfg, comp, N, n, m_l)
        for cfg in cfgs
        for comp in comps
        for N in range(max_N + 1)
        for n in range(max_n + 1)
        for m_l in m_l_values(N)
    ]
