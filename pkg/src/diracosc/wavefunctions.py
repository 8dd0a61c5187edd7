"""Separated eigenfunctions: radial (planar), axial, angular phase and spin label.

Radial profiles use

    F(xi) = A xi^|m_l| exp(-xi^2/2) L_k^|m_l|(xi^2),   k = (N - |m_l|)/2,

which solves F'' + F'/xi - m_l^2 F/xi^2 - xi^2 F + D F = 0 at D = 2(N+1).
A Laguerre factor in xi itself (no xi^|m_l| prefactor, argument xi) does not
solve that equation; ``ode_residual`` is the arbiter.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    Configuration,
    DomainError,
    NoRealBoundState,
    PhysicalParams,
    QuantumNumbers,
    spin_and_planar,
)
from .special import hermite, integrate, laguerre_assoc

RADIAL_EXTENT = 15.0
RADIAL_POINTS = 4000
AXIAL_EXTENT = 8.0
AXIAL_POINTS = 4001
RADIAL_CORE = 0.2
MIN_RESIDUAL_POINTS = 200


def default_radial_grid(extent: float = RADIAL_EXTENT, points: int = RADIAL_POINTS) -> np.ndarray:
    """``points`` uniform nodes on (0, extent], with the origin prepended."""
    return np.linspace(0.0, extent, points + 1)


def default_axial_grid(extent: float = AXIAL_EXTENT, points: int = AXIAL_POINTS) -> np.ndarray:
    return np.linspace(-extent, extent, points)


def xi_scale(params: PhysicalParams, config: Configuration) -> float:
    """Factor taking the cylindrical radius rho (units hbar/mc) to xi."""
    planar = params.a + params.b if config is Configuration.I else params.a - params.b
    if planar <= 0:
        raise NoRealBoundState(
            f"radial confinement lost: planar quantum {planar!r} <= 0 for configuration {config.value}"
        )
    return math.sqrt(planar)


def xi_scale_quartic(params: PhysicalParams, config: Configuration) -> float:
    """The same scale from the un-simplified quartic root.

    In natural units B^2e^2/4c^2hbar^2 -> b^2, m e omega B/hbar^2 c -> 2ab and
    m^2 omega^2/hbar^2 -> a^2; configuration II reverses the cross term.
    """
    a, b = params.a, params.b
    cross = 2 * a * b if config is Configuration.I else -2 * a * b
    if config is Configuration.II and a <= b:
        raise NoRealBoundState(f"radial confinement lost: a - b = {a - b!r} <= 0")
    return (b * b + cross + a * a) ** 0.25


def axial_scale(params: PhysicalParams) -> float:
    """Factor taking z (units hbar/mc) to the oscillator variable y."""
    return math.sqrt(params.a)


def radial_norm(N: int, m_l: int) -> float:
    k, m = (N - abs(m_l)) // 2, abs(m_l)
    return math.sqrt(2.0 * math.factorial(k) / math.factorial(k + m))


def axial_norm(n: int) -> float:
    return 1.0 / math.sqrt(2.0**n * math.factorial(n) * math.sqrt(math.pi))


def _check_radial_qn(N: int, m_l: int) -> None:
    if N < 0 or abs(m_l) > N or (N - abs(m_l)) % 2:
        raise DomainError(f"parity violated: need |m_l| <= N and N - |m_l| even (N={N}, m_l={m_l})")


def radial_value(N: int, m_l: int, xi):
    _check_radial_qn(N, m_l)
    m = abs(m_l)
    xi = np.asarray(xi, dtype=float)
    return radial_norm(N, m_l) * xi**m * np.exp(-0.5 * xi * xi) * laguerre_assoc((N - m) // 2, m, xi * xi)


def axial_value(n: int, y):
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    y = np.asarray(y, dtype=float)
    return axial_norm(n) * hermite(n, y) * np.exp(-0.5 * y * y)


def count_sign_changes(values) -> int:
    v = np.asarray(values, dtype=float)
    v = v[v != 0.0]
    return int(np.count_nonzero(np.signbit(v[1:]) != np.signbit(v[:-1])))


@dataclass(frozen=True)
class RadialProfile:
    N: int
    m_l: int
    xi: np.ndarray
    F: np.ndarray
    A: float

    @property
    def k(self) -> int:
        return (self.N - abs(self.m_l)) // 2

    @property
    def samples(self) -> list[tuple[float, float]]:
        return list(zip(self.xi.tolist(), self.F.tolist()))

    def norm(self) -> float:
        """Integral of F^2 xi over the sampled domain (origin included)."""
        xi, F = self.xi, self.F
        if xi[0] > 0:
            xi, F = np.concatenate(([0.0], xi)), np.concatenate(([0.0], F))
        return integrate(F * F * xi, xi)

    def nodes(self) -> int:
        return count_sign_changes(self.F)


@dataclass(frozen=True)
class AxialProfile:
    n: int
    y: np.ndarray
    G: np.ndarray

    @property
    def samples(self) -> list[tuple[float, float]]:
        return list(zip(self.y.tolist(), self.G.tolist()))

    def norm(self) -> float:
        return integrate(self.G * self.G, self.y)

    def nodes(self) -> int:
        return count_sign_changes(self.G)


def radial_profile(N: int, m_l: int, grid=None) -> RadialProfile:
    _check_radial_qn(N, m_l)
    xi = default_radial_grid() if grid is None else np.asarray(grid, dtype=float)
    if xi.ndim != 1 or xi.size < 3:
        raise DomainError("radial grid needs at least 3 nodes")
    if xi[0] < 0 or xi[-1] < 10.0:
        raise DomainError(f"radial grid must lie in [0, xi_max] with xi_max >= 10, got [{xi[0]}, {xi[-1]}]")
    return RadialProfile(N, m_l, xi, radial_value(N, m_l, xi), radial_norm(N, m_l))


def axial_profile(n: int, grid=None) -> AxialProfile:
    y = default_axial_grid() if grid is None else np.asarray(grid, dtype=float)
    return AxialProfile(n, y, axial_value(n, y))


def _uniform_step(x: np.ndarray) -> float:
    if x.size < MIN_RESIDUAL_POINTS:
        raise DomainError(f"grid too coarse for residual check: {x.size} < {MIN_RESIDUAL_POINTS} points")
    h = np.diff(x)
    if not np.allclose(h, h[0], rtol=1e-9, atol=0.0):
        raise DomainError("residual check needs a uniform grid")
    return float(h[0])


def _d1(f: np.ndarray, h: float) -> np.ndarray:
    return (-f[4:] + 8 * f[3:-1] - 8 * f[1:-3] + f[:-4]) / (12 * h)


def _d2(f: np.ndarray, h: float) -> np.ndarray:
    return (-f[4:] + 16 * f[3:-1] - 30 * f[2:-2] + 16 * f[1:-3] - f[:-4]) / (12 * h * h)


def ode_residual(profile, kind: str | None = None, eigenvalue: float | None = None) -> float:
    """Max |ODE(profile)| over interior points, relative to the largest term.

    Radial: F'' + F'/xi - m^2 F/xi^2 - xi^2 F + D F, D = 2(N+1), xi < 0.2 skipped.
    Axial:  -G'' + y^2 G - (2n+1) G, i.e. eps/a with eps = 2(n+1/2)a.
    ``eigenvalue`` overrides D (radial) or 2n+1 (axial). Derivatives use
    fourth-order central differences.
    """
    if kind is None:
        kind = "radial" if isinstance(profile, RadialProfile) else "axial"
    if kind == "radial":
        if not isinstance(profile, RadialProfile):
            raise DomainError("kind='radial' needs a RadialProfile")
        x, f = profile.xi, profile.F
        h = _uniform_step(x)
        D = 2.0 * (profile.N + 1) if eigenvalue is None else eigenvalue
        xi, fi = x[2:-2], f[2:-2]
        m2 = float(profile.m_l**2)
        terms = np.array([_d2(f, h), _d1(f, h) / xi, m2 * fi / (xi * xi), xi * xi * fi, D * fi])
        keep = xi >= RADIAL_CORE
        total = terms[0] + terms[1] - terms[2] - terms[3] + terms[4]
    elif kind == "axial":
        if not isinstance(profile, AxialProfile):
            raise DomainError("kind='axial' needs an AxialProfile")
        x, f = profile.y, profile.G
        h = _uniform_step(x)
        if eigenvalue is None:
            eigenvalue = 2.0 * (profile.n + 0.5)
        y, fi = x[2:-2], f[2:-2]
        terms = np.array([_d2(f, h), y * y * fi, eigenvalue * fi])
        keep = np.ones_like(y, dtype=bool)
        total = -terms[0] + terms[1] - terms[2]
    else:
        raise DomainError(f"kind must be 'radial' or 'axial', got {kind!r}")
    scale = np.abs(terms[:, keep]).max()
    return float(np.abs(total[keep]).max() / scale)


@dataclass(frozen=True)
class WaveComponent:
    """One spinor component: F(xi) G(y) exp(i m_l phi) chi_{m_s}.

    Coordinates rho and z are in units of hbar/mc; F and G are normalized in
    their own dimensionless variables.
    """

    qn: QuantumNumbers
    radial: RadialProfile
    axial: AxialProfile
    m_l: int
    m_s: float
    rho_scale: float
    z_scale: float

    def amplitude(self, rho, phi, z):
        rho, phi, z = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (rho, phi, z)))
        F = radial_value(self.qn.N, self.m_l, self.rho_scale * rho)
        G = axial_value(self.qn.n, self.z_scale * z)
        return F * G * np.exp(1j * self.m_l * phi)

    def density(self, rho, z):
        """|psi|^2, which does not depend on phi."""
        F = radial_value(self.qn.N, self.m_l, self.rho_scale * np.asarray(rho, dtype=float))
        G = axial_value(self.qn.n, self.z_scale * np.asarray(z, dtype=float))
        return (F * G) ** 2


def assemble_component(qn: QuantumNumbers, params: PhysicalParams,
                       radial_grid=None, axial_grid=None) -> WaveComponent:
    m_s, _ = spin_and_planar(qn.config, qn.component, params)
    return WaveComponent(
        qn=qn,
        radial=radial_profile(qn.N, qn.m_l, radial_grid),
        axial=axial_profile(qn.n, axial_grid),
        m_l=qn.m_l,
        m_s=m_s,
        rho_scale=xi_scale(params, qn.config),
        z_scale=axial_scale(params),
    )
