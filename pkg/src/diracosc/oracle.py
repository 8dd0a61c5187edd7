"""Finite-difference eigenvalue oracle for the separated equations.

The radial and axial equations are discretized as symmetric tridiagonal
operators whose low eigenvalues should reproduce D = 2(N+1) and 2n+1. The
eigenvalues come from an in-house Sturm-sequence bisection solver, so this
check shares no numerics with the closed forms.

Radial schemes
--------------
``"conservative"`` (default) discretizes -(1/xi)(xi F')' + (m^2/xi^2 + xi^2) F
in flux form on cell-centred nodes xi_i = (i - 1/2)h and symmetrizes with
u_i = sqrt(xi_i) F_i:

    diag_i    = (xi_{i+1/2} + xi_{i-1/2}) / (h^2 xi_i) + m^2/xi_i^2 + xi_i^2
    offdiag_i = -xi_{i+1/2} / (h^2 sqrt(xi_i xi_{i+1}))

The flux through xi = 0 vanishes, so it stays second order for m_l = 0.

``"symmetrized"`` is the textbook u = sqrt(xi) F form on nodes xi_i = i h,
-u'' + [xi^2 + (m^2 - 1/4)/xi^2] u = D u. For m_l = 0 it converges to the
wrong limit because u ~ sqrt(xi) at the origin; it is kept for comparison.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from functools import lru_cache

import numpy as np

from .core import (
    ALL_COMPONENTS,
    Configuration,
    DomainError,
    PhysicalParams,
    QuantumNumbers,
    m_l_values,
)
from .spectrum import bracket_K, reconstruct_E2

RADIAL_EXTENT = 15.0
RADIAL_POINTS = 4000
AXIAL_EXTENT = 8.0
AXIAL_POINTS = 4001
MIN_RADIAL_POINTS = 1000
DEFAULT_TOL = 1e-10
PASS_REL = 1e-5

_PIVMIN = 1e-300


@dataclass(frozen=True)
class TridiagonalOperator:
    diag: np.ndarray
    offdiag: np.ndarray
    grid: np.ndarray
    h: float

    def __post_init__(self):
        if self.diag.ndim != 1 or self.offdiag.shape != (max(self.diag.size - 1, 0),):
            raise DomainError("tridiagonal operator: offdiag must have length len(diag) - 1")
        if self.grid.shape != self.diag.shape:
            raise DomainError("tridiagonal operator: grid and diag differ in length")
        if not self.h > 0:
            raise DomainError("tridiagonal operator: step must be > 0")

    @property
    def size(self) -> int:
        return self.diag.size

    def dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)

    @classmethod
    def from_arrays(cls, diag, offdiag) -> "TridiagonalOperator":
        """Bare matrix with a placeholder unit grid."""
        d = np.asarray(diag, dtype=float)
        return cls(d, np.asarray(offdiag, dtype=float), np.arange(d.size, dtype=float), 1.0)


@dataclass(frozen=True)
class EigenResult:
    index: int
    value: float
    residual_bound: float
    iterations: int


def _uniform(grid: np.ndarray) -> float:
    h = np.diff(grid)
    if grid.ndim != 1 or grid.size < 2 or np.any(h <= 0):
        raise DomainError("grid must be strictly increasing with at least 2 nodes")
    if not np.allclose(h, h[0], rtol=1e-9, atol=0.0):
        raise DomainError("grid must be uniform")
    return float(h[0])


def radial_grid(extent: float = RADIAL_EXTENT, points: int = RADIAL_POINTS,
                scheme: str = "conservative") -> np.ndarray:
    """``points`` interior nodes in (0, extent] for the chosen scheme."""
    h = extent / points
    if scheme == "conservative":
        return h * (np.arange(1, points + 1) - 0.5)
    if scheme == "symmetrized":
        return h * np.arange(1, points + 1)
    raise DomainError(f"unknown radial scheme {scheme!r}")


def axial_grid(extent: float = AXIAL_EXTENT, points: int = AXIAL_POINTS) -> np.ndarray:
    """``points`` nodes on [-extent, extent]; the end nodes carry the Dirichlet condition."""
    return np.linspace(-extent, extent, points)


def discretize_radial(m_l: int, grid=None, scheme: str = "conservative") -> TridiagonalOperator:
    x = radial_grid(scheme=scheme) if grid is None else np.asarray(grid, dtype=float)
    if np.any(x <= 0):
        raise DomainError("radial grid must exclude xi = 0 (singular potential)")
    if x.size < MIN_RADIAL_POINTS:
        raise DomainError(f"radial grid needs >= {MIN_RADIAL_POINTS} points, got {x.size}")
    h = _uniform(x)
    m2 = float(m_l * m_l)
    if scheme == "conservative":
        xp = x + 0.5 * h
        xm = np.maximum(x - 0.5 * h, 0.0)
        diag = (xp + xm) / (h * h * x) + m2 / (x * x) + x * x
        off = -xp[:-1] / (h * h * np.sqrt(x[:-1] * x[1:]))
    elif scheme == "symmetrized":
        diag = 2.0 / (h * h) + x * x + (m2 - 0.25) / (x * x)
        off = np.full(x.size - 1, -1.0 / (h * h))
    else:
        raise DomainError(f"unknown radial scheme {scheme!r}")
    return TridiagonalOperator(diag, off, x, h)


def discretize_axial(grid=None) -> TridiagonalOperator:
    y = axial_grid() if grid is None else np.asarray(grid, dtype=float)
    h = _uniform(y)
    if not np.allclose(y, -y[::-1], rtol=0.0, atol=1e-12 * max(1.0, abs(y[-1]))):
        raise DomainError("axial grid must be symmetric about z = 0")
    interior = y[1:-1]
    diag = 2.0 / (h * h) + interior * interior
    off = np.full(interior.size - 1, -1.0 / (h * h))
    return TridiagonalOperator(diag, off, interior, h)


def gershgorin_bounds(T: TridiagonalOperator) -> tuple[float, float]:
    r = np.zeros(T.size)
    a = np.abs(T.offdiag)
    r[:-1] += a
    r[1:] += a
    return float(np.min(T.diag - r)), float(np.max(T.diag + r))


def _sturm(d: list[float], e2: list[float], x: float) -> int:
    count = 0
    q = d[0] - x
    if abs(q) < _PIVMIN:
        q = -_PIVMIN
    if q < 0:
        count += 1
    for di, ei2 in zip(d[1:], e2):
        q = di - x - ei2 / q
        if abs(q) < _PIVMIN:
            q = -_PIVMIN
        if q < 0:
            count += 1
    return count


def sturm_count(T: TridiagonalOperator, x: float) -> int:
    """Number of eigenvalues of T strictly below x (pivots equal to zero count as negative)."""
    return _sturm(T.diag.tolist(), (T.offdiag**2).tolist(), float(x))


def sturm_bisect(T: TridiagonalOperator, count: int, tol: float = DEFAULT_TOL) -> list[EigenResult]:
    """The ``count`` smallest eigenvalues, each bracketed to width <= tol.

    Every Sturm count tightens the brackets of all pending eigenvalues, so
    later eigenvalues start from intervals already narrowed by earlier ones.
    """
    if count < 1:
        raise DomainError(f"count must be >= 1, got {count}")
    if count > T.size:
        raise DomainError(f"count {count} exceeds matrix dimension {T.size}")
    if not tol > 0:
        raise DomainError(f"tol must be > 0, got {tol}")
    d = T.diag.tolist()
    e2 = (T.offdiag**2).tolist()
    lo0, hi0 = gershgorin_bounds(T)
    pad = 2.0 * np.finfo(float).eps * max(abs(lo0), abs(hi0), 1.0) + 4 * _PIVMIN
    lo = [lo0 - pad] * count
    hi = [hi0 + pad] * count
    results = []
    for j in range(count):
        iterations = 0
        while hi[j] - lo[j] > tol:
            mid = 0.5 * (lo[j] + hi[j])
            if mid <= lo[j] or mid >= hi[j]:
                break
            c = _sturm(d, e2, mid)
            iterations += 1
            for i in range(j, count):
                if c > i:
                    hi[i] = min(hi[i], mid)
                else:
                    lo[i] = max(lo[i], mid)
        results.append(EigenResult(j, 0.5 * (lo[j] + hi[j]), 0.5 * (hi[j] - lo[j]), iterations))
    return results


def eigenvalues(T: TridiagonalOperator, count: int, tol: float = DEFAULT_TOL) -> np.ndarray:
    return np.array([r.value for r in sturm_bisect(T, count, tol)])


@dataclass(frozen=True)
class Check:
    name: str
    expected: float
    actual: float
    rel_error: float
    passed: bool


@dataclass
class VerificationReport:
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, expected: float, actual: float, rel_tol: float) -> Check:
        rel = abs(actual - expected) / abs(expected) if expected else abs(actual)
        check = Check(name, float(expected), float(actual), float(rel), bool(rel <= rel_tol))
        self.checks.append(check)
        return check

    def worst(self, prefix: str = "") -> float:
        errs = [c.rel_error for c in self.checks if c.name.startswith(prefix)]
        return max(errs) if errs else 0.0

    def to_records(self) -> list[dict]:
        return [asdict(c) for c in self.checks]


# The discretized operators do not depend on (a, b); cache their spectra.
@lru_cache(maxsize=64)
def _radial_spectrum(abs_m, count, extent, points, scheme, tol) -> tuple[float, ...]:
    T = discretize_radial(abs_m, radial_grid(extent, points, scheme), scheme)
    return tuple(eigenvalues(T, count, tol))


@lru_cache(maxsize=16)
def _axial_spectrum(count, extent, points, tol) -> tuple[float, ...]:
    return tuple(eigenvalues(discretize_axial(axial_grid(extent, points)), count, tol))


def radial_eigenvalues(abs_m: int, count: int, extent: float = RADIAL_EXTENT,
                       points: int = RADIAL_POINTS, scheme: str = "conservative",
                       tol: float = DEFAULT_TOL) -> np.ndarray:
    return np.array(_radial_spectrum(abs(abs_m), count, extent, points, scheme, tol))


def axial_eigenvalues(count: int, extent: float = AXIAL_EXTENT, points: int = AXIAL_POINTS,
                      tol: float = DEFAULT_TOL) -> np.ndarray:
    return np.array(_axial_spectrum(count, extent, points, tol))


def verify_against_closed_form(
    params: PhysicalParams,
    config: Configuration,
    max_N: int,
    max_n: int,
    m_l_set=(0, 1, 2, 3),
    rel_tol: float = PASS_REL,
    radial_points: int = RADIAL_POINTS,
    axial_points: int = AXIAL_POINTS,
    scheme: str = "conservative",
) -> VerificationReport:
    """Numerical D and 2n+1 against their quantized values, then E^2 end to end.

    ``m_l_set`` is read through |m_l|; both signs are checked end to end.
    """
    if max_N < 0 or max_n < 0:
        raise DomainError("cutoffs must be >= 0")
    if config is Configuration.II and not params.a > params.b:
        raise DomainError(f"configuration II needs a > b, got a={params.a}, b={params.b}")
    report = VerificationReport()

    radial: dict[int, np.ndarray] = {}
    for m in sorted({abs(int(v)) for v in m_l_set}):
        if m > max_N:
            continue
        count = (max_N - m) // 2 + 1
        radial[m] = radial_eigenvalues(m, count, points=radial_points, scheme=scheme)
        for k, D in enumerate(radial[m]):
            N = 2 * k + m
            report.add(f"radial |m_l|={m} N={N} D", 2.0 * (N + 1), D, rel_tol)

    axial = axial_eigenvalues(max_n + 1, points=axial_points)
    for n, val in enumerate(axial):
        report.add(f"axial n={n} 2n+1", 2.0 * n + 1.0, val, rel_tol)

    for component in ALL_COMPONENTS:
        for N in range(max_N + 1):
            for m_l in m_l_values(N):
                if abs(m_l) not in radial:
                    continue
                D = radial[abs(m_l)][(N - abs(m_l)) // 2]
                for n in range(max_n + 1):
                    qn = QuantumNumbers(config, component, N, n, m_l)
                    expected = 1.0 + 2.0 * bracket_K(params, qn)
                    actual = reconstruct_E2(params, qn, axial[n], D)
                    report.add(f"E2 {qn.label()}", expected, actual, rel_tol)
    return report


PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def sigma_dot(v) -> np.ndarray:
    return sum(c * s for c, s in zip(v, PAULI))


def pauli_identity_check(trials: int = 1000, seed: int = 0, tol: float = 1e-12) -> tuple[bool, float]:
    """(sigma.v)^2 == |v|^2 I for random real 3-vectors; returns (passed, worst deviation)."""
    if trials < 1:
        raise DomainError(f"trials must be >= 1, got {trials}")
    rng = np.random.default_rng(seed)
    worst = 0.0
    eye = np.eye(2)
    for v in rng.standard_normal((trials, 3)):
        S = sigma_dot(v)
        worst = max(worst, float(np.abs(S @ S - np.dot(v, v) * eye).max()))
    return worst <= tol, worst


def convergence_ratios(abs_m: int, N: int, points=(1000, 2000, 4000),
                       extent: float = RADIAL_EXTENT) -> list[float]:
    """Error ratios |D_h - D| / |D_{h/2} - D| over successive grid halvings."""
    k = (N - abs_m) // 2
    exact = 2.0 * (N + 1)
    errs = [abs(radial_eigenvalues(abs_m, k + 1, extent, p)[k] - exact) for p in points]
    return [errs[i] / errs[i + 1] for i in range(len(errs) - 1)]
