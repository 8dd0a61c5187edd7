"""Closed-form energy levels of the Dirac oscillator in an axial field.

All four branches share one bracket K (in units of mc^2):

    E^2 = 1 + 2K

K is also the non-relativistic energy above mc^2, so it is the only
quantity computed from the quantum numbers; E^2 and E are views of it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .core import (
    Component,
    Configuration,
    DomainError,
    NoRealBoundState,
    PhysicalParams,
    QuantumNumbers,
    spin_and_planar,
)

LINE_TOL = 1e-12


@dataclass(frozen=True)
class EnergyLevel:
    qn: QuantumNumbers
    K: float
    E2: float
    E: float


@dataclass(frozen=True)
class Intermediates:
    eps: float
    lam: float
    D: float


def _coefficients(qn: QuantumNumbers) -> tuple[float, float]:
    # K = ca*a + cb*b; every term is a half-integer, so ca and cb are exact.
    N1, m = qn.N + 1, qn.m_l
    axial = qn.n + 0.5
    if qn.config is Configuration.I:
        if qn.m_s < 0:
            return N1 + axial + (m - 1.5), N1 + (m - 1)
        return N1 + axial + (m + 1.5), N1 + (m + 1)
    if qn.m_s > 0:
        return N1 + axial - (m + 1.5), -N1 + (m + 1)
    return N1 + axial - (m - 1.5), -N1 + (m - 1)


def bracket_K(params: PhysicalParams, qn: QuantumNumbers) -> float:
    ca, cb = _coefficients(qn)
    if params.b == 0.0:
        return ca * params.a
    return ca * params.a + cb * params.b


def energy(params: PhysicalParams, qn: QuantumNumbers) -> EnergyLevel:
    """Positive-energy level; raises NoRealBoundState when E^2 < 0."""
    K = bracket_K(params, qn)
    E2 = 1.0 + 2.0 * K
    if E2 < 0:
        raise NoRealBoundState(f"no real bound state: E2={E2!r} < 0 for {qn.label()}", qn, E2)
    return EnergyLevel(qn, K, E2, math.sqrt(E2))


def _separation_shift(params: PhysicalParams, qn: QuantumNumbers) -> float:
    """Terms moved across when the separation constant lambda is defined.

    E^2 = lambda + 1 + shift. For (I, upper) this is
    -3a + 2a*m_l + 2b(m_l - 1); the other branches flip the spin-orbit and
    Zeeman signs.
    """
    a, b, m = params.a, params.b, qn.m_l
    if qn.config is Configuration.I:
        if qn.component is Component.UPPER:
            return -3 * a + 2 * a * m + 2 * b * (m - 1)
        return 3 * a + 2 * a * m + 2 * b * (m + 1)
    if qn.component is Component.UPPER:
        return -3 * a - 2 * a * m + 2 * b * (m + 1)
    return 3 * a - 2 * a * m + 2 * b * (m - 1)


def intermediates(params: PhysicalParams, qn: QuantumNumbers) -> Intermediates:
    _, planar = spin_and_planar(qn.config, qn.component, params)
    eps = 2 * (qn.n + 0.5) * params.a
    D = 2.0 * (qn.N + 1)
    return Intermediates(eps=eps, lam=eps + D * planar, D=D)


def reconstruct_E2(
    params: PhysicalParams, qn: QuantumNumbers, eps_eigenvalue: float, D: float
) -> float:
    """E^2 from separation data: eps_eigenvalue is 2n+1, D the radial eigenvalue.

    Both may come from a numerical solve; the closed form uses 2n+1 and 2(N+1).
    """
    _, planar = spin_and_planar(qn.config, qn.component, params)
    lam = eps_eigenvalue * params.a + D * planar
    return lam + 1.0 + _separation_shift(params, qn)


def intermediates_consistency(
    params: PhysicalParams, qn: QuantumNumbers
) -> tuple[Intermediates, float]:
    inter = intermediates(params, qn)
    E2 = inter.lam + 1.0 + _separation_shift(params, qn)
    return inter, E2


def zero_field_bracket(params: PhysicalParams, n_prime: int, m_l: int, m_s: float) -> float:
    """Zero-field K = (n' + 3/2)a + (m_l -+ 3/2)a, sign by m_s."""
    if params.b != 0:
        raise DomainError(f"zero_field_bracket requires b == 0, got b={params.b}")
    if n_prime < 0:
        raise DomainError(f"n' must be >= 0, got {n_prime}")
    if m_s not in (-0.5, 0.5):
        raise DomainError(f"m_s must be +-1/2, got {m_s}")
    spin_orbit = m_l - 1.5 if m_s < 0 else m_l + 1.5
    return ((n_prime + 1.5) + spin_orbit) * params.a


def levels_for(params: PhysicalParams, states: Iterable[QuantumNumbers]) -> list[EnergyLevel]:
    return [energy(params, qn) for qn in states]


def degeneracy(
    levels: Sequence[EnergyLevel], target_E2: float, tol: float
) -> tuple[int, list[EnergyLevel]]:
    """Levels with |E2 - target_E2| <= tol, in input order.

    The E = mc^2 family (m_l = -N, n = 0) is infinite, so ``levels`` must come
    from a finite cutoff.
    """
    if tol < 0:
        raise DomainError(f"tol must be >= 0, got {tol}")
    members = [lv for lv in levels if abs(lv.E2 - target_E2) <= tol]
    return len(members), members


def canonical_quanta(params: PhysicalParams) -> dict[str, float]:
    a, b = params.a, params.b
    return {"a": a, "b": b, "a+b": a + b, "a-b": a - b}


def classify_gap(dK: float, quanta: dict[str, float], tol: float = LINE_TOL) -> str:
    mag = abs(dK)
    if mag <= tol:
        return "degenerate"
    for tag, q in quanta.items():
        if q != 0 and math.isclose(mag, abs(q), rel_tol=tol, abs_tol=tol):
            return tag
    return "other"


@dataclass(frozen=True)
class TransitionLine:
    lower: QuantumNumbers
    upper: QuantumNumbers
    dK: float
    tag: str


@dataclass
class TransitionCatalog:
    canonical: dict[str, float]
    lines: list[TransitionLine] = field(default_factory=list)

    def counts(self) -> dict[str, int]:
        out = {tag: 0 for tag in (*self.canonical, "degenerate", "other")}
        for line in self.lines:
            out[line.tag] += 1
        return out


def transition_lines(
    params: PhysicalParams, levels: Sequence[EnergyLevel], config: Configuration
) -> TransitionCatalog:
    """Every pair i < j (input order) with dK = K_j - K_i, tagged by quantum."""
    if any(lv.qn.config is not config for lv in levels):
        raise DomainError(f"transition_lines: all levels must belong to configuration {config.value}")
    quanta = canonical_quanta(params)
    catalog = TransitionCatalog(canonical=quanta)
    for i, lo in enumerate(levels):
        for hi in levels[i + 1:]:
            dK = hi.K - lo.K
            catalog.lines.append(TransitionLine(lo.qn, hi.qn, dK, classify_gap(dK, quanta)))
    return catalog


@dataclass(frozen=True)
class ScanRow:
    b: float
    K: float
    E2: float
    E: float | None
    bound: bool


def scan_field(params_base: PhysicalParams, qn: QuantumNumbers, b_values: Iterable[float]) -> list[ScanRow]:
    """Sweep the Larmor ratio b; unbound rows are flagged, not raised."""
    rows = []
    for b in b_values:
        if not math.isfinite(b) or b < 0:
            raise DomainError(f"scan_field: b values must be finite and >= 0, got {b}")
        K = bracket_K(params_base.with_b(b), qn)
        E2 = 1.0 + 2.0 * K
        bound = E2 >= 0
        rows.append(ScanRow(b, K, E2, math.sqrt(E2) if bound else None, bound))
    return rows


def field_slope(qn: QuantumNumbers) -> float:
    """dK/db, constant in b."""
    return _coefficients(qn)[1]
