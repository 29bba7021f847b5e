"""Closed-form spectrum and Hellmann-Feynman expectation values.

All quantities share the factor

    K = 2n + 1 + sqrt(m**2 + 2g)

and the effective frequency ``Gamma = sqrt(omega_L**2 + mu omega**2)``.  The
momentum and kinetic-energy expressions are negative, as in the reference
tables; the oracle module reports the physical, positive kinetic energy
separately.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import DegenerateStep
from .model import FieldParams, QuantumNumbers, WorkingUnits, confinement

AVOGADRO = 6.02e23
SPEED_OF_LIGHT = 3.00e8


@dataclass(frozen=True)
class SusceptibilityConstants:
    N: float = AVOGADRO
    z: float = 1.0
    e: float = 1.0
    c: float = SPEED_OF_LIGHT

    def __post_init__(self):
        for name in ("N", "z", "e", "c"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)!r}")


@dataclass(frozen=True)
class SpectrumRecord:
    molecule: str
    q: QuantumNumbers
    f: FieldParams
    E: float
    r2: float
    p2: float
    T: float
    V: float
    chi: float
    mu_B: float


@dataclass(frozen=True)
class HFTReport:
    lhs: float
    rhs: float
    rel_err: float


def level_factor(q: QuantumNumbers, f: FieldParams) -> float:
    return 2 * q.n + 1 + math.sqrt(q.m * q.m + 2.0 * f.g)


def energy(q: QuantumNumbers, u: WorkingUnits, f: FieldParams) -> float:
    return q.m * f.omega_L + confinement(u, f) * level_factor(q, f)


def expectation_r2(q: QuantumNumbers, u: WorkingUnits, f: FieldParams) -> float:
    return level_factor(q, f) / confinement(u, f)


def expectation_p2(q: QuantumNumbers, u: WorkingUnits, f: FieldParams) -> float:
    return -(u.mu_eff**2) * u.omega_eff**2 * level_factor(q, f) / confinement(u, f)


def expectation_T(q: QuantumNumbers, u: WorkingUnits, f: FieldParams) -> float:
    return -u.stiffness * level_factor(q, f) / (2.0 * confinement(u, f))


def expectation_V(q: QuantumNumbers, u: WorkingUnits, f: FieldParams) -> float:
    k = level_factor(q, f)
    gamma = confinement(u, f)
    return q.m * f.omega_L + gamma * k + u.stiffness * k / (2.0 * gamma)


def susceptibility(
    q: QuantumNumbers,
    u: WorkingUnits,
    f: FieldParams,
    k: SusceptibilityConstants = SusceptibilityConstants(),
) -> float:
    """Molar diamagnetic susceptibility, a negative multiple of ``<r^2>``."""
    prefactor = k.N * k.z * k.e**2 / (6.0 * u.mu_eff * k.c**2)
    return -prefactor * expectation_r2(q, u, f)


def magnetic_moment(
    q: QuantumNumbers,
    u: WorkingUnits,
    f: FieldParams,
    k: SusceptibilityConstants = SusceptibilityConstants(),
) -> float:
    """Induced moment; vanishes in zero field."""
    prefactor = 2.0 * k.e**2 * f.omega_L / (6.0 * u.mu_eff * k.c)
    return -prefactor * expectation_r2(q, u, f)


def spectrum_record(
    molecule: str,
    q: QuantumNumbers,
    u: WorkingUnits,
    f: FieldParams,
    k: SusceptibilityConstants = SusceptibilityConstants(),
) -> SpectrumRecord:
    return SpectrumRecord(
        molecule=molecule,
        q=q,
        f=f,
        E=energy(q, u, f),
        r2=expectation_r2(q, u, f),
        p2=expectation_p2(q, u, f),
        T=expectation_T(q, u, f),
        V=expectation_V(q, u, f),
        chi=susceptibility(q, u, f, k),
        mu_B=magnetic_moment(q, u, f, k),
    )


def hft_check(q: QuantumNumbers, u: WorkingUnits, f: FieldParams, h: float) -> HFTReport:
    """Compare a central difference of the energy in ``omega`` with ``<r^2>``.

    ``lhs`` is ``dE/domega / (mu omega)`` from a step ``h`` in ``omega`` at
    fixed mass; ``rhs`` is the closed-form ``<r^2>``.
    """
    if not h > 0.0:
        raise DegenerateStep(f"step must be positive, got {h!r}")
    w = u.omega_eff
    up, down = w + h, w - h
    if up == w or down == w or up - down == 0.0:
        raise DegenerateStep(f"step {h!r} vanishes next to omega = {w!r}")
    if not down > 0.0:
        raise DegenerateStep(f"step {h!r} reaches omega <= 0")
    e_up = energy(q, replace(u, omega_eff=up), f)
    e_down = energy(q, replace(u, omega_eff=down), f)
    derivative = (e_up - e_down) / (up - down)
    lhs = derivative / (u.mu_eff * w)
    rhs = expectation_r2(q, u, f)
    return HFTReport(lhs=lhs, rhs=rhs, rel_err=abs(lhs - rhs) / abs(rhs))
