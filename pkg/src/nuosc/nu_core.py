"""Parametric Nikiforov-Uvarov engine.

A radial problem brought to the hypergeometric-type form

    psi'' + (b1 - b2 z) / (z (1 - b3 z)) psi'
          + (-r2 z^2 + r1 z - r0) / (z (1 - b3 z))^2 psi = 0

is described by six numbers (:class:`NUCoefficients`).  Everything else the
method needs, the bound-state condition and the wavefunction exponents,
follows from the ten derived constants beta4..beta13 (:class:`NUConstants`).

Only the ``k_-`` branch, the one that yields normalizable states, is built.
The engine knows nothing about the energy: a caller that wants to solve for
``E`` hands :func:`solve_energy` a map from trial energies to coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .errors import ComplexBranch, DomainError, NonConvergence, NoSignChange

MAX_BISECTIONS = 200
BRACKET_RTOL = 1e-13


@dataclass(frozen=True)
class NUCoefficients:
    beta1: float
    beta2: float
    beta3: float
    rho0: float
    rho1: float
    rho2: float

    def __post_init__(self):
        for name in ("beta1", "beta2", "beta3", "rho0", "rho1", "rho2"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite, got {getattr(self, name)!r}")


@dataclass(frozen=True)
class NUConstants:
    beta4: float
    beta5: float
    beta6: float
    beta7: float
    beta8: float
    beta9: float
    beta10: float
    beta11: float
    beta12: float
    beta13: float


def derive_constants(c: NUCoefficients) -> NUConstants:
    """Derive beta4..beta13 from the six input coefficients.

    Raises :class:`ComplexBranch` when beta8 or beta9 is negative, since the
    square roots entering the bound-state condition would then be complex.
    """
    beta4 = 0.5 * (1.0 - c.beta1)
    beta5 = 0.5 * (c.beta2 - 2.0 * c.beta3)
    beta6 = beta5 * beta5 + c.rho2
    beta7 = 2.0 * beta4 * beta5 - c.rho1
    beta8 = beta4 * beta4 + c.rho0
    beta9 = c.beta3 * (beta7 + c.beta3 * beta8) + beta6
    if beta8 < 0.0:
        raise ComplexBranch(f"beta8 = {beta8!r} < 0: no real bound-state branch")
    if beta9 < 0.0:
        raise ComplexBranch(f"beta9 = {beta9!r} < 0: no real bound-state branch")

    root8 = math.sqrt(beta8)
    root9 = math.sqrt(beta9)
    return NUConstants(
        beta4=beta4,
        beta5=beta5,
        beta6=beta6,
        beta7=beta7,
        beta8=beta8,
        beta9=beta9,
        beta10=c.beta1 + 2.0 * beta4 + 2.0 * root8 - 1.0,
        beta11=c.beta2 - 2.0 * beta5 + 2.0 * (root9 + c.beta3 * root8),
        beta12=beta4 + root8,
        beta13=beta5 - (root9 - c.beta3 * root8),
    )


def energy_residual(n: int, c: NUCoefficients) -> float:
    """Left-hand side of the bound-state condition for level ``n``.

    Zero exactly when the energy embedded in ``c`` is an eigenvalue.
    """
    if n < 0:
        raise DomainError(f"n must be non-negative, got {n!r}")
    k = derive_constants(c)
    root8 = math.sqrt(k.beta8)
    root9 = math.sqrt(k.beta9)
    b3 = c.beta3
    return (
        c.beta2 * n
        - (2 * n + 1) * k.beta5
        + (2 * n + 1) * (root9 + b3 * root8)
        + n * (n - 1) * b3
        + k.beta7
        + 2.0 * b3 * k.beta8
        + 2.0 * root8 * root9
    )


def solve_energy(
    n: int,
    coeff_of_energy: Callable[[float], NUCoefficients],
    bracket: tuple[float, float],
    tol: float = 1e-8,
) -> float:
    """Find the energy of level ``n`` inside ``bracket``.

    Bisects until the bracket is narrower than ``1e-13 * max(1, |E|)`` and
    finishes with one secant step between the bracket ends.  ``tol`` bounds
    the absolute residual accepted at the returned energy.
    """
    lo, hi = float(bracket[0]), float(bracket[1])
    if lo > hi:
        lo, hi = hi, lo

    def f(e):
        return energy_residual(n, coeff_of_energy(e))

    f_lo, f_hi = f(lo), f(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if (f_lo > 0.0) == (f_hi > 0.0):
        raise NoSignChange(
            f"residual has the same sign at both ends of [{lo}, {hi}]: {f_lo!r}, {f_hi!r}"
        )

    for _ in range(MAX_BISECTIONS):
        mid = 0.5 * (lo + hi)
        if hi - lo <= BRACKET_RTOL * max(1.0, abs(mid)):
            break
        f_mid = f(mid)
        if f_mid == 0.0:
            return mid
        if (f_mid > 0.0) == (f_lo > 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
    else:
        raise NonConvergence(f"bracket did not shrink below tolerance in {MAX_BISECTIONS} steps")

    energy = hi - f_hi * (hi - lo) / (f_hi - f_lo)
    if not lo <= energy <= hi:
        energy = 0.5 * (lo + hi)
    residual = f(energy)
    if abs(residual) > tol:
        raise NonConvergence(f"residual {residual!r} at E = {energy!r} exceeds tol {tol!r}")
    return energy
