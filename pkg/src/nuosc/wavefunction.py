"""Normalized radial eigenfunctions and quadrature cross-checks.

    R(r) = N r**(2 delta + 3/2) exp(-gamma r**2 / 2) L_n^(2 delta + 1)(gamma r**2)

with ``delta = -1/2 + sqrt(m**2/4 + g/2)`` and ``gamma`` the effective
oscillator frequency.  The factorial in the normalization is taken as a gamma
function because ``2 delta + 1`` is generally not an integer.

Integrals of ``R**2`` become Gauss-Laguerre sums after ``z = gamma r**2``,
which turns the measure into ``z**(2 delta + 1) exp(-z) dz`` exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from .errors import DomainError
from .model import FieldParams, QuantumNumbers, WorkingUnits, confinement
from .specfun import DEFAULT_ORDER, gauss_laguerre, laguerre, ln_gamma

SCAN_POINTS_PER_NODE = 400
BISECTION_STEPS = 200


@dataclass(frozen=True)
class RadialState:
    q: QuantumNumbers
    delta: float
    gamma: float
    norm: float

    @property
    def alpha(self) -> float:
        """Laguerre order ``2 delta + 1``."""
        return 2.0 * self.delta + 1.0

    @property
    def exponent(self) -> float:
        """Power of ``r`` at the origin, ``2 delta + 3/2``."""
        return 2.0 * self.delta + 1.5


def radial_state(q: QuantumNumbers, u: WorkingUnits, f: FieldParams) -> RadialState:
    delta = -0.5 + math.sqrt(q.m * q.m / 4.0 + f.g / 2.0)
    gamma = confinement(u, f)
    return RadialState(q=q, delta=delta, gamma=gamma, norm=normalization(q.n, delta, gamma))


def normalization(n: int, delta: float, gamma: float) -> float:
    """``sqrt(2 n! gamma**(2 delta + 2) / Gamma(n + 2 delta + 2))``, evaluated in logs."""
    if not gamma > 0.0:
        raise DomainError(f"gamma must be positive, got {gamma!r}")
    log_sq = (
        math.log(2.0)
        + ln_gamma(n + 1.0)
        + (2.0 * delta + 2.0) * math.log(gamma)
        - ln_gamma(n + 2.0 * delta + 2.0)
    )
    return math.exp(0.5 * log_sq)


def radial_value(s: RadialState, r: ArrayLike):
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0.0):
        raise DomainError("radial wavefunction is defined for r > 0 only")
    z = s.gamma * r * r
    log_envelope = math.log(s.norm) + s.exponent * np.log(r) - 0.5 * z
    value = np.exp(log_envelope) * laguerre(s.q.n, s.alpha, z)
    return value if value.ndim else float(value)


def _z_integral(s: RadialState, power: int, order: int) -> float:
    # int_0^inf r^(2 power) R^2 dr  after  z = gamma r^2
    rule = gauss_laguerre(order, s.alpha)
    poly = laguerre(s.q.n, s.alpha, rule.nodes)
    total = float(np.dot(rule.weights, rule.nodes**power * poly * poly))
    log_scale = 2.0 * math.log(s.norm) - math.log(2.0) - (s.alpha + 1.0 + power) * math.log(s.gamma)
    return math.exp(log_scale) * total


def numeric_norm(s: RadialState, order: int = DEFAULT_ORDER) -> float:
    """``int_0^inf R(r)**2 dr`` by Gauss-Laguerre quadrature."""
    return _z_integral(s, 0, order)


def numeric_expectation_r2(s: RadialState, order: int = DEFAULT_ORDER) -> float:
    """``int_0^inf r**2 R(r)**2 dr`` by Gauss-Laguerre quadrature."""
    return _z_integral(s, 1, order)


def overlap(a: RadialState, b: RadialState, order: int = DEFAULT_ORDER) -> float:
    """``int_0^inf R_a R_b dr`` for two states sharing ``delta`` and ``gamma``."""
    if a.delta != b.delta or a.gamma != b.gamma:
        raise DomainError("overlap needs states with the same delta and gamma")
    rule = gauss_laguerre(order, a.alpha)
    pa = laguerre(a.q.n, a.alpha, rule.nodes)
    pb = laguerre(b.q.n, b.alpha, rule.nodes)
    scale = a.norm * b.norm / (2.0 * a.gamma ** (a.alpha + 1.0))
    return scale * float(np.dot(rule.weights, pa * pb))


def node_positions(s: RadialState) -> np.ndarray:
    """Radii at which ``R`` changes sign, in increasing order.

    The scan runs over ``z = gamma r**2`` in ``(0, 4n + 2 alpha + 2)``, which
    contains every zero of the Laguerre factor, and each bracketed sign
    change is refined by bisection.
    """
    n = s.q.n
    if n == 0:
        return np.empty(0)
    z_max = 4.0 * n + 2.0 * s.alpha + 2.0
    z = np.linspace(0.0, z_max, SCAN_POINTS_PER_NODE * (n + 1) + 1)[1:]
    r = np.sqrt(z / s.gamma)
    sign = np.sign(radial_value(s, r))
    # a sample can land exactly on a root (L_1^1 vanishes at z = 2)
    keep = np.flatnonzero(sign != 0)
    nodes = []
    for i, j in zip(keep[:-1], keep[1:]):
        if sign[i] == sign[j]:
            continue
        nodes.append(_bisect_node(s, r[i], r[j]) if j == i + 1 else r[(i + j) // 2])
    return np.array(nodes)


def _bisect_node(s, lo, hi):
    f_lo = radial_value(s, lo)
    for _ in range(BISECTION_STEPS):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        f_mid = radial_value(s, mid)
        if f_mid == 0.0:
            return mid
        if (f_mid > 0.0) == (f_lo > 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def node_count(s: RadialState) -> int:
    return len(node_positions(s))
