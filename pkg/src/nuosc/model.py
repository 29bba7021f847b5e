"""Problem definition: molecules, field parameters and the unit convention.

Two unit modes exist.  ``paper`` substitutes the raw SI numbers (reduced mass
in kg, vibrational frequency in 1/s) into atomic-unit formulas with hbar
taken as 1; this is the convention under which the reference tables
reproduce digit for digit.  ``dimensionless`` uses the molecule columns as
plain numbers, or an oscillator strength supplied directly, and is what the
finite-difference oracle runs on.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Literal

import numpy as np
from numpy.typing import ArrayLike

from .errors import ConfigError, DomainError
from .nu_core import NUCoefficients

AMU_KG = 1.66e-27
FREQUENCY_SCALE = 1e13  # table frequencies are in units of 1e13 s^-1

MOLECULE_HEADER = ("name", "omega_1e13_s", "mass_amu")

UnitsMode = Literal["paper", "dimensionless"]


@dataclass(frozen=True)
class MoleculeConstants:
    """Vibrational frequency (1e13 s^-1) and reduced mass (a.m.u.) of a molecule."""

    name: str
    omega: float
    mass: float

    def __post_init__(self):
        if not self.name:
            raise DomainError("molecule name must be non-empty")
        if not (math.isfinite(self.omega) and self.omega > 0.0):
            raise DomainError(f"{self.name}: omega must be positive, got {self.omega!r}")
        if not (math.isfinite(self.mass) and self.mass > 0.0):
            raise DomainError(f"{self.name}: mass must be positive, got {self.mass!r}")


DEFAULT_MOLECULES = (
    MoleculeConstants("CO", 6.471, 6.8606719),
    MoleculeConstants("HCl", 8.814, 0.9801045),
    MoleculeConstants("I2", 0.642, 63.45223502),
    MoleculeConstants("H2", 12.960, 0.50391),
)


@dataclass(frozen=True)
class FieldParams:
    """Larmor frequency ``omega_L`` and inverse-square strength ``g``."""

    omega_L: float = 0.0
    g: float = 0.0

    def __post_init__(self):
        if not self.omega_L >= 0.0:
            raise DomainError(f"omega_L must be >= 0, got {self.omega_L!r}")
        if not self.g >= 0.0:
            raise DomainError(f"g must be >= 0, got {self.g!r}")


@dataclass(frozen=True)
class QuantumNumbers:
    n: int
    m: int = 0

    def __post_init__(self):
        if self.n < 0 or int(self.n) != self.n:
            raise DomainError(f"n must be a non-negative integer, got {self.n!r}")
        if int(self.m) != self.m:
            raise DomainError(f"m must be an integer, got {self.m!r}")


@dataclass(frozen=True)
class WorkingUnits:
    """Numeric mass and frequency values that go into every formula."""

    mu_eff: float
    omega_eff: float
    mode: UnitsMode = "paper"

    def __post_init__(self):
        if not self.mu_eff > 0.0:
            raise DomainError(f"mu_eff must be positive, got {self.mu_eff!r}")
        if not self.omega_eff > 0.0:
            raise DomainError(f"omega_eff must be positive, got {self.omega_eff!r}")
        if self.mode not in ("paper", "dimensionless"):
            raise DomainError(f"unknown units mode {self.mode!r}")

    @classmethod
    def dimensionless(cls, omega: float) -> WorkingUnits:
        """Unit mass and frequency ``omega``, so that ``mu * omega**2 = omega**2``."""
        return cls(mu_eff=1.0, omega_eff=float(omega), mode="dimensionless")

    @property
    def stiffness(self) -> float:
        """The oscillator stiffness ``mu * omega**2``."""
        return self.mu_eff * self.omega_eff**2


def working_units(mol: MoleculeConstants, mode: UnitsMode = "paper") -> WorkingUnits:
    if mode == "paper":
        return WorkingUnits(mol.mass * AMU_KG, mol.omega * FREQUENCY_SCALE, "paper")
    if mode == "dimensionless":
        return WorkingUnits(mol.mass, mol.omega, "dimensionless")
    raise DomainError(f"unknown units mode {mode!r}")


def confinement(u: WorkingUnits, f: FieldParams) -> float:
    """``sqrt(omega_L**2 + mu * omega**2)``, the effective oscillator frequency."""
    return math.sqrt(f.omega_L**2 + u.stiffness)


def effective_potential(r: ArrayLike, u: WorkingUnits, f: FieldParams, m: int):
    """Radial effective potential including the magnetic shift ``m * omega_L``.

    ``r`` may be a scalar or an array of strictly positive radii.
    """
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0.0):
        raise DomainError("effective potential needs r > 0")
    inverse_square = 0.5 * (m * m - 0.25) + f.g
    v = m * f.omega_L + inverse_square / r**2 + 0.5 * (f.omega_L**2 + u.stiffness) * r**2
    return v if v.ndim else float(v)


def to_nu_coefficients(u: WorkingUnits, f: FieldParams, m: int, E: float) -> NUCoefficients:
    """Coefficients of the radial equation after the substitution ``z = r**2``.

    The energy enters through ``rho1`` only.
    """
    return NUCoefficients(
        beta1=0.5,
        beta2=0.0,
        beta3=0.0,
        rho0=(m * m + 2.0 * f.g - 0.25) / 4.0,
        rho1=(E - m * f.omega_L) / 2.0,
        rho2=(f.omega_L**2 + u.stiffness) / 4.0,
    )


def read_molecules(path: str | Path) -> list[MoleculeConstants]:
    """Read a ``name,omega_1e13_s,mass_amu`` table.

    Blank lines are skipped.  Any malformed entry raises :class:`ConfigError`
    naming the line and column.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ConfigError("molecule constants file not found", path=path) from None
    except OSError as exc:
        raise ConfigError(f"cannot read molecule constants file: {exc}", path=path) from None
    return parse_molecules(text, path=path)


def parse_molecules(text: str, path=None) -> list[MoleculeConstants]:
    rows = [
        (lineno, row)
        for lineno, row in enumerate(csv.reader(text.splitlines()), start=1)
        if any(cell.strip() for cell in row)
    ]
    if not rows:
        raise ConfigError("file is empty; expected header " + ",".join(MOLECULE_HEADER), path=path)
    lineno, header = rows[0]
    if tuple(cell.strip() for cell in header) != MOLECULE_HEADER:
        raise ConfigError(
            f"expected header {','.join(MOLECULE_HEADER)!r}, got {','.join(header)!r}",
            path=path,
            line=lineno,
        )

    molecules = []
    seen = set()
    for lineno, row in rows[1:]:
        if len(row) != len(MOLECULE_HEADER):
            raise ConfigError(
                f"expected {len(MOLECULE_HEADER)} fields, got {len(row)}", path=path, line=lineno
            )
        name = row[0].strip()
        if not name:
            raise ConfigError("empty molecule name", path=path, line=lineno, field="name")
        if name in seen:
            raise ConfigError(f"duplicate molecule {name!r}", path=path, line=lineno, field="name")
        values = []
        for column, cell in zip(MOLECULE_HEADER[1:], row[1:]):
            try:
                value = float(cell.strip())
            except ValueError:
                raise ConfigError(
                    f"not a number: {cell.strip()!r}", path=path, line=lineno, field=column
                ) from None
            if not (math.isfinite(value) and value > 0.0):
                raise ConfigError(
                    f"must be a positive finite number, got {cell.strip()!r}",
                    path=path,
                    line=lineno,
                    field=column,
                )
            values.append(value)
        seen.add(name)
        molecules.append(MoleculeConstants(name, values[0], values[1]))
    if not molecules:
        raise ConfigError("no molecules listed", path=path)
    return molecules
