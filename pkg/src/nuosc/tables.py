"""Reference table values and the fixed-precision number format.

``data/reference_tables.csv`` holds every reference cell as printed (string
form kept, so trailing zeros and precision survive).  Three cells disagree
with the closed forms and also with other printed cells of the same tables;
:data:`MISPRINTS` records them together with the printed values that expose
them.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal
from importlib import resources
from typing import Callable

SIGNIFICANT = 6
QUANTITIES = ("E", "r2", "p2", "T", "V", "chi")


@dataclass(frozen=True)
class ReferenceCell:
    quantity: str
    molecule: str
    g: int
    m: int
    omega_L: float
    n: int
    printed: str

    @property
    def key(self):
        return (self.quantity, self.molecule, self.g, self.m, self.omega_L, self.n)


@dataclass(frozen=True)
class Misprint:
    """A printed cell contradicted by another printed cell.

    ``witness(source, mu_eff)`` turns the printed value of the ``source`` cell
    into the value the misprinted cell must take.
    """

    key: tuple
    source: tuple
    reason: str
    witness: Callable[[float, float], float]


def _seven_times(source, mu_eff):
    return 7.0 * source


def _per_two_mu(source, mu_eff):
    return source / (2.0 * mu_eff)


MISPRINTS = (
    Misprint(
        key=("E", "CO", 0, 0, 0.0, 3),
        source=("E", "CO", 0, 0, 0.0, 0),
        reason="zero-field m = g = 0 levels are (2n+1) times the printed ground level",
        witness=_seven_times,
    ),
    Misprint(
        key=("T", "H2", 1, 1, 5.0, 3),
        source=("p2", "H2", 1, 1, 5.0, 3),
        reason="<T> must equal the printed <p^2> divided by 2 mu",
        witness=_per_two_mu,
    ),
    Misprint(
        key=("T", "H2", 1, 1, 10.0, 3),
        source=("p2", "H2", 1, 1, 10.0, 3),
        reason="<T> must equal the printed <p^2> divided by 2 mu",
        witness=_per_two_mu,
    ),
)


def load_reference() -> list[ReferenceCell]:
    text = resources.files("nuosc").joinpath("data/reference_tables.csv").read_text()
    reader = csv.DictReader(text.splitlines())
    return [
        ReferenceCell(
            quantity=row["quantity"],
            molecule=row["molecule"],
            g=int(row["g"]),
            m=int(row["m"]),
            omega_L=float(row["omega_L"]),
            n=int(row["n"]),
            printed=row["value"],
        )
        for row in reader
    ]


def significant_digits(printed: str) -> int:
    mantissa = printed.strip().lstrip("+-").lower().split("e")[0]
    digits = mantissa.replace(".", "").lstrip("0")
    return len(digits)


def round_sig(value: float, sig: int) -> Decimal:
    """``value`` rounded half-even to ``sig`` significant digits."""
    d = Decimal(repr(float(value)))
    if d == 0:
        return Decimal(0)
    exponent = d.adjusted() - sig + 1
    return d.quantize(Decimal(1).scaleb(exponent), rounding=ROUND_HALF_EVEN)


def matches_printed(value: float, printed: str, sig: int = SIGNIFICANT) -> bool:
    """True if ``value`` agrees with the printed number at its own precision.

    Precision is the printed digit count, capped at ``sig``: a cell printed
    as ``6.1351`` is compared at five digits, ``1.331020`` at six.
    """
    digits = min(sig, significant_digits(printed))
    return round_sig(value, digits) == round_sig(float(printed), digits)


def format_value(value: float, sig: int = SIGNIFICANT) -> str:
    """Fixed notation in ``[1e-3, 1e5)``, scientific outside, ``sig`` digits."""
    if value == 0.0:
        return "0"
    if not math.isfinite(value):
        return repr(value)
    mantissa, exp = f"{value:.{sig - 1}e}".split("e")
    exponent = int(exp)
    if -3 <= exponent < 5:
        return f"{value:.{max(sig - 1 - exponent, 0)}f}"
    return f"{mantissa}e{exponent:+03d}"


def format_parameter(value: float) -> str:
    """Short form for lattice coordinates such as ``omega_L``."""
    return f"{value:g}"
