"""Command-line front end.

    nuosc spectrum      energies over a lattice of (molecule, g, m, omega_L, n)
    nuosc observables   <r^2>, <p^2>, <T>, <V>, chi and the induced moment
    nuosc figures       dense omega_L sweeps at g = m = 1, one CSV per quantity
    nuosc verify        self-checks; exit 1 if any fails

Settings come from flags, then an optional JSON file given with ``--config``,
then built-in defaults (which embed the standard four molecules, so the tool
runs with no input files).  Exit codes: 0 success, 1 verification failure,
2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import sys
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from . import observables as obs
from . import verification
from .errors import ConfigError, NuoscError
from .model import (
    DEFAULT_MOLECULES,
    FieldParams,
    MoleculeConstants,
    QuantumNumbers,
    read_molecules,
    working_units,
)
from .tables import format_parameter, format_value

FIGURE_QUANTITIES = ("r2", "p2", "T", "V", "chi")
FIGURE_N = (0, 1, 2, 3)
FIGURE_STEP = 0.05
FIGURE_MAX = 12.0

SPECTRUM_COLUMNS = ("molecule", "g", "m", "omega_L", "n", "E")
OBSERVABLE_COLUMNS = ("molecule", "g", "m", "omega_L", "n", "r2", "p2", "T", "V", "chi", "mu_B")
FIGURE_COLUMNS = ("molecule", "n", "omega_L", "value")


@dataclass(frozen=True)
class RunConfig:
    molecules: str | None = None  # None: built-in table
    out: str | None = None
    units: str = "paper"
    n: tuple[int, ...] = (0, 1, 2, 3)
    m: tuple[int, ...] = (0, 1)
    g: tuple[float, ...] = (0.0, 1.0)
    omega_L: tuple[float, ...] = (0.0, 5.0, 10.0)
    z: float = 1.0
    e: float = 1.0
    tolerances: dict = field(default_factory=dict)

    def __post_init__(self):
        for name in ("n", "m", "g", "omega_L"):
            if not getattr(self, name):
                raise ConfigError("lattice list must not be empty", field=name)
        if any(n < 0 for n in self.n):
            raise ConfigError("n values must be >= 0", field="n")
        if any(g < 0 for g in self.g):
            raise ConfigError("g values must be >= 0", field="g")
        if any(w < 0 for w in self.omega_L):
            raise ConfigError("omega_L values must be >= 0", field="omega_L")
        if self.units not in ("paper", "dimensionless"):
            raise ConfigError(f"unknown units mode {self.units!r}", field="units")
        if not (self.z > 0 and self.e > 0):
            raise ConfigError("z and e must be positive", field="z" if not self.z > 0 else "e")
        unknown = set(self.tolerances) - set(verification.DEFAULT_TOLERANCES)
        if unknown:
            raise ConfigError(f"unknown tolerance keys {sorted(unknown)}", field="tolerances")

    def load_molecules(self) -> list[MoleculeConstants]:
        if self.molecules is None:
            return list(DEFAULT_MOLECULES)
        return read_molecules(self.molecules)

    @property
    def susceptibility(self) -> obs.SusceptibilityConstants:
        return obs.SusceptibilityConstants(z=self.z, e=self.e)

    @property
    def lattice(self) -> verification.Lattice:
        return verification.Lattice(self.n, self.m, self.g, self.omega_L)


# --- configuration ------------------------------------------------------------------

_LIST_TYPES = {"n": int, "m": int, "g": float, "omega_L": float}
_FIELD_NAMES = {f.name for f in fields(RunConfig)}


def _coerce_list(name, value):
    kind = _LIST_TYPES[name]
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        value = [value]
    if not isinstance(value, list):
        raise ValueError("expected a list of numbers")
    out = []
    for item in value:
        if isinstance(item, bool) or not isinstance(item, (int, float)):
            raise ValueError(f"not a number: {item!r}")
        if kind is int and int(item) != item:
            raise ValueError(f"not an integer: {item!r}")
        out.append(kind(item))
    return tuple(out)


def _coerce_setting(key, value, base: Path):
    if key in _LIST_TYPES:
        return _coerce_list(key, value)
    if key in ("z", "e"):
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ValueError(f"not a number: {value!r}")
        return float(value)
    if key == "tolerances":
        if not isinstance(value, dict) or not all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in value.values()
        ):
            raise ValueError("expected an object of numbers")
        return {k: float(v) for k, v in value.items()}
    if not isinstance(value, str):
        raise ValueError(f"expected a string, got {value!r}")
    if key == "molecules" and not Path(value).is_absolute():
        return str(base / value)  # relative to the config file
    return value


def _line_of(text, key):
    needle = json.dumps(key)
    for lineno, line in enumerate(text.splitlines(), start=1):
        if needle in line:
            return lineno
    return None


def read_config(path: str | Path) -> dict:
    """Settings from a JSON object whose keys are :class:`RunConfig` fields."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ConfigError("config file not found", path=path) from None
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}", path=path) from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc.msg}", path=path, line=exc.lineno) from None
    if not isinstance(data, dict):
        raise ConfigError("top level must be a JSON object", path=path)
    settings = {}
    for key, value in data.items():
        line = _line_of(text, key)
        if key not in _FIELD_NAMES:
            raise ConfigError("unknown setting", path=path, line=line, field=key)
        try:
            settings[key] = _coerce_setting(key, value, path.parent)
        except ValueError as exc:
            raise ConfigError(str(exc), path=path, line=line, field=key) from None
    return settings


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Merge flags over the config file over defaults."""
    settings = read_config(args.config) if args.config else {}
    for key in _FIELD_NAMES:
        value = getattr(args, key, None)
        if value is not None:
            settings[key] = value
    return RunConfig(**settings)


# --- rendering -----------------------------------------------------------------------


def _csv_text(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _lattice_points(config: RunConfig):
    """``(molecule, units, q, f)`` in (molecule, g, m, omega_L, n) order."""
    molecules = sorted(config.load_molecules(), key=lambda mol: mol.name)
    grid = itertools.product(sorted(config.g), sorted(config.m), sorted(config.omega_L), sorted(config.n))
    grid = list(grid)
    for mol in molecules:
        u = working_units(mol, config.units)
        for g, m, omega_L, n in grid:
            yield mol, u, QuantumNumbers(n, m), FieldParams(omega_L, g)


def _key_cells(mol, q, f):
    return [mol.name, format_parameter(f.g), str(q.m), format_parameter(f.omega_L), str(q.n)]


def spectrum_csv(config: RunConfig) -> str:
    rows = [
        _key_cells(mol, q, f) + [format_value(obs.energy(q, u, f))]
        for mol, u, q, f in _lattice_points(config)
    ]
    return _csv_text(SPECTRUM_COLUMNS, rows)


def observables_csv(config: RunConfig) -> str:
    k = config.susceptibility
    rows = []
    for mol, u, q, f in _lattice_points(config):
        rec = obs.spectrum_record(mol.name, q, u, f, k)
        values = (rec.r2, rec.p2, rec.T, rec.V, rec.chi, rec.mu_B)
        rows.append(_key_cells(mol, q, f) + [format_value(v) for v in values])
    return _csv_text(OBSERVABLE_COLUMNS, rows)


def figure_sweep() -> np.ndarray:
    count = int(round(FIGURE_MAX / FIGURE_STEP)) + 1
    return np.round(np.arange(count) * FIGURE_STEP, 10)


_FIGURE_FUNCS: dict[str, Callable] = {
    "r2": lambda q, u, f, k: obs.expectation_r2(q, u, f),
    "p2": lambda q, u, f, k: obs.expectation_p2(q, u, f),
    "T": lambda q, u, f, k: obs.expectation_T(q, u, f),
    "V": lambda q, u, f, k: obs.expectation_V(q, u, f),
    "chi": lambda q, u, f, k: obs.susceptibility(q, u, f, k),
}


def figure_series(config: RunConfig, quantity: str) -> dict[tuple[str, int], np.ndarray]:
    """Raw (unformatted) sweep values keyed by ``(molecule, n)``."""
    func = _FIGURE_FUNCS[quantity]
    k = config.susceptibility
    series = {}
    for mol in sorted(config.load_molecules(), key=lambda mol: mol.name):
        u = working_units(mol, config.units)
        for n in FIGURE_N:
            q = QuantumNumbers(n, 1)
            series[(mol.name, n)] = np.array([func(q, u, FieldParams(w, 1.0), k) for w in figure_sweep()])
    return series


def figure_csvs(config: RunConfig) -> dict[str, str]:
    sweep = figure_sweep()
    out = {}
    for quantity in FIGURE_QUANTITIES:
        rows = [
            [name, str(n), format_parameter(w), format_value(v)]
            for (name, n), values in figure_series(config, quantity).items()
            for w, v in zip(sweep, values)
        ]
        out[f"figure_{quantity}.csv"] = _csv_text(FIGURE_COLUMNS, rows)
    return out


def verify_report(config: RunConfig) -> tuple[str, bool]:
    results = verification.run_all(config.load_molecules(), config.lattice, config.units, config.tolerances)
    lines = []
    for res in results:
        lines.append(res.line())
        lines.extend(f"         {d}" for d in res.details)
    failures = sum(not r.passed for r in results)
    misprints = sum(r.status == "MISPRINT" for r in results)
    lines.append(f"{len(results)} checks, {failures} failures, {misprints} known reference misprints")
    return "\n".join(lines) + "\n", failures == 0


# --- commands --------------------------------------------------------------------------


def _emit(config: RunConfig, filename: str, text: str, stdout) -> None:
    if config.out is None:
        stdout.write(text)
        return
    out = Path(config.out)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / filename, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def cmd_spectrum(config: RunConfig, stdout=sys.stdout) -> int:
    _emit(config, "spectrum.csv", spectrum_csv(config), stdout)
    return 0


def cmd_observables(config: RunConfig, stdout=sys.stdout) -> int:
    _emit(config, "observables.csv", observables_csv(config), stdout)
    return 0


def cmd_figures(config: RunConfig, stdout=sys.stdout) -> int:
    files = figure_csvs(config)
    out = Path(config.out or ".")
    out.mkdir(parents=True, exist_ok=True)
    for name, text in files.items():
        with open(out / name, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        stdout.write(f"wrote {out / name}\n")
    return 0


def cmd_verify(config: RunConfig, stdout=sys.stdout) -> int:
    report, ok = verify_report(config)
    stdout.write(report)
    if config.out is not None:
        _emit(config, "verify.txt", report, io.StringIO())
    return 0 if ok else 1


COMMANDS = {
    "spectrum": cmd_spectrum,
    "observables": cmd_observables,
    "figures": cmd_figures,
    "verify": cmd_verify,
}

HELP = {
    "spectrum": "energies over the lattice, CSV",
    "observables": "<r^2>, <p^2>, <T>, <V>, chi and induced moment over the lattice, CSV",
    "figures": "omega_L sweeps 0..12 at g = m = 1, one CSV per quantity",
    "verify": "run the self-checks; exit 1 on any failure",
}


def _list_of(kind):
    def parse(text):
        try:
            values = tuple(kind(item) for item in text.split(",") if item.strip())
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected comma-separated {kind.__name__} values, got {text!r}")
        if not values:
            raise argparse.ArgumentTypeError("empty list")
        return values

    return parse


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with default settings")
    common.add_argument("--molecules", help="CSV with header name,omega_1e13_s,mass_amu")
    common.add_argument("--out", help="output directory (stdout when omitted, '.' for figures)")
    common.add_argument("--units", choices=("paper", "dimensionless"))
    common.add_argument("--n", type=_list_of(int))
    common.add_argument("--m", type=_list_of(int))
    common.add_argument("--g", type=_list_of(float))
    common.add_argument("--omega-l", dest="omega_L", type=_list_of(float))
    common.add_argument("--z", type=float, help="charge number in the susceptibility")
    common.add_argument("--e", type=float, help="elementary charge in the susceptibility")

    parser = argparse.ArgumentParser(
        prog="nuosc",
        description="Spectrum and expectation values of a 2D oscillator with an inverse-square term in a magnetic field.",
        epilog="Exit codes: 0 success, 1 verification failure, 2 usage or configuration error.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=HELP[name])
    return parser


def main(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        config = resolve_config(args)
        return COMMANDS[args.command](config, stdout=stdout)
    except (NuoscError, ValueError, OSError) as exc:
        stderr.write(f"nuosc: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
