import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nuosc.errors import ComplexBranch, DomainError, NoSignChange
from nuosc.model import FieldParams, QuantumNumbers, WorkingUnits, to_nu_coefficients
from nuosc.nu_core import NUCoefficients, derive_constants, energy_residual, solve_energy
from nuosc.observables import energy
from nuosc.verification import Lattice, nu_bracket, nu_energy


def independent_constants(b1, b2, b3, r0, r1, r2):
    """Second transcription of the derived constants, written out longhand."""
    c4 = 0.5 - b1 / 2
    c5 = b2 / 2 - b3
    c6 = c5**2 + r2
    c7 = 2 * c4 * c5 - r1
    c8 = c4**2 + r0
    c9 = b3 * c7 + b3**2 * c8 + c6
    s8, s9 = c8**0.5, c9**0.5
    return {
        "beta4": c4,
        "beta5": c5,
        "beta6": c6,
        "beta7": c7,
        "beta8": c8,
        "beta9": c9,
        "beta10": b1 + 2 * c4 + 2 * s8 - 1,
        "beta11": b2 - 2 * c5 + 2 * s9 + 2 * b3 * s8,
        "beta12": c4 + s8,
        "beta13": c5 - s9 + b3 * s8,
    }


finite = st.floats(-5.0, 5.0)


@given(finite, finite, st.floats(-1.0, 1.0), st.floats(0.0, 5.0), finite, st.floats(0.0, 5.0))
def test_derive_matches_second_transcription(b1, b2, b3, r0, r1, r2):
    c = NUCoefficients(b1, b2, b3, r0, r1, r2)
    try:
        k = derive_constants(c)
    except ComplexBranch:
        oracle = independent_constants(b1, b2, b3, r0, r1, r2)
        assert oracle["beta8"] < 0 or oracle["beta9"] < 0
        return
    for name, value in independent_constants(b1, b2, b3, r0, r1, r2).items():
        assert getattr(k, name) == pytest.approx(value, rel=1e-12, abs=1e-12), name
    assert k.beta4 == (1 - b1) / 2
    assert k.beta5 == (b2 - 2 * b3) / 2
    assert k.beta12 == k.beta4 + math.sqrt(k.beta8)
    assert derive_constants(c) == k


def test_centrifugal_example():
    k = derive_constants(NUCoefficients(0.5, 0.0, 0.0, 0.1875, 3.0, 2.0))
    assert k.beta4 == 0.25
    assert k.beta8 == 0.25
    assert math.sqrt(k.beta8) == 0.5


def test_all_zero_inputs():
    k = derive_constants(NUCoefficients(0.0, 0.0, 0.0, 0.0, 0.0, 0.0))
    assert (k.beta4, k.beta5, k.beta6, k.beta7, k.beta8, k.beta9) == (0.5, 0.0, 0.0, 0.0, 0.25, 0.0)


def test_complex_branch():
    with pytest.raises(ComplexBranch):
        derive_constants(NUCoefficients(0.5, 0.0, 0.0, -1.0, 0.0, 0.0))
    with pytest.raises(ComplexBranch):
        derive_constants(NUCoefficients(0.5, 0.0, 0.0, 0.0, 0.0, -1.0))


def test_non_finite_rejected():
    with pytest.raises(DomainError):
        NUCoefficients(math.nan, 0, 0, 0, 0, 0)


def test_residual_only_sqrt_beta9_term():
    # beta1 = 1 makes beta4 = 0; rho0 = 0 then gives beta8 = 0; rho2 = 1 gives beta9 = 1
    c = NUCoefficients(1.0, 0.0, 0.0, 0.0, 0.0, 1.0)
    assert energy_residual(0, c) == 1.0


def test_residual_at_table_energy(paper_units):
    u, f = paper_units["CO"], FieldParams(0.0, 0.0)
    assert abs(energy_residual(0, to_nu_coefficients(u, f, 0, 6.90572))) < 1e-4
    assert energy_residual(0, to_nu_coefficients(u, f, 0, 0.0)) > 0.0


def test_residual_negative_n():
    with pytest.raises(DomainError):
        energy_residual(-1, NUCoefficients(0.5, 0, 0, 0.1875, 0, 1))


def test_solve_energy_examples(paper_units):
    co, i2 = paper_units["CO"], paper_units["I2"]
    e = solve_energy(0, lambda E: to_nu_coefficients(co, FieldParams(), 0, E), (0.0, 100.0))
    assert float(f"{e:.6g}") == 6.90572
    q, f = QuantumNumbers(3, 1), FieldParams(10.0, 1.0)
    assert float(f"{nu_energy(q, i2, f):.6g}") == 99.1958
    unit = WorkingUnits.dimensionless(1.0)
    e = solve_energy(0, lambda E: to_nu_coefficients(unit, FieldParams(), 1, E), (0.0, 10.0))
    assert e == pytest.approx(2.0, rel=1e-14)


def test_no_sign_change(paper_units):
    co = paper_units["CO"]
    with pytest.raises(NoSignChange):
        solve_energy(0, lambda E: to_nu_coefficients(co, FieldParams(), 0, E), (10.0, 20.0))


def test_root_matches_closed_form_on_lattice(paper_units):
    worst = 0.0
    for u in paper_units.values():
        for q, f in Lattice().points():
            worst = max(worst, abs(nu_energy(q, u, f) / energy(q, u, f) - 1.0))
    assert worst <= 1e-10


def test_bracket_contains_level(paper_units):
    u = paper_units["H2"]
    for q, f in Lattice().points():
        lo, hi = nu_bracket(u, f, q.n, q.m)
        assert lo < energy(q, u, f) < hi


@given(st.integers(-3, 3), st.floats(0.0, 4.0))
def test_template_constraints(m, g):
    c = to_nu_coefficients(WorkingUnits.dimensionless(1.3), FieldParams(2.0, g), m, 5.0)
    k = derive_constants(c)
    assert k.beta10 > -1.0
    assert k.beta12 > 0.0
