# %% [markdown]
# The generic bound-state condition, solved numerically
#
# The parametric engine knows six coefficients, not the energy.  The caller
# supplies a map from a trial energy to coefficients; the root is the level.

# %%
from nuosc import (
    DEFAULT_MOLECULES,
    FieldParams,
    QuantumNumbers,
    derive_constants,
    energy,
    energy_residual,
    to_nu_coefficients,
    working_units,
)
from nuosc.verification import nu_energy

# %%
u = working_units(DEFAULT_MOLECULES[2])  # I2
f = FieldParams(omega_L=10.0, g=1.0)
coeffs = to_nu_coefficients(u, f, m=1, E=0.0)
print(coeffs)
print(derive_constants(coeffs))

# %% [markdown]
# The residual falls linearly through zero at the level.

# %%
exact = energy(QuantumNumbers(3, 1), u, f)
for trial in (0.0, exact - 1.0, exact, exact + 1.0):
    print(f"E={trial:10.6f}  residual={energy_residual(3, to_nu_coefficients(u, f, 1, trial)):+.3e}")

found = nu_energy(QuantumNumbers(3, 1), u, f)
print(f"root {found:.12g}  closed form {exact:.12g}")
