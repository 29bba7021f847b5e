# %% [markdown]
# Energy levels of four diatomic molecules in a magnetic field
#
# The closed form E = m wL + Gamma (2n + 1 + sqrt(m^2 + 2g)) with
# Gamma = sqrt(wL^2 + mu w^2) is evaluated in the "paper" unit convention
# (reduced mass in kg, frequency in 1/s, hbar = 1).

# %%
import numpy as np

from nuosc import DEFAULT_MOLECULES, FieldParams, QuantumNumbers, energy, working_units

# %%
for mol in DEFAULT_MOLECULES:
    u = working_units(mol)
    print(f"{mol.name}: sqrt(mu w^2) = {np.sqrt(u.stiffness):.6g}")

# %% [markdown]
# A zero-field, m = g = 0 ladder is exactly (2n + 1) times the ground level.

# %%
co = working_units(DEFAULT_MOLECULES[0])
ladder = [energy(QuantumNumbers(n, 0), co, FieldParams()) for n in range(4)]
print("CO ladder:", [f"{e:.6g}" for e in ladder])
print("ratios:   ", np.round(np.array(ladder) / ladder[0], 12))

# %% [markdown]
# The field lifts the m <-> -m degeneracy by exactly 2 m wL.

# %%
f = FieldParams(omega_L=5.0, g=1.0)
for m in (-1, 0, 1):
    print(f"m={m:+d}  E0 = {energy(QuantumNumbers(0, m), co, f):.6g}")
