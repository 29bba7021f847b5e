# %% [markdown]
# Expectation values from the Hellmann-Feynman route
#
# <r^2>, <p^2>, <T>, <V> and the molar susceptibility chi all carry the same
# level factor K = 2n + 1 + sqrt(m^2 + 2g).  <p^2> and <T> come out negative
# in this convention; E = <T> + <V> still holds exactly.

# %%
from nuosc import DEFAULT_MOLECULES, FieldParams, QuantumNumbers, hft_check, spectrum_record, working_units

# %%
q = QuantumNumbers(n=0, m=1)
for mol in DEFAULT_MOLECULES:
    rec = spectrum_record(mol.name, q, working_units(mol), FieldParams(0.0, 1.0))
    print(f"{mol.name:4s} r2={rec.r2:.6g}  p2={rec.p2:.6g}  T={rec.T:.6g}  V={rec.V:.6g}  chi={rec.chi:.6g}")
    print(f"     E - (T + V) = {rec.E - (rec.T + rec.V):.1e}")

# %% [markdown]
# A central difference of E in the oscillator frequency reproduces <r^2>.

# %%
u = working_units(DEFAULT_MOLECULES[0])
for w in (0.0, 5.0, 10.0):
    rep = hft_check(QuantumNumbers(2, 1), u, FieldParams(w, 1.0), 1e-6 * u.omega_eff)
    print(f"wL={w:4g}  dE/dw/(mu w) = {rep.lhs:.10g}  <r^2> = {rep.rhs:.10g}  rel err {rep.rel_err:.1e}")
