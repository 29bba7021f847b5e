# %% [markdown]
# Radial eigenfunctions and quadrature checks
#
# With z = gamma r^2 every integral of R^2 becomes a Gauss-Laguerre sum with
# weight z^alpha e^-z, alpha = 2 delta + 1, so norms and moments are exact.

# %%
import numpy as np

from nuosc import FieldParams, QuantumNumbers, WorkingUnits, radial_state, radial_value
from nuosc import wavefunction as wf

# %%
u = WorkingUnits.dimensionless(1.0)
f = FieldParams(omega_L=0.0, g=1.0)
states = [radial_state(QuantumNumbers(n, 1), u, f) for n in range(4)]
for s in states:
    print(
        f"n={s.q.n}  delta={s.delta:.6f}  norm={wf.numeric_norm(s):.15f}  "
        f"<r^2>={wf.numeric_expectation_r2(s):.12f}  nodes at r={np.round(wf.node_positions(s), 6)}"
    )

# %%
overlaps = np.array([[wf.overlap(a, b) for b in states] for a in states])
print("overlap matrix:\n", np.round(overlaps, 12))

# %%
r = np.linspace(0.05, 5.0, 12)
print("R_2(r):", np.round(radial_value(states[2], r), 5))
