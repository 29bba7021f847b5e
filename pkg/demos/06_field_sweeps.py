# %% [markdown]
# Field dependence of the observables
#
# Sweep wL from 0 to 12 at g = m = 1 and look at how the n levels spread.
# <r^2>, |<T>| and |chi| shrink and bunch together; <V> fans out.

# %%
import numpy as np

from nuosc.cli import RunConfig, figure_series, figure_sweep

# %%
sweep = figure_sweep()
config = RunConfig()
for quantity in ("r2", "T", "V", "chi"):
    series = figure_series(config, quantity)
    print(quantity)
    for name in ("CO", "H2", "HCl", "I2"):
        gap = np.abs(series[(name, 3)] - series[(name, 0)])
        print(f"  {name:4s} n=3 vs n=0 gap: wL=0 {gap[0]:.4g}, wL={sweep[-1]:g} {gap[-1]:.4g}, ratio {gap[-1] / gap[0]:.3f}")
