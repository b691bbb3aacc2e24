"""Two-electron spin operators in the (uu, ud, du, dd) basis."""
# %%
import numpy as np

from nrqed_entangle.spin_algebra import (
    P12,
    SIGMA_DOT,
    bell_state,
    pauli,
    projected_spin_dot,
    sector_blocks,
)

# %% [markdown]
# sigma1 . sigma2 has eigenvalue -3 on the singlet and +1 on the triplet.

# %%
for name in ("psi-", "psi+", "phi+", "phi-"):
    chi = bell_state(name).amplitudes
    print(f"{name:5s} <s1.s2> = {np.vdot(chi, SIGMA_DOT @ chi).real:+.1f}   "
          f"<P12> = {np.vdot(chi, P12 @ chi).real:+.1f}")

# %% [markdown]
# The projected product (s1.n)(s2.n) sends the singlet to minus itself for
# every direction n, while it mixes the symmetric states among themselves.

# %%
rng = np.random.default_rng(0)
n = rng.normal(size=3)
n /= np.linalg.norm(n)
op = projected_spin_dot(n)
singlet = bell_state("psi-").amplitudes
print("residual on singlet:", np.linalg.norm(op @ singlet + singlet))
print("singlet-triplet block norm:", np.linalg.norm(sector_blocks(op)["st"]))
print("sigma_z on electron 1:\n", pauli(1, "z").real)
