"""Closed-form momentum kernels checked against the screened Fourier quadrature."""
# %%
import numpy as np

from nrqed_entangle import oracle_fourier
from nrqed_entangle.potentials import coulomb_kernel, spin_orbit_kernel, spin_spin_kernel

rng = np.random.default_rng(1)
p1, p2 = rng.normal(size=3), rng.normal(size=3)

# %%
print(f"{'|q|':>5} {'Coulomb':>12} {'retardation':>12} {'spin-orbit':>12} {'tensor':>12}")
for qn in (0.1, 0.5, 1.0, 2.0, 5.0):
    q = qn * np.array([0.6, 0.0, 0.8])
    rows = [
        (coulomb_kernel(q, p1, p2, part="leading").operator[0, 0].real, oracle_fourier("coulomb", q)),
        (coulomb_kernel(q, p1, p2, part="retardation").operator[0, 0].real,
         oracle_fourier("retardation", q, p1=p1, p2=p2)),
        (spin_orbit_kernel(q, p1, p2).operator, oracle_fourier("spin_orbit", q, p1=p1, p2=p2)),
        (spin_spin_kernel(q, part="tensor").operator, oracle_fourier("spin_spin_tensor", q)),
    ]
    rel = [np.linalg.norm(np.asarray(a) - b) / np.linalg.norm(a) for a, b in rows]
    print(f"{qn:5.1f} " + " ".join(f"{r:12.1e}" for r in rel))

# %% [markdown]
# The numbers above are relative differences between the closed forms and
# the quadrature extrapolated to zero screening.
