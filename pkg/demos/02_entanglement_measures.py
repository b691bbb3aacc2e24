"""Schmidt form, concurrence and the symmetric-state product test."""
# %%
import numpy as np

from nrqed_entangle import concurrence, schmidt_decompose, symmetric_state
from nrqed_entangle.entanglement import entanglement_entropy, symmetric_discriminant

# %% [markdown]
# A symmetric state C|uu> + D(|ud> + |du>) + G|dd> is a product exactly when
# D^2 = C G. Sweep D for fixed C = G and watch both measures.

# %%
c = g = 0.5
for d in np.linspace(0.0, 1.0, 6):
    chi = symmetric_state(c, d, g)
    disc = symmetric_discriminant(chi)
    print(f"D={d:.1f}  |D^2-CG|={abs(disc):.3f}  concurrence={concurrence(chi):.3f}  "
          f"entropy={entanglement_entropy(chi):.3f} bits")

# %%
form = schmidt_decompose(symmetric_state(0.8, 0.3j, 0.5))
print("Schmidt coefficients:", form.coefficients)
print("reconstruction error:", np.linalg.norm(form.reconstruct() - symmetric_state(0.8, 0.3j, 0.5).amplitudes))
