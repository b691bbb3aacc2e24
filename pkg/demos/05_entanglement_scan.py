"""How scattering changes spin entanglement at fixed outgoing direction."""
# %%
import numpy as np

from nrqed_entangle import SpinState, scan_entanglement, symmetric_state

# %% [markdown]
# The singlet comes out as the singlet everywhere.

# %%
print(scan_entanglement("psi-").summary)

# %% [markdown]
# The symmetric Bell states stay maximally entangled. In the Cartesian
# triplet basis every term of the amplitude is a real matrix, and these
# states are real vectors there, so their concurrence is pinned at 1.

# %%
for name in ("psi+", "phi+", "phi-"):
    s = scan_entanglement(name).summary
    print(f"{name}: min concurrence {s['min_concurrence']:.15f}")

# %% [markdown]
# A generic complex triplet state, or a product state, does change. The
# effect is strongest at a right angle, where the Coulomb triplet amplitude
# vanishes.

# %%
theta = (np.pi / 4, np.pi / 2, 3 * np.pi / 4)
for label, chi in (("generic", symmetric_state(0.8, 0.3j, 0.5)), ("up-up", SpinState([1, 0, 0, 0]))):
    result = scan_entanglement(chi, theta_grid=theta)
    s = result.summary
    print(f"{label}: initial {result.records[0].initial_concurrence:.3f}, "
          f"final range [{s['min_concurrence']:.3f}, {s['max_concurrence']:.3f}], argmin {s['argmin']}")
