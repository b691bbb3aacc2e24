"""Ladder and crossed two-photon terms on a discrete intermediate-state grid."""
# %%
import numpy as np

from nrqed_entangle import crossed_element, crossed_grid, ladder_element, ladder_grid
from nrqed_entangle.born2 import ladder_convergence, polynomial_energy_kernel
from nrqed_entangle.kinematics import cm_kinematics
from nrqed_entangle.spin_algebra import off_block_norm

kin = cm_kinematics(1.0, 1.0, 0.3)
a, b, c, d = kin.p1_in, kin.p2_in, kin.p1_out, kin.p2_out

# %% [markdown]
# With the static Coulomb interaction the ladder is a multiple of the
# identity in spin and the crossed term is exactly zero.

# %%
ladder = ladder_element(c, d, a, b, ladder_grid(a, b))
crossed = crossed_element(c, d, a, b, crossed_grid(a, b, c, d))
print("ladder scalar:", ladder[0, 0], " off-block:", off_block_norm(ladder))
print("crossed norm:", np.linalg.norm(crossed))

# %% [markdown]
# An energy-dependent stand-in kernel switches the crossed term on, which
# shows the assembly is live rather than trivially zero.

# %%
live = crossed_element(c, d, a, b, crossed_grid(a, b, c, d), polynomial_energy_kernel())
print("synthetic crossed norm:", np.linalg.norm(live))

# %% [markdown]
# The Coulomb poles of both exchanged photons sit on the energy shell, right
# where the principal-value pairing acts. Radial refinement on a fixed
# angular rule gives shrinking changes, but the limit depends on the angular
# rule, so the absolute ladder value is not meaningful at this grid size.
# Only the spin structure above is.

# %%
for order in (7, 17):
    for n, value, change in ladder_convergence(c, d, a, b, radial_counts=(8, 16, 32), angular_order=order):
        print(f"angular order {order:2d}  n_radial={n:3d}  value={value.real:+.6f}  change={change:.2e}")
