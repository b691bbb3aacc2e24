"""Block structure of the first-Born amplitude for identical electrons."""
# %%
import numpy as np

from nrqed_entangle import first_born, selection_rule_report
from nrqed_entangle.kinematics import cm_kinematics

# %%
kin = cm_kinematics(1.0, 1.0, 0.3)
amp = first_born(kin)
np.set_printoptions(precision=4, suppress=True)
print("block norms of the total amplitude:")
for key, value in amp.block_norms().items():
    print(f"  {key:16s} {value:.3e}")

# %% [markdown]
# Over random frames and momenta the singlet-triplet block stays at rounding
# level, so a singlet never feeds the triplet and vice versa.

# %%
report = selection_rule_report(200, seed=11)
print(report.as_dict())

# %% [markdown]
# At a right angle in the centre-of-mass frame the direct and exchange
# Coulomb terms cancel in the triplet channel; only the small spin-dependent
# terms survive there.

# %%
for theta in (np.pi / 3, np.pi / 2):
    norms = first_born(cm_kinematics(1.0, theta, 0.0)).block_norms()
    print(f"theta={theta:.3f}  triplet block {norms['triplet_triplet']:.3e}")
