"""Physical constants and numerical thresholds (atomic units)."""

ALPHA = 7.2973525693e-3

# kernels refuse momentum transfers below this (Coulomb 1/q^2 pole)
Q_MIN = 1e-6

# exchange classification: ||P12 psi -/+ psi|| <= EXCHANGE_TOL * ||psi||
EXCHANGE_TOL = 1e-10

SEPARABILITY_TOL = 1e-10

# outgoing spin norm below this fraction of ||total|| marks a blocked channel
FORBIDDEN_TOL = 1e-12
