"""core/constants.py - Stałe fizyczne wspólne dla wszystkich aplikacji.

Jednostki: energia i szybkości w eV (ħ = 1), temperatura w K, odległości w nm,
dipole przejść w jednostkach atomowych (e·a0).
"""

from math import pi

from scipy import constants as _sc

# Stała Boltzmanna w eV/K (8.617333262e-5)
K_B_EV = _sc.physical_constants['Boltzmann constant in eV/K'][0]

# Stała oddziaływania punktowych dipoli: J = kappa * C * mu1 * mu2 / r^3,
# mu w e·a0, r w nm, J w eV.
_BOHR_M = _sc.physical_constants['Bohr radius'][0]
FORSTER_EV_NM3 = _sc.e * _BOHR_M ** 2 / (4.0 * pi * _sc.epsilon_0) / 1e-27

# Indeksy poziomów w bazie {+, -, alpha, beta, g}
PLUS, MINUS, ALPHA, BETA, GROUND = range(5)
LEVEL_NAMES = ('+', '-', 'alpha', 'beta', 'g')
N_LEVELS = 5
