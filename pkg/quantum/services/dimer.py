"""quantum/services/dimer.py - Diagonalizacja dimeru i formuły ciemnego stanu.

Blok 2x2 [[eps1, J/2], [J/2, eps2]] diagonalizowany analitycznie przez kąt
mieszania theta = atan2(J, Δε) / 2:
    |+> = sin(theta)|1> + cos(theta)|2>
    |-> = cos(theta)|1> - sin(theta)|2>
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace

import numpy as np

from core.exceptions import DivergenceError, ModelParameterError, UndefinedRatioError

from .parameters import PhotocellParams

logger = logging.getLogger(__name__)

_ZERO_TOL = 1e-300


@dataclass(frozen=True)
class ExcitonBasis:
    """Stany własne podprzestrzeni jednowzbudzeniowej.

    Atrybuty:
        eps_plus, eps_minus: energie własne (eps_plus >= eps_minus).
        ovl_p1, ovl_p2, ovl_m1, ovl_m2: amplitudy <+|1>, <+|2>, <-|1>, <-|2>.
        omega_r: rozszczepienie Rabiego sqrt(Δε^2 + J^2).
    """

    eps_plus: float
    eps_minus: float
    ovl_p1: float
    ovl_p2: float
    ovl_m1: float
    ovl_m2: float
    omega_r: float

    def site_matrix(self):
        """Macierz U[site, exciton] w kolejności stanów (+, -)."""
        return np.array([[self.ovl_p1, self.ovl_m1],
                         [self.ovl_p2, self.ovl_m2]])


def diagonalize_dimer(params: PhotocellParams) -> ExcitonBasis:
    """Analityczna diagonalizacja bloku dimeru z J12 = J12^0 cos(phi)."""
    coupling = params.j12_eff
    delta = params.eps2 - params.eps1
    mean = 0.5 * (params.eps1 + params.eps2)
    omega = math.hypot(delta, coupling)
    theta = 0.5 * math.atan2(coupling, delta)
    s, c = math.sin(theta), math.cos(theta)
    return ExcitonBasis(
        eps_plus=mean + 0.5 * omega,
        eps_minus=mean - 0.5 * omega,
        ovl_p1=s, ovl_p2=c,
        ovl_m1=c, ovl_m2=-s,
        omega_r=omega,
    )


def darkness_angle(delta_eps: float, z: float, j12_bare: float, phi: float = 0.0) -> float:
    """tan^2 Phi - stosunek szybkości wzbudzenia stanu ciemnego do jasnego.

    Args:
        delta_eps: eps2 - eps1, eV (>= 0).
        z: stosunek dipoli w [0, 1].
        j12_bare: J12^0, eV.
        phi: kąt między dipolami, rad.

    Returns:
        Wartość w [0, 1] dla phi w [-pi/2, pi/2].

    Raises:
        UndefinedRatioError: gdy Δε = J12 = 0 (0/0).
        ModelParameterError: z poza [0, 1] lub Δε < 0.
    """
    if not 0.0 <= z <= 1.0:
        raise ModelParameterError(f"z must lie in [0, 1], got {z}", field='z')
    if delta_eps < 0:
        raise ModelParameterError(f"delta_eps must be >= 0, got {delta_eps}", field='delta_eps')
    coupling = j12_bare * math.cos(phi)
    omega = math.hypot(delta_eps, coupling)
    a = omega * (1.0 + z * z)
    b = delta_eps * (1.0 - z * z) + 2.0 * z * coupling
    denominator = a + b
    if abs(denominator) <= _ZERO_TOL:
        raise UndefinedRatioError("darkness ratio undefined for delta_eps = J12 = 0")
    return max(0.0, (a - b) / denominator)


def dark_state_coupling(z: float, delta_eps: float) -> float:
    """J12 realizujący w pełni ciemny stan: 2 z Δε / (1 - z^2).

    Raises:
        DivergenceError: dla z = 1 (symetryczny dimer nie potrzebuje odstrojenia).
    """
    if z == 0.0:
        return 0.0
    if z >= 1.0:
        raise DivergenceError("dark-state coupling diverges at z = 1")
    return 2.0 * z * delta_eps / (1.0 - z * z)


def dark_state_ratio(delta_eps: float, j12: float) -> float:
    """Odwrotność dark_state_coupling: z = (Omega_R - Δε) / J12 = tan(theta)."""
    if j12 == 0.0:
        return 0.0
    return (math.hypot(delta_eps, j12) - delta_eps) / j12


def fix_lower_exciton(params: PhotocellParams, target_eps_minus: float) -> PhotocellParams:
    """Przesuwa eps1, eps2 sztywno tak, by eps_minus = target.

    Warunek uczciwego porównania: eps_- wspólne dla wszystkich modeli.
    """
    delta = params.eps2 - params.eps1
    omega = math.hypot(delta, params.j12_eff)
    eps1 = target_eps_minus - 0.5 * delta + 0.5 * omega
    return replace(params, eps1=eps1, eps2=eps1 + delta)
