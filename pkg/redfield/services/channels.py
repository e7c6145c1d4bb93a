"""redfield/services/channels.py - Kanały sprzężenia z kąpielami i linie widmowe.

Operatory budowane w bazie miejsc {1, 2, alpha, beta, g} (indeksy 0..4).
Czynnik 1/2 z operatorów I_ab wchłonięty w szybkość bazową, więc elementy
macierzowe w bazie własnej odtwarzają szybkości równań Pauliego.
"""

from __future__ import annotations

import cmath
import logging
from dataclasses import dataclass

import numpy as np

from core.constants import N_LEVELS
from quantum.services.parameters import ModelKind, PhotocellParams
from quantum.services.rates import Bath, bose_occupation

logger = logging.getLogger(__name__)

DEFAULT_SHIFT_FRACTION = 0.1

# Indeksy bazy miejsc
SITE_1, SITE_2, SITE_ALPHA, SITE_BETA, SITE_G = range(5)


@dataclass(frozen=True)
class CouplingChannel:
    """Jeden niezależny kanał system-kąpiel.

    Atrybuty:
        name: etykieta kanału.
        operator: hermitowska macierz 5x5 w bazie miejsc.
        bath: kąpiel fotonowa / fononowa; temperature: jej temperatura, K.
        base_rate: szybkość gamma, eV.
        shift_fraction: lambda / gamma (0 dla fotonów).
        trap_decay: kanał skaluje się z gamma_alphabeta.
    """

    name: str
    operator: np.ndarray
    bath: Bath
    temperature: float
    base_rate: float
    shift_fraction: float = 0.0
    trap_decay: bool = False


@dataclass(frozen=True)
class BathLine:
    """Półjednostronna transformata Fouriera funkcji korelacji przy częstości omega."""

    frequency: float
    real: float
    imag: float

    @property
    def value(self) -> complex:
        return complex(self.real, self.imag)


def _hop(a: int, b: int, amplitude: complex = 1.0) -> np.ndarray:
    """amplitude |a><b| + h.c."""
    op = np.zeros((N_LEVELS, N_LEVELS), dtype=complex)
    op[a, b] += amplitude
    op[b, a] += np.conj(amplitude)
    return op


def _projector(a: int) -> np.ndarray:
    op = np.zeros((N_LEVELS, N_LEVELS), dtype=complex)
    op[a, a] = 1.0
    return op


def build_coupling_operators(
    params: PhotocellParams,
    shift_fraction: float = DEFAULT_SHIFT_FRACTION,
) -> list[CouplingChannel]:
    """Lista kanałów o niezerowej szybkości dla danego modelu.

    Kanał optyczny jest kolektywny (z|1><g| + |2><g| + h.c.), dzięki czemu
    interferencja dipoli siedzi w elementach macierzowych. Model niezależny
    dostaje osobny kanał optyczny dla każdego miejsca.
    """
    if shift_fraction < 0:
        raise ValueError(f"shift_fraction must be >= 0, got {shift_fraction}")
    t_h, t_c = params.t_hot, params.t_cold
    photon = dict(bath=Bath.PHOTON, temperature=t_h, shift_fraction=0.0)
    phonon = dict(bath=Bath.PHONON, temperature=t_c, shift_fraction=shift_fraction)

    channels = []
    if params.model is ModelKind.INDEPENDENT:
        half = 0.5 * params.gamma_opt_total
        channels += [
            CouplingChannel('optical_1', _hop(SITE_1, SITE_G), base_rate=half, **photon),
            CouplingChannel('optical_2', _hop(SITE_2, SITE_G), base_rate=half, **photon),
        ]
    else:
        operator = _hop(SITE_1, SITE_G, params.z) + _hop(SITE_2, SITE_G)
        channels.append(CouplingChannel('optical', operator, base_rate=params.gamma_2g, **photon))

    channels += [
        CouplingChannel('phonon_1', _projector(SITE_1), base_rate=params.gamma_11, **phonon),
        CouplingChannel('phonon_2', _projector(SITE_2), base_rate=params.gamma_22, **phonon),
    ]

    if params.model is ModelKind.SYMMETRIC:
        collective = _hop(SITE_1, SITE_ALPHA) + _hop(SITE_2, SITE_ALPHA, cmath.exp(1j * params.theta_rc))
        channels.append(CouplingChannel('trap', collective, base_rate=params.gamma_1alpha, **phonon))
    else:
        channels.append(CouplingChannel('trap_1', _hop(SITE_1, SITE_ALPHA), base_rate=params.gamma_1alpha, **phonon))
        channels.append(CouplingChannel('trap_2', _hop(SITE_2, SITE_ALPHA), base_rate=params.gamma_2alpha, **phonon))

    channels += [
        CouplingChannel('alpha_beta', _hop(SITE_ALPHA, SITE_BETA), base_rate=params.gamma_alphabeta,
                        trap_decay=True, **phonon),
        CouplingChannel('leak', _hop(SITE_ALPHA, SITE_G), base_rate=params.chi * params.gamma_alphabeta,
                        trap_decay=True, **phonon),
        CouplingChannel('reset', _hop(SITE_BETA, SITE_G), base_rate=params.gamma_betag, **phonon),
    ]
    active = [c for c in channels if c.base_rate > 0.0]
    logger.debug(f"Coupling channels: {', '.join(c.name for c in active) or 'none'}")
    return active


def half_fourier_rate(channel: CouplingChannel, omega: float) -> BathLine:
    """Linia kąpieli Gamma(omega) dla płaskiej gęstości spektralnej.

    Część rzeczywista: gamma (N + 1) / 2 dla omega > 0 (emisja),
    gamma N / 2 dla omega < 0 (absorpcja), 0 dla omega = 0.
    Część urojona: przesunięcie reorganizacyjne shift_fraction * gamma.
    """
    gamma = channel.base_rate
    if omega > 0.0:
        real = 0.5 * gamma * (bose_occupation(omega, channel.temperature) + 1.0)
    elif omega < 0.0:
        real = 0.5 * gamma * bose_occupation(-omega, channel.temperature)
    else:
        real = 0.0
    return BathLine(frequency=omega, real=real, imag=channel.shift_fraction * gamma)


def line_matrix(channel: CouplingChannel, energies: np.ndarray) -> np.ndarray:
    """W[k, r] = Gamma(eps_r - eps_k) dla wszystkich par poziomów."""
    n = len(energies)
    w = np.empty((n, n), dtype=complex)
    for k in range(n):
        for r in range(n):
            w[k, r] = half_fourier_rate(channel, float(energies[r] - energies[k])).value
    return w
