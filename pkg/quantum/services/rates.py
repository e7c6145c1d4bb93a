"""quantum/services/rates.py - Szybkości przejść i macierz kinetyczna Pauliego.

Macierz Q działa na wektor obsadzeń P = (P+, P-, P_alpha, P_beta, P_g):
dP/dt = Q P. Każde przejście (górny -> dolny) niesie czynnik (N+1) w dół
i N w górę przy temperaturze swojej kąpieli; kolumny sumują się do zera.
"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from core.constants import ALPHA, BETA, GROUND, K_B_EV, LEVEL_NAMES, MINUS, N_LEVELS, PLUS
from core.exceptions import ModelParameterError

from .dimer import ExcitonBasis, diagonalize_dimer
from .parameters import ModelKind, PhotocellParams

logger = logging.getLogger(__name__)

# Powyżej tego argumentu exp(-x) jest poniżej zakresu double
_MAX_EXPONENT = 700.0


class Bath(str, Enum):
    PHOTON = 'photon'
    PHONON = 'phonon'


def bose_occupation(omega: float, temperature: float) -> float:
    """Obsadzenie Bosego-Einsteina 1 / (exp(omega / k_B T) - 1).

    Args:
        omega: energia przejścia, eV (>= 0; przejścia orientowane w dół).
        temperature: K (> 0).

    Returns:
        N(omega); 0 dla omega = 0 (kanał o zerowej szybkości).
    """
    if omega < 0:
        raise ModelParameterError(f"transition frequency must be >= 0, got {omega}", field='omega')
    if temperature <= 0:
        raise ModelParameterError(f"temperature must be > 0, got {temperature}", field='temperature')
    if omega == 0.0:
        return 0.0
    x = omega / (K_B_EV * temperature)
    if x > _MAX_EXPONENT:
        return 0.0
    return 1.0 / math.expm1(x)


def exciton_optical_rates(
    basis: ExcitonBasis, z: float, gamma_2g: float, *, independent_total: float | None = None,
) -> tuple[float, float]:
    """(gamma_+g, gamma_-g) z interferencją dipoli z mu_1 i mu_2.

    Model niezależny (independent_total = gamma_1g + gamma_2g): każdy stan
    dostaje połowę sumy, niezależnie od z.
    """
    if independent_total is not None:
        half = 0.5 * independent_total
        return half, half
    plus = (z * basis.ovl_p1 + basis.ovl_p2) ** 2 * gamma_2g
    minus = (z * basis.ovl_m1 + basis.ovl_m2) ** 2 * gamma_2g
    return plus, minus


def trap_transfer_rates(params: PhotocellParams, basis: ExcitonBasis) -> tuple[float, float]:
    """(gamma_+alpha, gamma_-alpha) dla sprzężenia z centrum reakcji.

    symmetric:   |<±|1> + e^{i theta_RC} <±|2>|^2 gamma_1alpha
    asymmetric:  |<±|1>|^2 gamma_1alpha
    independent: gamma_1alpha dla obu stanów
    """
    g = params.gamma_1alpha
    if params.model is ModelKind.INDEPENDENT:
        return g, g
    if params.model is ModelKind.SYMMETRIC:
        phase = cmath.exp(1j * params.theta_rc)
        plus = abs(basis.ovl_p1 + phase * basis.ovl_p2) ** 2 * g
        minus = abs(basis.ovl_m1 + phase * basis.ovl_m2) ** 2 * g
        return plus, minus
    return basis.ovl_p1 ** 2 * g, basis.ovl_m1 ** 2 * g


def exciton_phonon_rate(params: PhotocellParams, basis: ExcitonBasis) -> float:
    """gamma_+- = |<+|1>|^2 |<-|1>|^2 (gamma_11 + gamma_22); 0 w modelu niezależnym."""
    if params.model is ModelKind.INDEPENDENT:
        return 0.0
    return (basis.ovl_p1 * basis.ovl_m1) ** 2 * (params.gamma_11 + params.gamma_22)


@dataclass(frozen=True)
class Transition:
    """Jedna para przejść upper <-> lower.

    Atrybuty:
        upper, lower: indeksy poziomów.
        rate: szybkość bazowa gamma, eV.
        bath: kąpiel (fotonowa / fononowa); temperature: jej temperatura.
        omega: energia przejścia, eV; occupation: N(omega, T).
    """

    upper: int
    lower: int
    rate: float
    bath: Bath
    temperature: float
    omega: float
    occupation: float

    @property
    def down(self) -> float:
        return self.rate * (self.occupation + 1.0)

    @property
    def up(self) -> float:
        return self.rate * self.occupation

    @property
    def label(self) -> str:
        return f"{LEVEL_NAMES[self.upper]}<->{LEVEL_NAMES[self.lower]}"

    @property
    def is_trap_decay(self) -> bool:
        """Przejścia skalujące się z gamma_alphabeta (alpha->beta, upływ alpha->g)."""
        return self.upper == ALPHA and self.lower in (BETA, GROUND)


@dataclass(frozen=True)
class RateMatrix:
    """Macierz Q (5x5) z metadanymi przejść i bazą ekscytonową."""

    q: np.ndarray
    transitions: tuple[Transition, ...]
    basis: ExcitonBasis

    @property
    def max_rate(self) -> float:
        return float(np.max(np.abs(self.q))) if self.q.size else 0.0


def _transition(upper, lower, rate, bath, temperature, omega) -> Transition:
    if omega == 0.0 and rate > 0.0:
        raise ModelParameterError(
            f"zero-frequency transition {LEVEL_NAMES[upper]}<->{LEVEL_NAMES[lower]} "
            f"with nonzero rate {rate}", field='eps_alpha')
    return Transition(upper, lower, rate, bath, temperature, omega,
                      bose_occupation(omega, temperature))


def list_transitions(params: PhotocellParams, *, keep_zero: bool = False) -> tuple[list[Transition], ExcitonBasis]:
    """Wszystkie przejścia modelu wraz z bazą ekscytonową.

    Raises:
        ModelParameterError: gdy eps_- nie leży powyżej eps_alpha.
    """
    basis = diagonalize_dimer(params)
    if not basis.eps_minus > params.eps_alpha:
        raise ModelParameterError(
            f"lower exciton ({basis.eps_minus:.6g} eV) must lie above eps_alpha "
            f"({params.eps_alpha:.6g} eV)", field='eps_alpha')

    g_plus, g_minus = exciton_optical_rates(
        basis, params.z, params.gamma_2g,
        independent_total=params.gamma_opt_total if params.model is ModelKind.INDEPENDENT else None)
    a_plus, a_minus = trap_transfer_rates(params, basis)
    t_h, t_c = params.t_hot, params.t_cold
    e_p, e_m, e_a, e_b = basis.eps_plus, basis.eps_minus, params.eps_alpha, params.eps_beta

    candidates = [
        (PLUS, MINUS, exciton_phonon_rate(params, basis), Bath.PHONON, t_c, e_p - e_m),
        (PLUS, GROUND, g_plus, Bath.PHOTON, t_h, e_p),
        (MINUS, GROUND, g_minus, Bath.PHOTON, t_h, e_m),
        (PLUS, ALPHA, a_plus, Bath.PHONON, t_c, e_p - e_a),
        (MINUS, ALPHA, a_minus, Bath.PHONON, t_c, e_m - e_a),
        (ALPHA, BETA, params.gamma_alphabeta, Bath.PHONON, t_c, e_a - e_b),
        (ALPHA, GROUND, params.chi * params.gamma_alphabeta, Bath.PHONON, t_c, e_a),
        (BETA, GROUND, params.gamma_betag, Bath.PHONON, t_c, e_b),
    ]
    transitions = [
        _transition(*entry) for entry in candidates
        if keep_zero or entry[2] > 0.0
    ]
    return transitions, basis


def assemble(transitions, size: int = N_LEVELS) -> np.ndarray:
    """Składa Q z listy przejść; diagonalna = minus suma kolumny."""
    q = np.zeros((size, size))
    for t in transitions:
        q[t.lower, t.upper] += t.down
        q[t.upper, t.lower] += t.up
    q[np.diag_indices(size)] = -q.sum(axis=0)
    return q


def build_rate_matrix(params: PhotocellParams) -> RateMatrix:
    """Pełna macierz Q dla zestawu parametrów."""
    transitions, basis = list_transitions(params)
    q = assemble(transitions)
    q.setflags(write=False)
    return RateMatrix(q=q, transitions=tuple(transitions), basis=basis)


def trap_decay_split(params: PhotocellParams) -> tuple[np.ndarray, np.ndarray]:
    """Rozkład Q(gamma_ab) = Q0 + gamma_ab * Q1 (przejścia pułapki liniowe w gamma_ab)."""
    transitions, _ = list_transitions(params.evolve(gamma_alphabeta=1.0))
    fixed = [t for t in transitions if not t.is_trap_decay]
    trap = [t for t in transitions if t.is_trap_decay]
    return assemble(fixed), assemble(trap)
