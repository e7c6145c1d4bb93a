"""steadystate/services/solver.py - Stan stacjonarny równań Pauliego.

Dwie metody:
  - "gth"    : redukcja stanów (Grassmann-Taksar-Heyman), bez odejmowań, więc
               wykładniczo małe obsadzenia zachowują pełną dokładność względną;
  - "linear" : jeden wiersz Q zastąpiony warunkiem normalizacji sum(P) = 1.
Obie zwracają ten sam unormowany wektor zerowy Q.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from core.constants import ALPHA, BETA, GROUND, MINUS, PLUS
from core.exceptions import DegenerateNetworkError, NumericalError
from quantum.services.rates import RateMatrix

logger = logging.getLogger(__name__)

_RESIDUAL_TOL = 1e-12
_RK4_STEP_FRACTION = 0.1


@dataclass(frozen=True)
class SteadyState:
    """Obsadzenia (P+, P-, P_alpha, P_beta, P_g), suma = 1."""

    populations: np.ndarray

    @property
    def p_plus(self) -> float:
        return float(self.populations[PLUS])

    @property
    def p_minus(self) -> float:
        return float(self.populations[MINUS])

    @property
    def p_alpha(self) -> float:
        return float(self.populations[ALPHA])

    @property
    def p_beta(self) -> float:
        return float(self.populations[BETA])

    @property
    def p_ground(self) -> float:
        return float(self.populations[GROUND])


def _as_array(q) -> np.ndarray:
    return np.asarray(q.q if isinstance(q, RateMatrix) else q, dtype=float)


def reduce_states(q: np.ndarray) -> np.ndarray:
    """Rozkład stacjonarny metodą redukcji stanów.

    Args:
        q: generator (kolumny sumują się do zera), q[j, i] = szybkość i -> j.

    Raises:
        DegenerateNetworkError: gdy któryś stan nie ma wyjścia w zredukowanej sieci.
    """
    n = q.shape[0]
    flow = np.array(q, dtype=float).T
    np.fill_diagonal(flow, 0.0)
    for k in range(n - 1, 0, -1):
        out = flow[k, :k].sum()
        if not out > 0.0:
            raise DegenerateNetworkError(
                f"state {k} has no outgoing transitions in the reduced network")
        flow[:k, k] /= out
        flow[:k, :k] += np.outer(flow[:k, k], flow[k, :k])

    pi = np.zeros(n)
    pi[0] = 1.0
    for k in range(1, n):
        pi[k] = pi[:k] @ flow[:k, k]
    return pi / pi.sum()


def _solve_linear(q: np.ndarray) -> np.ndarray:
    n = q.shape[0]
    singular = linalg.svdvals(q)
    if n > 1 and singular[-2] <= n * np.finfo(float).eps * singular[0]:
        raise DegenerateNetworkError("rate matrix has more than one null direction")
    system = q.copy()
    system[-1, :] = 1.0
    rhs = np.zeros(n)
    rhs[-1] = 1.0
    try:
        return linalg.solve(system, rhs)
    except linalg.LinAlgError as e:
        raise DegenerateNetworkError(f"normalized system is singular: {e}") from e


def solve_steady_state(q, method: str = 'gth') -> SteadyState:
    """Unormowany wektor zerowy Q.

    Args:
        q: RateMatrix lub macierz numpy.
        method: "gth" (domyślnie) lub "linear".
    """
    matrix = _as_array(q)
    if not np.any(matrix):
        raise DegenerateNetworkError("rate matrix is identically zero")
    if method == 'gth':
        populations = reduce_states(matrix)
    elif method == 'linear':
        populations = _solve_linear(matrix)
    else:
        raise ValueError(f"unknown steady-state method '{method}'")

    scale = float(np.max(np.abs(matrix)))
    residual = float(np.max(np.abs(matrix @ populations)))
    if residual > _RESIDUAL_TOL * scale:
        logger.warning(f"Steady-state residual {residual:.3e} above tolerance (max rate {scale:.3e})")
    populations.setflags(write=False)
    return SteadyState(populations=populations)


def rk4_step_matrix(q: np.ndarray, step: float) -> np.ndarray:
    """Macierz jednego kroku RK4 dla dP/dt = Q P."""
    a = step * q
    identity = np.eye(q.shape[0])
    a2 = a @ a
    a3 = a2 @ a
    return identity + a + a2 / 2.0 + a3 / 6.0 + (a3 @ a) / 24.0


def integrate_rate_ode(q, p0, horizon: float, step: float | None = None) -> np.ndarray:
    """Całkowanie RK4 o stałym kroku do czasu `horizon`.

    Krok <= 0.1 / max|Q|; horyzont dzielony na n równych kroków. Dla liniowego
    układu n kroków RK4 to potęga macierzy kroku, liczona przez podnoszenie do kwadratu.

    Raises:
        NumericalError: horizon lub step niedodatni.
    """
    matrix = _as_array(q)
    p0 = np.asarray(p0, dtype=float)
    if not horizon > 0:
        raise NumericalError(f"horizon must be positive, got {horizon}")
    if step is not None and not step > 0:
        raise NumericalError(f"step must be positive, got {step}")
    scale = float(np.max(np.abs(matrix)))
    if scale == 0.0:
        return p0.copy()

    max_step = _RK4_STEP_FRACTION / scale
    step = max_step if step is None else min(step, max_step)
    n_steps = math.ceil(horizon / step)
    propagator = np.linalg.matrix_power(rk4_step_matrix(matrix, horizon / n_steps), n_steps)
    logger.debug(f"RK4: {n_steps} steps of {horizon / n_steps:.3e}")
    return propagator @ p0
