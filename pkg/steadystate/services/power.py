"""steadystate/services/power.py - Prąd, napięcie, moc i ich maksymalizacja.

Centrum reakcji traktowane jako czarna skrzynka: gamma_alphabeta dobierane tak,
by moc P = I V była maksymalna przy pozostałych parametrach stałych.

Konwencja znaku napięcia: V = (eps_alpha - eps_beta) + k_B T_c ln(P_alpha / P_beta),
dzięki czemu bez światła (równowaga w T_c) V = 0.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from core.constants import ALPHA, BETA, K_B_EV
from core.exceptions import NumericalError, UndefinedRatioError, UndefinedVoltageError
from quantum.services.builders import independent_benchmark
from quantum.services.parameters import PhotocellParams
from quantum.services.rates import build_rate_matrix, trap_decay_split

from .search import maximize_on_log_grid
from .solver import SteadyState, solve_steady_state

logger = logging.getLogger(__name__)

# Przegląd gamma_alphabeta
GAMMA_AB_MIN = 1e-12
GAMMA_AB_MAX = 1.0
GAMMA_AB_POINTS = 200

# Poniżej tego napięcia (eV) stan uznajemy za termiczny
_THERMAL_VOLTAGE = 1e-9


@dataclass(frozen=True)
class OperatingPoint:
    """Punkt pracy: I/e = gamma_ab P_alpha (eV), V (eV), P = I V."""

    current: float
    voltage: float
    power: float

    @classmethod
    def from_iv(cls, current: float, voltage: float) -> OperatingPoint:
        return cls(current=current, voltage=voltage, power=current * voltage)


ZERO_POINT = OperatingPoint(0.0, 0.0, 0.0)


@dataclass(frozen=True)
class OptimizationResult:
    """Maksimum mocy po gamma_alphabeta.

    Atrybuty:
        best_gamma_alphabeta: optymalne gamma_ab, eV.
        best_point: punkt pracy w optimum.
        evaluations: liczba rozwiązań stanu stacjonarnego.
        zero_power: brak dodatniej mocy w całym przedziale.
    """

    best_gamma_alphabeta: float
    best_point: OperatingPoint
    evaluations: int
    zero_power: bool = False

    @property
    def power(self) -> float:
        return self.best_point.power


def operating_point_from(populations, gamma_alphabeta: float, params: PhotocellParams) -> OperatingPoint:
    p_alpha, p_beta = float(populations[ALPHA]), float(populations[BETA])
    if not (p_alpha > 0.0 and p_beta > 0.0):
        raise UndefinedVoltageError(
            f"voltage undefined for P_alpha={p_alpha:.3e}, P_beta={p_beta:.3e}")
    voltage = (params.eps_alpha - params.eps_beta) + K_B_EV * params.t_cold * math.log(p_alpha / p_beta)
    return OperatingPoint.from_iv(gamma_alphabeta * p_alpha, voltage)


def operating_point(state: SteadyState, params: PhotocellParams) -> OperatingPoint:
    """Prąd, napięcie i moc dla stanu stacjonarnego przy gamma_ab z `params`."""
    return operating_point_from(state.populations, params.gamma_alphabeta, params)


def iv_curve(params: PhotocellParams, gamma_grid: Sequence[float]) -> list[tuple[float, OperatingPoint]]:
    """Krzywa I-V: jedno rozwiązanie na wartość gamma_ab, reszta parametrów stała.

    Raises:
        ValueError: siatka niedodatnia lub nierosnąca.
        NumericalError: z dołączoną wartością gamma_ab.
    """
    grid = [float(g) for g in gamma_grid]
    if any(g <= 0 for g in grid) or any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("gamma_alphabeta grid must be positive and strictly ascending")
    curve = []
    for gamma in grid:
        point_params = params.evolve(gamma_alphabeta=gamma)
        try:
            state = solve_steady_state(build_rate_matrix(point_params))
            curve.append((gamma, operating_point(state, point_params)))
        except NumericalError as e:
            raise e.with_context(f"gamma_alphabeta={gamma:.6g}") from e
    return curve


class RateLandscape:
    """Obsadzenia stacjonarne jako funkcja gamma_ab dla równań Pauliego.

    Q(gamma_ab) = Q0 + gamma_ab Q1 - jedno złożenie macierzy na cały przegląd.
    """

    label = 'rate'

    def __init__(self, params: PhotocellParams):
        self.params = params
        self._fixed, self._trap = trap_decay_split(params)

    def populations(self, gamma_alphabeta: float) -> np.ndarray:
        return solve_steady_state(self._fixed + gamma_alphabeta * self._trap).populations


def _power_at(landscape, gamma_alphabeta: float) -> float:
    try:
        populations = landscape.populations(gamma_alphabeta)
        return operating_point_from(populations, gamma_alphabeta, landscape.params).power
    except UndefinedVoltageError:
        logger.debug(f"Undefined voltage at gamma_alphabeta={gamma_alphabeta:.3e}")
        return -math.inf


def maximize_landscape(landscape) -> OptimizationResult:
    """Maksymalizacja mocy dla dowolnego źródła obsadzeń (`populations(gamma_ab)`)."""
    result = maximize_on_log_grid(
        lambda g: _power_at(landscape, g),
        GAMMA_AB_MIN, GAMMA_AB_MAX, points=GAMMA_AB_POINTS,
    )
    if not math.isfinite(result.value) or result.value <= 0.0:
        return OptimizationResult(result.x, ZERO_POINT, result.evaluations, zero_power=True)
    point = operating_point_from(landscape.populations(result.x), result.x, landscape.params)
    if point.voltage < _THERMAL_VOLTAGE:
        return OptimizationResult(result.x, ZERO_POINT, result.evaluations, zero_power=True)
    logger.debug(f"{landscape.label} optimum: gamma_ab={result.x:.4e}, P={point.power:.6e}")
    return OptimizationResult(result.x, point, result.evaluations + 1)


def maximize_power(params: PhotocellParams) -> OptimizationResult:
    """Maksymalna moc po gamma_ab w [1e-12, 1] eV (siatka 200 + złoty podział)."""
    if params.gamma_opt_total == 0.0:
        logger.info("No optical coupling; reporting zero power")
        return OptimizationResult(GAMMA_AB_MIN, ZERO_POINT, 0, zero_power=True)
    return maximize_landscape(RateLandscape(params))


def ratio_of(model: OptimizationResult, benchmark: OptimizationResult) -> float:
    if benchmark.zero_power or benchmark.power <= 0.0:
        raise UndefinedRatioError("benchmark power is zero")
    return model.power / benchmark.power


def enhancement_ratio(model_params: PhotocellParams, benchmark_params: PhotocellParams) -> float:
    """maximize_power(model) / maximize_power(benchmark)."""
    return ratio_of(maximize_power(model_params), maximize_power(benchmark_params))


@dataclass(frozen=True)
class Enhancement:
    """Moc modelu, moc benchmarku i ich stosunek (Q)."""

    model: OptimizationResult
    benchmark: OptimizationResult
    ratio: float


def enhancement_over_benchmark(params: PhotocellParams, benchmark: OptimizationResult | None = None) -> Enhancement:
    """Enhancement względem dopasowanego modelu niezależnego."""
    if benchmark is None:
        benchmark = maximize_power(independent_benchmark(params))
    model = maximize_power(params)
    return Enhancement(model=model, benchmark=benchmark, ratio=ratio_of(model, benchmark))
