"""steadystate/services/sweeps.py - Przeglądy parametrów: pułapka, powierzchnia, odchylenia.

Każdy punkt przeglądu to niezależna, deterministyczna ewaluacja (model i
dopasowany benchmark, oba z własnym optymalnym gamma_alphabeta), więc punkty
liczone są równolegle przez core.workers bez wpływu na wynik.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

from core.exceptions import NumericalError
from core.workers import map_with_limit
from quantum.services.builders import independent_benchmark, rebuild
from quantum.services.dimer import darkness_angle, diagonalize_dimer
from quantum.services.parameters import ModelKind, PhotocellParams
from quantum.services.rates import trap_transfer_rates

from .power import OptimizationResult, maximize_power, ratio_of
from .search import maximize_on_log_grid

logger = logging.getLogger(__name__)

DEFAULT_J12_CAP = 0.03

# Współoptymalizacja J12 w (0, cap]: siatka log od cap/1000
_J12_FLOOR_FRACTION = 1e-3
_J12_POINTS = 16
_J12_XTOL = 1e-3


@dataclass(frozen=True)
class SweepPoint:
    """Jeden punkt przeglądu.

    Atrybuty:
        series: nazwa serii (np. 'asymmetric', 'symmetric').
        axes: wartości osi w kolejności SweepResult.axis_names.
        model_power, benchmark_power: maksymalne moce.
        enhancement: model_power / benchmark_power.
        gamma_alphabeta: optymalne gamma_ab modelu.
        j12: J12 (współoptymalizowane lub ustalone), eV.
        details: dodatkowe kolumny (tan2, szybkości pułapki...).
    """

    series: str
    axes: tuple[float, ...]
    model_power: float
    benchmark_power: float
    enhancement: float
    gamma_alphabeta: float
    j12: float
    details: dict[str, float] = field(default_factory=dict)


@dataclass(frozen=True)
class SweepResult:
    axis_names: tuple[str, ...]
    points: tuple[SweepPoint, ...]
    summary: dict = field(default_factory=dict)

    def series(self, name: str) -> list[SweepPoint]:
        return [p for p in self.points if p.series == name]


def _point(series, axes, params, model: OptimizationResult, benchmark: OptimizationResult, **details) -> SweepPoint:
    return SweepPoint(
        series=series,
        axes=tuple(float(a) for a in axes),
        model_power=model.power,
        benchmark_power=benchmark.power,
        enhancement=ratio_of(model, benchmark),
        gamma_alphabeta=model.best_gamma_alphabeta,
        j12=params.j12,
        details={k: float(v) for k, v in details.items()},
    )


def guarded(fn: Callable, context: Callable[[object], str]) -> Callable:
    def run(item):
        try:
            return fn(item)
        except NumericalError as e:
            raise e.with_context(context(item)) from e
    run.__name__ = getattr(fn, '__name__', 'sweep_point')
    return run


def _benchmark(params: PhotocellParams) -> OptimizationResult:
    return maximize_power(independent_benchmark(params))


def optimize_coupling(params: PhotocellParams, j12_cap: float = DEFAULT_J12_CAP) -> tuple[PhotocellParams, OptimizationResult]:
    """Współoptymalizacja J12 w (0, cap] i gamma_ab; z asymetryczne związane z warunkiem ciemnego stanu."""
    cache: dict[float, tuple[PhotocellParams, OptimizationResult]] = {}

    def power_at(j12: float) -> float:
        candidate = rebuild(params, j12=j12, slave_z=params.model is ModelKind.ASYMMETRIC)
        result = maximize_power(candidate)
        cache[j12] = (candidate, result)
        return result.power

    best = maximize_on_log_grid(
        power_at, j12_cap * _J12_FLOOR_FRACTION, j12_cap,
        points=_J12_POINTS, xtol=_J12_XTOL,
    )
    logger.debug(f"J12 co-optimization: J12={best.x:.4e} eV after {best.evaluations} evaluations")
    return cache[best.x]


def sweep_trapping(
    base: PhotocellParams,
    gamma_1alpha_grid: Sequence[float],
    j12_cap: float = DEFAULT_J12_CAP,
    max_workers: int | None = None,
) -> SweepResult:
    """Enhancement w funkcji gamma_1alpha, z J12 i gamma_ab optymalizowanymi w każdym punkcie.

    eps_- stałe; dla modelu asymetrycznego Δε z `base`, z z warunku ciemnego stanu.
    """
    series = base.model.value

    def evaluate(gamma_1alpha: float) -> SweepPoint:
        point_base = rebuild(base, gamma_1alpha=gamma_1alpha)
        params, model = optimize_coupling(point_base, j12_cap)
        return _point(series, (gamma_1alpha,), params, model, _benchmark(params), z=params.z)

    points = map_with_limit(
        guarded(evaluate, lambda g: f"gamma_1alpha={g:.6g}"),
        [float(g) for g in gamma_1alpha_grid], max_workers, name='sweep_trapping',
    )
    logger.info(f"Trapping sweep ({series}): {len(points)} points")
    return SweepResult(axis_names=('gamma_1alpha',), points=tuple(points))


def _crossings(delta_grid, asym_ratios, sym_ratio) -> list[float]:
    """Δε, w których enhancement asymetryczny = symetryczny (interpolacja liniowa)."""
    found = []
    diffs = [r - sym_ratio for r in asym_ratios]
    for i in range(len(diffs) - 1):
        d0, d1 = diffs[i], diffs[i + 1]
        if d0 == 0.0:
            found.append(delta_grid[i])
        elif d0 * d1 < 0.0:
            found.append(delta_grid[i] + (delta_grid[i + 1] - delta_grid[i]) * d0 / (d0 - d1))
    if diffs and diffs[-1] == 0.0:
        found.append(delta_grid[-1])
    return found


def enhancement_surface(
    base: PhotocellParams,
    delta_eps_grid: Sequence[float],
    j12_grid: Sequence[float],
    max_workers: int | None = None,
) -> SweepResult:
    """Powierzchnia enhancementu modelu asymetrycznego w (Δε, J12) i krzywa symetryczna po J12.

    Podsumowanie: szczyt powierzchni, kontur równości z modelem symetrycznym
    (przecięcia w Δε dla każdego J12) i liczba punktów, w których model asymetryczny wygrywa.
    """
    asym_base = rebuild(base, model=ModelKind.ASYMMETRIC, detuning=0.0, slave_z=True)
    benchmark = _benchmark(asym_base)
    deltas = [float(d) for d in delta_eps_grid]
    couplings = [float(j) for j in j12_grid]

    def evaluate_asym(item) -> SweepPoint:
        delta, j12 = item
        params = rebuild(asym_base, delta_eps=delta, j12=j12, slave_z=True)
        return _point('asymmetric', (delta, j12), params, maximize_power(params), benchmark, z=params.z)

    def evaluate_sym(j12: float) -> SweepPoint:
        params = rebuild(asym_base, model=ModelKind.SYMMETRIC, j12=j12)
        return _point('symmetric', (0.0, j12), params, maximize_power(params), benchmark, z=1.0)

    grid = [(d, j) for d in deltas for j in couplings]
    asym = map_with_limit(
        guarded(evaluate_asym, lambda item: f"delta_eps={item[0]:.6g}, j12={item[1]:.6g}"),
        grid, max_workers, name='surface',
    )
    sym = map_with_limit(
        guarded(evaluate_sym, lambda j: f"j12={j:.6g}"), couplings, max_workers, name='surface_symmetric',
    )

    peak = max(asym, key=lambda p: p.enhancement)
    contour = []
    wins = 0
    for column, sym_point in enumerate(sym):
        ratios = [asym[row * len(couplings) + column].enhancement for row in range(len(deltas))]
        wins += sum(r > sym_point.enhancement for r in ratios)
        for crossing in _crossings(deltas, ratios, sym_point.enhancement):
            contour.append((couplings[column], crossing))
    summary = {
        'peak_delta_eps': peak.axes[0],
        'peak_j12': peak.axes[1],
        'peak_enhancement': peak.enhancement,
        'asymmetric_wins': wins,
        'contour': contour,
    }
    logger.info(f"Surface: {len(asym)} points, peak Q={peak.enhancement:.4f}")
    return SweepResult(axis_names=('delta_eps', 'j12'), points=tuple(asym) + tuple(sym), summary=summary)


def deviation_sweep(
    base: PhotocellParams,
    delta_grid: Sequence[float],
    design_gaps: Sequence[float] | None = None,
    max_workers: int | None = None,
) -> SweepResult:
    """Odchylenie Δ od warunku projektowego: Δε -> Δε + Δ.

    Model symetryczny (eps2 - eps1 = Δ) i asymetryczny dla każdej projektowej
    przerwy w `design_gaps` (domyślnie Δε z `base`); z asymetryczne ustalone z
    warunku ciemnego stanu przy Δ = 0.
    """
    gaps = [base.delta_eps - base.detuning] if design_gaps is None else [float(g) for g in design_gaps]
    designs = [('symmetric', rebuild(base, model=ModelKind.SYMMETRIC, detuning=0.0))]
    for gap in gaps:
        design = rebuild(base, model=ModelKind.ASYMMETRIC, delta_eps=gap, detuning=0.0, slave_z=True)
        designs.append((f'asymmetric:{gap:g}', design))
    benchmark = _benchmark(designs[0][1])

    def evaluate(item) -> SweepPoint:
        series, design, delta = item
        params = rebuild(design, detuning=delta)
        tan2 = darkness_angle(abs(params.delta_eps), params.z, params.j12, params.phi)
        return _point(series, (delta,), params, maximize_power(params), benchmark, tan2=tan2)

    items = [(series, design, float(d)) for series, design in designs for d in delta_grid]
    points = map_with_limit(
        guarded(evaluate, lambda item: f"{item[0]} delta={item[2]:.6g}"), items, max_workers, name='deviation',
    )
    return SweepResult(axis_names=('delta',), points=tuple(points))


def theta_rc_sweep(base: PhotocellParams, theta_grid: Sequence[float], max_workers: int | None = None) -> SweepResult:
    """Faza sprzężenia z centrum reakcji w modelu symetrycznym."""
    design = rebuild(base, model=ModelKind.SYMMETRIC)
    benchmark = _benchmark(design)

    def evaluate(theta: float) -> SweepPoint:
        params = rebuild(design, theta_rc=theta)
        a_plus, a_minus = trap_transfer_rates(params, diagonalize_dimer(params))
        return _point('symmetric', (theta,), params, maximize_power(params), benchmark,
                      gamma_plus_alpha=a_plus, gamma_minus_alpha=a_minus)

    points = map_with_limit(
        guarded(evaluate, lambda t: f"theta_rc={t:.6g}"), [float(t) for t in theta_grid], max_workers,
        name='theta_rc',
    )
    return SweepResult(axis_names=('theta_rc',), points=tuple(points))


def phi_sweep(base: PhotocellParams, phi_grid: Sequence[float], max_workers: int | None = None) -> SweepResult:
    """Kąt między dipolami phi: J12 = J12^0 cos phi, z ustalone dla phi = 0 (model asymetryczny)."""
    design = rebuild(base, model=ModelKind.ASYMMETRIC, phi=0.0, detuning=0.0, slave_z=True)
    benchmark = _benchmark(design)

    def evaluate(phi: float) -> SweepPoint:
        params = rebuild(design, phi=phi)
        tan2 = darkness_angle(params.delta_eps, params.z, params.j12, phi)
        return _point('asymmetric', (phi,), params, maximize_power(params), benchmark,
                      tan2=tan2, j12_eff=params.j12 * math.cos(phi))

    points = map_with_limit(
        guarded(evaluate, lambda p: f"phi={p:.6g}"), [float(p) for p in phi_grid], max_workers, name='phi',
    )
    return SweepResult(axis_names=('phi',), points=tuple(points))
