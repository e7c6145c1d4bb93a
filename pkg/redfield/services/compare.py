"""redfield/services/compare.py - Porównanie równań Pauliego z pełną teorią Redfielda.

Ten sam protokół maksymalizacji mocy (siatka + złoty podział po gamma_ab), ale
obsadzenia P_alpha, P_beta brane z diagonali stanu stacjonarnego generatora
Redfielda. Benchmark (model niezależny) liczony tą samą metodą.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from core.workers import map_with_limit
from quantum.services.builders import independent_benchmark, rebuild
from quantum.services.parameters import ModelKind, PhotocellParams
from steadystate.services.power import (
    GAMMA_AB_MIN,
    ZERO_POINT,
    Enhancement,
    OptimizationResult,
    enhancement_over_benchmark,
    maximize_landscape,
    ratio_of,
)
from steadystate.services.sweeps import DEFAULT_J12_CAP, SweepPoint, SweepResult, guarded, optimize_coupling

from .channels import DEFAULT_SHIFT_FRACTION
from .generator import generator_split, steady_state_liouville

logger = logging.getLogger(__name__)


class RedfieldLandscape:
    """Obsadzenia stacjonarne generatora Redfielda jako funkcja gamma_ab.

    K(gamma_ab) = K0 + gamma_ab K1, składane raz na cały przegląd.
    """

    label = 'redfield'

    def __init__(
        self,
        params: PhotocellParams,
        secular: bool = False,
        dephasing: float | None = None,
        shift_fraction: float = DEFAULT_SHIFT_FRACTION,
    ):
        self.params = params
        self._fixed, self._trap = generator_split(params, secular, dephasing, shift_fraction)

    def density_matrix(self, gamma_alphabeta: float) -> np.ndarray:
        return steady_state_liouville(self._fixed + gamma_alphabeta * self._trap)

    def populations(self, gamma_alphabeta: float) -> np.ndarray:
        return np.diag(self.density_matrix(gamma_alphabeta)).real.copy()


def maximize_power_redfield(
    params: PhotocellParams,
    secular: bool = False,
    dephasing: float | None = None,
    shift_fraction: float = DEFAULT_SHIFT_FRACTION,
) -> OptimizationResult:
    """Maksymalna moc po gamma_ab z obsadzeniami Redfielda."""
    if params.gamma_opt_total == 0.0:
        return OptimizationResult(GAMMA_AB_MIN, ZERO_POINT, 0, zero_power=True)
    return maximize_landscape(RedfieldLandscape(params, secular, dephasing, shift_fraction))


@dataclass(frozen=True)
class RedfieldComparison:
    """Enhancement z równań Pauliego i z teorii Redfielda dla jednego zestawu parametrów."""

    rate: Enhancement
    redfield: Enhancement

    @property
    def difference(self) -> float:
        return self.redfield.ratio - self.rate.ratio

    @property
    def relative_difference(self) -> float:
        return self.difference / self.rate.ratio


def redfield_enhancement(
    params: PhotocellParams,
    secular: bool = False,
    dephasing: float | None = None,
    shift_fraction: float = DEFAULT_SHIFT_FRACTION,
) -> Enhancement:
    """Enhancement modelu nad dopasowanym benchmarkiem, oba w teorii Redfielda."""
    model = maximize_power_redfield(params, secular, dephasing, shift_fraction)
    benchmark = maximize_power_redfield(independent_benchmark(params), secular, dephasing, shift_fraction)
    return Enhancement(model=model, benchmark=benchmark, ratio=ratio_of(model, benchmark))


def compare_with_rates(
    params: PhotocellParams,
    dephasing: float | None = None,
    secular: bool = False,
    shift_fraction: float = DEFAULT_SHIFT_FRACTION,
) -> RedfieldComparison:
    """Ten sam protokół w obu teoriach; różnica enhancementów."""
    comparison = RedfieldComparison(
        rate=enhancement_over_benchmark(params),
        redfield=redfield_enhancement(params, secular, dephasing, shift_fraction),
    )
    logger.debug(
        f"{params.model.value}: rate Q={comparison.rate.ratio:.8f}, "
        f"Redfield Q={comparison.redfield.ratio:.8f}"
    )
    return comparison


def redfield_sweep(
    base: PhotocellParams,
    gamma_1alpha_grid: Sequence[float],
    j12_cap: float = DEFAULT_J12_CAP,
    secular: bool = False,
    dephasing: float | None = None,
    shift_fraction: float = DEFAULT_SHIFT_FRACTION,
    max_workers: int | None = None,
) -> SweepResult:
    """Przegląd pułapki jak w sweep_trapping; w każdym punkcie J12 z równań Pauliego."""
    series = base.model.value

    def evaluate(gamma_1alpha: float) -> SweepPoint:
        params, _ = optimize_coupling(rebuild(base, gamma_1alpha=gamma_1alpha), j12_cap)
        comparison = compare_with_rates(params, dephasing, secular, shift_fraction)
        red = comparison.redfield
        return SweepPoint(
            series=series,
            axes=(gamma_1alpha,),
            model_power=red.model.power,
            benchmark_power=red.benchmark.power,
            enhancement=red.ratio,
            gamma_alphabeta=red.model.best_gamma_alphabeta,
            j12=params.j12,
            details={
                'rate_enhancement': comparison.rate.ratio,
                'redfield_enhancement': red.ratio,
                'difference': comparison.difference,
            },
        )

    points = map_with_limit(
        guarded(evaluate, lambda g: f"gamma_1alpha={g:.6g}"),
        [float(g) for g in gamma_1alpha_grid], max_workers, name='redfield_compare',
    )
    mode = 'secular' if secular else 'nonsecular'
    logger.info(f"Redfield comparison ({series}, {mode}): {len(points)} points")
    return SweepResult(axis_names=('gamma_1alpha',), points=tuple(points))


def dephasing_sweep(
    base: PhotocellParams,
    gamma_1alpha_grid: Sequence[float],
    dephasing: float,
    j12_cap: float = DEFAULT_J12_CAP,
    shift_fraction: float = DEFAULT_SHIFT_FRACTION,
    max_workers: int | None = None,
) -> SweepResult:
    """Enhancement z i bez czystego defazowania dla modelu symetrycznego i asymetrycznego.

    J12 współoptymalizowane równaniami Pauliego, potem oba warianty liczone
    nieświecką teorią Redfielda.
    """
    designs = []
    for model in (ModelKind.SYMMETRIC, ModelKind.ASYMMETRIC):
        design = base if base.model is model else rebuild(base, model=model, slave_z=model is ModelKind.ASYMMETRIC)
        designs.append((model, design))

    def evaluate(item) -> SweepPoint:
        model, design, gamma_1alpha = item
        params, _ = optimize_coupling(rebuild(design, gamma_1alpha=gamma_1alpha), j12_cap)
        clean = redfield_enhancement(params, dephasing=None, shift_fraction=shift_fraction)
        dephased = redfield_enhancement(params, dephasing=dephasing, shift_fraction=shift_fraction)
        return SweepPoint(
            series=model.value,
            axes=(gamma_1alpha,),
            model_power=dephased.model.power,
            benchmark_power=dephased.benchmark.power,
            enhancement=dephased.ratio,
            gamma_alphabeta=dephased.model.best_gamma_alphabeta,
            j12=params.j12,
            details={
                'enhancement_clean': clean.ratio,
                'enhancement_dephased': dephased.ratio,
                'reduction': 1.0 - dephased.ratio / clean.ratio,
            },
        )

    items = [(model, design, float(g)) for model, design in designs for g in gamma_1alpha_grid]
    points = map_with_limit(
        guarded(evaluate, lambda item: f"{item[0].value} gamma_1alpha={item[2]:.6g}"),
        items, max_workers, name='dephasing',
    )
    logger.info(f"Dephasing sweep at {dephasing:.3e} eV: {len(points)} points")
    return SweepResult(axis_names=('gamma_1alpha',), points=tuple(points))


def dephasing_surface(
    base: PhotocellParams,
    delta_eps_grid: Sequence[float],
    j12_grid: Sequence[float],
    dephasing: float,
    shift_fraction: float = DEFAULT_SHIFT_FRACTION,
    max_workers: int | None = None,
) -> SweepResult:
    """Powierzchnia (Δε, J12) w teorii Redfielda, z defazowaniem i bez.

    Model asymetryczny na siatce (Δε, J12), symetryczny po J12 (oś Δε = 0).
    Redukcja enhancementu raportowana w szczycie czystej powierzchni każdego
    modelu oraz jako stosunek szczytów (defazowany / czysty).
    """
    asym_base = rebuild(base, model=ModelKind.ASYMMETRIC, detuning=0.0, slave_z=True)
    benchmark = independent_benchmark(asym_base)
    bench_clean = maximize_power_redfield(benchmark, shift_fraction=shift_fraction)
    bench_dephased = maximize_power_redfield(benchmark, dephasing=dephasing, shift_fraction=shift_fraction)

    def evaluate(item) -> SweepPoint:
        series, delta, j12 = item
        if series == ModelKind.ASYMMETRIC.value:
            params = rebuild(asym_base, delta_eps=delta, j12=j12, slave_z=True)
        else:
            params = rebuild(asym_base, model=ModelKind.SYMMETRIC, j12=j12)
        clean = ratio_of(maximize_power_redfield(params, shift_fraction=shift_fraction), bench_clean)
        dephased = maximize_power_redfield(params, dephasing=dephasing, shift_fraction=shift_fraction)
        ratio = ratio_of(dephased, bench_dephased)
        return SweepPoint(
            series=series,
            axes=(delta, j12),
            model_power=dephased.power,
            benchmark_power=bench_dephased.power,
            enhancement=ratio,
            gamma_alphabeta=dephased.best_gamma_alphabeta,
            j12=params.j12,
            details={
                'enhancement_clean': clean,
                'enhancement_dephased': ratio,
                'reduction': 1.0 - ratio / clean,
            },
        )

    couplings = [float(j) for j in j12_grid]
    items = [(ModelKind.ASYMMETRIC.value, float(d), j) for d in delta_eps_grid for j in couplings]
    items += [(ModelKind.SYMMETRIC.value, 0.0, j) for j in couplings]
    points = map_with_limit(
        guarded(evaluate, lambda item: f"{item[0]} delta_eps={item[1]:.6g}, j12={item[2]:.6g}"),
        items, max_workers, name='dephasing_surface',
    )

    summary = {}
    for series in (ModelKind.SYMMETRIC.value, ModelKind.ASYMMETRIC.value):
        members = [p for p in points if p.series == series]
        peak = max(members, key=lambda p: p.details['enhancement_clean'])
        best_dephased = max(p.enhancement for p in members)
        summary.update({
            f'{series}.peak_delta_eps': peak.axes[0],
            f'{series}.peak_j12': peak.axes[1],
            f'{series}.peak_clean': peak.details['enhancement_clean'],
            f'{series}.peak_dephased': peak.details['enhancement_dephased'],
            f'{series}.reduction_at_peak': peak.details['reduction'],
            f'{series}.peak_to_peak_reduction': 1.0 - best_dephased / peak.details['enhancement_clean'],
        })
    logger.info(
        f"Dephasing surface at {dephasing:.3e} eV: {len(points)} points, "
        f"reduction at peak sym={summary['symmetric.reduction_at_peak']:.4f}, "
        f"asym={summary['asymmetric.reduction_at_peak']:.4f}"
    )
    return SweepResult(axis_names=('delta_eps', 'j12'), points=tuple(points), summary=summary)
