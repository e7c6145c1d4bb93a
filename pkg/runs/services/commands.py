"""
runs/services/commands.py - Czasowniki komendy `photocell`.

Każdy czasownik przyjmuje RunConfig i zwraca CommandOutput: kolumny i wiersze
CSV w deterministycznej kolejności oraz podsumowanie (optimum, enhancement).
Zapis na dysk/strumień należy do komendy zarządzania.
"""

import logging
from dataclasses import dataclass, field

from core.exceptions import ConfigError
from quantum.services.dimer import darkness_angle
from quantum.services.parameters import ModelKind
from redfield.services.compare import dephasing_surface, dephasing_sweep, redfield_sweep
from screening.services.database import load_molecule_db
from screening.services.screener import CANDIDATE_COLUMNS, partner_histogram, screen, with_enhancement
from steadystate.services.power import enhancement_over_benchmark, iv_curve, maximize_power
from steadystate.services.sweeps import (
    deviation_sweep,
    enhancement_surface,
    phi_sweep,
    sweep_trapping,
    theta_rc_sweep,
)

from .config import RunConfig

logger = logging.getLogger(__name__)

_COUPLED = (ModelKind.SYMMETRIC, ModelKind.ASYMMETRIC)
_SWEEP_COLUMNS = ('enhancement', 'model_power', 'benchmark_power', 'gamma_alphabeta', 'j12')


@dataclass
class CommandOutput:
    """Wynik czasownika; `text` zastępuje CSV (czasownik preset)."""

    columns: tuple[str, ...] = ()
    rows: list[dict] = field(default_factory=list)
    summary: list[tuple[str, object]] = field(default_factory=list)
    text: str | None = None


def _sweep_output(results, summary=None) -> CommandOutput:
    """Wspólny układ CSV dla przeglądów: seria, osie, moce, enhancement, kolumny dodatkowe."""
    axis_names = results[0].axis_names
    extra: list[str] = []
    for result in results:
        for point in result.points:
            extra.extend(k for k in point.details if k not in extra)
    columns = ('series', *axis_names, *_SWEEP_COLUMNS, *extra)

    rows = []
    best: dict[str, object] = {}
    for result in results:
        for point in result.points:
            row = {'series': point.series}
            row.update(zip(axis_names, point.axes))
            row.update(
                enhancement=point.enhancement,
                model_power=point.model_power,
                benchmark_power=point.benchmark_power,
                gamma_alphabeta=point.gamma_alphabeta,
                j12=point.j12,
            )
            row.update(point.details)
            rows.append(row)
            if point.series not in best or point.enhancement > best[point.series].enhancement:
                best[point.series] = point

    lines = list(summary or [])
    for series, point in best.items():
        lines.append((f"{series}.best_enhancement", point.enhancement))
        lines.extend((f"{series}.best_{name}", value) for name, value in zip(axis_names, point.axes))
    return CommandOutput(columns=columns, rows=rows, summary=lines)


def _load_records(db):
    if db is None:
        raise ConfigError('this command needs a molecule database (--db)')
    return load_molecule_db(db)


# ── Czasowniki ──────────────────────────────────────────────────────────────

def run_iv(config: RunConfig, db=None, max_workers=None) -> CommandOutput:
    """Krzywa I-V/P-V po siatce gamma_alphabeta i optimum mocy."""
    params = config.to_params()
    curve = iv_curve(params, config.gamma_alphabeta_grid)
    rows = [
        {'gamma_alphabeta': g, 'current': p.current, 'voltage': p.voltage, 'power': p.power}
        for g, p in curve
    ]
    peak_gamma, peak = max(curve, key=lambda item: item[1].power)
    optimum = maximize_power(params)
    summary = [
        ('model', params.model),
        ('grid_peak_gamma_alphabeta', peak_gamma),
        ('grid_peak_power', peak.power),
        ('grid_peak_voltage', peak.voltage),
        ('optimum_gamma_alphabeta', optimum.best_gamma_alphabeta),
        ('optimum_current', optimum.best_point.current),
        ('optimum_voltage', optimum.best_point.voltage),
        ('optimum_power', optimum.power),
    ]
    return CommandOutput(columns=('gamma_alphabeta', 'current', 'voltage', 'power'), rows=rows, summary=summary)


def run_optimize(config: RunConfig, db=None, max_workers=None) -> CommandOutput:
    """Maksymalna moc modelu i dopasowanego benchmarku, enhancement Q."""
    params = config.to_params()
    enhancement = enhancement_over_benchmark(params)
    rows = []
    for series, result in (('model', enhancement.model), ('benchmark', enhancement.benchmark)):
        point = result.best_point
        rows.append({
            'series': series,
            'gamma_alphabeta': result.best_gamma_alphabeta,
            'current': point.current,
            'voltage': point.voltage,
            'power': point.power,
        })
    summary = [
        ('model', params.model),
        ('eps1', params.eps1),
        ('eps2', params.eps2),
        ('z', params.z),
        ('j12', params.j12),
    ]
    if params.model.coupled:
        summary.append(('tan2', darkness_angle(params.delta_eps, params.z, params.j12, params.phi)))
    summary.append(('enhancement', enhancement.ratio))
    return CommandOutput(
        columns=('series', 'gamma_alphabeta', 'current', 'voltage', 'power'), rows=rows, summary=summary,
    )


def run_sweep_trapping(config: RunConfig, db=None, max_workers=None) -> CommandOutput:
    results = [
        sweep_trapping(config.to_params(model=model), config.gamma_1alpha_grid, config.j12_cap, max_workers)
        for model in _COUPLED
    ]
    return _sweep_output(results, [('j12_cap', config.j12_cap)])


def run_surface(config: RunConfig, db=None, max_workers=None) -> CommandOutput:
    result = enhancement_surface(
        config.to_params(model=ModelKind.ASYMMETRIC), config.delta_eps_grid, config.j12_grid, max_workers,
    )
    info = result.summary
    summary = [
        ('peak_delta_eps', info['peak_delta_eps']),
        ('peak_j12', info['peak_j12']),
        ('peak_enhancement', info['peak_enhancement']),
        ('asymmetric_wins', info['asymmetric_wins']),
    ]
    summary.extend(('contour', f"j12={j12!r} delta_eps={delta!r}") for j12, delta in info['contour'])
    return _sweep_output([result], summary)


def run_deviation(config: RunConfig, db=None, max_workers=None) -> CommandOutput:
    result = deviation_sweep(
        config.to_params(model=ModelKind.ASYMMETRIC), config.deviation_grid, config.asym_delta_eps, max_workers,
    )
    return _sweep_output([result])


def run_theta_rc(config: RunConfig, db=None, max_workers=None) -> CommandOutput:
    result = theta_rc_sweep(config.to_params(model=ModelKind.SYMMETRIC), config.theta_rc_grid, max_workers)
    return _sweep_output([result])


def run_phi(config: RunConfig, db=None, max_workers=None) -> CommandOutput:
    result = phi_sweep(config.to_params(model=ModelKind.ASYMMETRIC), config.phi_grid, max_workers)
    return _sweep_output([result])


def run_redfield_compare(config: RunConfig, db=None, max_workers=None) -> CommandOutput:
    """Enhancement z równań Pauliego i z teorii Redfielda dla obu modeli sprzężonych."""
    results = [
        redfield_sweep(
            config.to_params(model=model), config.gamma_1alpha_grid, config.j12_cap,
            secular=config.secular, dephasing=config.dephasing,
            shift_fraction=config.shift_fraction, max_workers=max_workers,
        )
        for model in _COUPLED
    ]
    summary = [('mode', 'secular' if config.secular else 'nonsecular'), ('dephasing', config.dephasing or 0.0)]
    for result in results:
        for series in dict.fromkeys(p.series for p in result.points):
            worst = max(abs(p.details['difference']) for p in result.series(series))
            summary.append((f"{series}.max_abs_difference", worst))
    return _sweep_output(results, summary)


def _dephasing_rate(config: RunConfig) -> float:
    return config.dephasing if config.dephasing is not None else 0.1 * config.gamma_11


def run_dephasing(config: RunConfig, db=None, max_workers=None) -> CommandOutput:
    """Enhancement z i bez defazowania (domyślnie 0.1 gamma_11)."""
    rate = _dephasing_rate(config)
    result = dephasing_sweep(
        config.to_params(), config.gamma_1alpha_grid, rate, config.j12_cap,
        shift_fraction=config.shift_fraction, max_workers=max_workers,
    )
    summary = [('dephasing', rate)]
    for series in dict.fromkeys(p.series for p in result.points):
        points = result.series(series)
        summary.append((f"{series}.mean_reduction", sum(p.details['reduction'] for p in points) / len(points)))
    return _sweep_output([result], summary)


def run_dephasing_surface(config: RunConfig, db=None, max_workers=None) -> CommandOutput:
    """Powierzchnia (Δε, J12) w teorii Redfielda z defazowaniem; redukcja w szczytach."""
    rate = _dephasing_rate(config)
    result = dephasing_surface(
        config.to_params(model=ModelKind.ASYMMETRIC), config.delta_eps_grid, config.j12_grid, rate,
        shift_fraction=config.shift_fraction, max_workers=max_workers,
    )
    return _sweep_output([result], [('dephasing', rate), *result.summary.items()])


def run_screen(config: RunConfig, db=None, max_workers=None) -> CommandOutput:
    """Ranking par donor-akceptor; opcjonalnie Q dla top_k kandydatów."""
    records, report = _load_records(db)
    found = screen(records, config.criteria(), max_workers)
    if config.evaluate_q:
        found = with_enhancement(found, config.to_params(model=ModelKind.ASYMMETRIC), config.top_k, max_workers)
    summary = [
        ('molecules', report.accepted),
        ('skipped_rows', report.skipped_count),
        ('stokes_flagged', len(report.stokes_flagged)),
        ('candidates', len(found)),
        ('excited_order_flipped', sum(c.excited_order_flipped for c in found)),
    ]
    if found:
        summary.append(('best_pair', f"{found[0].donor_id}/{found[0].acceptor_id}"))
    return CommandOutput(columns=CANDIDATE_COLUMNS, rows=[c.as_row() for c in found], summary=summary)


def run_histogram(config: RunConfig, db=None, max_workers=None) -> CommandOutput:
    """Histogram tan^2 Phi partnerów cząsteczki `anchor_id`."""
    records, _ = _load_records(db)
    if not config.anchor_id:
        raise ConfigError('histogram needs an anchor molecule', key='anchor_id')
    anchor = next((r for r in records if r.id == config.anchor_id), None)
    if anchor is None:
        raise ConfigError(f"molecule '{config.anchor_id}' not in database", key='anchor_id')
    histogram = partner_histogram(records, anchor, config.anchor_role, config.tan2_bins, config.criteria())
    edges = histogram.edges
    rows = [
        {'tan2_lo': float(lo), 'tan2_hi': float(hi), 'count': int(count)}
        for lo, hi, count in zip(edges[:-1], edges[1:], histogram.counts)
    ]
    summary = [
        ('anchor_id', anchor.id), ('role', histogram.role), ('partners', histogram.total),
        ('below_range', histogram.below), ('above_range', histogram.above),
    ]
    return CommandOutput(columns=('tan2_lo', 'tan2_hi', 'count'), rows=rows, summary=summary)


def run_preset(config: RunConfig, db=None, max_workers=None) -> CommandOutput:
    """Konfiguracja jako tekst (źródło do edycji i ponownego wczytania)."""
    return CommandOutput(text=config.to_text(), summary=[('preset', config.preset)])


HANDLERS = {
    'iv': run_iv,
    'optimize': run_optimize,
    'sweep-trapping': run_sweep_trapping,
    'surface': run_surface,
    'deviation': run_deviation,
    'theta-rc': run_theta_rc,
    'phi': run_phi,
    'redfield-compare': run_redfield_compare,
    'dephasing': run_dephasing,
    'dephasing-surface': run_dephasing_surface,
    'screen': run_screen,
    'histogram': run_histogram,
    'preset': run_preset,
}

COMMANDS = tuple(HANDLERS)


def run_command(name: str, config: RunConfig, db=None, max_workers: int | None = None) -> CommandOutput:
    """Wykonuje czasownik `name`.

    Raises:
        ConfigError: nieznany czasownik lub brakujące dane wejściowe.
        PhotocellError: błędy modelu, danych i numeryki z silników.
    """
    try:
        handler = HANDLERS[name]
    except KeyError:
        raise ConfigError(f"unknown command '{name}' (known: {', '.join(COMMANDS)})") from None
    logger.info(f"Running '{name}' (preset {config.preset}, model {config.model.value})")
    output = handler(config, db=db, max_workers=max_workers)
    logger.info(f"'{name}' finished: {len(output.rows)} rows")
    return output
