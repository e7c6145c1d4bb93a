"""quantum/services/builders.py - Konstrukcja spójnych zestawów parametrów.

Uczciwe porównanie modeli: wspólne gamma_+g + gamma_-g, eps_- oraz gamma_1alpha.
"""

from __future__ import annotations

import math

from .dimer import dark_state_ratio, diagonalize_dimer, fix_lower_exciton
from .parameters import ModelKind, PhotocellParams


def split_optical_rate(total: float, z: float) -> tuple[float, float]:
    """Rozkłada gamma_1g + gamma_2g na (gamma_1g, gamma_2g) z gamma_1g = z^2 gamma_2g."""
    gamma_2g = total / (1.0 + z * z)
    return z * z * gamma_2g, gamma_2g


def build_params(
    model: ModelKind | str,
    *,
    eps_minus: float,
    gamma_opt_total: float,
    gamma_11: float,
    gamma_22: float,
    gamma_1alpha: float,
    gamma_betag: float,
    chi: float,
    t_hot: float,
    t_cold: float,
    eps_alpha: float,
    eps_beta: float,
    delta_eps: float = 0.0,
    j12: float = 0.0,
    z: float | None = None,
    phi: float = 0.0,
    theta_rc: float = math.pi,
    gamma_alphabeta: float = 1e-6,
    detuning: float = 0.0,
) -> PhotocellParams:
    """Buduje zwalidowane parametry dla danego wariantu.

    Dla modelu asymetrycznego brak `z` oznacza z wyznaczone z warunku ciemnego
    stanu (dla Δε - detuning i J12 = J12^0 cos phi przy phi = 0). Energie miejsc
    dobierane tak, by dolny ekscyton leżał na `eps_minus`.
    """
    model = ModelKind(model)
    if model is ModelKind.SYMMETRIC:
        z = 1.0
        site_gap = detuning
    elif model is ModelKind.INDEPENDENT:
        z = 1.0 if z is None else z
        j12, site_gap = 0.0, 0.0
    else:
        site_gap = delta_eps + detuning
        if z is None:
            z = dark_state_ratio(delta_eps, j12)

    gamma_1g, gamma_2g = split_optical_rate(gamma_opt_total, z)
    if model is ModelKind.INDEPENDENT:
        gamma_1g = gamma_2g = 0.5 * gamma_opt_total

    draft = PhotocellParams(
        model=model,
        eps1=eps_minus, eps2=eps_minus + site_gap,
        eps_alpha=eps_alpha, eps_beta=eps_beta,
        j12=j12, z=z, phi=phi, theta_rc=theta_rc,
        gamma_1g=gamma_1g, gamma_2g=gamma_2g,
        gamma_11=gamma_11, gamma_22=gamma_22,
        gamma_1alpha=gamma_1alpha,
        gamma_2alpha=0.0 if model is ModelKind.ASYMMETRIC else gamma_1alpha,
        gamma_alphabeta=gamma_alphabeta, gamma_betag=gamma_betag,
        chi=chi, t_hot=t_hot, t_cold=t_cold,
        detuning=detuning if model is not ModelKind.INDEPENDENT else 0.0,
    )
    return fix_lower_exciton(draft, eps_minus).validated()


def independent_benchmark(params: PhotocellParams) -> PhotocellParams:
    """Model niezależny dopasowany do `params` (to samo gamma_opt_total, eps_-, gamma_1alpha)."""
    eps_minus = diagonalize_dimer(params).eps_minus
    half = 0.5 * params.gamma_opt_total
    return PhotocellParams(
        model=ModelKind.INDEPENDENT,
        eps1=eps_minus, eps2=eps_minus,
        eps_alpha=params.eps_alpha, eps_beta=params.eps_beta,
        j12=0.0, z=1.0, phi=0.0, theta_rc=params.theta_rc,
        gamma_1g=half, gamma_2g=half,
        gamma_11=params.gamma_11, gamma_22=params.gamma_22,
        gamma_1alpha=params.gamma_1alpha, gamma_2alpha=params.gamma_1alpha,
        gamma_alphabeta=params.gamma_alphabeta, gamma_betag=params.gamma_betag,
        chi=params.chi, t_hot=params.t_hot, t_cold=params.t_cold,
    ).validated()


def rebuild(params: PhotocellParams, *, slave_z: bool = False, **overrides) -> PhotocellParams:
    """Nowe parametry z nadpisanymi wielkościami projektowymi.

    eps_-, gamma_opt_total i gamma_1alpha przechodzą z `params`, o ile nie są
    nadpisane. `slave_z=True` wyznacza z modelu asymetrycznego z warunku
    ciemnego stanu dla nowych (Δε, J12).
    """
    design = {
        'model': params.model,
        'eps_minus': diagonalize_dimer(params).eps_minus,
        'gamma_opt_total': params.gamma_opt_total,
        'gamma_11': params.gamma_11,
        'gamma_22': params.gamma_22,
        'gamma_1alpha': params.gamma_1alpha,
        'gamma_betag': params.gamma_betag,
        'chi': params.chi,
        't_hot': params.t_hot,
        't_cold': params.t_cold,
        'eps_alpha': params.eps_alpha,
        'eps_beta': params.eps_beta,
        'delta_eps': params.delta_eps - params.detuning,
        'j12': params.j12,
        'z': params.z,
        'phi': params.phi,
        'theta_rc': params.theta_rc,
        'gamma_alphabeta': params.gamma_alphabeta,
        'detuning': params.detuning,
    }
    design.update(overrides)
    if slave_z:
        design['z'] = None
    return build_params(**design)
