"""
runs/services/presets.py - Nazwane zestawy parametrów dla komend `photocell`.

Każdy preset to nakładka na DEFAULTS; wartości w składni pliku konfiguracyjnego
(liczby, `logspace(...)`, `linspace(...)`, sufiks `pi`). Szybkości w eV,
temperatury w K. Suma gamma_1g + gamma_2g to całkowita szybkość optyczna;
w modelach sprzężonych jest rozdzielana zgodnie z z przy budowie parametrów.
"""

import math

DEFAULT_PRESET = 'fig3'

# Wspólna baza: kąpiele i pułapka jak w porównaniu modeli
DEFAULTS = {
    'model': 'asymmetric',
    'gamma_1g': 0.62e-6,
    'gamma_2g': 0.62e-6,
    'gamma_11': 0.005,
    'gamma_22': 0.005,
    'gamma_1alpha': 6e-7,
    'gamma_alphabeta': 1e-6,
    'gamma_betag': 0.0248,
    'chi': 0.2,
    't_hot': 6000.0,
    't_cold': 300.0,
    'eps_minus': 2.0,
    'eps_alpha': 1.8,
    'eps_beta': 0.2,
    'j12': 0.01,
    'delta_eps': 0.09,
    'z': None,
    'phi': 0.0,
    'theta_rc': math.pi,
    'shift_fraction': 0.1,
    'dephasing': None,
    'secular': False,
    'j12_cap': 0.03,
    'gamma_1alpha_grid': 'logspace(-10, -2, 17)',
    'gamma_alphabeta_grid': 'logspace(-10, -2, 161)',
    'delta_eps_grid': 'linspace(0.01, 0.3, 30)',
    'j12_grid': 'linspace(0.002, 0.1, 50)',
    'deviation_grid': 'linspace(-0.03, 0.03, 13)',
    'theta_rc_grid': 'linspace(0.5pi, 1.5pi, 9)',
    'phi_grid': 'linspace(0, 0.4pi, 9)',
    'tan2_bins': 'linspace(0, 1, 21)',
    'asym_delta_eps': '0.05, 0.1, 0.15',
    'donor_mu_min': 3.0,
    'donor_e_min': 2.5,
    'donor_e_max': 3.5,
    'z_max': 0.4,
    'tan2_max': 0.05,
    'separation_nm': 1.0,
    'kappa': 1.0,
    'top_k': None,
    'anchor_id': None,
    'anchor_role': 'donor',
    'evaluate_q': False,
    'out': None,
}

PRESETS = {
    # Enhancement w funkcji gamma_1alpha (J12 <= 30 meV współoptymalizowane)
    'fig3': {
        'gamma_1g': 0.62e-6,
        'gamma_2g': 0.62e-6,
        'gamma_11': 0.005,
        'gamma_22': 0.005,
        'gamma_betag': 0.0248,
        't_hot': 6000.0,
        't_cold': 300.0,
        'eps_minus': 2.0,
        'eps_alpha': 1.8,
        'eps_beta': 0.2,
        'chi': 0.2,
        'gamma_1alpha_grid': 'logspace(-10, -2, 17)',
    },
    # Powierzchnia (Δε, J12) przy ustalonym gamma_1alpha
    'fig4': {
        'gamma_1alpha': 6e-7,
        'delta_eps_grid': 'linspace(0.01, 0.3, 30)',
        'j12_grid': 'linspace(0.002, 0.1, 50)',
    },
    # Odchylenie od warunku projektowego
    'fig5': {
        'gamma_1g': 0.6e-6,
        'gamma_2g': 0.6e-6,
        'gamma_1alpha': 6e-7,
        'j12': 0.01,
        'eps_minus': 2.0,
        'deviation_grid': 'linspace(-0.03, 0.03, 13)',
        'asym_delta_eps': '0.05, 0.1, 0.15',
    },
    # Faza sprzężenia z centrum reakcji (model symetryczny)
    'fig8': {
        'model': 'symmetric',
        'gamma_1g': 0.6e-6,
        'gamma_2g': 0.6e-6,
        'gamma_1alpha': 6e-7,
        'eps_minus': 2.0,
        'j12': 0.01,
        'theta_rc_grid': 'linspace(0.5pi, 1.5pi, 9)',
    },
    # Krzywe I-V i P-V
    'ivpv': {
        'model': 'asymmetric',
        'gamma_1g': 0.62e-6,
        'gamma_2g': 0.62e-6,
        'gamma_1alpha': 6e-7,
        'delta_eps': 0.1,
        'j12': 0.01,
        'gamma_alphabeta_grid': 'logspace(-10, -2, 161)',
    },
}


def preset_names() -> list[str]:
    return sorted(PRESETS)


def preset_values(name: str) -> dict:
    """DEFAULTS z nałożonym presetem (KeyError dla nieznanej nazwy)."""
    values = dict(DEFAULTS)
    values.update(PRESETS[name])
    values['preset'] = name
    return values
