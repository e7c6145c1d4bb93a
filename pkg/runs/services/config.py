"""
runs/services/config.py - Konfiguracja przebiegu: tekst `key = value` -> RunConfig.

Plik: jedna para `klucz = wartość` na linię, komentarze od `#`. Wartości
nakładane są na preset (domyślnie fig3) i walidowane formularzem
RunConfigForm; na końcu sprawdzane są niezmienniki PhotocellParams.
Każdy błąd to ConfigError z nazwą klucza i numerem linii.

Składnia wartości:
    liczby:  1.24e-6, 0.5pi, -pi
    siatki:  0.05, 0.1, 0.15 | logspace(-10, -2, 17) | linspace(0.5pi, 1.5pi, 9)
    brak:    none (lub pusta wartość)
    flagi:   true / false
"""

import logging
import math
import re
from dataclasses import dataclass, fields
from enum import Enum

import numpy as np
from django import forms
from django.core.exceptions import ValidationError

from core.exceptions import ConfigError, ModelParameterError
from quantum.services.builders import build_params
from quantum.services.parameters import ModelKind, PhotocellParams
from screening.services.screener import ScreeningCriteria

from .presets import DEFAULT_PRESET, PRESETS, preset_names, preset_values

logger = logging.getLogger(__name__)

_NONE = ('', 'none')
_TRUE = ('true', 'yes', 'on', '1')
_FALSE = ('false', 'no', 'off', '0')
_SPACED = re.compile(r'^(logspace|linspace)\((.*)\)$')


# ── Składnia wartości ───────────────────────────────────────────────────────

def parse_number(text: str) -> float:
    """Liczba skończona z opcjonalnym czynnikiem `pi` ('pi', '-pi', '0.5pi', '2*pi')."""
    token = text.strip().lower()
    scale = 1.0
    if token.endswith('pi'):
        token = token[:-2].strip().rstrip('*').strip()
        scale = math.pi
        if token in ('', '+'):
            token = '1'
        elif token == '-':
            token = '-1'
    value = float(token) * scale
    if not math.isfinite(value):
        raise ValueError(f"not a finite number: '{text.strip()}'")
    return value


def parse_grid(text: str) -> tuple[float, ...]:
    """Lista liczb po przecinku albo logspace/linspace(start, stop, count).

    logspace przyjmuje wykładniki dziesiętne, jak numpy.logspace.
    """
    compact = text.strip().lower().replace(' ', '')
    match = _SPACED.match(compact)
    if match:
        args = match.group(2).split(',')
        if len(args) != 3:
            raise ValueError(f"{match.group(1)} needs (start, stop, count), got '{text.strip()}'")
        start, stop = parse_number(args[0]), parse_number(args[1])
        try:
            count = int(args[2])
        except ValueError:
            raise ValueError(f"point count must be an integer, got '{args[2]}'") from None
        if count < 1:
            raise ValueError(f"point count must be >= 1, got {count}")
        spaced = np.logspace if match.group(1) == 'logspace' else np.linspace
        return tuple(float(v) for v in spaced(start, stop, count))
    parts = [p.strip() for p in text.split(',')]
    if any(not p for p in parts):
        raise ValueError(f"empty entry in list '{text.strip()}'")
    return tuple(parse_number(p) for p in parts)


def format_entry(value) -> str:
    """Wartość w składni pliku; parse_number(repr(x)) == x, więc zapis jest odwracalny."""
    if value is None:
        return 'none'
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (tuple, list)):
        return ', '.join(repr(float(v)) for v in value)
    return str(value)


# ── Formularz ───────────────────────────────────────────────────────────────

def positive(value):
    if value is not None and not value > 0:
        raise ValidationError('Ensure this value is greater than 0.', code='min_value')


class NumberField(forms.FloatField):
    """FloatField z czynnikiem `pi`."""

    def to_python(self, value):
        if value in self.empty_values:
            return None
        try:
            return parse_number(str(value))
        except ValueError:
            raise ValidationError(self.error_messages['invalid'], code='invalid') from None


class GridField(forms.Field):
    """Siatka wartości (krotka float)."""

    def __init__(self, *, positive: bool = False, ascending: bool = False, **kwargs):
        self.positive = positive
        self.ascending = ascending
        super().__init__(**kwargs)

    def to_python(self, value):
        if value in self.empty_values:
            return None
        try:
            return parse_grid(str(value))
        except ValueError as e:
            raise ValidationError(str(e), code='invalid') from None

    def validate(self, value):
        super().validate(value)
        if value is None:
            return
        if self.positive and any(v <= 0 for v in value):
            raise ValidationError('All grid values must be greater than 0.', code='min_value')
        if self.ascending and any(b <= a for a, b in zip(value, value[1:])):
            raise ValidationError('Grid must be strictly ascending.', code='ascending')


class SwitchField(forms.Field):
    """Flaga true/false (pusta = false)."""

    def to_python(self, value):
        if isinstance(value, bool):
            return value
        if value in self.empty_values:
            return False
        token = str(value).strip().lower()
        if token in _TRUE:
            return True
        if token in _FALSE:
            return False
        raise ValidationError("Enter 'true' or 'false'.", code='invalid')


class RunConfigForm(forms.Form):
    """Walidacja wartości konfiguracji (wszystkie wejścia jako tekst)."""

    preset = forms.TypedChoiceField(choices=[(n, n) for n in preset_names()], required=False, empty_value=None)
    model = forms.TypedChoiceField(choices=[(m.value, m.value) for m in ModelKind], coerce=ModelKind)

    # Kąpiele i pułapka
    gamma_1g = NumberField(min_value=0)
    gamma_2g = NumberField(min_value=0)
    gamma_11 = NumberField(min_value=0)
    gamma_22 = NumberField(min_value=0)
    gamma_1alpha = NumberField(min_value=0)
    gamma_alphabeta = NumberField(validators=[positive])
    gamma_betag = NumberField(min_value=0)
    chi = NumberField(min_value=0)
    t_hot = NumberField(validators=[positive])
    t_cold = NumberField(validators=[positive])

    # Energie i geometria dimeru
    eps_minus = NumberField()
    eps_alpha = NumberField()
    eps_beta = NumberField()
    j12 = NumberField(min_value=0)
    delta_eps = NumberField(min_value=0)
    z = NumberField(min_value=0, max_value=1, required=False)
    phi = NumberField()
    theta_rc = NumberField()

    # Teoria Redfielda
    shift_fraction = NumberField(min_value=0)
    dephasing = NumberField(min_value=0, required=False)
    secular = SwitchField(required=False)
    j12_cap = NumberField(validators=[positive])

    # Siatki
    gamma_1alpha_grid = GridField(positive=True)
    gamma_alphabeta_grid = GridField(positive=True, ascending=True)
    delta_eps_grid = GridField()
    j12_grid = GridField(positive=True)
    deviation_grid = GridField()
    theta_rc_grid = GridField()
    phi_grid = GridField()
    tan2_bins = GridField(ascending=True)
    asym_delta_eps = GridField(positive=True)

    # Screening
    donor_mu_min = NumberField(validators=[positive])
    donor_e_min = NumberField(validators=[positive])
    donor_e_max = NumberField(validators=[positive])
    z_max = NumberField(validators=[positive])
    tan2_max = NumberField(validators=[positive])
    separation_nm = NumberField(validators=[positive])
    kappa = NumberField(validators=[positive])
    top_k = forms.IntegerField(min_value=0, required=False)
    anchor_id = forms.CharField(required=False, empty_value=None)
    anchor_role = forms.ChoiceField(choices=[('donor', 'donor'), ('acceptor', 'acceptor')])
    evaluate_q = SwitchField(required=False)

    out = forms.CharField(required=False, empty_value=None)

    def clean_delta_eps_grid(self):
        grid = self.cleaned_data.get('delta_eps_grid')
        if grid is not None and any(v < 0 for v in grid):
            raise ValidationError('Energy gaps must be >= 0.', code='min_value')
        return grid

    def clean_tan2_bins(self):
        bins = self.cleaned_data.get('tan2_bins')
        if bins is not None and len(bins) < 2:
            raise ValidationError('Histogram needs at least two bin edges.', code='bins')
        return bins

    def clean(self):
        cleaned_data = super().clean()
        e_min, e_max = cleaned_data.get('donor_e_min'), cleaned_data.get('donor_e_max')
        if e_min is not None and e_max is not None and not e_min < e_max:
            self.add_error('donor_e_max', 'Donor energy window is empty (donor_e_max <= donor_e_min).')
        return cleaned_data


# ── RunConfig ───────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class RunConfig:
    """Zwalidowana konfiguracja jednego przebiegu (klucze jak w pliku)."""

    preset: str | None
    model: ModelKind
    gamma_1g: float
    gamma_2g: float
    gamma_11: float
    gamma_22: float
    gamma_1alpha: float
    gamma_alphabeta: float
    gamma_betag: float
    chi: float
    t_hot: float
    t_cold: float
    eps_minus: float
    eps_alpha: float
    eps_beta: float
    j12: float
    delta_eps: float
    z: float | None
    phi: float
    theta_rc: float
    shift_fraction: float
    dephasing: float | None
    secular: bool
    j12_cap: float
    gamma_1alpha_grid: tuple[float, ...]
    gamma_alphabeta_grid: tuple[float, ...]
    delta_eps_grid: tuple[float, ...]
    j12_grid: tuple[float, ...]
    deviation_grid: tuple[float, ...]
    theta_rc_grid: tuple[float, ...]
    phi_grid: tuple[float, ...]
    tan2_bins: tuple[float, ...]
    asym_delta_eps: tuple[float, ...]
    donor_mu_min: float
    donor_e_min: float
    donor_e_max: float
    z_max: float
    tan2_max: float
    separation_nm: float
    kappa: float
    top_k: int | None
    anchor_id: str | None
    anchor_role: str
    evaluate_q: bool
    out: str | None

    @property
    def gamma_opt_total(self) -> float:
        return self.gamma_1g + self.gamma_2g

    def to_params(self, **overrides) -> PhotocellParams:
        """PhotocellParams dla modelu z konfiguracji (lub nadpisanego).

        Raises:
            ConfigError: naruszony niezmiennik modelu (klucz = pole, jeśli to klucz konfiguracji).
        """
        design = {
            'model': self.model,
            'eps_minus': self.eps_minus,
            'gamma_opt_total': self.gamma_opt_total,
            'gamma_11': self.gamma_11,
            'gamma_22': self.gamma_22,
            'gamma_1alpha': self.gamma_1alpha,
            'gamma_betag': self.gamma_betag,
            'chi': self.chi,
            't_hot': self.t_hot,
            't_cold': self.t_cold,
            'eps_alpha': self.eps_alpha,
            'eps_beta': self.eps_beta,
            'delta_eps': self.delta_eps,
            'j12': self.j12,
            'z': self.z,
            'phi': self.phi,
            'theta_rc': self.theta_rc,
            'gamma_alphabeta': self.gamma_alphabeta,
        }
        design.update(overrides)
        try:
            return build_params(**design)
        except ModelParameterError as e:
            raise ConfigError(str(e), key=e.field if e.field in KEYS else None) from e

    def criteria(self) -> ScreeningCriteria:
        try:
            return ScreeningCriteria(
                donor_mu_min=self.donor_mu_min,
                donor_e_min=self.donor_e_min,
                donor_e_max=self.donor_e_max,
                z_max=self.z_max,
                tan2_max=self.tan2_max,
                separation_nm=self.separation_nm,
                kappa=self.kappa,
            )
        except ValueError as e:
            raise ConfigError(str(e)) from e

    def to_text(self) -> str:
        """Pełna konfiguracja w składni pliku (parse_config(to_text()) == self)."""
        return ''.join(f"{key} = {format_entry(getattr(self, key))}\n" for key in KEYS)


KEYS = tuple(f.name for f in fields(RunConfig))


# ── Wczytywanie ─────────────────────────────────────────────────────────────

def read_entries(text: str) -> tuple[dict[str, str], dict[str, int]]:
    """Pary klucz -> surowa wartość oraz klucz -> numer linii.

    Raises:
        ConfigError: linia bez '=', nieznany lub powtórzony klucz.
    """
    entries: dict[str, str] = {}
    lines: dict[str, int] = {}
    for number, raw in enumerate(text.lstrip("\ufeff").splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition('=')
        key = key.strip()
        if not sep or not key:
            raise ConfigError(f"expected 'key = value', got '{raw.strip()}'", line=number)
        if key not in KEYS:
            raise ConfigError('unknown key', key=key, line=number)
        if key in entries:
            raise ConfigError(f"duplicate key (first set on line {lines[key]})", key=key, line=number)
        entries[key] = value.strip()
        lines[key] = number
    return entries, lines


def _validate(values: dict[str, str], lines: dict[str, int]) -> RunConfig:
    data = {key: ('' if value.strip().lower() in _NONE else value) for key, value in values.items()}
    form = RunConfigForm(data=data)
    if not form.is_valid():
        key, messages = next(iter(form.errors.items()))
        key = None if key == '__all__' else key
        raise ConfigError(' '.join(messages), key=key, line=lines.get(key))
    return RunConfig(**form.cleaned_data)


def parse_config(text: str = '', preset: str | None = None, overrides: dict | None = None) -> RunConfig:
    """Konfiguracja z tekstu nałożonego na preset, z nadpisaniami (np. z flag CLI).

    Preset: argument `preset`, inaczej klucz `preset` w tekście, inaczej fig3.
    Kolejność nakładania: preset < tekst < overrides.

    Raises:
        ConfigError: nieznany klucz lub preset, niepoprawna wartość, naruszony niezmiennik modelu.
    """
    entries, lines = read_entries(text)
    named = entries.get('preset', '')
    name = preset or (named if named.lower() not in _NONE else None) or DEFAULT_PRESET
    if name not in PRESETS:
        raise ConfigError(
            f"unknown preset '{name}' (known: {', '.join(preset_names())})",
            key='preset', line=lines.get('preset'))

    values = {key: format_entry(value) for key, value in preset_values(name).items()}
    values.update(entries)
    for key, value in (overrides or {}).items():
        if key not in KEYS:
            raise ConfigError('unknown key', key=key)
        values[key] = format_entry(value)
    values['preset'] = name

    config = _validate(values, lines)
    try:
        config.to_params()
    except ConfigError as e:
        raise ConfigError(e.reason, key=e.key, line=lines.get(e.key)) from e
    logger.debug(f"Config parsed: preset {name}, {len(entries)} explicit keys")
    return config
