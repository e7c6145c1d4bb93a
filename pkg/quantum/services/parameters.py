"""quantum/services/parameters.py - Parametry modelu fotoogniwa.

Trzy warianty dimeru (independent / symmetric / asymmetric) dzielą jeden,
niemutowalny zestaw parametrów. Energia stanu podstawowego = 0, wszystkie
szybkości w eV (ħ = 1).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, fields, replace
from enum import Enum

from core.exceptions import ModelParameterError

logger = logging.getLogger(__name__)

# Tolerancje porównań niezmienników
_REL_TOL = 1e-9
_ABS_TOL = 1e-12

_RATE_FIELDS = (
    'gamma_1g', 'gamma_2g', 'gamma_11', 'gamma_22',
    'gamma_1alpha', 'gamma_2alpha', 'gamma_alphabeta', 'gamma_betag',
)


class ModelKind(str, Enum):
    INDEPENDENT = 'independent'
    SYMMETRIC = 'symmetric'
    ASYMMETRIC = 'asymmetric'

    @property
    def coupled(self) -> bool:
        return self is not ModelKind.INDEPENDENT


@dataclass(frozen=True)
class PhotocellParams:
    """Pełny zestaw parametrów jednego modelu.

    Atrybuty:
        model: wariant dimeru.
        eps1, eps2: energie wzbudzenia miejsc (akceptor 1, donor 2), eV.
        eps_alpha, eps_beta: poziomy pułapki (centrum reakcji), eV.
        j12: goły sprzężenie dipolowe J12^0, eV; phi: kąt między dipolami.
        z: stosunek dipoli przejść mu_1g = z mu_2g.
        gamma_*: szybkości kąpieli, eV; chi: ułamek upływu alpha -> g.
        theta_rc: faza sprzężenia z centrum reakcji (model symetryczny).
        t_hot, t_cold: temperatury kąpieli fotonowej i fononowej, K.
        detuning: zamierzone odstrojenie od warunku projektowego (sweep odchyleń).
    """

    model: ModelKind
    eps1: float
    eps2: float
    eps_alpha: float
    eps_beta: float
    j12: float
    z: float
    gamma_1g: float
    gamma_2g: float
    gamma_11: float
    gamma_22: float
    gamma_1alpha: float
    gamma_2alpha: float
    gamma_alphabeta: float
    gamma_betag: float
    chi: float
    t_hot: float
    t_cold: float
    phi: float = 0.0
    theta_rc: float = math.pi
    detuning: float = 0.0

    eps_g = 0.0

    # ── Wielkości pochodne ──────────────────────────────────────────────────

    @property
    def j12_eff(self) -> float:
        """Efektywne sprzężenie J12 = J12^0 cos(phi)."""
        return self.j12 * math.cos(self.phi)

    @property
    def delta_eps(self) -> float:
        return self.eps2 - self.eps1

    @property
    def gamma_opt_total(self) -> float:
        """gamma_1g + gamma_2g (= gamma_+g + gamma_-g w modelach sprzężonych)."""
        return self.gamma_1g + self.gamma_2g

    def evolve(self, **changes) -> PhotocellParams:
        """Kopia z podmienionymi polami, po walidacji."""
        return replace(self, **changes).validated()

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    # ── Walidacja ───────────────────────────────────────────────────────────

    def validated(self) -> PhotocellParams:
        """Sprawdza niezmienniki i zwraca self.

        Raises:
            ModelParameterError: z nazwą pola, którego dotyczy naruszenie.
        """
        for name, value in self.as_dict().items():
            if name == 'model':
                continue
            if not math.isfinite(value):
                raise ModelParameterError(f"{name} must be finite, got {value}", field=name)

        for name in _RATE_FIELDS:
            if getattr(self, name) < 0:
                raise ModelParameterError(f"{name} must be >= 0, got {getattr(self, name)}", field=name)
        if self.chi < 0:
            raise ModelParameterError(f"chi must be >= 0, got {self.chi}", field='chi')
        for name in ('t_hot', 't_cold'):
            if getattr(self, name) <= 0:
                raise ModelParameterError(f"{name} must be > 0, got {getattr(self, name)}", field=name)
        if not 0.0 <= self.z <= 1.0:
            raise ModelParameterError(f"z must lie in [0, 1], got {self.z}", field='z')

        if not self.eps_beta < self.eps_alpha:
            raise ModelParameterError(
                f"eps_beta ({self.eps_beta}) must lie below eps_alpha ({self.eps_alpha})", field='eps_beta')
        if not self.eps_alpha < min(self.eps1, self.eps2):
            raise ModelParameterError(
                f"eps_alpha ({self.eps_alpha}) must lie below both site energies", field='eps_alpha')

        if self.model is ModelKind.SYMMETRIC:
            # Site energies may only differ by the declared detuning.
            if not math.isclose(self.delta_eps, self.detuning, abs_tol=_ABS_TOL):
                raise ModelParameterError(
                    f"symmetric model needs eps1 == eps2 (detuning {self.detuning}), "
                    f"got eps2 - eps1 = {self.delta_eps}", field='eps2')
            if self.z != 1.0:
                raise ModelParameterError(f"symmetric model needs z = 1, got {self.z}", field='z')
        elif self.eps1 > self.eps2 + _ABS_TOL:
            raise ModelParameterError(
                f"eps1 ({self.eps1}) must not exceed eps2 ({self.eps2})", field='eps1')

        if self.model is ModelKind.INDEPENDENT:
            if self.j12 != 0.0:
                raise ModelParameterError(f"independent model needs j12 = 0, got {self.j12}", field='j12')
            if not math.isclose(self.eps1, self.eps2, abs_tol=_ABS_TOL):
                raise ModelParameterError("independent model needs eps1 == eps2", field='eps2')

        if self.model is ModelKind.ASYMMETRIC and self.gamma_2alpha != 0.0:
            raise ModelParameterError(
                f"asymmetric model needs gamma_2alpha = 0, got {self.gamma_2alpha}", field='gamma_2alpha')

        if self.model.coupled:
            expected = self.z ** 2 * self.gamma_2g
            if not math.isclose(self.gamma_1g, expected, rel_tol=_REL_TOL, abs_tol=1e-30):
                raise ModelParameterError(
                    f"gamma_1g must equal z^2 gamma_2g ({expected}), got {self.gamma_1g}", field='gamma_1g')
        return self
