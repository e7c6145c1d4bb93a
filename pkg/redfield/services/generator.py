"""redfield/services/generator.py - Generator Blocha-Redfielda w przestrzeni Liouville'a.

Element <ij|K|rs> w bazie własnej {+, -, alpha, beta, g}, indeks wiersza i*5 + j
(wektoryzacja wierszowa, ρ.reshape(-1)). Dla każdego kanału V i linii
W[k, r] = Gamma(eps_r - eps_k):

    R_ijrs = -δ_js (V (V∘W))_ir - δ_ir ((V∘W^†) V)_sj
             + V_ir V_sj (W_ir + conj W_js)

plus część koherentna -i Δ_ij δ_ir δ_js. Opcjonalne czyste defazowanie jako
człon Lindblada z A = sqrt(γ_d / 2) (|1><1| - |2><2|).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from core.constants import N_LEVELS
from core.exceptions import DegenerateNetworkError, ModelParameterError
from quantum.services.dimer import diagonalize_dimer
from quantum.services.parameters import PhotocellParams
from steadystate.services.solver import reduce_states

from .channels import DEFAULT_SHIFT_FRACTION, SITE_1, SITE_2, CouplingChannel, build_coupling_operators, line_matrix

logger = logging.getLogger(__name__)

SECULAR_TOL = 1e-9


@dataclass(frozen=True)
class LiouvilleGenerator:
    """Macierz 25x25 generatora wraz z energiami bazy własnej.

    Atrybuty:
        matrix: generator (complex), d vec(ρ)/dt = matrix @ vec(ρ).
        energies: (eps_+, eps_-, eps_alpha, eps_beta, eps_g), eV.
        secular: czy odfiltrowano człony nieświeckie.
        dephasing: szybkość czystego defazowania, eV (0 = brak).
    """

    matrix: np.ndarray
    energies: np.ndarray
    secular: bool = False
    dephasing: float = 0.0

    @property
    def population_block(self) -> np.ndarray:
        """Blok <ii|K|rr> - dla generatora świeckiego równy macierzy Q."""
        idx = population_indices(len(self.energies))
        return self.matrix[np.ix_(idx, idx)].real


def population_indices(n: int = N_LEVELS) -> list[int]:
    return [i * n + i for i in range(n)]


def exciton_frame(params: PhotocellParams) -> tuple[np.ndarray, np.ndarray]:
    """Energie bazy własnej i macierz U[site, eigen] (rzeczywista, ortogonalna)."""
    basis = diagonalize_dimer(params)
    energies = np.array([basis.eps_plus, basis.eps_minus, params.eps_alpha, params.eps_beta, params.eps_g])
    transform = np.eye(N_LEVELS)
    transform[:2, :2] = basis.site_matrix()
    return energies, transform


def coherent_part(energies: np.ndarray) -> np.ndarray:
    """-i Δ_ij na diagonali."""
    gaps = energies[:, None] - energies[None, :]
    return np.diag(-1j * gaps.reshape(-1))


def secular_mask(energies: np.ndarray, tol: float = SECULAR_TOL) -> np.ndarray:
    """True tam, gdzie |Δ_rs - Δ_ij| < tol (człony zachowane w przybliżeniu świeckim)."""
    gaps = (energies[:, None] - energies[None, :]).reshape(-1)
    return np.abs(gaps[None, :] - gaps[:, None]) < tol


def bath_tensor(channels: list[CouplingChannel], energies: np.ndarray, transform: np.ndarray) -> np.ndarray:
    """Suma członów Redfielda po kanałach jako macierz (n^2, n^2)."""
    n = len(energies)
    identity = np.eye(n)
    tensor = np.zeros((n, n, n, n), dtype=complex)
    for channel in channels:
        v = transform.T @ channel.operator @ transform
        w = line_matrix(channel, energies)
        vw = v * w
        vw_dagger = v * w.conj().T
        tensor -= np.einsum('ir,js->ijrs', v @ vw, identity)
        tensor -= np.einsum('ir,sj->ijrs', identity, vw_dagger @ v)
        tensor += np.einsum('ir,sj->ijrs', vw, v)
        tensor += np.einsum('ir,sj->ijrs', v, vw_dagger)
    return tensor.reshape(n * n, n * n)


def lindblad_superoperator(jump: np.ndarray) -> np.ndarray:
    """A ρ A^† - {A^†A, ρ}/2 w wektoryzacji wierszowej."""
    n = jump.shape[0]
    identity = np.eye(n)
    product = jump.conj().T @ jump
    return (np.kron(jump, jump.conj())
            - 0.5 * np.kron(product, identity)
            - 0.5 * np.kron(identity, product.T))


def dephasing_superoperator(transform: np.ndarray, rate: float) -> np.ndarray:
    """Czyste defazowanie między miejscami 1 i 2 z szybkością `rate` (eV)."""
    jump = np.zeros((N_LEVELS, N_LEVELS))
    jump[SITE_1, SITE_1] = 1.0
    jump[SITE_2, SITE_2] = -1.0
    jump *= np.sqrt(rate / 2.0)
    return lindblad_superoperator(transform.T @ jump @ transform)


def _check_dephasing(dephasing: float | None) -> float:
    rate = 0.0 if dephasing is None else float(dephasing)
    if not rate >= 0.0:
        raise ModelParameterError(f"dephasing rate must be >= 0, got {dephasing}", field='dephasing')
    return rate


def build_redfield_generator(
    params: PhotocellParams,
    secular: bool = False,
    dephasing: float | None = None,
    shift_fraction: float = DEFAULT_SHIFT_FRACTION,
) -> LiouvilleGenerator:
    """Pełny generator TCL2 (Bloch-Redfield) dla zestawu parametrów."""
    rate = _check_dephasing(dephasing)
    energies, transform = exciton_frame(params)
    bath = bath_tensor(build_coupling_operators(params, shift_fraction), energies, transform)
    if secular:
        bath = np.where(secular_mask(energies), bath, 0.0)
    matrix = coherent_part(energies) + bath
    if rate > 0.0:
        matrix = matrix + dephasing_superoperator(transform, rate)
    return LiouvilleGenerator(matrix=matrix, energies=energies, secular=secular, dephasing=rate)


def generator_split(
    params: PhotocellParams,
    secular: bool = False,
    dephasing: float | None = None,
    shift_fraction: float = DEFAULT_SHIFT_FRACTION,
) -> tuple[np.ndarray, np.ndarray]:
    """Rozkład K(gamma_ab) = K0 + gamma_ab K1; kanały alpha-beta i upływu liniowe w gamma_ab."""
    rate = _check_dephasing(dephasing)
    energies, transform = exciton_frame(params)
    channels = build_coupling_operators(params.evolve(gamma_alphabeta=1.0), shift_fraction)
    fixed = bath_tensor([c for c in channels if not c.trap_decay], energies, transform)
    trap = bath_tensor([c for c in channels if c.trap_decay], energies, transform)
    if secular:
        mask = secular_mask(energies)
        fixed = np.where(mask, fixed, 0.0)
        trap = np.where(mask, trap, 0.0)
    fixed = fixed + coherent_part(energies)
    if rate > 0.0:
        fixed = fixed + dephasing_superoperator(transform, rate)
    return fixed, trap


def steady_state_liouville(generator) -> np.ndarray:
    """Macierz gęstości stanu stacjonarnego (5x5, ślad 1).

    Koherencje eliminowane dopełnieniem Schura do bloku obsadzeń:
    Q_eff = L_pp - L_pc L_cc^{-1} L_cp; obsadzenia z redukcji stanów Q_eff,
    koherencje c = -L_cc^{-1} L_cp p.

    Raises:
        ValueError: macierz nie jest kwadratowa rozmiaru n^2.
        DegenerateNetworkError: brak jednoznacznego stanu stacjonarnego.
    """
    matrix = np.asarray(generator.matrix if isinstance(generator, LiouvilleGenerator) else generator)
    size = matrix.shape[0]
    n = int(round(np.sqrt(size)))
    if matrix.ndim != 2 or matrix.shape[1] != size or n * n != size:
        raise ValueError(f"generator must be (n^2, n^2), got {matrix.shape}")

    pops = population_indices(n)
    cohs = [k for k in range(size) if k not in pops]
    l_cc = matrix[np.ix_(cohs, cohs)]
    l_cp = matrix[np.ix_(cohs, pops)]
    try:
        elimination = linalg.solve(l_cc, l_cp)
    except linalg.LinAlgError as e:
        raise DegenerateNetworkError(f"coherence block is singular: {e}") from e
    q_eff = (matrix[np.ix_(pops, pops)] - matrix[np.ix_(pops, cohs)] @ elimination).real

    populations = reduce_states(q_eff)
    vec = np.zeros(size, dtype=complex)
    vec[pops] = populations
    vec[cohs] = -elimination @ populations
    rho = vec.reshape(n, n)
    logger.debug(f"Redfield steady state: max |coherence| = {np.max(np.abs(vec[cohs])):.3e}")
    return rho
