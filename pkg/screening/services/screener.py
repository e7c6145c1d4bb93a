"""
screening/services/screener.py - Dobór par donor-akceptor z ciemnym stanem.

Donor (molekuła 2): silny dipol, energia w oknie. Akceptor (molekuła 1): niższa
energia przejścia i słabszy dipol (z = mu_1 / mu_2). Dla każdej pary liczone są
z, J (Förster) i tan^2 Phi osobno dla geometrii S0 (kolumny *_g) i S1 (*_e).
Ranking: rosnąco po max(tan2_g, tan2_e), remisy - większe J, potem id.
"""

import logging
from dataclasses import dataclass, replace

import numpy as np

from core.exceptions import PhotocellError, UndefinedRatioError
from core.workers import map_with_limit
from quantum.services.builders import build_params
from quantum.services.dimer import darkness_angle
from quantum.services.parameters import ModelKind, PhotocellParams
from steadystate.services.power import enhancement_over_benchmark

from .database import MoleculeRecord
from .forster import forster_coupling

logger = logging.getLogger(__name__)

CANDIDATE_COLUMNS = (
    'donor_id', 'acceptor_id', 'E2g', 'mu2g', 'E2e', 'mu2e', 'E1g', 'mu1g', 'E1e', 'mu1e',
    'z_g', 'z_e', 'J_g', 'J_e', 'tan2_g', 'tan2_e', 'Q',
)


@dataclass(frozen=True)
class ScreeningCriteria:
    """Progi selekcji.

    Atrybuty:
        donor_mu_min: minimalny dipol donora, j.a.
        donor_e_min, donor_e_max: okno energii donora (S0), eV.
        z_max: maksymalny stosunek dipoli (geometria S0).
        tan2_max: próg tan^2 Phi dla obu geometrii.
        separation_nm: odległość środków, nm; kappa: czynnik orientacyjny.
    """

    donor_mu_min: float = 3.0
    donor_e_min: float = 2.5
    donor_e_max: float = 3.5
    z_max: float = 0.4
    tan2_max: float = 0.05
    separation_nm: float = 1.0
    kappa: float = 1.0

    def __post_init__(self):
        for name in ('donor_mu_min', 'donor_e_min', 'donor_e_max', 'z_max', 'tan2_max', 'separation_nm', 'kappa'):
            if not getattr(self, name) > 0:
                raise ValueError(f"screening threshold '{name}' must be positive")
        if not self.donor_e_min < self.donor_e_max:
            raise ValueError("donor energy window is empty")

    def accepts_donor(self, record: MoleculeRecord) -> bool:
        return record.mu_g >= self.donor_mu_min and self.donor_e_min <= record.e_g <= self.donor_e_max


@dataclass(frozen=True)
class DimerCandidate:
    """Oceniona para; `rejection` niepuste oznacza parę odrzuconą (z powodem)."""

    donor: MoleculeRecord
    acceptor: MoleculeRecord
    z_g: float = 0.0
    z_e: float = 0.0
    j_g: float = 0.0
    j_e: float = 0.0
    tan2_g: float = 0.0
    tan2_e: float = 0.0
    q: float | None = None
    excited_order_flipped: bool = False
    rejection: str | None = None

    @property
    def donor_id(self) -> str:
        return self.donor.id

    @property
    def acceptor_id(self) -> str:
        return self.acceptor.id

    @property
    def accepted(self) -> bool:
        return self.rejection is None

    @property
    def worst_tan2(self) -> float:
        return max(self.tan2_g, self.tan2_e)

    @property
    def delta_g(self) -> float:
        return self.donor.e_g - self.acceptor.e_g

    @property
    def delta_e(self) -> float:
        return self.donor.e_e - self.acceptor.e_e

    def sort_key(self):
        return (self.worst_tan2, -self.j_g, self.donor_id, self.acceptor_id)

    def as_row(self) -> dict:
        """Kolumny w układzie tabeli kandydatów (Q puste, jeśli nie liczone)."""
        d, a = self.donor, self.acceptor
        values = (d.id, a.id, d.e_g, d.mu_g, d.e_e, d.mu_e, a.e_g, a.mu_g, a.e_e, a.mu_e,
                  self.z_g, self.z_e, self.j_g, self.j_e, self.tan2_g, self.tan2_e, self.q)
        return dict(zip(CANDIDATE_COLUMNS, values))


def _ratio(mu_acceptor: float, mu_donor: float) -> float:
    return mu_acceptor / mu_donor if mu_donor > 0 else float('inf')


def score_pair(donor: MoleculeRecord, acceptor: MoleculeRecord, criteria: ScreeningCriteria) -> DimerCandidate:
    """z, J i tan^2 Phi (phi = 0) dla obu geometrii.

    Para niespełniająca eps_1 < eps_2 (S0) lub z <= 1 dostaje powód odrzucenia.
    Odwrócona kolejność w S1 jest tylko oznaczana; tan2_e liczone wtedy z |Δε|.
    """
    if donor.id == acceptor.id:
        return DimerCandidate(donor, acceptor, rejection='same molecule')
    if not acceptor.e_g < donor.e_g:
        return DimerCandidate(donor, acceptor, rejection='acceptor energy not below donor energy')
    z_g = _ratio(acceptor.mu_g, donor.mu_g)
    z_e = _ratio(acceptor.mu_e, donor.mu_e)
    if z_g > 1.0:
        return DimerCandidate(donor, acceptor, z_g=z_g, rejection='acceptor dipole exceeds donor dipole')

    r, kappa = criteria.separation_nm, criteria.kappa
    j_g = forster_coupling(donor.mu_g, acceptor.mu_g, r, kappa)
    j_e = forster_coupling(donor.mu_e, acceptor.mu_e, r, kappa)
    delta_e = donor.e_e - acceptor.e_e
    flipped = delta_e < 0
    tan2_g = darkness_angle(donor.e_g - acceptor.e_g, z_g, j_g)
    if z_e > 1.0:
        return DimerCandidate(donor, acceptor, z_g=z_g, z_e=z_e, j_g=j_g, j_e=j_e, tan2_g=tan2_g,
                              excited_order_flipped=flipped, rejection='excited-state dipole ratio exceeds 1')
    try:
        tan2_e = darkness_angle(abs(delta_e), z_e, j_e)
    except UndefinedRatioError:
        return DimerCandidate(donor, acceptor, z_g=z_g, z_e=z_e, j_g=j_g, j_e=j_e, tan2_g=tan2_g,
                              excited_order_flipped=flipped, rejection='excited-state darkness undefined')
    return DimerCandidate(
        donor, acceptor, z_g=z_g, z_e=z_e, j_g=j_g, j_e=j_e,
        tan2_g=tan2_g, tan2_e=tan2_e, excited_order_flipped=flipped,
    )


def _passes(candidate: DimerCandidate, criteria: ScreeningCriteria) -> bool:
    return (candidate.accepted
            and candidate.z_g <= criteria.z_max
            and candidate.tan2_g <= criteria.tan2_max
            and candidate.tan2_e <= criteria.tan2_max)


def screen(records, criteria: ScreeningCriteria | None = None, max_workers: int | None = None) -> list[DimerCandidate]:
    """Ranking wszystkich par spełniających kryteria (pusta lista też jest wynikiem)."""
    criteria = criteria or ScreeningCriteria()
    records = list(records)
    donors = [r for r in records if criteria.accepts_donor(r)]

    def pairs_for(donor: MoleculeRecord) -> list[DimerCandidate]:
        scored = (score_pair(donor, acceptor, criteria) for acceptor in records if acceptor.e_g < donor.e_g)
        return [c for c in scored if _passes(c, criteria)]

    found = [c for group in map_with_limit(pairs_for, donors, max_workers, name='screen') for c in group]
    found.sort(key=DimerCandidate.sort_key)
    flipped = sum(c.excited_order_flipped for c in found)
    logger.info(f"Screening: {len(donors)} donors, {len(found)} candidates ({flipped} with flipped S1 order)")
    return found


@dataclass(frozen=True)
class PartnerHistogram:
    """Liczność partnerów kotwicy w przedziałach tan^2 Phi (S0).

    below, above: partnerzy poza zakresem krawędzi (ostatni przedział domknięty).
    """

    anchor_id: str
    role: str
    edges: np.ndarray
    counts: np.ndarray
    below: int = 0
    above: int = 0

    @property
    def total(self) -> int:
        return int(self.counts.sum())


def partner_histogram(records, anchor: MoleculeRecord, role: str, bin_edges,
                      criteria: ScreeningCriteria | None = None) -> PartnerHistogram:
    """Histogram partnerów dla ustalonej cząsteczki.

    role='donor': kotwica jest donorem, partnerami akceptory; 'acceptor' odwrotnie.
    Liczone pary o poprawnej kolejności energii (S0) i z <= 1.
    """
    criteria = criteria or ScreeningCriteria()
    edges = np.asarray(bin_edges, dtype=float)
    if edges.ndim != 1 or len(edges) < 2 or np.any(np.diff(edges) <= 0):
        raise ValueError("histogram bin edges must be strictly ascending")
    if role not in ('donor', 'acceptor'):
        raise ValueError(f"role must be 'donor' or 'acceptor', got '{role}'")

    values = []
    for other in records:
        if other.id == anchor.id:
            continue
        pair = score_pair(anchor, other, criteria) if role == 'donor' else score_pair(other, anchor, criteria)
        if pair.accepted:
            values.append(pair.tan2_g)
    tan2 = np.asarray(values, dtype=float)
    counts, _ = np.histogram(tan2, bins=edges)
    return PartnerHistogram(
        anchor_id=anchor.id, role=role, edges=edges, counts=counts,
        below=int(np.count_nonzero(tan2 < edges[0])),
        above=int(np.count_nonzero(tan2 > edges[-1])),
    )


def candidate_params(candidate: DimerCandidate, defaults: PhotocellParams) -> PhotocellParams:
    """Model asymetryczny z (Δε, z, J) geometrii S0; eps_- = energia akceptora."""
    return build_params(
        ModelKind.ASYMMETRIC,
        eps_minus=candidate.acceptor.e_g,
        gamma_opt_total=defaults.gamma_opt_total,
        gamma_11=defaults.gamma_11,
        gamma_22=defaults.gamma_22,
        gamma_1alpha=defaults.gamma_1alpha,
        gamma_betag=defaults.gamma_betag,
        chi=defaults.chi,
        t_hot=defaults.t_hot,
        t_cold=defaults.t_cold,
        eps_alpha=defaults.eps_alpha,
        eps_beta=defaults.eps_beta,
        delta_eps=candidate.delta_g,
        j12=candidate.j_g,
        z=candidate.z_g,
        gamma_alphabeta=defaults.gamma_alphabeta,
    )


def evaluate_enhancement(candidate: DimerCandidate, defaults: PhotocellParams) -> float:
    """Q = moc modelu asymetrycznego pary / moc dopasowanego benchmarku."""
    if not candidate.accepted:
        raise PhotocellError(f"cannot evaluate rejected pair: {candidate.rejection}")
    return enhancement_over_benchmark(candidate_params(candidate, defaults)).ratio


def with_enhancement(candidates, defaults: PhotocellParams, top_k: int | None = None,
                     max_workers: int | None = None) -> list[DimerCandidate]:
    """Uzupełnia Q dla pierwszych `top_k` kandydatów (None - wszystkich)."""
    candidates = list(candidates)
    limit = len(candidates) if top_k is None else max(0, top_k)
    head = candidates[:limit]
    ratios = map_with_limit(lambda c: evaluate_enhancement(c, defaults), head, max_workers, name='screen_q')
    evaluated = [replace(c, q=q) for c, q in zip(head, ratios)]
    return evaluated + candidates[limit:]
