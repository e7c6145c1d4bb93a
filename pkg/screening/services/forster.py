"""screening/services/forster.py - Sprzężenie dipol-dipol (Förster, punktowe dipole)."""

from core.constants import FORSTER_EV_NM3
from core.exceptions import ModelParameterError


def forster_coupling(mu_donor: float, mu_acceptor: float, r: float = 1.0, kappa: float = 1.0) -> float:
    """J = kappa * C * mu_1 * mu_2 / r^3.

    Args:
        mu_donor, mu_acceptor: dipole przejść, j.a. (e·a0).
        r: odległość środków, nm.
        kappa: czynnik orientacyjny (1: dipole równoległe, prostopadłe do osi).

    Returns:
        Sprzężenie w eV.
    """
    if not r > 0:
        raise ModelParameterError(f"separation must be > 0, got {r}", field='separation_nm')
    if mu_donor < 0 or mu_acceptor < 0:
        raise ModelParameterError("transition dipoles must be >= 0", field='mu')
    return kappa * FORSTER_EV_NM3 * mu_donor * mu_acceptor / r ** 3
