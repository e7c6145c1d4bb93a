"""steadystate/services/search.py - Deterministyczna maksymalizacja funkcji jednej zmiennej.

Siatka logarytmiczna + złoty podział w przestrzeni log10(x) wokół najlepszego
punktu siatki. Ta sama sekwencja wywołań dla tych samych danych.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

logger = logging.getLogger(__name__)

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class ScalarMaximum:
    """Wynik maksymalizacji.

    Atrybuty:
        x: argument maksimum; value: wartość funkcji.
        evaluations: liczba wywołań funkcji.
        grid_best: najlepsza wartość na siatce zgrubnej.
    """

    x: float
    value: float
    evaluations: int
    grid_best: float


def log_grid(lo: float, hi: float, points: int) -> np.ndarray:
    return np.logspace(math.log10(lo), math.log10(hi), points)


def maximize_on_log_grid(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    points: int = 200,
    xtol: float = 1e-8,
    max_iter: int = 200,
) -> ScalarMaximum:
    """Maksimum f na [lo, hi]: przegląd siatki, potem złoty podział.

    Args:
        f: funkcja celu (może zwracać -inf w punktach niedozwolonych).
        lo, hi: przedział (> 0).
        points: rozmiar siatki logarytmicznej.
        xtol: szerokość końcowego przedziału w dekadach.
    """
    grid = log_grid(lo, hi, points)
    values = [f(float(x)) for x in grid]
    evaluations = len(values)
    best = int(np.argmax(values))
    grid_best = values[best]
    best_x, best_value = float(grid[best]), grid_best
    if points < 3 or not math.isfinite(grid_best):
        return ScalarMaximum(best_x, best_value, evaluations, grid_best)

    a = math.log10(grid[max(best - 1, 0)])
    b = math.log10(grid[min(best + 1, points - 1)])

    def g(u: float) -> float:
        return f(10.0 ** u)

    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = g(c), g(d)
    evaluations += 2
    iterations = 0
    while b - a > xtol and iterations < max_iter:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = g(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = g(d)
        evaluations += 1
        iterations += 1

    for u, value in ((c, fc), (d, fd)):
        if value > best_value:
            best_x, best_value = 10.0 ** u, value
    logger.debug(f"Golden section: {iterations} iterations, bracket {b - a:.2e} decades")
    return ScalarMaximum(best_x, best_value, evaluations, grid_best)
