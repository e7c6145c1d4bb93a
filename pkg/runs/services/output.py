"""runs/services/output.py - Zapis wyników: CSV (pandas) i blok podsumowania.

Liczby zmiennoprzecinkowe zapisywane z PHOTOCELL_OUTPUT_DIGITS cyframi
znaczącymi, puste pole dla braku wartości. Brak znaczników czasu w danych.
"""

import os
from enum import Enum

import numpy as np
import pandas as pd
from django.conf import settings


def output_digits() -> int:
    return int(getattr(settings, 'PHOTOCELL_OUTPUT_DIGITS', 12))


def format_value(value, digits: int | None = None) -> str:
    digits = output_digits() if digits is None else digits
    if value is None:
        return ''
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, (bool, np.bool_)):
        return 'true' if value else 'false'
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return f"{float(value):.{digits}g}"
    return str(value)


def render_csv(columns, rows, digits: int | None = None) -> str:
    """CSV z nagłówkiem (także dla pustej listy wierszy), kolejność wierszy zachowana."""
    columns = list(columns)
    frame = pd.DataFrame(
        [[format_value(row.get(column), digits) for column in columns] for row in rows],
        columns=columns,
    )
    return frame.to_csv(index=False, lineterminator='\n')


def render_summary(summary, digits: int | None = None) -> str:
    return ''.join(f"{key}: {format_value(value, digits)}\n" for key, value in summary)


def write_text(path, text: str) -> None:
    with open(os.fspath(path), 'w', encoding='utf-8', newline='') as handle:
        handle.write(text)
