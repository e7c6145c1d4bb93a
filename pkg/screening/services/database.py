"""
screening/services/database.py - Baza właściwości cząsteczek (CSV).

Format: nagłówek `id,e_g,mu_g,e_e,mu_e`, separator ',', kropka dziesiętna.
Niepoprawne wiersze są pomijane i liczone w raporcie; brak kolumn lub pusty
plik to DatabaseFormatError. Kodowanie: UTF-8, w razie błędu wykrywane (chardet).
"""

import io
import logging
import os
from dataclasses import dataclass, field
from pathlib import Path

import chardet
import pandas as pd

from core.exceptions import DatabaseFormatError

logger = logging.getLogger(__name__)

COLUMNS = ('id', 'e_g', 'mu_g', 'e_e', 'mu_e')


@dataclass(frozen=True)
class MoleculeRecord:
    """Jedna cząsteczka: energie przejść S0/S1 (eV) i dipole (j.a.)."""

    id: str
    e_g: float
    mu_g: float
    e_e: float
    mu_e: float

    @property
    def stokes_shift(self) -> float:
        return self.e_g - self.e_e

    @property
    def stokes_violation(self) -> bool:
        """Emisja powyżej absorpcji - oznaczane, nie odrzucane."""
        return self.e_e > self.e_g


@dataclass
class ParseReport:
    """Podsumowanie wczytywania: liczba wierszy, pominięte (nr wiersza danych lub None, powód), flagi Stokesa."""

    rows: int = 0
    accepted: int = 0
    skipped: list[tuple[int | None, str]] = field(default_factory=list)
    stokes_flagged: list[str] = field(default_factory=list)

    @property
    def skipped_count(self) -> int:
        return len(self.skipped)


def _decode(raw: bytes) -> str:
    try:
        return raw.decode('utf-8-sig')
    except UnicodeDecodeError:
        detected = chardet.detect(raw)
        encoding = detected.get('encoding') or 'utf-8'
        logger.warning(f"Molecule database is not UTF-8, decoding as {encoding}")
        return raw.decode(encoding, errors='replace')


def _read_text(source) -> str:
    if isinstance(source, (str, os.PathLike)):
        return _decode(Path(source).read_bytes())
    if isinstance(source, bytes):
        return _decode(source)
    content = source.read()
    return _decode(content) if isinstance(content, bytes) else content


def _parse_row(row) -> MoleculeRecord:
    ident = str(row['id']).strip()
    if not ident:
        raise ValueError("empty id")
    values = {}
    for name in COLUMNS[1:]:
        try:
            values[name] = float(row[name])
        except ValueError:
            raise ValueError(f"{name} is not a number: '{row[name]}'") from None
    for name in ('e_g', 'e_e'):
        if not values[name] > 0:
            raise ValueError(f"{name} must be > 0, got {values[name]}")
    for name in ('mu_g', 'mu_e'):
        if not values[name] >= 0:
            raise ValueError(f"{name} must be >= 0, got {values[name]}")
    return MoleculeRecord(id=ident, **values)


def load_molecule_db(source) -> tuple[list[MoleculeRecord], ParseReport]:
    """Wczytuje bazę cząsteczek ze ścieżki, bajtów lub strumienia.

    Returns:
        (rekordy w kolejności pliku, raport).

    Raises:
        DatabaseFormatError: pusty plik lub brakujące kolumny.
    """
    text = _read_text(source)
    if not text.strip():
        raise DatabaseFormatError("molecule database is empty")
    bad_lines = []

    def on_bad_line(fields):
        bad_lines.append(f"wrong number of fields ({len(fields)})")

    try:
        frame = pd.read_csv(
            io.StringIO(text), dtype=str, keep_default_na=False, skipinitialspace=True,
            engine='python', on_bad_lines=on_bad_line,
        )
    except pd.errors.ParserError as e:
        raise DatabaseFormatError(f"cannot parse molecule database: {e}") from e
    frame.columns = [str(c).strip() for c in frame.columns]
    missing = [c for c in COLUMNS if c not in frame.columns]
    if missing:
        raise DatabaseFormatError(f"missing columns: {', '.join(missing)}")

    report = ParseReport(rows=len(frame) + len(bad_lines))
    report.skipped.extend((None, reason) for reason in bad_lines)
    records = []
    seen = set()
    for offset, row in enumerate(frame[list(COLUMNS)].to_dict('records')):
        row_number = offset + 1
        try:
            record = _parse_row(row)
            if record.id in seen:
                raise ValueError(f"duplicate id '{record.id}'")
        except ValueError as e:
            report.skipped.append((row_number, str(e)))
            logger.warning(f"Molecule database row {row_number} skipped: {e}")
            continue
        seen.add(record.id)
        if record.stokes_violation:
            report.stokes_flagged.append(record.id)
        records.append(record)
    report.accepted = len(records)
    logger.info(f"Loaded {report.accepted} molecules ({report.skipped_count} skipped)")
    return records, report


def write_molecule_db(records, target) -> None:
    """Zapis w formacie wejściowym; liczby jako repr (odczyt bit w bit)."""
    frame = pd.DataFrame(
        [[r.id, repr(r.e_g), repr(r.mu_g), repr(r.e_e), repr(r.mu_e)] for r in records],
        columns=list(COLUMNS),
    )
    if isinstance(target, (str, os.PathLike)):
        frame.to_csv(target, index=False, lineterminator='\n', encoding='utf-8')
    else:
        target.write(frame.to_csv(index=False, lineterminator='\n'))
