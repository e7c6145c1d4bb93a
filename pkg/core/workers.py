"""core/workers.py - Ograniczona pula wątków dla punktów sweepu.

Każdy punkt sweepu to czysta funkcja swoich argumentów; wyniki zapisywane są
pod indeksem wejścia, więc kolejność wyjścia nie zależy od harmonogramu wątków.
Liczba równoczesnych wątków ograniczona semaforem (settings.PHOTOCELL_MAX_WORKERS).
"""

import logging
import threading
from collections.abc import Callable, Iterable
from typing import TypeVar

from django.conf import settings

logger = logging.getLogger(__name__)

T = TypeVar('T')
R = TypeVar('R')

_lock = threading.Lock()
_active: dict[int, str] = {}


def default_max_workers() -> int:
    """Limit wątków z ustawień (min. 1)."""
    return max(1, int(getattr(settings, 'PHOTOCELL_MAX_WORKERS', 1)))


def map_with_limit(
    fn: Callable[[T], R],
    items: Iterable[T],
    max_workers: int | None = None,
    name: str | None = None,
) -> list[R]:
    """Oblicza fn(item) dla każdego elementu, najwyżej max_workers naraz.

    Args:
        fn: funkcja punktu (bez efektów ubocznych).
        items: argumenty punktów.
        max_workers: limit wątków; None -> ustawienia, 1 -> pętla w bieżącym wątku.
        name: etykieta do logów.

    Returns:
        Lista wyników w kolejności `items`.

    Raises:
        Pierwszy (wg indeksu) wyjątek rzucony przez fn.
    """
    items = list(items)
    label = name or getattr(fn, '__name__', 'task')
    workers = default_max_workers() if max_workers is None else max(1, max_workers)
    if workers == 1 or len(items) <= 1:
        return [fn(item) for item in items]

    results: list = [None] * len(items)
    errors: list[BaseException | None] = [None] * len(items)
    semaphore = threading.Semaphore(workers)

    def wrapper(index: int, item):
        with semaphore:
            thread_id = threading.get_ident()
            with _lock:
                _active[thread_id] = f"{label}[{index}]"
            try:
                results[index] = fn(item)
            except Exception as e:
                logger.debug(f"Worker {label}[{index}] failed: {e}")
                errors[index] = e
            finally:
                with _lock:
                    _active.pop(thread_id, None)

    threads = [
        threading.Thread(target=wrapper, args=(i, item), daemon=True)
        for i, item in enumerate(items)
    ]
    for thread in threads:
        thread.start()
    for thread in threads:
        thread.join()

    for error in errors:
        if error is not None:
            raise error
    logger.debug(f"{label}: {len(items)} points on {workers} workers")
    return results


def get_active_count() -> int:
    """Liczba aktualnie liczonych punktów."""
    with _lock:
        return len(_active)
