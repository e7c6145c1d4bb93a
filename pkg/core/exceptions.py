"""core/exceptions.py - Hierarchia błędów domenowych.

Komenda `photocell` mapuje je na kody wyjścia: błędy konfiguracji i danych -> 2,
błędy numeryczne -> 3.
"""


class PhotocellError(Exception):
    """Bazowy błąd symulatora."""


class ModelParameterError(PhotocellError, ValueError):
    """Naruszony niezmiennik PhotocellParams.

    Atrybuty:
        field: nazwa pola, którego dotyczy błąd (lub None).
    """

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message)
        self.field = field


class DatabaseFormatError(PhotocellError, ValueError):
    """Niepoprawny format bazy cząsteczek."""


class ConfigError(PhotocellError, ValueError):
    """Błąd pliku konfiguracyjnego; wskazuje klucz i linię, jeśli znane."""

    def __init__(self, message: str, key: str | None = None, line: int | None = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if key is not None:
            where.append(f"key '{key}'")
        prefix = f"{', '.join(where)}: " if where else ''
        super().__init__(f"{prefix}{message}")
        self.reason = message
        self.key = key
        self.line = line


class NumericalError(PhotocellError, ArithmeticError):
    """Błąd numeryczny; `context` opisuje punkt sweepu, jeśli znany."""

    def __init__(self, message: str, context: str | None = None):
        super().__init__(f"{message} [{context}]" if context else message)
        self.message = message
        self.context = context

    def with_context(self, context: str) -> 'NumericalError':
        """Zwraca kopię błędu z dołączonym kontekstem (ta sama klasa)."""
        return type(self)(self.message, context)


class DegenerateNetworkError(NumericalError):
    """Sieć przejść nie ma jednoznacznego stanu stacjonarnego."""


class UndefinedVoltageError(NumericalError):
    """P_alpha lub P_beta równe zero - napięcie nieokreślone."""


class UndefinedRatioError(NumericalError):
    """Iloraz 0/0 (np. tan^2 Phi przy Δε = J12 = 0, zerowa moc benchmarku)."""


class DivergenceError(NumericalError):
    """Formuła rozbiega się (np. warunek ciemnego stanu przy z = 1)."""
