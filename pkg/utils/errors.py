"""
Gestione errori standardizzata
"""

from enum import Enum
from typing import Optional


class ErrorCode(Enum):
    """Codici errore standardizzati: (messaggio di default, exit code CLI)"""

    # Parametri non validi (1 a runtime)
    INVALID_PARAMETER = ("Parametro non valido", 1)
    INVALID_SCALE = ("Scala delta non valida", 1)
    INVALID_LADDER = ("Scala di delta non valida (decrescente, rapporto in [1.2, 2.0])", 1)
    INVALID_CODE = ("Codice di segmento non valido per questa operazione", 1)
    INVALID_IFS = ("Specifica IFS non valida", 1)

    # Input vuoti o fuori dominio
    EMPTY_FAMILY = ("Famiglia di codici vuota", 1)
    EMPTY_SLAB = ("Intervallo di fette vuoto", 1)
    NOT_ON_PLANE = ("Punto fuori dal piano richiesto", 1)

    # Limiti numerici
    INDEX_OVERFLOW = ("Indice spaziale fuori range, scala troppo piccola", 1)

    # Configurazione (2)
    INVALID_CONFIG = ("Configurazione non valida", 2)
    UNKNOWN_SOURCE = ("Sorgente insieme/famiglia non riconosciuta", 2)

    # Errore generico
    RUNTIME_FAILURE = ("Errore interno", 1)


class HeisKakeyaError(ValueError):
    """
    Errore del toolkit. Porta il codice, l'operazione che l'ha generato
    (es. "hgroup.dilate") e un messaggio.
    """

    def __init__(self, code: ErrorCode, operation: str, message: Optional[str] = None):
        self.code = code
        self.operation = operation
        self.message = message or code.value[0]
        super().__init__(f"[{operation}] {self.message}")

    @property
    def exit_code(self) -> int:
        return self.code.value[1]


def error_report(error: HeisKakeyaError) -> dict:
    """
    Crea un report di errore standardizzato

    Args:
        error: Eccezione HeisKakeyaError

    Returns:
        dict con codice, operazione e messaggio

    Usage:
        print(json.dumps(error_report(e)))
    """
    return {
        "success": False,
        "error": {
            "code": error.code.name,
            "operation": error.operation,
            "message": error.message,
        }
    }
