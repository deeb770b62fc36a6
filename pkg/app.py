"""
HeisKakeya - Entry Point
Toolkit numerico per insiemi di Kakeya nel gruppo di Heisenberg.

Comandi:
- dim: dimensione di packing (euclidea o di Heisenberg)
- kakeya build / verify: famiglie di segmenti orizzontali
- duality verify: suite delle identità algebriche
- marstrand, coarea, pipeline: esperimenti

Uso:
    python app.py dim --set plane --metric heisenberg
"""

import sys
from typing import List, Optional

from cli import execute, parse_config
from logger.logger import log_error_for_report
from utils.errors import HeisKakeyaError


def main(argv: Optional[List[str]] = None) -> int:
    """
    Funzione principale: parsing della configurazione ed esecuzione.

    Returns:
        int: exit code (0 ok, 1 errore a runtime, 2 configurazione non valida)
    """
    try:
        config = parse_config(argv)
    except HeisKakeyaError as e:
        report = log_error_for_report(e.operation, e.code.name, e.message)
        print(f"error: {report['message']}", file=sys.stderr)
        return e.exit_code

    return execute(config)


if __name__ == "__main__":
    sys.exit(main())
