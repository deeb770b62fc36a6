"""
Logger centralizzato per HeisKakeya.
Gestisce logging su file con rotazione automatica e output console.
"""

import logging
import sys
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Optional

from config import LOG_DIR, LOG_LEVEL, LOG_MAX_FILE_SIZE_MB, LOG_BACKUP_COUNT


class KakeyaLogger:
    """
    Logger centralizzato con supporto per:
    - File logging con rotazione automatica (solo WARNING+)
    - Console output su stderr (stdout resta libero per le righe di riepilogo)
    """

    _loggers = {}  # Cache dei logger per modulo

    @classmethod
    def get_logger(cls, module_name: str, log_level: Optional[int] = None) -> logging.Logger:
        """
        Ottiene o crea un logger per il modulo specificato.

        Args:
            module_name: Nome del modulo (es. "dimest", "pipeline", "cli")
            log_level: Livello minimo di logging (default: LOG_LEVEL da config)

        Returns:
            logging.Logger: Logger configurato per il modulo
        """
        if module_name in cls._loggers:
            return cls._loggers[module_name]

        logger = logging.getLogger(f"HeisKakeya.{module_name}")
        logger.setLevel(log_level if log_level is not None else getattr(logging, LOG_LEVEL, logging.INFO))

        # Evita duplicazione handler se logger già configurato
        if logger.handlers:
            cls._loggers[module_name] = logger
            return logger

        # === FILE HANDLER con rotazione ===
        log_dir = Path(LOG_DIR)
        log_dir.mkdir(parents=True, exist_ok=True)

        file_handler = RotatingFileHandler(
            log_dir / "heiskakeya.log",
            maxBytes=LOG_MAX_FILE_SIZE_MB * 1024 * 1024,
            backupCount=LOG_BACKUP_COUNT,
            encoding='utf-8'
        )
        file_handler.setLevel(logging.WARNING)
        file_handler.setFormatter(logging.Formatter(
            '[%(asctime)s] [%(name)s] [%(levelname)s] %(message)s',
            datefmt='%Y-%m-%d %H:%M:%S'
        ))

        # === CONSOLE HANDLER ===
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(logging.DEBUG)
        console_handler.setFormatter(logging.Formatter('[%(name)s] %(levelname)s: %(message)s'))

        logger.addHandler(file_handler)
        logger.addHandler(console_handler)

        cls._loggers[module_name] = logger
        return logger

    @classmethod
    def log_error_to_report(cls, module: str, error_type: str, error_message: str,
                            traceback_info: Optional[str] = None) -> dict:
        """
        Logga un errore e crea un dizionario strutturato da includere
        nella diagnostica della CLI. Nessun timestamp: i report devono
        restare riproducibili byte per byte.

        Args:
            module: Operazione/modulo che ha generato l'errore (es. "dimest.estimate_dimension")
            error_type: Tipo di errore (es. "INVALID_SCALE")
            error_message: Messaggio di errore
            traceback_info: Traceback completo (opzionale)

        Returns:
            dict: Dizionario con info errore
        """
        error_data = {
            'module': module,
            'error_type': error_type,
            'message': error_message,
        }

        logger = cls.get_logger(module.split('.')[0])
        logger.error(f"{error_type}: {error_message}")
        if traceback_info:
            logger.debug(f"Traceback: {traceback_info}")

        return error_data


# Funzioni di convenienza per uso rapido
def get_logger(module_name: str, log_level: Optional[int] = None) -> logging.Logger:
    """
    Shortcut per ottenere logger.

    Usage:
        from logger.logger import get_logger
        logger = get_logger('dimest')
        logger.info("Packing done")
    """
    return KakeyaLogger.get_logger(module_name, log_level)


def log_error_for_report(module: str, error_type: str, message: str,
                         traceback: Optional[str] = None) -> dict:
    """Shortcut per loggare un errore destinato alla diagnostica CLI."""
    return KakeyaLogger.log_error_to_report(module, error_type, message, traceback)
