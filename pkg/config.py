"""
HeisKakeya - Configurazione Centralizzata
Tutte le costanti e configurazioni del toolkit sono qui.
Ogni valore può essere sovrascritto da variabile d'ambiente o da file .env
(prefisso HEISKAKEYA_).
"""

import os
from dotenv import load_dotenv

# Carica variabili da .env se esiste
load_dotenv()


def _env_float(name: str, default: float) -> float:
    return float(os.getenv(f"HEISKAKEYA_{name}", default))


def _env_int(name: str, default: int) -> int:
    return int(os.getenv(f"HEISKAKEYA_{name}", default))


# === CONFIGURAZIONI RIPRODUCIBILITÀ ===
DEFAULT_SEED = _env_int('SEED', 0)

# === CONFIGURAZIONI SCALE (ScaleLadder) ===
# Scala di default: delta_k = 0.3 * 2^(-k/2), k = 0..5  (0.3 ... ~0.053)
DEFAULT_DELTA_MAX = _env_float('DELTA_MAX', 0.3)
DEFAULT_DELTA_MIN = _env_float('DELTA_MIN', 0.3 * 2 ** -2.5)
DEFAULT_LEVELS = _env_int('LEVELS', 6)

# Rapporto ammesso tra scale consecutive
LADDER_MIN_RATIO = 1.2
LADDER_MAX_RATIO = 2.0

# Scala per gli insiemi di altezze della pipeline (1-D, diametro normalizzato a 1)
PIPELINE_DELTA_MAX = _env_float('PIPELINE_DELTA_MAX', 0.1)
PIPELINE_DELTA_MIN = _env_float('PIPELINE_DELTA_MIN', 0.1 * 2 ** -5)
PIPELINE_LEVELS = _env_int('PIPELINE_LEVELS', 11)

# === CONFIGURAZIONI PACKING ===
DEFAULT_STOP_K = _env_int('STOP_K', 2000)        # Rifiuti consecutivi prima di fermarsi
PACKING_BATCH_SIZE = _env_int('PACKING_BATCH_SIZE', 1024)
PACKING_INDEX = os.getenv('HEISKAKEYA_PACKING_INDEX', 'sheared')  # "sheared" o "euclidean"
COMPARABILITY_SAMPLES = _env_int('COMPARABILITY_SAMPLES', 1_000_000)
COMPARABILITY_SAFETY = _env_float('COMPARABILITY_SAFETY', 2.0)

# === CONFIGURAZIONI INSIEMI ===
IFS_DEPTH = _env_int('IFS_DEPTH', 48)
SLAB_MAX_TRIES = _env_int('SLAB_MAX_TRIES', 200_000)  # Tentativi massimi di rejection sampling per fette

# === CONFIGURAZIONI ESPERIMENTI ===
MARSTRAND_THETAS = _env_int('MARSTRAND_THETAS', 32)
PIPELINE_C_GRID = _env_int('PIPELINE_C_GRID', 16)
PIPELINE_N_C = _env_int('PIPELINE_N_C', 8)
COAREA_N_SLICES = _env_int('COAREA_N_SLICES', 8)
COAREA_RATIO_BOUND = 8.0
DUALITY_SAMPLES = _env_int('DUALITY_SAMPLES', 1_000_000)
IDENTITY_TOLERANCE = 1e-12
KAKEYA_ANG_TOL = _env_float('KAKEYA_ANG_TOL', 1e-9)
HORIZONTALITY_TOLERANCE = 1e-8

# === CONFIGURAZIONI PARALLELISMO ===
# HEISKAKEYA_THREADS limita il numero di worker
THREADS = max(1, int(os.getenv('HEISKAKEYA_THREADS', os.cpu_count() or 1)))

# === CONFIGURAZIONI OUTPUT ===
OUTPUT_DIR = os.getenv('HEISKAKEYA_OUTPUT_DIR', 'results')

# === CONFIGURAZIONI LOGGING ===
LOG_DIR = os.getenv('HEISKAKEYA_LOG_DIR', 'logs')   # Directory per file di log
LOG_LEVEL = os.getenv('HEISKAKEYA_LOG_LEVEL', 'INFO')
LOG_MAX_FILE_SIZE_MB = _env_int('LOG_MAX_FILE_SIZE_MB', 10)   # Rotazione
LOG_BACKUP_COUNT = _env_int('LOG_BACKUP_COUNT', 5)
