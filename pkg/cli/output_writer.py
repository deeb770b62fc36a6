"""
Scrittura atomica dei risultati (CSV e JSON).
Nessun timestamp nei file: stesse opzioni e stesso seed producono file identici.
"""

import csv
import io
import json
from pathlib import Path
from typing import List, Sequence, Tuple, Union


def output_paths(out: Union[str, Path]) -> Tuple[Path, Path]:
    """(percorso CSV, percorso JSON) derivati da --out sostituendo l'estensione."""
    out = Path(out)
    return out.with_suffix('.csv'), out.with_suffix('.json')


def _write_atomic(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    # Scrivi su file temporaneo e rinomina (operazione atomica)
    temp_file = path.with_suffix(path.suffix + '.tmp')
    with open(temp_file, 'w', encoding='utf-8', newline='') as f:
        f.write(text)
    temp_file.replace(path)


def write_json(path: Union[str, Path], data: dict) -> Path:
    path = Path(path)
    _write_atomic(path, json.dumps(data, indent=2, sort_keys=True) + "\n")
    return path


def write_csv(path: Union[str, Path], rows: List[dict], fieldnames: Sequence[str]) -> Path:
    path = Path(path)
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=list(fieldnames), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    _write_atomic(path, buffer.getvalue())
    return path
