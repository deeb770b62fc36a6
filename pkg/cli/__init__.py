"""
Package cli: parsing delle opzioni, esecuzione dei comandi, scrittura dei risultati.
"""

from .run_config import Command, RunConfig, build_parser, parse_config
from .executor import execute
from .output_writer import output_paths, write_csv, write_json

__all__ = [
    'Command', 'RunConfig', 'build_parser', 'parse_config',
    'execute',
    'output_paths', 'write_csv', 'write_json',
]
