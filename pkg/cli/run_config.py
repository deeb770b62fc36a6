"""
Parsing della riga di comando e del file di configurazione JSON.

Precedenza: flag > file (--config) > costanti di config.py.
"""

import argparse
import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from config import (
    COAREA_N_SLICES, DEFAULT_DELTA_MAX, DEFAULT_DELTA_MIN, DEFAULT_LEVELS, DEFAULT_SEED, DEFAULT_STOP_K,
    DUALITY_SAMPLES, KAKEYA_ANG_TOL, MARSTRAND_THETAS, OUTPUT_DIR, PIPELINE_C_GRID, PIPELINE_DELTA_MAX,
    PIPELINE_DELTA_MIN, PIPELINE_LEVELS, PIPELINE_N_C,
)
from dimension import Metric, PackingParams, ScaleLadder
from heisenberg.lines import CodeFamily
from sets import IfsSpec, Placement, PrimitiveKind
from utils.errors import ErrorCode, HeisKakeyaError

_OPERATION = 'cli.parse_config'


class Command(Enum):
    DIM = "dim"
    KAKEYA_BUILD = "kakeya build"
    KAKEYA_VERIFY = "kakeya verify"
    DUALITY_VERIFY = "duality verify"
    MARSTRAND = "marstrand"
    COAREA = "coarea"
    PIPELINE = "pipeline"

    @property
    def slug(self) -> str:
        return self.value.replace(' ', '_')


@dataclass
class RunConfig:
    """Configurazione risolta di un comando."""

    command: Command
    seed: int = DEFAULT_SEED
    out: Path = Path(OUTPUT_DIR)
    ladder: Optional[ScaleLadder] = None
    stop_k: int = DEFAULT_STOP_K
    # Sorgenti (dim, coarea, marstrand, kakeya verify, pipeline)
    set_kind: Optional[PrimitiveKind] = None
    size: float = 1.0
    ifs: Optional[IfsSpec] = None
    family: Optional[CodeFamily] = None
    metric: Metric = Metric.HEISENBERG
    # kakeya
    m: int = 64
    placement: Placement = Placement.ORIGIN
    angles: Optional[int] = None
    ang_tol: float = KAKEYA_ANG_TOL
    # duality verify
    samples: int = DUALITY_SAMPLES
    # marstrand
    thetas: int = MARSTRAND_THETAS
    # coarea
    alpha: float = 3.0
    delta: Optional[float] = None
    slab: Optional[Tuple[float, float]] = None
    n_slices: int = COAREA_N_SLICES
    # pipeline
    c_grid: int = PIPELINE_C_GRID
    n_c: int = PIPELINE_N_C

    @property
    def packing(self) -> PackingParams:
        return PackingParams(stop_k=self.stop_k, seed=self.seed)


# ============================================================
# PARSER
# ============================================================

_SET_CHOICES = [kind.value for kind in PrimitiveKind]
_METRIC_CHOICES = [metric.value for metric in Metric]
_PLACEMENT_CHOICES = [placement.value for placement in Placement]

# Opzioni specifiche di ogni comando: (flag, kwargs di add_argument)
_COMMAND_OPTIONS: Dict[Command, List[Tuple[str, dict]]] = {
    Command.DIM: [
        ('--set', dict(choices=_SET_CHOICES, help="Primitive set")),
        ('--ifs', dict(help="IFS preset (CANTOR2, CANTOR4), JSON file or inline JSON")),
        ('--family', dict(help="Code family JSON file or inline JSON")),
        ('--size', dict(type=float, help="Primitive set size (default: 1.0)")),
        ('--metric', dict(choices=_METRIC_CHOICES, help="Packing metric (default: heisenberg)")),
    ],
    Command.KAKEYA_BUILD: [
        ('--m', dict(type=int, help="Number of directions, >= 4 (default: 64)")),
        ('--placement', dict(choices=_PLACEMENT_CHOICES, help="Segment placement (default: origin)")),
    ],
    Command.KAKEYA_VERIFY: [
        ('--family', dict(help="Code family JSON file or inline JSON (required)")),
        ('--angles', dict(type=int, help="Direction net size (default: family size)")),
        ('--ang-tol', dict(type=float, help=f"Angular tolerance (default: {KAKEYA_ANG_TOL:g})")),
    ],
    Command.DUALITY_VERIFY: [
        ('--samples', dict(type=int, help=f"Random inputs per identity (default: {DUALITY_SAMPLES})")),
    ],
    Command.MARSTRAND: [
        ('--ifs', dict(help="IFS preset, JSON file or inline JSON (default: CANTOR2)")),
        ('--thetas', dict(type=int, help=f"Number of projection angles (default: {MARSTRAND_THETAS})")),
    ],
    Command.COAREA: [
        ('--set', dict(choices=_SET_CHOICES, help="Primitive set (default: cube)")),
        ('--size', dict(type=float, help="Primitive set size (default: 1.0)")),
        ('--alpha', dict(type=float, help="Slice exponent (default: 3.0)")),
        ('--delta', dict(type=float, help="Single scale (default: every scale of the ladder)")),
        ('--slab', dict(type=float, nargs=2, metavar=('LO', 'HI'), help="Slab range in x (default: set x-extent)")),
        ('--n-slices', dict(type=int, help=f"Number of slabs (default: {COAREA_N_SLICES})")),
    ],
    Command.PIPELINE: [
        ('--family', dict(help="Code family JSON file or inline JSON (required)")),
        ('--c-grid', dict(type=int, help=f"c0 candidates (default: {PIPELINE_C_GRID})")),
        ('--n-c', dict(type=int, help=f"Values of c in the slab (default: {PIPELINE_N_C})")),
    ],
}

_COMMON_KEYS = ['seed', 'out', 'delta_max', 'delta_min', 'levels', 'stop_k']

# Comandi che stimano insiemi 1-D riscalati usano la scala fine
_FINE_LADDER = (Command.MARSTRAND, Command.PIPELINE)
_LADDER_COMMANDS = (Command.DIM, Command.COAREA, Command.MARSTRAND, Command.PIPELINE)

_HELP = {
    Command.DIM: "Estimate the packing dimension of a set",
    Command.KAKEYA_BUILD: "Build a Kakeya code family",
    Command.KAKEYA_VERIFY: "Check the Kakeya property of a family on a direction net",
    Command.DUALITY_VERIFY: "Run the algebraic identity suite",
    Command.MARSTRAND: "Projection dimension sweep of an IFS attractor",
    Command.COAREA: "Discrete co-area check for the x-coordinate map",
    Command.PIPELINE: "Dimension bound pipeline on a code family",
}


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    group = common.add_argument_group('common options')
    group.add_argument('--seed', type=int, help=f"Random seed (default: {DEFAULT_SEED})")
    group.add_argument('--out', help=f"Output path, .csv/.json derived from it (default: {OUTPUT_DIR}/<command>)")
    group.add_argument('--delta-max', type=float,
                       help=f"Largest scale (default: {DEFAULT_DELTA_MAX:g}; {PIPELINE_DELTA_MAX:g} for 1-D sweeps)")
    group.add_argument('--delta-min', type=float,
                       help=f"Smallest scale (default: {DEFAULT_DELTA_MIN:.4g}; {PIPELINE_DELTA_MIN:.4g} for 1-D sweeps)")
    group.add_argument('--levels', type=int,
                       help=f"Number of scales (default: {DEFAULT_LEVELS}; {PIPELINE_LEVELS} for 1-D sweeps)")
    group.add_argument('--stop-k', type=int, help=f"Consecutive rejections before stopping (default: {DEFAULT_STOP_K})")
    group.add_argument('--config', help="JSON file with option values; flags take precedence")
    return common


def _add_command(subparsers, command: Command, name: str, common: argparse.ArgumentParser):
    sub = subparsers.add_parser(name, parents=[common], help=_HELP[command], description=_HELP[command])
    for flag, kwargs in _COMMAND_OPTIONS[command]:
        sub.add_argument(flag, **kwargs)
    sub.set_defaults(command=command)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='heiskakeya',
                                     description="Heisenberg group Kakeya toolkit: geometry, set generators, "
                                                 "packing dimension and the duality pipeline")
    common = _common_parser()
    commands = parser.add_subparsers(dest='group', metavar='COMMAND')
    commands.required = True

    for command in (Command.DIM, Command.MARSTRAND, Command.COAREA, Command.PIPELINE):
        _add_command(commands, command, command.value, common)

    kakeya = commands.add_parser('kakeya', help="Build or verify Kakeya code families")
    kakeya_actions = kakeya.add_subparsers(dest='action', metavar='ACTION')
    kakeya_actions.required = True
    _add_command(kakeya_actions, Command.KAKEYA_BUILD, 'build', common)
    _add_command(kakeya_actions, Command.KAKEYA_VERIFY, 'verify', common)

    duality = commands.add_parser('duality', help="Duality identities")
    duality_actions = duality.add_subparsers(dest='action', metavar='ACTION')
    duality_actions.required = True
    _add_command(duality_actions, Command.DUALITY_VERIFY, 'verify', common)
    return parser


# ============================================================
# RISOLUZIONE
# ============================================================

def _allowed_keys(command: Command) -> List[str]:
    return _COMMON_KEYS + [flag.lstrip('-').replace('-', '_') for flag, _ in _COMMAND_OPTIONS[command]]


def _load_config_file(path: Optional[str], command: Command) -> Dict[str, Any]:
    if not path:
        return {}
    try:
        data = json.loads(Path(path).read_text(encoding='utf-8'))
    except (OSError, json.JSONDecodeError) as e:
        raise HeisKakeyaError(ErrorCode.INVALID_CONFIG, _OPERATION, f"Cannot read config file {path}: {e}")
    if not isinstance(data, dict):
        raise HeisKakeyaError(ErrorCode.INVALID_CONFIG, _OPERATION, f"Config file {path} must hold a JSON object")

    allowed = _allowed_keys(command)
    values = {}
    for key, value in data.items():
        name = str(key).replace('-', '_')
        if name not in allowed:
            raise HeisKakeyaError(ErrorCode.INVALID_CONFIG, _OPERATION,
                                  f"Unknown config key '{key}' for command '{command.value}'")
        values[name] = value
    return values


class _Resolver:
    """Applica la precedenza flag > file > default e converte i tipi."""

    def __init__(self, args: argparse.Namespace, file_values: Dict[str, Any]):
        self.args = args
        self.file_values = file_values

    def raw(self, name: str):
        flag = getattr(self.args, name, None)
        if flag is not None:
            return flag
        return self.file_values.get(name)

    def get(self, name: str, cast, default):
        value = self.raw(name)
        if value is None:
            return default
        try:
            return cast(value)
        except (TypeError, ValueError):
            raise HeisKakeyaError(ErrorCode.INVALID_CONFIG, _OPERATION, f"Invalid value for '{name}': {value!r}")


def _ladder(command: Command, resolve: _Resolver) -> Optional[ScaleLadder]:
    if command not in _LADDER_COMMANDS:
        return None
    if command in _FINE_LADDER:
        defaults = (PIPELINE_DELTA_MAX, PIPELINE_DELTA_MIN, PIPELINE_LEVELS)
    else:
        defaults = (DEFAULT_DELTA_MAX, DEFAULT_DELTA_MIN, DEFAULT_LEVELS)
    delta_max = resolve.get('delta_max', float, defaults[0])
    delta_min = resolve.get('delta_min', float, defaults[1])
    levels = resolve.get('levels', int, defaults[2])
    try:
        return ScaleLadder.geometric(delta_max, delta_min, levels)
    except HeisKakeyaError as e:
        raise HeisKakeyaError(ErrorCode.INVALID_CONFIG, _OPERATION, f"delta_max/delta_min/levels: {e.message}")


def _enum(enum_cls, name: str, resolve: _Resolver, default):
    value = resolve.raw(name)
    if value is None:
        return default
    try:
        return enum_cls(value)
    except ValueError:
        raise HeisKakeyaError(ErrorCode.INVALID_CONFIG, _OPERATION, f"Invalid value for '{name}': {value!r}")


def parse_config(argv: Optional[List[str]] = None, config_file: Optional[str] = None) -> RunConfig:
    """
    Costruisce la RunConfig da argv e dal file JSON opzionale.

    Args:
        argv: Argomenti (default: sys.argv[1:])
        config_file: File JSON usato quando --config non è passato

    Returns:
        RunConfig

    Raises:
        SystemExit: flag sconosciuti o malformati (exit 2, da argparse)
        HeisKakeyaError: INVALID_CONFIG / UNKNOWN_SOURCE (exit 2)
    """
    args = build_parser().parse_args(argv)
    command: Command = args.command
    resolve = _Resolver(args, _load_config_file(args.config or config_file, command))

    config = RunConfig(command=command)
    config.seed = resolve.get('seed', int, DEFAULT_SEED)
    config.out = Path(resolve.get('out', str, str(Path(OUTPUT_DIR) / command.slug)))
    config.stop_k = resolve.get('stop_k', int, DEFAULT_STOP_K)
    if config.stop_k < 1:
        raise HeisKakeyaError(ErrorCode.INVALID_CONFIG, _OPERATION, f"stop_k must be >= 1, got {config.stop_k}")
    config.ladder = _ladder(command, resolve)

    if command is Command.DIM:
        _resolve_dim_source(config, resolve)
        config.size = resolve.get('size', float, 1.0)
        config.metric = _enum(Metric, 'metric', resolve, Metric.HEISENBERG)
    elif command is Command.KAKEYA_BUILD:
        config.m = resolve.get('m', int, 64)
        config.placement = _enum(Placement, 'placement', resolve, Placement.ORIGIN)
    elif command is Command.KAKEYA_VERIFY:
        config.family = _require_family(resolve)
        config.angles = resolve.get('angles', int, None)
        config.ang_tol = resolve.get('ang_tol', float, KAKEYA_ANG_TOL)
    elif command is Command.DUALITY_VERIFY:
        config.samples = resolve.get('samples', int, DUALITY_SAMPLES)
    elif command is Command.MARSTRAND:
        config.ifs = _load_ifs(resolve.raw('ifs') or 'CANTOR2')
        config.thetas = resolve.get('thetas', int, MARSTRAND_THETAS)
    elif command is Command.COAREA:
        config.set_kind = _enum(PrimitiveKind, 'set', resolve, PrimitiveKind.CUBE)
        config.size = resolve.get('size', float, 1.0)
        config.alpha = resolve.get('alpha', float, 3.0)
        config.delta = resolve.get('delta', float, None)
        config.slab = resolve.get('slab', _pair, None)
        config.n_slices = resolve.get('n_slices', int, COAREA_N_SLICES)
    elif command is Command.PIPELINE:
        config.family = _require_family(resolve)
        config.c_grid = resolve.get('c_grid', int, PIPELINE_C_GRID)
        config.n_c = resolve.get('n_c', int, PIPELINE_N_C)
    return config


def _pair(value) -> Tuple[float, float]:
    lo, hi = value
    return float(lo), float(hi)


def _config_error(name: str, e: HeisKakeyaError) -> HeisKakeyaError:
    return HeisKakeyaError(ErrorCode.INVALID_CONFIG, _OPERATION, f"Invalid value for '{name}': {e.message}")


def _load_ifs(source) -> IfsSpec:
    try:
        return IfsSpec.from_dict(source) if isinstance(source, dict) else IfsSpec.load(source)
    except HeisKakeyaError as e:
        if e.exit_code == 2:
            raise
        raise _config_error('ifs', e) from e


def _require_family(resolve: _Resolver) -> CodeFamily:
    source = resolve.raw('family')
    if source is None:
        raise HeisKakeyaError(ErrorCode.INVALID_CONFIG, _OPERATION, "Missing required option 'family'")
    try:
        if isinstance(source, dict):
            return CodeFamily.from_dict(source)
        return CodeFamily.load(source)
    except HeisKakeyaError as e:
        if e.exit_code == 2:
            raise
        raise _config_error('family', e) from e


def _resolve_dim_source(config: RunConfig, resolve: _Resolver):
    given = [name for name in ('set', 'ifs', 'family') if resolve.raw(name) is not None]
    if len(given) != 1:
        raise HeisKakeyaError(ErrorCode.INVALID_CONFIG, _OPERATION,
                              f"dim needs exactly one of 'set', 'ifs', 'family' (got {given or 'none'})")
    if given[0] == 'set':
        config.set_kind = _enum(PrimitiveKind, 'set', resolve, None)
    elif given[0] == 'ifs':
        config.ifs = _load_ifs(resolve.raw('ifs'))
    else:
        config.family = _require_family(resolve)
