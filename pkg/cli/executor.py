"""
Esecuzione dei comandi: dispatch al modulo, scrittura dei risultati,
riga di riepilogo su stdout.
"""

import sys
import traceback
from typing import Callable, Dict

from cli.output_writer import output_paths, write_csv, write_json
from cli.run_config import Command, RunConfig
from config import COAREA_RATIO_BOUND, IDENTITY_TOLERANCE
from dimension import estimate_dimension
from experiments import (
    coarea_check, coarea_sweep, fraction_within, kakeya_dimension_pipeline, marstrand_experiment,
    marstrand_thetas, run_identity_suite,
)
from experiments.marstrand import SLOPE_TOLERANCE
from logger.logger import get_logger, log_error_for_report
from sets import SetSampler, ifs_sampler, kakeya_union_builder, primitive_sampler, union_sampler, verify_kakeya
from utils.errors import HeisKakeyaError, error_report

logger = get_logger('cli')

DIM_FIELDS = ['delta', 'count', 'log2_inv_delta', 'log2_count']
SWEEP_FIELDS = ['param', 'slope', 'r2', 'n_counts']
COAREA_FIELDS = ['delta', 'lhs', 'rhs', 'ratio']
IDENTITY_FIELDS = ['check', 'samples', 'max_residual', 'tolerance', 'passed']


def _sampler(config: RunConfig) -> SetSampler:
    if config.set_kind is not None:
        return primitive_sampler(config.set_kind, config.size, config.seed)
    if config.ifs is not None:
        return ifs_sampler(config.ifs, config.seed)
    return union_sampler(config.family, config.seed)


# ============================================================
# COMANDI
# ============================================================

def _run_dim(config: RunConfig) -> str:
    sampler = _sampler(config)
    estimate = estimate_dimension(sampler, config.ladder, config.metric, config.packing)
    csv_path, json_path = output_paths(config.out)
    write_csv(csv_path, estimate.csv_rows(), DIM_FIELDS)
    write_json(json_path, {**estimate.summary(), 'stop_k': config.stop_k, 'counts': estimate.counts,
                           'deltas': estimate.deltas})
    return f"dim {sampler.label} ({config.metric.value}): slope={estimate.slope:.3f} r2={estimate.r2:.3f} -> {csv_path}"


def _run_kakeya_build(config: RunConfig) -> str:
    family = kakeya_union_builder(config.m, config.placement, config.seed)
    _, json_path = output_paths(config.out)
    write_json(json_path, family.to_dict())
    return f"kakeya build {family.label}: codes={len(family)} -> {json_path}"


def _run_kakeya_verify(config: RunConfig) -> str:
    family = config.family
    angles = config.angles if config.angles is not None else max(1, len(family))
    report = verify_kakeya(family, angles, config.ang_tol)
    _, json_path = output_paths(config.out)
    write_json(json_path, {**report.to_dict(), 'family': family.label, 'size': len(family)})
    return (f"kakeya verify {family.label}: covered={report.covered}/{angles} "
            f"missing={len(report.missing)} -> {json_path}")


def _run_duality_verify(config: RunConfig) -> str:
    report = run_identity_suite(config.samples, config.seed)
    csv_path, json_path = output_paths(config.out)
    write_csv(csv_path, report.csv_rows(), IDENTITY_FIELDS)
    write_json(json_path, report.to_dict())
    if report.passed:
        return f"duality verify: max_residual<={IDENTITY_TOLERANCE:g} ({report.max_residual:.2e}) -> {json_path}"
    return f"duality verify: max_residual={report.max_residual:.2e} failed={report.failed} -> {json_path}"


def _run_marstrand(config: RunConfig) -> str:
    K = ifs_sampler(config.ifs, config.seed)
    results = marstrand_experiment(K, marstrand_thetas(config.thetas), config.ladder, config.packing)
    similarity = config.ifs.similarity_dimension()
    expected = min(similarity, 1.0)
    within = fraction_within(results, expected)

    csv_path, json_path = output_paths(config.out)
    write_csv(csv_path, [r.csv_row() for r in results], SWEEP_FIELDS)
    write_json(json_path, {
        'label': K.label,
        'similarity_dimension': similarity,
        'expected_slope': expected,
        'tolerance': SLOPE_TOLERANCE,
        'fraction_within': within,
        'seed': config.seed,
        'per_theta': [{'theta': r.theta, **r.estimate.to_dict()} for r in results],
    })
    return f"marstrand {K.label}: expected={expected:.4f} fraction_within={within:.2f} -> {csv_path}"


def _run_coarea(config: RunConfig) -> str:
    F = _sampler(config)
    if config.delta is not None:
        results = [coarea_check(F, config.alpha, config.delta, config.slab, config.n_slices, config.packing)]
    else:
        results = coarea_sweep(F, config.alpha, config.ladder, config.slab, config.n_slices, config.packing)
    ratios = [r.ratio for r in results]
    bounded = all(1.0 / COAREA_RATIO_BOUND <= ratio <= COAREA_RATIO_BOUND for ratio in ratios)

    csv_path, json_path = output_paths(config.out)
    write_csv(csv_path, [r.csv_row() for r in results], COAREA_FIELDS)
    write_json(json_path, {
        'label': F.label,
        'alpha': config.alpha,
        'slab': list(config.slab) if config.slab else None,
        'n_slices': config.n_slices,
        'seed': config.seed,
        'ratio_bound': COAREA_RATIO_BOUND,
        'within_bound': bounded,
        'results': [r.to_dict() for r in results],
    })
    return f"coarea {F.label}: ratio in [{min(ratios):.3f}, {max(ratios):.3f}] -> {csv_path}"


def _run_pipeline(config: RunConfig) -> str:
    report = kakeya_dimension_pipeline(config.family, config.c_grid, config.ladder, config.packing, config.n_c)
    csv_path, json_path = output_paths(config.out)
    write_csv(csv_path, report.csv_rows(), SWEEP_FIELDS)
    write_json(json_path, {**report.to_dict(), 'family': config.family.label})
    return (f"pipeline {config.family.label}: final_bound={report.final_bound:.3f} "
            f"crossing_ratio={report.crossing_ratio:.3f} -> {json_path}")


_HANDLERS: Dict[Command, Callable[[RunConfig], str]] = {
    Command.DIM: _run_dim,
    Command.KAKEYA_BUILD: _run_kakeya_build,
    Command.KAKEYA_VERIFY: _run_kakeya_verify,
    Command.DUALITY_VERIFY: _run_duality_verify,
    Command.MARSTRAND: _run_marstrand,
    Command.COAREA: _run_coarea,
    Command.PIPELINE: _run_pipeline,
}


def execute(config: RunConfig) -> int:
    """
    Esegue il comando e stampa una riga di riepilogo.

    Returns:
        int: 0 se il comando è completato, 1 in caso di errore
    """
    logger.debug(f"Executing {config.command.value} (seed={config.seed}, out={config.out})")
    try:
        summary = _HANDLERS[config.command](config)
    except HeisKakeyaError as e:
        log_error_for_report(e.operation, e.code.name, e.message, traceback.format_exc())
        error = error_report(e)['error']
        print(f"{config.command.value}: failed in {error['operation']}: [{error['code']}] {error['message']}",
              file=sys.stderr)
        return 1
    except Exception as e:
        report = log_error_for_report('cli.execute', 'RUNTIME_FAILURE', str(e), traceback.format_exc())
        print(f"{config.command.value}: failed in {report['module']}: {report['message']}", file=sys.stderr)
        return 1

    print(summary)
    return 0
