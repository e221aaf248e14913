"""
The Monte Carlo harness: generate a scene per run, unmix it, score it.
"""

import os
from timeit import default_timer

import pandas as pd
from joblib import Parallel, delayed
from loguru import logger

from hypercsi.cache import config_value
from hypercsi.cli.sweep import McRun, SweepConfig
from hypercsi.structures.errors import HyperCSIError
from hypercsi.structures.records import McResultRow
from hypercsi.systems.csi import unmix
from hypercsi.systems.metrics import phi_ab, phi_en
from hypercsi.systems.synth import SceneSpec, generate_scene

GROUP_KEYS = ["n_endmembers", "n_pixels", "snr_db", "purity_rho", "eta"]


def run_trial(run: McRun, sweep: SweepConfig, record_timing: bool = True) -> McResultRow | None:
    """
    One run. Returns None when the scene cannot be generated or unmixed; the failure is logged.
    """

    gamma = [sweep.gamma] * run.n_endmembers if sweep.gamma is not None else None

    try:
        spec = SceneSpec(
            n_bands=run.n_bands,
            n_pixels=run.n_pixels,
            n_endmembers=run.n_endmembers,
            dirichlet_gamma=gamma,
            purity_rho=run.purity_rho,
            snr_db=run.snr_db,
            seed=run.seed,
            pattern=sweep.pattern,
        )
        truth = generate_scene(spec)

        start = default_timer()
        endmembers, abundances, _ = unmix(
            truth.dataset(), run.n_endmembers, eta=run.eta, no_shift=sweep.no_shift, threads=1
        )
        elapsed = default_timer() - start

        en = phi_en(truth.spectra, endmembers.spectra)
        ab = phi_ab(truth.abundance_rows, abundances.fractions)
    except HyperCSIError as e:
        logger.warning(f"[MonteCarlo] Run {run} failed: {type(e).__name__}: {e}")
        return None

    return McResultRow(
        n_endmembers=run.n_endmembers,
        n_pixels=run.n_pixels,
        snr_db=run.snr_db,
        purity_rho=run.purity_rho,
        eta=run.eta,
        trial_seed=run.seed,
        phi_en_deg=en,
        phi_ab_deg=ab,
        wall_time_s=elapsed if record_timing else 0.0,
    )


def run_sweep(sweep: SweepConfig, threads: int = 1) -> tuple[list[McResultRow], int]:
    """
    Run every trial of the sweep across 'threads' workers. Rows come back in
    run order regardless of completion order.

    Returns: (rows of successful runs, number of failed runs)
    """

    record_timing = bool(config_value("mc.record_timing", sweep.record_timing))
    runs = list(sweep.runs())

    logger.info(f"[MonteCarlo] {len(runs)} runs on {threads} worker(s)")
    start = default_timer()

    results = Parallel(n_jobs=threads, backend="threading")(
        delayed(run_trial)(run, sweep, record_timing) for run in runs
    )

    rows = [r for r in results if r is not None]
    failures = len(results) - len(rows)

    logger.info(f"[MonteCarlo] Completed in {default_timer() - start:.3g}s, {failures} failed run(s)")
    return rows, failures


def results_frame(rows: list[McResultRow]) -> pd.DataFrame:
    columns = list(McResultRow.model_fields)
    return pd.DataFrame([r.as_csv_dict() for r in rows], columns=columns)


def summarize(rows: list[McResultRow]) -> pd.DataFrame:
    """
    Mean errors and run time per grid cell, with the number of runs averaged.
    """

    frame = results_frame(rows)
    grouped = frame.groupby(GROUP_KEYS, sort=False)
    summary = grouped[["phi_en_deg", "phi_ab_deg", "wall_time_s"]].mean()
    summary["runs"] = grouped.size()
    return summary.reset_index()


def summary_path(output_path: str) -> str:
    stem, _ = os.path.splitext(output_path)
    return f"{stem}.summary.csv"


def write_results(rows: list[McResultRow], output_path: str, float_format: str | None = None) -> str:
    """
    Write the per-run CSV and the summary CSV next to it.

    Returns: The summary path
    """

    float_format = config_value("io.float_format", float_format)
    directory = os.path.dirname(output_path)
    if directory:
        os.makedirs(directory, exist_ok=True)

    results_frame(rows).to_csv(output_path, index=False, float_format=float_format, lineterminator="\n")

    path = summary_path(output_path)
    summarize(rows).to_csv(path, index=False, float_format=float_format, lineterminator="\n")
    return path
