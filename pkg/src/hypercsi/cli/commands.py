"""
The CLI verbs. Each command takes the parsed argparse namespace and returns
an exit code; errors propagate to the dispatcher.
"""

import argparse
import os

from loguru import logger
from pydantic import BaseModel
from rich import print
from rich.table import Table

from hypercsi.cache import config_value
from hypercsi.cli.montecarlo import run_sweep, write_results
from hypercsi.cli.sweep import load_sweep
from hypercsi.structures.enums import DataFormat
from hypercsi.structures.errors import DegenerateData
from hypercsi.systems.csi import unmix
from hypercsi.systems.metrics import evaluate
from hypercsi.systems.synth import SceneSpec, generate_scene
from hypercsi.util import io_utils


class SceneReport(BaseModel):
    """
    What scene.json records: the generating spec and the realized noise and purity.
    """

    spec: SceneSpec
    sigma2: float
    realized_snr_db: float | None
    max_purity: float


def cmd_generate(args: argparse.Namespace) -> int:
    gamma = [args.gamma] * args.endmembers if args.gamma is not None else None
    spec = SceneSpec(
        n_bands=args.bands,
        n_pixels=args.pixels,
        n_endmembers=args.endmembers,
        dirichlet_gamma=gamma,
        purity_rho=args.purity,
        snr_db=args.snr_db,
        seed=args.seed,
        spectra_source="user-file" if args.spectra else "random-smooth",
        spectra_path=args.spectra,
        pattern=args.pattern,
        include_pure_pixels=args.pure_pixels,
        image_width=args.width,
    )

    truth = generate_scene(spec)
    out = args.output

    data_name = os.path.splitext(config_value("io.data_file"))[0] + "." + DataFormat(args.format).value
    io_utils.write_dataset(os.path.join(out, data_name), truth.dataset(), args.format)
    io_utils.write_matrix_csv(os.path.join(out, config_value("io.spectra_file")), truth.spectra)
    io_utils.write_matrix_csv(os.path.join(out, config_value("io.abundance_file")), truth.abundance_rows)
    io_utils.write_json(
        os.path.join(out, config_value("io.scene_file")),
        SceneReport(
            spec=spec, sigma2=truth.sigma2, realized_snr_db=truth.realized_snr_db, max_purity=truth.max_purity
        ),
    )

    snr = "inf" if truth.realized_snr_db is None else f"{truth.realized_snr_db:.3f} dB"
    print(f"[bold]Scene written to[/bold] {out}")
    print(f"  realized SNR: {snr}")
    print(f"  max purity:   {truth.max_purity:.6f}")
    return 0


def _find_dataset(path: str) -> str:
    if os.path.isfile(path):
        return path

    for fmt in DataFormat.list():
        candidate = os.path.join(path, os.path.splitext(config_value("io.data_file"))[0] + "." + fmt)
        if os.path.isfile(candidate):
            return candidate

    raise FileNotFoundError(f"No dataset found at {path}!")


def cmd_unmix(args: argparse.Namespace) -> int:
    data = io_utils.read_dataset(_find_dataset(args.data))

    endmembers, abundances, diagnostics = unmix(
        data, args.endmembers, eta=args.eta, no_shift=args.no_shift, threads=args.threads
    )

    out = args.output
    io_utils.write_matrix_csv(os.path.join(out, config_value("io.spectra_file")), endmembers.spectra)
    io_utils.write_matrix_csv(os.path.join(out, config_value("io.abundance_file")), abundances.fractions)
    io_utils.write_jsonl(os.path.join(out, config_value("logging.diagnostics_file")), [diagnostics])

    print(f"[bold]Estimate written to[/bold] {out}")
    print(f"  purest pixels: {diagnostics.purest_indices}")
    print(f"  r = {diagnostics.radius:.6g}, c' = {diagnostics.c_prime:.6g}, c = {diagnostics.c:.6g}")
    print(f"  reconstruction RMSE: {diagnostics.reconstruction_rmse:.6g}")
    return 0


def _read_estimate(directory: str) -> tuple:
    spectra = io_utils.read_matrix_csv(os.path.join(directory, config_value("io.spectra_file")))
    maps = io_utils.read_matrix_csv(os.path.join(directory, config_value("io.abundance_file")))
    return spectra, maps


def cmd_eval(args: argparse.Namespace) -> int:
    true_spectra, true_maps = _read_estimate(args.truth)
    est_spectra, est_maps = _read_estimate(args.est)

    report = evaluate(true_spectra, est_spectra, true_maps, est_maps)
    io_utils.write_json(os.path.join(args.output or args.est, config_value("io.metrics_file")), report)

    table = Table(title="Endmember matching")
    table.add_column("true")
    table.add_column("estimated")
    table.add_column("angle (deg)", justify="right")
    for i, (j, angle) in enumerate(zip(report.permutation, report.endmember_angles_deg)):
        table.add_row(str(i), str(j), f"{angle:.6f}")

    print(table)
    print(f"phi_en = {report.phi_en_deg:.6f} deg")
    print(f"phi_ab = {report.phi_ab_deg:.6f} deg")
    return 0


def cmd_mc(args: argparse.Namespace) -> int:
    sweep = load_sweep(args.sweep)
    rows, failures = run_sweep(sweep, threads=args.threads or 1)

    if not rows:
        raise DegenerateData(f"All {failures} runs of {args.sweep} failed; no results to write!")

    summary = write_results(rows, args.output)

    print(f"[bold]{len(rows)} runs written to[/bold] {args.output} (summary: {summary})")
    if failures:
        logger.warning(f"[MonteCarlo] {failures} run(s) failed and were left out")
    return 0
