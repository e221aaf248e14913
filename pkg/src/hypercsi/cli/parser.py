"""
Argument parsing and dispatch for the hypercsi command line:

    generate | unmix | eval | mc

Exit codes: 0 success, 2 invalid flags or parameters, 3 data errors,
4 numerical failures.
"""

import argparse
import os
from timeit import default_timer

from loguru import logger

from hypercsi.cli.commands import cmd_eval, cmd_generate, cmd_mc, cmd_unmix
from hypercsi.engine import configure_logging
from hypercsi.structures.enums import AbundancePattern, DataFormat
from hypercsi.structures.errors import DataError, HyperCSIError

THREADS_ENV_VAR = "HYPERCSI_THREADS"


def eta_value(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"eta must be a number, got '{text}'")

    if not 0 < value <= 1:
        raise argparse.ArgumentTypeError(f"eta must lie in (0, 1], got {value}")

    return value


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"Expected an integer, got '{text}'")

    if value < 1:
        raise argparse.ArgumentTypeError(f"Expected a positive integer, got {value}")

    return value


def snr_value(text: str) -> float | None:
    if text.strip().lower() in ("inf", "+inf", "infinity"):
        return None

    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"SNR must be a number of dB or 'inf', got '{text}'")


def default_threads() -> int | None:
    """
    HYPERCSI_THREADS when set, otherwise None (config decides).
    """
    raw = os.environ.get(THREADS_ENV_VAR)
    return positive_int(raw) if raw else None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hypercsi", description="Blind hyperspectral unmixing with HyperCSI.")
    parser.add_argument("--log-level", default=None, help="Override logging.level from config")
    verbs = parser.add_subparsers(dest="command", required=True)

    generate = verbs.add_parser("generate", help="Generate a synthetic scene with ground truth")
    generate.add_argument("--bands", type=positive_int, required=True, help="M")
    generate.add_argument("--pixels", type=positive_int, required=True, help="L")
    generate.add_argument("--endmembers", type=int, required=True, help="N")
    generate.add_argument("--purity", type=float, default=1.0, help="Purity level rho in (1/sqrt(N), 1]")
    generate.add_argument("--snr-db", type=snr_value, default=None, help="SNR in dB, or 'inf' (default)")
    generate.add_argument("--seed", type=int, default=0)
    generate.add_argument("--gamma", type=float, default=None, help="Dirichlet parameter for every material")
    generate.add_argument("--pattern", choices=AbundancePattern.list(), default=AbundancePattern.IID_DIRICHLET.value)
    generate.add_argument("--spectra", default=None, help="M x N CSV of endmember spectra")
    generate.add_argument("--pure-pixels", action="store_true", help="Make the first N pixels pure")
    generate.add_argument("--width", type=positive_int, default=None, help="Image width for block-sparse maps")
    generate.add_argument("--format", choices=DataFormat.list(), default=DataFormat.BINARY.value)
    generate.add_argument("-o", "--output", required=True, help="Output directory")
    generate.set_defaults(handler=cmd_generate)

    unmix = verbs.add_parser("unmix", help="Estimate endmembers and abundances")
    unmix.add_argument("--data", required=True, help="Dataset file, or a directory holding one")
    unmix.add_argument("--endmembers", type=int, required=True, help="N")
    unmix.add_argument("--eta", type=eta_value, default=None, help="Shrinkage policy in (0, 1]")
    unmix.add_argument("--no-shift", action="store_true", help="Skip the non-negativity shift (c = 1)")
    unmix.add_argument("--threads", type=positive_int, default=None)
    unmix.add_argument("-o", "--output", required=True, help="Output directory")
    unmix.set_defaults(handler=cmd_unmix)

    evaluate = verbs.add_parser("eval", help="Compare an estimate with ground truth")
    evaluate.add_argument("--truth", required=True, help="Directory with the true spectra and abundances")
    evaluate.add_argument("--est", required=True, help="Directory with the estimated spectra and abundances")
    evaluate.add_argument("-o", "--output", default=None, help="Directory for the metrics file (default: --est)")
    evaluate.set_defaults(handler=cmd_eval)

    mc = verbs.add_parser("mc", help="Run a Monte Carlo sweep")
    mc.add_argument("--sweep", required=True, help="Sweep YAML file")
    mc.add_argument("--threads", type=positive_int, default=None)
    mc.add_argument("-o", "--output", required=True, help="Results CSV")
    mc.set_defaults(handler=cmd_mc)

    return parser


def main(argv: list[str] | None = None) -> int:
    """
    Parse 'argv', run the requested command, and map errors onto exit codes.
    """

    parser = build_parser()
    args = parser.parse_args(argv)

    if getattr(args, "threads", "absent") is None:
        try:
            args.threads = default_threads()
        except argparse.ArgumentTypeError as e:
            parser.error(f"{THREADS_ENV_VAR}: {e}")

    configure_logging(args.log_level)

    start = default_timer()
    try:
        code = args.handler(args)
    except HyperCSIError as e:
        logger.error(f"[CLI] {type(e).__name__}: {e}")
        return e.exit_code
    except FileNotFoundError as e:
        logger.error(f"[CLI] {e}")
        return DataError.exit_code

    logger.info(f"[CLI] Completed {args.command} in {default_timer() - start:.3g}s")
    return code

