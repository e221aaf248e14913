from __future__ import annotations

from contextlib import contextmanager
from timeit import default_timer

import numpy as np
from loguru import logger

from hypercsi.cache import config_value
from hypercsi.structures.dataset import SpectralDataset
from hypercsi.structures.enums import Stage
from hypercsi.structures.errors import HyperCSIError, InvalidEndmemberCount, InvalidParameter
from hypercsi.structures.records import StageTiming, UnmixDiagnostics
from hypercsi.systems.csi.abundance import AbundanceMatrix, estimate_abundances
from hypercsi.systems.csi.endmembers import EndmemberEstimate, check_eta, reconstruct_endmembers, shift_factor
from hypercsi.systems.csi.hyperplanes import estimate_hyperplanes
from hypercsi.systems.csi.regions import build_regions
from hypercsi.systems.dimred import fit_affine_set, project
from hypercsi.systems.spa import select_purest
from hypercsi.util.warning_utils import recording_warnings


@contextmanager
def _stage(stage: Stage, timings: list[StageTiming]):
    """
    Time a pipeline stage and tag any HyperCSIError escaping it with the stage name.
    """

    start = default_timer()
    try:
        yield
    except HyperCSIError as err:
        if err.stage is None:
            err.stage = stage.value
        raise
    finally:
        timings.append(StageTiming(stage=stage.value, seconds=default_timer() - start))


class HyperCSI:
    """
    The HyperCSI estimator.

    Runs, in order: affine set fitting, purest-pixel search, hyperplane
    estimation within search regions, the non-negativity shift, endmember
    reconstruction, and closed-form abundance estimation.

    With 'no_shift' the simplex bounded by the estimated hyperplanes is returned
    as is (c = 1); c' is still computed and reported.
    """

    def __init__(
        self,
        n_endmembers: int,
        eta: float | None = None,
        no_shift: bool = False,
        threads: int | None = None,
        naive: bool = False,
    ):
        if not isinstance(n_endmembers, (int, np.integer)):
            raise TypeError(f"n_endmembers must be an int! Got {type(n_endmembers)} instead!")

        if n_endmembers < 2:
            raise InvalidEndmemberCount(f"At least 2 endmembers are required, got {n_endmembers}!")

        self.n_endmembers = int(n_endmembers)
        self.eta = check_eta(config_value("unmix.eta", eta))
        self.no_shift = no_shift
        self.threads = int(config_value("unmix.threads", threads))
        self.naive = naive

        if self.threads < 1:
            raise InvalidParameter(f"threads must be at least 1, got {self.threads}!")

    def fit(self, data: SpectralDataset) -> tuple[EndmemberEstimate, AbundanceMatrix, UnmixDiagnostics]:
        """
        Unmix 'data'.

        Returns: (endmembers, abundances, diagnostics)

        Raises:
            HyperCSIError: Any stage failure, tagged with the failing stage
        """

        timings: list[StageTiming] = []
        N = self.n_endmembers

        logger.info(f"[HyperCSI] Unmixing {data.n_pixels} pixels x {data.n_bands} bands into {N} endmembers")

        with recording_warnings() as recorded:
            with _stage(Stage.AFFINE_SET_FIT, timings):
                model = fit_affine_set(data, N)
                dr = project(data, model)

            with _stage(Stage.PURE_PIXEL_SEARCH, timings):
                purest = select_purest(dr, N)
                purest_dr = dr.points(purest)

            with _stage(Stage.HYPERPLANE_ESTIMATION, timings):
                regions = build_regions(dr, purest)
                planes = estimate_hyperplanes(dr, regions, purest_dr, threads=self.threads, naive=self.naive)

            with _stage(Stage.SHIFT_FACTOR, timings):
                c, c_prime = shift_factor(planes, model, self.eta)
                if self.no_shift:
                    c = 1.0

            with _stage(Stage.ENDMEMBER_RECONSTRUCTION, timings):
                endmembers = reconstruct_endmembers(planes, c, model, eta=self.eta, c_prime=c_prime)

            with _stage(Stage.ABUNDANCE_ESTIMATION, timings):
                abundances = estimate_abundances(dr, planes, endmembers, threads=self.threads)

        residual = data.pixels - endmembers.spectra @ abundances.fractions.T
        rmse = float(np.linalg.norm(residual) / np.sqrt(residual.size))

        diagnostics = UnmixDiagnostics(
            n_bands=data.n_bands,
            n_pixels=data.n_pixels,
            n_endmembers=N,
            eta=self.eta,
            no_shift=self.no_shift,
            threads=self.threads,
            purest_indices=purest,
            active_pixels=planes.active_pixels.tolist(),
            radius=regions.radius,
            c_prime=c_prime,
            c=c,
            clamped_entries=endmembers.clamped_entries,
            clipped_pixels=abundances.clipped_pixels,
            reconstruction_rmse=rmse,
            rank_deficient=model.rank_deficient,
            warnings=list(recorded),
            stage_timings=timings,
        )

        logger.info(
            f"[HyperCSI] Done in {diagnostics.total_seconds:.3g}s: c' = {c_prime:.4g}, c = {c:.4g}, RMSE = {rmse:.4g}"
        )
        return endmembers, abundances, diagnostics


def unmix(
    data: SpectralDataset,
    n_endmembers: int,
    eta: float | None = None,
    no_shift: bool = False,
    threads: int | None = None,
) -> tuple[EndmemberEstimate, AbundanceMatrix, UnmixDiagnostics]:
    """
    Run the full HyperCSI pipeline on 'data'. See HyperCSI.

    Args:
        data: The observations
        n_endmembers: N, at least 2
        eta: Shrinkage policy in (0, 1]. Defaults to unmix.eta (0.9).
        no_shift: Force c = 1
        threads: Worker count for the per-facet and per-material stages

    Returns: (endmembers, abundances, diagnostics)
    """
    return HyperCSI(n_endmembers, eta=eta, no_shift=no_shift, threads=threads).fit(data)
