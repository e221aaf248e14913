"""
Monte Carlo sweep configuration.

A sweep file is a flat YAML mapping. Grid keys take a list or a single value;
a comma-separated string also works ("100, 1000, 10000"). 'inf' in snr_db
means noiseless.
"""

import itertools
import math
import os
from dataclasses import dataclass
from typing import Iterator

from omegaconf import OmegaConf
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from hypercsi.structures.enums import AbundancePattern
from hypercsi.structures.errors import SweepConfigError


def _as_list(value):
    if isinstance(value, str):
        return [part.strip() for part in value.split(",") if part.strip()]
    if isinstance(value, (list, tuple)):
        return list(value)
    return [value]


def _snr(value):
    if value is None:
        return None
    if isinstance(value, str) and value.strip().lower() in ("inf", "+inf", "infinity", "none"):
        return None
    value = float(value)
    return None if math.isinf(value) and value > 0 else value


class SweepConfig(BaseModel):
    """
    The grid of a Monte Carlo experiment: every combination of the list-valued
    keys is run 'trials' times, trial t using seed master_seed + t.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    endmembers: list[int]
    pixels: list[int]
    bands: int = Field(default=224, ge=2)
    purity: list[float] = [1.0]
    snr_db: list[float | None] = [None]
    eta: list[float] = [0.9]
    trials: int = Field(default=20, ge=1)
    master_seed: int = Field(default=0, ge=0)
    no_shift: bool = False
    gamma: float | None = Field(default=None, gt=0)
    pattern: AbundancePattern = AbundancePattern.IID_DIRICHLET
    record_timing: bool | None = None

    @field_validator("endmembers", "pixels", "purity", "eta", mode="before")
    @classmethod
    def _listify(cls, value):
        return _as_list(value)

    @field_validator("snr_db", mode="before")
    @classmethod
    def _listify_snr(cls, value):
        return [_snr(v) for v in _as_list(value)]

    @field_validator("endmembers")
    @classmethod
    def _check_endmembers(cls, value: list[int]) -> list[int]:
        if not value or any(n < 2 for n in value):
            raise ValueError(f"every endmember count must be at least 2, got {value}")
        return value

    @field_validator("pixels")
    @classmethod
    def _check_pixels(cls, value: list[int]) -> list[int]:
        if not value or any(n < 1 for n in value):
            raise ValueError(f"pixel counts must be positive, got {value}")
        return value

    @field_validator("eta")
    @classmethod
    def _check_eta(cls, value: list[float]) -> list[float]:
        if not value or any(not 0 < e <= 1 for e in value):
            raise ValueError(f"eta values must lie in (0, 1], got {value}")
        return value

    @model_validator(mode="after")
    def _check_cells(self) -> "SweepConfig":
        for n in self.endmembers:
            if self.bands < n:
                raise ValueError(f"{self.bands} bands cannot hold {n} linearly independent spectra")

            bad = [rho for rho in self.purity if not 1 / math.sqrt(n) < rho <= 1]
            if bad:
                raise ValueError(f"purity levels {bad} lie outside (1/sqrt({n}), 1] = ({1 / math.sqrt(n):.4f}, 1]")

        return self

    def runs(self) -> Iterator["McRun"]:
        """
        Every run of the sweep, grid-major and trial-minor.
        """
        grid = itertools.product(self.endmembers, self.pixels, self.purity, self.snr_db, self.eta)
        for n_endmembers, n_pixels, rho, snr_db, eta in grid:
            for trial in range(self.trials):
                yield McRun(n_endmembers, n_pixels, self.bands, rho, snr_db, eta, trial, self.master_seed + trial)


@dataclass(frozen=True)
class McRun:
    n_endmembers: int
    n_pixels: int
    n_bands: int
    purity_rho: float
    snr_db: float | None
    eta: float
    trial: int
    seed: int


def load_sweep(path: str) -> SweepConfig:
    """
    Read and validate a sweep file.

    Raises:
        SweepConfigError: The file is missing, is not a flat mapping, or holds invalid values
    """

    if not os.path.exists(path):
        raise SweepConfigError(f"Cannot locate sweep file {path}!")

    try:
        raw = OmegaConf.to_container(OmegaConf.load(path), resolve=True)
    except Exception as e:
        raise SweepConfigError(f"Cannot parse sweep file {path}: {e}") from e

    if not isinstance(raw, dict):
        raise SweepConfigError(f"Sweep file {path} must hold a key-value mapping!")

    try:
        return SweepConfig.model_validate(raw)
    except ValidationError as e:
        raise SweepConfigError(f"Invalid sweep file {path}:\n{e}", details={"errors": e.errors()}) from e
