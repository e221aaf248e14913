"""
Serializable records exchanged between the pipeline, the CLI and disk.
"""

from pydantic import BaseModel, Field, field_validator


class StageTiming(BaseModel):
    """
    Wall time spent in one pipeline stage.
    """

    stage: str
    seconds: float


class UnmixDiagnostics(BaseModel):
    """
    Everything the pipeline learned on its way to an estimate.
    """

    n_bands: int
    n_pixels: int
    n_endmembers: int
    eta: float
    no_shift: bool
    threads: int = 1
    purest_indices: list[int] = []
    active_pixels: list[list[int]] = []
    radius: float | None = None
    c_prime: float | None = None
    c: float | None = None
    clamped_entries: int = 0
    clipped_pixels: int = 0
    reconstruction_rmse: float | None = None
    rank_deficient: bool = False
    warnings: list[str] = []
    stage_timings: list[StageTiming] = []

    @property
    def total_seconds(self) -> float:
        return sum(t.seconds for t in self.stage_timings)


class McResultRow(BaseModel):
    """
    One Monte Carlo run: scene parameters, seed, and the resulting errors.

    snr_db is None for noiseless runs and is written as "inf".
    wall_time_s is positive for timed runs and exactly 0.0 when mc.record_timing is false.
    """

    n_endmembers: int
    n_pixels: int
    snr_db: float | None
    purity_rho: float
    eta: float
    trial_seed: int
    phi_en_deg: float = Field(ge=0)
    phi_ab_deg: float = Field(ge=0)
    wall_time_s: float = Field(ge=0, description="Seconds spent unmixing; 0.0 when timing is not recorded")

    def as_csv_dict(self) -> dict:
        row = self.model_dump()
        row["snr_db"] = "inf" if self.snr_db is None else self.snr_db
        return row


class EvalReport(BaseModel):
    """
    Result of comparing an estimate against ground truth.

    'permutation[i]' is the estimated endmember matched to true endmember i;
    'abundance_permutation' is the matching for abundance maps.
    """

    phi_en_deg: float
    phi_ab_deg: float
    endmember_angles_deg: list[float]
    permutation: list[int]
    abundance_permutation: list[int]

    @field_validator("endmember_angles_deg")
    @classmethod
    def _nonnegative(cls, value: list[float]) -> list[float]:
        if any(v < 0 for v in value):
            raise ValueError("Spectral angles cannot be negative!")
        return value
