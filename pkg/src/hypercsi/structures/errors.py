"""
The HyperCSI exception family.

Every error raised by the library derives from HyperCSIError. The three
category bases map onto the CLI's exit codes.
"""

from typing import Any


class HyperCSIError(Exception):
    """
    A generic HyperCSI error in which additional context can be embedded.

    'details' carries machine-readable context (offending indices, values) and
    'stage' names the pipeline stage the error escaped from, when known.
    """

    exit_code: int = 1

    def __init__(self, message: str, details: dict[str, Any] | None = None, stage: str | None = None):
        super().__init__(message)
        self.details: dict[str, Any] = details or {}
        self.stage: str | None = stage

    def __str__(self) -> str:
        base = super().__str__()
        return f"[{self.stage}] {base}" if self.stage else base


class ValidationError(HyperCSIError):
    """
    Thrown when a parameter or flag is outside its allowed domain.
    """

    exit_code = 2


class DataError(HyperCSIError):
    """
    Thrown when input data cannot support the requested computation.
    """

    exit_code = 3


class NumericalError(HyperCSIError):
    """
    Thrown when a numerical step fails (singular systems, degenerate geometry).
    """

    exit_code = 4


# Validation errors


class InvalidEndmemberCount(ValidationError):
    pass


class InvalidParameter(ValidationError):
    pass


class InvalidGamma(ValidationError):
    pass


class InvalidPurity(ValidationError):
    pass


class TooManyPixels(ValidationError):
    """
    Thrown when a brute-force reference is asked to enumerate too many subsets.
    """


class DimensionMismatch(ValidationError):
    pass


class ShapeMismatch(ValidationError):
    pass


class SweepConfigError(ValidationError):
    pass


# Data errors


class TooFewPixels(DataError):
    pass


class TooFewBands(DataError):
    pass


class DataFormatError(DataError):
    pass


class DegenerateData(DataError):
    pass


class DuplicatePurestPixels(DataError):
    pass


class ZeroVector(DataError):
    pass


class ZeroMap(DataError):
    pass


class RankDeficientSpectra(DataError):
    pass


class PurityInfeasible(DataError):
    pass


class NotEnclosing(DataError):
    pass


# Numerical errors


class DegenerateSimplex(NumericalError):
    pass


class SingularFacetSystem(NumericalError):
    """
    Thrown when the facet system for vertex 'index' cannot be inverted.
    """

    def __init__(self, index: int, condition: float):
        super().__init__(
            f"Facet system excluding hyperplane {index} is singular (condition number {condition:.3e})!",
            details={"index": index, "condition": condition},
        )
        self.index = index


class ZeroNormal(NumericalError):
    pass


class EmptyRegion(NumericalError):
    """
    Thrown when a search ball holds no pixel.
    """

    def __init__(self, i: int, k: int):
        super().__init__(f"Search region {k} for hyperplane {i} is empty!", details={"i": i, "k": k})
        self.i = i
        self.k = k


class AffinelyDependentActiveSet(NumericalError):
    def __init__(self, i: int, active: list[int]):
        super().__init__(
            f"Active pixels {active} for hyperplane {i} are affinely dependent!", details={"i": i, "active": active}
        )
        self.i = i


class DegenerateDenominator(NumericalError):
    def __init__(self, i: int, value: float):
        super().__init__(
            f"Abundance denominator for endmember {i} is degenerate ({value:.3e})!", details={"i": i, "value": value}
        )
        self.i = i


# Warnings


class RankDeficientData(UserWarning):
    """
    Fewer than N-1 significant principal directions were found in the data.
    """


class NonpositiveMeanEntry(UserWarning):
    """
    A band with non-positive mean needs shifting; the shift cannot fix it.
    """


class SpectraClamped(UserWarning):
    """
    Lifted endmember spectra had negative entries that were clamped to zero.
    """
