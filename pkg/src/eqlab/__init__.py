"""eqlab: a desk-scale laboratory for canonical vs. affine coherent-state quantization."""

__version__ = "0.1.0"

from .errors import (
    ConfigurationError,
    ContractViolationError,
    DomainError,
    EqLabError,
    NoSolutionError,
    NumericalResolutionError,
    ResourceLimitError,
)
from .hilbert import (
    BasisKind,
    BasisSpec,
    FiducialCondition,
    FiducialVector,
    GridScale,
    OperatorMatrix,
    QuantizationParams,
    SpectrumResult,
    build_affine_ops,
    build_canonical_ops,
    eigen_spectrum,
    solve_fiducial,
    spiked_spectrum,
)
