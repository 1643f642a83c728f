"""Trend/fluctuation decomposition built on equivalent effect functions.

A series is summarized by the spline that interpolates its running
integral at chosen control points; the derivative of that spline is
the equivalent effect function, a smooth stand-in that preserves the
integral between control points exactly. Repeating the construction
on successively smoother trends peels a signal into intrinsic modes,
and doing it slice by slice extends the idea to grayscale images.
"""

from .decompose import (
    EXTREMA_COUNT_REACHED,
    MAX_MODES_REACHED,
    Mode,
    ModeStack,
    decompose,
    discrete_derivative,
    estimate_trend,
    find_extrema,
    find_inflexions,
    imd_step,
)
from .eef import (
    ControlPoints,
    EefResult,
    Series,
    build_eef,
    chain_eef,
    cumulative_integral,
    difference_partition_sums,
)
from .exceptions import (
    CorruptHeader,
    DegenerateSeries,
    DuplicateTimestamp,
    EmptyFile,
    FastimdError,
    ImageTooSmall,
    NonAbuttingSegments,
    NonIncreasingAbscissa,
    OutOfDomain,
    ParseError,
    SingularSystem,
    StrideTooLarge,
    TooFewControlPoints,
    TooFewPoints,
    TruncatedPixelData,
    UnsupportedFormat,
)
from .fitting import FitResult, fit_control_points, fit_curve, sample_eef
from .formats import (
    read_image,
    read_series_csv,
    shift_fluctuation,
    write_image,
    write_modes_csv,
)
from .image import (
    HORIZONTAL,
    VERTICAL,
    GrayImage,
    ImageMode,
    decompose_direction,
    decompose_image,
    inter_slice_smoothness,
)
from .plotting import PlotSpec, write_plot_svg
from .splines import BoundaryCondition, PiecewisePoly, build_even_spline, build_odd_spline

__version__ = "0.1.0"

__all__ = [
    "BoundaryCondition",
    "ControlPoints",
    "CorruptHeader",
    "DegenerateSeries",
    "DuplicateTimestamp",
    "EXTREMA_COUNT_REACHED",
    "EefResult",
    "EmptyFile",
    "FastimdError",
    "FitResult",
    "GrayImage",
    "HORIZONTAL",
    "ImageMode",
    "ImageTooSmall",
    "MAX_MODES_REACHED",
    "Mode",
    "ModeStack",
    "NonAbuttingSegments",
    "NonIncreasingAbscissa",
    "OutOfDomain",
    "ParseError",
    "PiecewisePoly",
    "PlotSpec",
    "Series",
    "SingularSystem",
    "StrideTooLarge",
    "TooFewControlPoints",
    "TooFewPoints",
    "TruncatedPixelData",
    "UnsupportedFormat",
    "VERTICAL",
    "build_eef",
    "build_even_spline",
    "build_odd_spline",
    "chain_eef",
    "cumulative_integral",
    "decompose",
    "decompose_direction",
    "decompose_image",
    "difference_partition_sums",
    "discrete_derivative",
    "estimate_trend",
    "find_extrema",
    "find_inflexions",
    "fit_control_points",
    "fit_curve",
    "imd_step",
    "inter_slice_smoothness",
    "read_image",
    "read_series_csv",
    "sample_eef",
    "shift_fluctuation",
    "write_image",
    "write_modes_csv",
    "write_plot_svg",
]
