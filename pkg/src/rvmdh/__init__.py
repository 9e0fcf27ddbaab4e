"""Session-split realized volatility, noise-bias fitting, and the MDH test battery."""

from .errors import (
    AlignmentError,
    ConfigError,
    DataError,
    DegenerateDataError,
    DegenerateFitError,
    EmptyDataError,
    InsufficientDataError,
    MissingDayError,
    ParseError,
    SimulationDivergedError,
    ValidationError,
)
from .market_data import (
    Session,
    SessionSpec,
    Tick,
    TickSeries,
    ingest_csv,
    session_slices,
)
from .noise_fit import (
    NoiseFit,
    SignatureCurve,
    SignaturePoint,
    bias_at,
    fit_noise_model,
    signature_curve,
)
from .pipeline import SessionPipelineResult, run_pipeline, run_session
from .realized_vol import (
    HlFactor,
    RvEntry,
    RvSeries,
    hansen_lunde_factor,
    realized_volatility,
    rv_series,
)
from .sampling import (
    ReturnSeries,
    SessionDayReturns,
    default_delta_grid,
    intraday_returns,
    zone_returns,
)
from .simulator import (
    ConstantVol,
    LognormalOuVol,
    SimConfig,
    SimOutput,
    simulate,
    true_iv_lookup,
    true_session_return,
)
from .stats_tests import (
    AcfResult,
    MdhReport,
    StandardizedSeries,
    acf,
    anderson_darling,
    bias_corrected_std,
    jackknife_se,
    kurtosis,
    mdh_report,
    sample_std,
    standardize,
)

__version__ = "0.1.0"

__all__ = [
    "AcfResult",
    "AlignmentError",
    "ConfigError",
    "ConstantVol",
    "DataError",
    "DegenerateDataError",
    "DegenerateFitError",
    "EmptyDataError",
    "HlFactor",
    "InsufficientDataError",
    "LognormalOuVol",
    "MdhReport",
    "MissingDayError",
    "NoiseFit",
    "ParseError",
    "ReturnSeries",
    "RvEntry",
    "RvSeries",
    "Session",
    "SessionDayReturns",
    "SessionPipelineResult",
    "SessionSpec",
    "SignatureCurve",
    "SignaturePoint",
    "SimConfig",
    "SimOutput",
    "SimulationDivergedError",
    "StandardizedSeries",
    "Tick",
    "TickSeries",
    "ValidationError",
    "acf",
    "anderson_darling",
    "bias_at",
    "bias_corrected_std",
    "default_delta_grid",
    "fit_noise_model",
    "hansen_lunde_factor",
    "ingest_csv",
    "intraday_returns",
    "jackknife_se",
    "kurtosis",
    "mdh_report",
    "realized_volatility",
    "rv_series",
    "run_pipeline",
    "run_session",
    "sample_std",
    "session_slices",
    "signature_curve",
    "simulate",
    "standardize",
    "true_iv_lookup",
    "true_session_return",
    "zone_returns",
    "__version__",
]
