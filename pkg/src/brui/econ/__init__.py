from .correlation import CorrelationError, compare, pearson_correlation
from .fevd import DegenerateVarianceError, FevdTable, fevd
from .irf import (
    BootstrapError,
    IrfResult,
    NotPositiveDefiniteError,
    bootstrap_irf,
    cholesky_factor,
    impulse_response,
    ma_coefficients,
)
from .transforms import DEFAULT_ORDER, MacroPanel, PanelError, SeriesTransform, read_panel_csv, transform_series
from .var import SingularRegressorError, VarError, VarModel, fit_var, select_lag, simulate_var
