"""fivenum: sample mean and SD from reported five-number summaries.

Converts the quantile summaries that clinical studies report
({min, median, max}, {q1, median, q3}, or all five, plus the sample
size) into estimates of the sample mean and standard deviation for use
in meta-analysis, applying the size-adaptive smoothly weighted SD
estimator together with the established optimal mean estimators.
"""

from ._kernels import available_backends, backend_name
from .errors import (ConfigError, DomainError, FitError, FivenumError,
                     NumericError, ScenarioError, ValidationError,
                     VALIDATION_CODES)
from .estimators import (EstimateResult, FiveNumberSummary, MethodId,
                         Scenario, estimate, eta, mean_bland_s3, mean_luo_s1,
                         mean_luo_s2, mean_luo_s3, sd_bland_s3, sd_hozo_s1,
                         sd_optimal_s3, sd_wan_s1, sd_wan_s2, sd_wan_s3,
                         weighted_sd, xi)
from .order_stats import (OrderIndex, OrderStatMoments, cov_of, mc_oracle,
                          mean_of, summary_moments, summary_ranks)
from .simulator import (DistributionSpec, HistogramReport, RmseReport,
                        SimulationConfig, asymptotic_checks,
                        run_histogram_study, run_rmse_study,
                        run_skewed_suite, sample_summary)
from .studies import (ConversionRecord, StudyRow, convert_file,
                      detect_scenario, records_to_csv)
from .weights import (PowerLawFit, WeightTableRow, approx_weight, exact_J,
                      exact_optimal_weight, fit_power_law, generate_table,
                      shortcut_coefficients, table_to_csv)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "available_backends",
    "backend_name",
    # errors
    "FivenumError", "DomainError", "ValidationError", "ScenarioError",
    "NumericError", "FitError", "ConfigError", "VALIDATION_CODES",
    # estimators
    "Scenario", "FiveNumberSummary", "MethodId", "EstimateResult",
    "estimate", "xi", "eta", "weighted_sd", "sd_wan_s1", "sd_wan_s2",
    "sd_wan_s3", "sd_optimal_s3", "sd_hozo_s1", "sd_bland_s3",
    "mean_luo_s1", "mean_luo_s2", "mean_luo_s3", "mean_bland_s3",
    # order statistics
    "OrderIndex", "OrderStatMoments", "mean_of", "cov_of",
    "summary_moments", "mc_oracle", "summary_ranks",
    # weights
    "WeightTableRow", "PowerLawFit", "exact_J", "exact_optimal_weight",
    "approx_weight", "shortcut_coefficients", "generate_table",
    "table_to_csv", "fit_power_law",
    # simulator
    "DistributionSpec", "SimulationConfig", "RmseReport",
    "HistogramReport", "sample_summary", "run_rmse_study",
    "run_histogram_study", "run_skewed_suite", "asymptotic_checks",
    # studies / IO
    "StudyRow", "ConversionRecord", "detect_scenario", "convert_file",
    "records_to_csv",
]
