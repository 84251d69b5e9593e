"""Exact and estimated two-part Kolmogorov complexity and facticity."""

from .bitcodec import decode_sd, encode_sd, sd_len
from .collapse import (
    collapse_prob,
    epsilon_no_model,
    facticity_threshold,
    log2_binomial,
    max_facticity_bound,
    saturation_bound,
)
from .entropy import binary_entropy, inverse_entropy_bisect, inverse_entropy_productlog, lambert_w0
from .estimator import estimate, gen_stochastic, model_costs, normalized_facticity, sweep
from .exact import CodeTable, FacticityReport, enumerate_codes, taxonomy_label, universal_sample
from .microvm import Budget, RunOutcome, parse_index, run
from .processes import classify, series_report

__version__ = "0.1.0"
