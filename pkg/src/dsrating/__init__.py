"""Dual scaling and correspondence analysis of rating data."""
from .dataio import builtin, load_csv, serialize_result
from .engine import ScalingSolution, WeightModel, derive_weights, explained_variance, fixed_weights, solve
from .errors import *  # noqa: F401,F403
from .matrix import SvdResult, scale_rows_cols, svd
from .recode import Kind, RatingMatrix, RecodedMatrix, reverse_scale
from .variants import (Variant, VariantConfig, VariantResult, estimate_mean_ratings, run,
                       run_car, run_ds1, run_ds1_dominance, run_ds2, run_ds3)

__version__ = "0.1.0"
