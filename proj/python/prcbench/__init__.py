"""Iterative line-projection classifiers (PRC/DPRC) with baselines.

Thin re-export of the compiled core; see the C++ headers for the full
interface documentation.
"""

from ._core import (
    Dataset,
    DiscriminantProjection,
    PrcConfig,
    PrcError,
    Prediction,
    ProjectionResult,
    StopReason,
    affine_oracle_distance,
    apply_projection,
    dprc_classify,
    dprc_fit,
    gen_synthetic_subspace,
    load_csv_dataset,
    load_model,
    lrc_distance,
    nn_classify,
    pca_fit,
    prc_classify,
    run_projection,
    save_model,
    split_dataset,
)
from ._core import __version__

__all__ = [
    "Dataset",
    "DiscriminantProjection",
    "PrcConfig",
    "PrcError",
    "Prediction",
    "ProjectionResult",
    "StopReason",
    "affine_oracle_distance",
    "apply_projection",
    "dprc_classify",
    "dprc_fit",
    "gen_synthetic_subspace",
    "load_csv_dataset",
    "load_model",
    "lrc_distance",
    "nn_classify",
    "pca_fit",
    "prc_classify",
    "run_projection",
    "save_model",
    "split_dataset",
    "__version__",
]
