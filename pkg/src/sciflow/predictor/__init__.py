from .evaluate import auc, average_ranks
from .features import (
    EXTERNAL_FILE,
    HASHED_TITLE,
    FeatureConfig,
    FeatureMatrix,
    build_features,
    hashed_title_row,
    token_slot,
    tokenize,
)
from .gcn import (
    GcnModel,
    TrainConfig,
    forward,
    glorot,
    grad_check,
    init_weights,
    loss_and_grads,
    loss_value,
    numeric_grads,
    predict_proba,
    relative_error,
    softmax_rows,
    train,
)
from .graph import NormalizedAdjacency, normalize_adjacency
from .pipeline import (
    PREDICT_WINDOW,
    GroupPrediction,
    PipelineResult,
    SplitConfig,
    Splits,
    group_labels,
    group_seed,
    make_splits,
    p_index,
    p_index_table,
    percentile_scores,
    run_pipeline,
    score_groups,
    top_groups,
)

__all__ = [
    "EXTERNAL_FILE",
    "HASHED_TITLE",
    "PREDICT_WINDOW",
    "FeatureConfig",
    "FeatureMatrix",
    "GcnModel",
    "GroupPrediction",
    "NormalizedAdjacency",
    "PipelineResult",
    "SplitConfig",
    "Splits",
    "TrainConfig",
    "auc",
    "average_ranks",
    "build_features",
    "forward",
    "glorot",
    "grad_check",
    "group_labels",
    "group_seed",
    "hashed_title_row",
    "init_weights",
    "loss_and_grads",
    "loss_value",
    "make_splits",
    "normalize_adjacency",
    "numeric_grads",
    "p_index",
    "p_index_table",
    "percentile_scores",
    "predict_proba",
    "relative_error",
    "run_pipeline",
    "score_groups",
    "softmax_rows",
    "token_slot",
    "tokenize",
    "top_groups",
    "train",
]
