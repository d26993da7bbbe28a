from .boosted import Tree, TreeEnsemble, train_boosted_ovr
from .common import (
    PredictionSet,
    TrainConfig,
    compute_class_weights,
    sigmoid,
    threshold_predictions,
    to_label_matrix,
)
from .linear import LinearModel, hinge_objective, train_linear_ovr
from .predictions import load_model, predict, save_model

__all__ = [
    "LinearModel",
    "PredictionSet",
    "TrainConfig",
    "Tree",
    "TreeEnsemble",
    "compute_class_weights",
    "hinge_objective",
    "load_model",
    "predict",
    "save_model",
    "sigmoid",
    "threshold_predictions",
    "to_label_matrix",
    "train_boosted_ovr",
    "train_linear_ovr",
]
