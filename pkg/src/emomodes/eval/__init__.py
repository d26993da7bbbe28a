from .confusion import ConfusionMatrix, confusion_matrix
from .crosstabs import (
    CrossTable,
    category_f1_by_mode,
    cooccurrence,
    mode_f1_by_category,
)
from .metrics import (
    LabelMetrics,
    MetricsReport,
    TaskMetrics,
    align_sets,
    cohen_kappa,
    conditional_metrics,
    expert_agreement_rate,
    polarity_metrics,
    prf1,
)

__all__ = [
    "ConfusionMatrix",
    "CrossTable",
    "LabelMetrics",
    "MetricsReport",
    "TaskMetrics",
    "align_sets",
    "category_f1_by_mode",
    "cohen_kappa",
    "conditional_metrics",
    "confusion_matrix",
    "cooccurrence",
    "expert_agreement_rate",
    "mode_f1_by_category",
    "polarity_metrics",
    "prf1",
]
