from .evaluate import Vector, eval_expr
from .logic import and3, not3, or3
from .stats import (SUMMARY_FUNCTIONS, stat_max, stat_mean, stat_min,
                    stat_quantile, stat_sd, stat_sum)
from .verbs import (StageTrace, apply_arrange, apply_filter, apply_group_by,
                    apply_mutate, apply_select, apply_summarize, apply_verb,
                    eval_pipeline)

__all__ = [
    "SUMMARY_FUNCTIONS",
    "StageTrace",
    "Vector",
    "and3",
    "apply_arrange",
    "apply_filter",
    "apply_group_by",
    "apply_mutate",
    "apply_select",
    "apply_summarize",
    "apply_verb",
    "eval_expr",
    "eval_pipeline",
    "not3",
    "or3",
    "stat_max",
    "stat_mean",
    "stat_min",
    "stat_quantile",
    "stat_sd",
    "stat_sum",
]
