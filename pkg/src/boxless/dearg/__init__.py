"""Dead-argument elimination over erased environments."""
from .analysis import analyze_usage
from .eta import eta_expand, eta_expand_term
from .logical import remove_logical_params
from .masks import EMPTY_MASKS, Mask, Masks, MibMask, compose, compose_masks, trim
from .pipeline import dearg_once, optimize
from .transform import dearg_env, dearg_term, dearg_value
from .validity import valid_masks

__all__ = [
    "analyze_usage", "eta_expand", "eta_expand_term", "remove_logical_params", "EMPTY_MASKS",
    "Mask", "Masks", "MibMask", "compose", "compose_masks", "trim", "dearg_once", "optimize",
    "dearg_env", "dearg_term", "dearg_value", "valid_masks",
]
