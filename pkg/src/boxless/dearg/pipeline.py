"""Dearging as one step: expand, analyze, validate, rewrite."""
from __future__ import annotations

from ..errors import DeargError
from ..lambdabox.env import ErasedEnv
from .analysis import analyze_usage
from .eta import eta_expand
from .masks import EMPTY_MASKS, Masks, compose_masks
from .transform import dearg_env
from .validity import valid_masks

MODES = ("on", "off", "iterate")


def dearg_once(eenv: ErasedEnv) -> tuple[ErasedEnv, Masks]:
    masks = analyze_usage(eenv)
    if not valid_masks(eenv, masks):
        raise DeargError("usage analysis produced invalid masks")
    return dearg_env(masks, eta_expand(eenv, masks)), masks


def optimize(eenv: ErasedEnv, mode: str = "on", max_rounds: int = 32) -> tuple[ErasedEnv, Masks]:
    """Dearg ``eenv``; ``iterate`` repeats until no mask removes anything.

    The returned masks are the composition of all rounds, relative to ``eenv``.
    """
    if mode not in MODES:
        raise ValueError(f"dearg mode must be one of {MODES}")
    if mode == "off":
        return eenv, EMPTY_MASKS
    out, total = dearg_once(eenv)
    if mode == "on":
        return out, total
    for _ in range(max_rounds):
        masks = analyze_usage(out)
        if masks.is_empty():
            break
        out, masks = dearg_once(out)
        total = compose_masks(total, masks)
    return out, total
