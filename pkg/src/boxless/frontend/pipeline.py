"""The extraction pipeline from a source file to target text plus a report."""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

from ..backends import apply_remap, check_prenex, print_elm, print_liquidity, prune, unknown_keys
from ..backends.elm import module_name
from ..dearg import Masks, optimize, remove_logical_params
from ..erasure import erase_dependencies
from ..erasure.values import erase_value
from ..errors import BoxlessError
from ..kernel import DEFAULT_FUEL, GlobalEnv, check_env, eval_source
from ..kernel.term import Const
from ..lambdabox import EConst, ErasedConstant, ErasedEnv, count_boxes, eval_box
from ..lambdabox.env import TArr
from ..dearg.transform import dearg_value
from .elaborate import load_program
from .remap_format import parse_remap


TARGETS = ("liquidity", "elm")
log = logging.getLogger("boxless.pipeline")
EXTENSIONS = {"liquidity": ".liq.ml", "elm": ".elm"}


@dataclass(frozen=True)
class PipelineConfig:
    input_path: Path
    seeds: tuple[str, ...]
    target: str = "liquidity"
    remap_path: Path | None = None
    entry: str | None = None
    dearg: str = "on"
    output_path: Path | None = None
    report_path: Path | None = None
    fuel: int = DEFAULT_FUEL

    def __post_init__(self):
        if not self.seeds:
            raise ValueError("at least one seed is required")
        if self.entry is not None and self.entry not in self.seeds:
            raise ValueError(f"entry {self.entry!r} must be one of the seeds")
        if self.target not in TARGETS:
            raise ValueError(f"target must be one of {TARGETS}")


@dataclass
class PipelineResult:
    source: GlobalEnv
    erased: ErasedEnv  # before dearging
    dearged: ErasedEnv  # after dearging and logical parameter removal
    masks: Masks
    printed_env: ErasedEnv  # remapped and pruned
    text: str
    report: dict = field(default_factory=dict)


def _boxes(eenv: ErasedEnv, names=None) -> int:
    return sum(count_boxes(d.body) for d in eenv
               if isinstance(d, ErasedConstant) and d.body is not None
               and (names is None or d.name in names))


def _evaluations(cfg: PipelineConfig, env: GlobalEnv, erased: ErasedEnv,
                 dearged: ErasedEnv, masks: Masks) -> dict:
    """Evaluate closed first-order seeds on both sides of the pipeline."""
    out = {}
    for s in cfg.seeds:
        d = erased.lookup(s) if s in erased else None
        if not isinstance(d, ErasedConstant) or d.type_vars or isinstance(d.signature, TArr):
            continue
        try:
            before = erase_value(erased, eval_source(env, Const(s), cfg.fuel))
            after = eval_box(dearged, EConst(s), cfg.fuel)
        except BoxlessError as exc:
            out[s] = {"error": str(exc)}
            continue
        if before is None:
            continue
        out[s] = {"agree": dearg_value(masks, before) == after, "value": repr(after)}
    return out


def run_pipeline(cfg: PipelineConfig, write: bool = True) -> PipelineResult:
    env = load_program(cfg.input_path)
    check_env(env).raise_first()

    table = {}
    if cfg.remap_path is not None:
        table = parse_remap(Path(cfg.remap_path).read_text(encoding="utf-8"))
    # a remapped axiom is realised by the target, so erasure need not look inside
    opaque = frozenset(k for k in table if env.is_constant(k) and env.constant(k).body is None)

    erased = erase_dependencies(env, cfg.seeds, opaque)
    dearged, masks = optimize(erased, cfg.dearg)
    dearged = remove_logical_params(dearged)

    for key in table:
        if not (env.is_constant(key) or env.is_inductive(key) or env.ctor_by_name(key)):
            log.warning("remap key %r is not defined by the program", key)
    unused = unknown_keys(table, dearged)
    remapped = apply_remap({k: r for k, r in table.items() if k not in unused}, dearged)
    printed_env = prune(remapped, cfg.seeds)
    # remapped declarations never reach the output, so they may be non-prenex
    check_prenex(printed_env).raise_first()
    if cfg.target == "liquidity":
        module = print_liquidity(printed_env, table, cfg.entry)
    else:
        module = print_elm(printed_env, table, module_name(Path(cfg.input_path).name.split(".")[0]))
    text = module.text

    emitted = [d.name for d in printed_env if d.remap is None]
    report = {
        "input": str(cfg.input_path),
        "target": cfg.target,
        "seeds": list(cfg.seeds),
        "entry": cfg.entry,
        "dearg": cfg.dearg,
        "masks": masks.to_json(),
        "boxes_before": _boxes(erased, set(emitted)),
        "boxes_after": _boxes(dearged, set(emitted)),
        "declarations": emitted,
        "declaration_count": len(emitted),
        "unused_remap_keys": unused,
        "evaluations": _evaluations(cfg, env, erased, dearged, masks),
    }
    if write:
        if cfg.output_path is not None:
            Path(cfg.output_path).write_text(text, encoding="utf-8")
        if cfg.report_path is not None:
            Path(cfg.report_path).write_text(json.dumps(report, indent=2, sort_keys=True) + "\n",
                                             encoding="utf-8")
    return PipelineResult(env, erased, dearged, masks, printed_env, text, report)
