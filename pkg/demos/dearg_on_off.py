"""Extract every corpus program for both targets with dearging on and off.

Liquidity cannot represent boxes, so without dearging most programs are
rejected; Elm prints leftover boxes as unit values.
Run with ``python3 demos/dearg_on_off.py``.
"""
import logging

from boxless.errors import BoxlessError
from boxless.frontend.elaborate import CORPUS_DIR
from boxless.frontend.pipeline import PipelineConfig, run_pipeline

SKIP = {"prelude", "nums"}


def outcome(program, target, dearg):
    seeds, entry = (("counter",), "counter") if program == "counter" else (("main",), None)
    cfg = PipelineConfig(CORPUS_DIR / f"{program}.ccx", seeds, target,
                         CORPUS_DIR / f"{target}.remap", entry if target == "liquidity" else None,
                         dearg)
    try:
        r = run_pipeline(cfg, write=False)
    except BoxlessError as exc:
        return f"{type(exc).__name__}"
    return f"ok, {r.report['boxes_after']} boxes"


def main():
    logging.disable(logging.WARNING)
    programs = sorted(p.stem for p in CORPUS_DIR.glob("*.ccx") if p.stem not in SKIP)
    header = f"{'program':18}" + "".join(f"{t + ' ' + d:>26}" for t in ("liquidity", "elm")
                                         for d in ("off", "on"))
    print(header)
    for program in programs:
        cells = [outcome(program, t, d) for t in ("liquidity", "elm") for d in ("off", "on")]
        print(f"{program:18}" + "".join(f"{c:>26}" for c in cells))


if __name__ == "__main__":
    main()
