"""``extract``: command-line front end of the pipeline."""
from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from .errors import BackendError, BoxlessError, DeargError, ErasureError
from .frontend.pipeline import TARGETS, PipelineConfig, run_pipeline
from .kernel import DEFAULT_FUEL

EXIT_OK, EXIT_SOURCE, EXIT_ERASURE, EXIT_BACKEND = 0, 2, 3, 4


def exit_code(exc: BaseException) -> int:
    if isinstance(exc, (ErasureError, DeargError)):
        return EXIT_ERASURE
    if isinstance(exc, BackendError):
        return EXIT_BACKEND
    return EXIT_SOURCE


def _color_enabled() -> bool:
    return os.environ.get("BOXLESS_COLOR", "").lower() in ("1", "true", "yes", "always", "on")


def report_error(stage: str, message: str, stream=None) -> None:
    label = f"error[{stage}]"
    if _color_enabled():
        label = f"\x1b[1;31m{label}\x1b[0m"
    print(f"{label}: {message}", file=stream or sys.stderr)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="extract", description="Extract a .ccx program to a contract language.")
    p.add_argument("input", type=Path)
    p.add_argument("--seed", dest="seeds", action="extend", nargs="+", required=True, metavar="NAME")
    p.add_argument("--target", choices=TARGETS, required=True)
    p.add_argument("--remap", type=Path)
    p.add_argument("--entry")
    p.add_argument("--dearg", choices=("on", "off", "iterate"), default="on")
    p.add_argument("--fuel", type=int, default=DEFAULT_FUEL)
    p.add_argument("-o", "--output", type=Path, help="output file (default: standard output)")
    p.add_argument("--report", type=Path, help="write the JSON report here")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(format="warning: %(message)s", level=logging.WARNING, stream=sys.stderr)
    try:
        cfg = PipelineConfig(
            input_path=args.input, seeds=tuple(args.seeds), target=args.target,
            remap_path=args.remap, entry=args.entry, dearg=args.dearg,
            output_path=args.output, report_path=args.report, fuel=args.fuel,
        )
        result = run_pipeline(cfg)
    except ValueError as exc:
        report_error("config", str(exc))
        return EXIT_SOURCE
    except OSError as exc:
        report_error("io", str(exc))
        return EXIT_SOURCE
    except BoxlessError as exc:
        report_error(exc.stage, str(exc))
        return exit_code(exc)
    if args.output is None:
        sys.stdout.write(result.text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
