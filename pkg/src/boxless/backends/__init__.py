"""Target validation and pretty-printing."""
from .checkers import elm_problems, liquidity_problems
from .common import PrintedModule
from .elm import print_elm
from .liquidity import check_liquidity, print_liquidity
from .prenex import PrenexReport, check_prenex
from .remap import RemapEntry, RemapTable, apply_remap, prune, unknown_keys

__all__ = [
    "PrintedModule", "print_elm", "check_liquidity", "print_liquidity", "PrenexReport",
    "check_prenex", "RemapEntry", "RemapTable", "apply_remap", "prune", "unknown_keys",
    "elm_problems", "liquidity_problems",
]
