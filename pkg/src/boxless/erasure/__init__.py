"""Erasure of source terms, types and declarations."""
from .decls import (
    decl_refs, erase_constant, erase_decl, erase_dependencies, erase_inductive,
)
from .flags import TypeFlag, flag_of_type
from .terms import erase_term
from .types import (
    REL_OTHER, EraseCtxEntry, RelInductive, RelOther, RelTypeVar, erase_type,
)
from ..lambdabox.env import ErasedConstant, ErasedEnv, ErasedInductive, ErasedTypeAlias

__all__ = [
    "decl_refs", "erase_constant", "erase_decl", "erase_dependencies", "erase_inductive",
    "TypeFlag", "flag_of_type", "erase_term", "REL_OTHER", "EraseCtxEntry", "RelInductive",
    "RelOther", "RelTypeVar", "erase_type", "ErasedConstant", "ErasedEnv", "ErasedInductive",
    "ErasedTypeAlias",
]
