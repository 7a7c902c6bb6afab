"""Remap tables: replacing source globals with target-language primitives."""
from __future__ import annotations

import logging
import re
from dataclasses import replace

from ..lambdabox.env import (
    ErasedConstant, ErasedEnv, ErasedInductive, ErasedOneInductive, ErasedTypeAlias, Remap,
)
from ..erasure.decls import decl_refs

log = logging.getLogger("boxless.remap")

RemapEntry = Remap
RemapTable = dict  # source name -> Remap, in file order

_PLACEHOLDER = re.compile(r"\{(\d+)\}")


def placeholders(target: str) -> int:
    """Number of arguments a template target consumes (0 for plain names)."""
    found = [int(m) for m in _PLACEHOLDER.findall(target)]
    return max(found) + 1 if found else 0


def fill(target: str, args: list[str]) -> str:
    return _PLACEHOLDER.sub(lambda m: args[int(m.group(1))], target)


def remapped_names(eenv: ErasedEnv) -> dict[str, Remap]:
    """Every remap recorded in ``eenv``, constructors included."""
    out = {}
    for d in eenv:
        if d.remap is not None:
            out[d.name] = d.remap
        if isinstance(d, ErasedInductive):
            for b in d.bodies:
                out.update(dict(b.remaps))
    return out


def unknown_keys(table: RemapTable, eenv: ErasedEnv) -> list[str]:
    known = set(eenv.names())
    for d in eenv:
        if isinstance(d, ErasedInductive):
            known |= {c.name for b in d.bodies for c in b.ctors}
    return [k for k in table if k not in known]


def apply_remap(table: RemapTable, eenv: ErasedEnv) -> ErasedEnv:
    """Record remaps on declarations and drop the bodies they replace."""
    for key in unknown_keys(table, eenv):
        log.warning("remap key %r does not name an extracted declaration", key)

    def go(d):
        match d:
            case ErasedConstant() if d.name in table:
                return replace(d, body=None, remap=table[d.name])
            case ErasedTypeAlias() if d.name in table:
                return replace(d, body=None, remap=table[d.name])
            case ErasedInductive():
                bodies = tuple(
                    ErasedOneInductive(b.name, b.ctors, tuple(
                        (c.name, table[c.name]) for c in b.ctors if c.name in table))
                    for b in d.bodies)
                remap = table.get(d.name, d.remap)
                return replace(d, bodies=bodies, remap=remap)
        return d

    return eenv.map_decls(go)


def prune(eenv: ErasedEnv, roots) -> ErasedEnv:
    """Keep declarations reachable from ``roots``; remapped ones end the search."""
    keep: set[str] = set()
    todo = list(roots)
    while todo:
        name = todo.pop()
        if name not in eenv:
            continue
        d = eenv.lookup(name)
        d = d[0] if isinstance(d, tuple) else d
        if d.name in keep:
            continue
        keep.add(d.name)
        if d.remap is None:
            todo.extend(decl_refs(d))
    return ErasedEnv(tuple(d for d in eenv if d.name in keep))
