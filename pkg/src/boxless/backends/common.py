"""Plumbing shared by the two printers."""
from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import BackendError
from ..lambdabox.env import ErasedConstant, ErasedEnv, ErasedInductive, Remap
from ..lambdabox.syntax import EConst, ECtor, ETerm
from ..dearg.eta import eta_expand_term
from .remap import RemapTable, placeholders, remapped_names


@dataclass(frozen=True)
class PrintedModule:
    prelude: str
    type_decls: str
    value_decls: str
    entry_wrapper: str | None = None

    @property
    def text(self) -> str:
        parts = [self.prelude, self.type_decls, self.value_decls, self.entry_wrapper or ""]
        return "\n\n".join(p.rstrip("\n") for p in parts if p.strip()) + "\n"


def saturation(eenv: ErasedEnv):
    """Arguments each head must receive before printing: constructors take
    their full arity, templated remaps the number of their placeholders."""
    remaps = remapped_names(eenv)

    def required(head: ETerm) -> int:
        if isinstance(head, ECtor):
            decl, k = eenv.inductive(head.ind)
            c = decl.bodies[k].ctors[head.index]
            r = dict(decl.bodies[k].remaps).get(c.name)
            if r is not None and placeholders(r.target):
                return placeholders(r.target)
            return eenv.ctor_arity(head.ind, head.index)
        if isinstance(head, EConst) and head.name in remaps:
            return placeholders(remaps[head.name].target)
        return 0

    return required


def saturate(eenv: ErasedEnv) -> ErasedEnv:
    required = saturation(eenv)

    def go(d):
        if isinstance(d, ErasedConstant) and d.body is not None and d.remap is None:
            return ErasedConstant(d.name, d.type_vars, d.signature,
                                  eta_expand_term(d.body, required), d.remap)
        return d

    return eenv.map_decls(go)


def used_remaps(table: RemapTable, eenv: ErasedEnv) -> list[tuple[str, Remap]]:
    """Table entries that name something in ``eenv``, in table order."""
    present = remapped_names(eenv)
    return [(k, r) for k, r in table.items() if k in present]


def inline_blocks(table: RemapTable, eenv: ErasedEnv) -> list[str]:
    seen, out = set(), []
    for _, r in used_remaps(table, eenv):
        if r.inline and r.inline not in seen:
            seen.add(r.inline)
            out.append(r.inline)
    return out


def ctor_remap(eenv: ErasedEnv, ind: str, j: int) -> Remap | None:
    decl, k = eenv.inductive(ind)
    body = decl.bodies[k]
    return dict(body.remaps).get(body.ctors[j].name)


# names, tuples, lists and cons cells are the only pattern syntax a template may use
_PATTERN_TEMPLATE = re.compile(r"[\s\w.'(),\[\]{}:]*")


def pattern_template(eenv: ErasedEnv, ind: str, j: int, decl: str) -> Remap | None:
    """The constructor remap, rejected when it cannot stand in a pattern."""
    r = ctor_remap(eenv, ind, j)
    if r is not None and placeholders(r.target) and not _PATTERN_TEMPLATE.fullmatch(r.target):
        raise BackendError(f"{decl}: cannot match on {eenv.ctor(ind, j).name}, "
                           f"its remap {r.target!r} is not a pattern")
    return r


def block_names(d: ErasedInductive) -> set[str]:
    return {b.name for b in d.bodies}
