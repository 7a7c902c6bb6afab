"""Classification of types into logical, arity and sort."""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import IllTyped
from ..kernel.env import Context, GlobalEnv, push
from ..kernel.reduce import whnf
from ..kernel.term import PROP, Prod, Sort, Term
from ..kernel.typecheck import infer_type


@dataclass(frozen=True)
class TypeFlag:
    is_logical: bool
    is_arity: bool
    is_sort: bool


def flag_of_type(env: GlobalEnv, ctx: Context, ty: Term) -> TypeFlag:
    """Flags of a type; raises IllTyped when ``ty`` is not a type."""
    sort_of_ty = whnf(env, ctx, infer_type(env, ctx, ty))
    if not isinstance(sort_of_ty, Sort):
        raise IllTyped(f"{ty} is not a type")
    is_prop = sort_of_ty.level == PROP
    t = whnf(env, ctx, ty)
    peeled = 0
    while isinstance(t, Prod):
        ctx = push(ctx, t.name, t.domain)
        t = whnf(env, ctx, t.codomain)
        peeled += 1
    if isinstance(t, Sort):
        return TypeFlag(is_logical=is_prop or t.level == PROP, is_arity=True, is_sort=peeled == 0)
    return TypeFlag(is_logical=is_prop, is_arity=False, is_sort=False)
