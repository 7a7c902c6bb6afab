"""Type-level removal of logical inductive parameters."""
from __future__ import annotations

from dataclasses import replace

from ..errors import ArityMismatch
from ..lambdabox.env import (
    BoxType, ErasedConstant, ErasedCtor, ErasedEnv, ErasedInductive, ErasedOneInductive,
    ErasedTypeAlias, TApp, TArr, TInd, decompose_tapp, mk_tapps,
)


def drop_type_args(t: BoxType, logical: dict[str, tuple[int, ...]]) -> BoxType:
    match t:
        case TArr(d, c):
            return TArr(drop_type_args(d, logical), drop_type_args(c, logical))
        case TApp() | TInd():
            head, args = decompose_tapp(t)
            args = [drop_type_args(a, logical) for a in args]
            if isinstance(head, TInd) and head.name in logical:
                positions = logical[head.name]
                if positions and len(args) <= max(positions):
                    raise ArityMismatch(f"{head.name} applied to {len(args)} type arguments, "
                                        f"parameter {max(positions)} is logical")
                args = [a for i, a in enumerate(args) if i not in positions]
            elif not isinstance(head, TInd):
                head = drop_type_args(head, logical)
            return mk_tapps(head, args)
    return t


def remove_logical_params(eenv: ErasedEnv) -> ErasedEnv:
    logical: dict[str, tuple[int, ...]] = {}
    for d in eenv:
        if isinstance(d, ErasedInductive):
            positions = tuple(i for i, p in enumerate(d.params) if p.is_logical)
            for b in d.bodies:
                logical[b.name] = positions

    def go(d):
        match d:
            case ErasedConstant():
                return replace(d, signature=drop_type_args(d.signature, logical))
            case ErasedTypeAlias(_, _, body):
                return d if body is None else replace(d, body=drop_type_args(body, logical))
            case ErasedInductive():
                bodies = tuple(
                    ErasedOneInductive(b.name, tuple(
                        ErasedCtor(c.name, tuple(drop_type_args(t, logical) for t in c.arg_types),
                                   c.arg_names) for c in b.ctors), b.remaps)
                    for b in d.bodies)
                params = tuple(p for p in d.params if not p.is_logical)
                return replace(d, params=params, bodies=bodies)
        return d

    return eenv.map_decls(go)
