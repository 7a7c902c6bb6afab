"""Removal of masked arguments from terms, declarations and values."""
from __future__ import annotations

from dataclasses import replace

from ..errors import ArityMismatch, DeargError, NotExpanded
from ..lambdabox.env import (
    ErasedConstant, ErasedCtor, ErasedEnv, ErasedInductive, ErasedOneInductive, decompose_arr,
    mk_arrs,
)
from ..lambdabox.evaluate import EValue, VCtor
from ..lambdabox.syntax import (
    EApp, EBranch, ECase, EConst, ECtor, EFix, EFixDef, ELambda, ELetIn, ETerm, EVar,
    decompose_eapp, emap_vars, mk_eapps,
)
from .masks import Masks, apply_mask, pad


def strengthen(t: ETerm, arity: int, mask) -> ETerm:
    """Remove the binders at masked positions among the ``arity`` innermost
    binders of ``t`` (position 0 is outermost); they must be unused."""
    mask = pad(mask, arity)[:arity]
    kept = [k for k in range(arity) if not mask[k]]
    new_arity = len(kept)
    new_pos = {k: p for p, k in enumerate(kept)}

    def fn(i: int, d: int) -> ETerm:
        if i < d:
            return EVar(i)
        j = i - d
        if j >= arity:
            return EVar(i - (arity - new_arity))
        k = arity - 1 - j
        if mask[k]:
            raise DeargError(f"removed binder at position {k} is used")
        return EVar(d + new_arity - 1 - new_pos[k])

    return emap_vars(t, fn)


def dearg_term(masks: Masks, t: ETerm) -> ETerm:
    match t:
        case EApp() | EConst() | ECtor():
            head, args = decompose_eapp(t)
            args = [dearg_term(masks, a) for a in args]
            if isinstance(head, EConst):
                mask = masks.const_mask(head.name)
            elif isinstance(head, ECtor):
                mask = masks.ctor_mask(head.ind, head.index)
            else:
                return mk_eapps(dearg_term(masks, head), args)
            if len(args) < len(mask):
                raise NotExpanded(f"{_name(head)} needs {len(mask)} arguments, has {len(args)}")
            return mk_eapps(head, apply_mask(mask, args))
        case ELambda(n, b):
            return ELambda(n, dearg_term(masks, b))
        case ELetIn(n, v, b):
            return ELetIn(n, dearg_term(masks, v), dearg_term(masks, b))
        case ECase(ind, npars, s, brs):
            mib = masks.ind.get(ind)
            branches = []
            for j, br in enumerate(brs):
                body = dearg_term(masks, br.body)
                amask = mib.ctor_masks[j] if mib is not None and j < len(mib.ctor_masks) else ()
                if any(amask):
                    body = strengthen(body, br.arity, amask)
                    names = tuple(apply_mask(amask, br.names)) if br.names else ()
                    branches.append(EBranch(br.arity - sum(amask[:br.arity]), body, names))
                else:
                    branches.append(EBranch(br.arity, body, br.names))
            removed = mib.removed_params if mib is not None else 0
            return ECase(ind, npars - removed, dearg_term(masks, s), tuple(branches))
        case EFix(defs, idx):
            return EFix(tuple(EFixDef(d.name, dearg_term(masks, d.body), d.rarg) for d in defs), idx)
    return t


def _name(head: ETerm) -> str:
    return head.name if isinstance(head, EConst) else f"{head.ind}#{head.index}"


def dearg_lambdas(body: ETerm, mask) -> ETerm:
    """Drop the leading lambdas of ``body`` at masked positions."""
    if not mask:
        return body
    names = []
    inner = body
    for _ in mask:
        if not isinstance(inner, ELambda):
            raise DeargError("mask is longer than the leading lambdas")
        names.append(inner.name)
        inner = inner.body
    inner = strengthen(inner, len(mask), mask)
    for name, removed in reversed(list(zip(names, mask))):
        if not removed:
            inner = ELambda(name, inner)
    return inner


def dearg_signature(sig, mask, name: str):
    doms, cod = decompose_arr(sig)
    if len(doms) < len(mask):
        raise ArityMismatch(f"{name}: signature has {len(doms)} arguments, mask has {len(mask)}")
    return mk_arrs(apply_mask(mask, doms), cod)


def dearg_decl(masks: Masks, d):
    match d:
        case ErasedConstant(name, vs, sig, body, remap):
            mask = masks.const_mask(name)
            if body is not None:
                body = dearg_lambdas(dearg_term(masks, body), mask)
            return ErasedConstant(name, vs, dearg_signature(sig, mask, name), body, remap)
        case ErasedInductive():
            first = masks.ind.get(d.bodies[0].name)
            pmask = first.param_mask if first is not None else ()
            bodies = []
            for b in d.bodies:
                mib = masks.ind.get(b.name)
                ctors = []
                for j, c in enumerate(b.ctors):
                    amask = mib.ctor_masks[j] if mib is not None and j < len(mib.ctor_masks) else ()
                    names = tuple(apply_mask(amask, c.arg_names)) if c.arg_names else ()
                    ctors.append(ErasedCtor(c.name, tuple(apply_mask(amask, c.arg_types)), names))
                bodies.append(ErasedOneInductive(b.name, tuple(ctors), b.remaps))
            return replace(d, term_params=tuple(apply_mask(pmask, d.term_params)),
                           bodies=tuple(bodies))
    return d


def dearg_env(masks: Masks, eenv: ErasedEnv) -> ErasedEnv:
    return eenv.map_decls(lambda d: dearg_decl(masks, d))


def dearg_value(masks: Masks, v: EValue) -> EValue:
    """Drop masked constructor arguments; closures are returned unchanged."""
    if isinstance(v, VCtor):
        args = apply_mask(masks.ctor_mask(v.ind, v.index), v.args)
        return VCtor(v.ind, v.index, tuple(dearg_value(masks, a) for a in args))
    return v
