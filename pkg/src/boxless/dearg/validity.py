"""Independent re-check that masked positions are really unused."""
from __future__ import annotations

from ..lambdabox.env import ErasedConstant, ErasedEnv
from ..lambdabox.syntax import ECase, ELambda, occurs, subterms
from .masks import Masks


def _const_ok(eenv: ErasedEnv, name: str, mask) -> bool:
    if not any(mask):
        return True
    d = eenv._index.get(name)
    if not isinstance(d, ErasedConstant) or d.body is None:
        return False
    body = d.body
    n = len(mask)
    for _ in range(n):
        if not isinstance(body, ELambda):
            return False
        body = body.body
    return not any(removed and occurs(body, n - 1 - k) for k, removed in enumerate(mask))


def valid_masks(eenv: ErasedEnv, masks: Masks) -> bool:
    for name, mask in masks.cst.items():
        if not _const_ok(eenv, name, mask):
            return False
    for ind, mib in masks.ind.items():
        if not (any(mib.param_mask) or any(any(m) for m in mib.ctor_masks)):
            continue
        entry = eenv._index.get(ind)
        if not isinstance(entry, tuple):
            return False
        decl, k = entry
        if mib.npars != decl.npars or len(mib.param_mask) > decl.npars:
            return False
        ctors = decl.bodies[k].ctors
        if len(mib.ctor_masks) > len(ctors):
            return False
        for j, m in enumerate(mib.ctor_masks):
            if len(m) > len(ctors[j].arg_types):
                return False
    # every masked constructor argument is unused in every branch
    for d in eenv:
        if not isinstance(d, ErasedConstant) or d.body is None:
            continue
        for u in subterms(d.body):
            if not isinstance(u, ECase) or u.ind not in masks.ind:
                continue
            mib = masks.ind[u.ind]
            for j, br in enumerate(u.branches):
                m = mib.ctor_masks[j] if j < len(mib.ctor_masks) else ()
                for k, removed in enumerate(m):
                    if removed and (k >= br.arity or occurs(br.body, br.arity - 1 - k)):
                        return False
    return True
