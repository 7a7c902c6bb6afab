"""Eta-expansion of under-applied constants and constructors."""
from __future__ import annotations

from typing import Callable

from ..lambdabox.env import ErasedConstant, ErasedEnv
from ..lambdabox.syntax import (
    EApp, EBranch, ECase, EConst, ECtor, EFix, EFixDef, ELambda, ELetIn, ETerm, EVar,
    decompose_eapp, elift, mk_eapps,
)
from .masks import Masks

Required = Callable[[ETerm], int]


def eta_expand_term(t: ETerm, required: Required) -> ETerm:
    """Wrap every global head applied to fewer than ``required(head)`` arguments
    in enough lambdas to saturate it."""
    match t:
        case EApp() | EConst() | ECtor():
            head, args = decompose_eapp(t)
            if isinstance(head, EApp):
                raise AssertionError("decompose_eapp returned an application head")
            args = [eta_expand_term(a, required) for a in args]
            if not isinstance(head, (EConst, ECtor)):
                return mk_eapps(eta_expand_term(head, required), args)
            missing = required(head) - len(args)
            if missing <= 0:
                return mk_eapps(head, args)
            body = mk_eapps(head, [elift(a, missing) for a in args]
                            + [EVar(missing - 1 - i) for i in range(missing)])
            for _ in range(missing):
                body = ELambda("x", body)
            return body
        case ELambda(n, b):
            return ELambda(n, eta_expand_term(b, required))
        case ELetIn(n, v, b):
            return ELetIn(n, eta_expand_term(v, required), eta_expand_term(b, required))
        case ECase(ind, npars, s, brs):
            return ECase(ind, npars, eta_expand_term(s, required), tuple(
                EBranch(br.arity, eta_expand_term(br.body, required), br.names) for br in brs))
        case EFix(defs, idx):
            return EFix(tuple(EFixDef(d.name, eta_expand_term(d.body, required), d.rarg)
                              for d in defs), idx)
    return t


def mask_arity(masks: Masks) -> Required:
    def required(head: ETerm) -> int:
        if isinstance(head, EConst):
            return len(masks.const_mask(head.name))
        if isinstance(head, ECtor):
            return len(masks.ctor_mask(head.ind, head.index))
        return 0
    return required


def eta_expand(eenv: ErasedEnv, masks: Masks) -> ErasedEnv:
    required = mask_arity(masks)

    def go(d):
        if isinstance(d, ErasedConstant) and d.body is not None:
            return ErasedConstant(d.name, d.type_vars, d.signature,
                                  eta_expand_term(d.body, required), d.remap)
        return d

    return eenv.map_decls(go)
