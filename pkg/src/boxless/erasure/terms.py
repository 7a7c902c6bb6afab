"""Type-directed erasure of source terms.

A subterm becomes a box when its type is logical (it is a proof) or an
arity (it is a type or a type scheme).  Everything else is translated node
for node; lambdas keep their binders even when the bound variable can only
ever receive a box, so that dearging stays the only pass that changes
arities.
"""
from __future__ import annotations

from ..kernel.env import Context, GlobalEnv, push
from ..kernel.term import (
    App, Case, Const, Ctor, Fix, Lambda, LetIn, Term, Var, decompose_app, lift,
)
from ..kernel.typecheck import branch_binders, infer_type, scrutinee_params
from ..lambdabox.syntax import (
    BOX, EBranch, ECase, EConst, ECtor, EFix, EFixDef, ELambda, ELetIn, ETerm, EVar, mk_eapps,
)
from ..errors import ErasureError
from .flags import flag_of_type


def is_erasable(env: GlobalEnv, ctx: Context, t: Term) -> bool:
    flag = flag_of_type(env, ctx, infer_type(env, ctx, t))
    return flag.is_logical or flag.is_arity


def erase_term(env: GlobalEnv, ctx: Context, t: Term) -> ETerm:
    if is_erasable(env, ctx, t):
        return BOX
    match t:
        case Var(i):
            return EVar(i)
        case Lambda(name, ann, body):
            return ELambda(name, erase_term(env, push(ctx, name, ann), body))
        case LetIn(name, value, ann, body):
            return ELetIn(name, erase_term(env, ctx, value),
                          erase_term(env, push(ctx, name, ann, value), body))
        case App():
            head, args = decompose_app(t)
            return mk_eapps(erase_term(env, ctx, head), [erase_term(env, ctx, a) for a in args])
        case Const(name):
            return EConst(name)
        case Ctor(ind, j):
            return ECtor(ind, j)
        case Case(ind, npars, scrut, branches):
            params, _ = scrutinee_params(env, ctx, t)
            out = []
            for j, br in enumerate(branches):
                binders, _ = branch_binders(env, t, params, j)
                bctx = ctx
                for name, ty in binders:
                    bctx = push(bctx, name, ty)
                out.append(EBranch(br.arity, erase_term(env, bctx, br.body), br.names))
            return ECase(ind, npars, erase_term(env, ctx, scrut), tuple(out))
        case Fix(defs, idx):
            fctx = ctx
            for i, d in enumerate(defs):
                fctx = push(fctx, d.name, lift(d.type, i))
            return EFix(tuple(EFixDef(d.name, erase_term(env, fctx, d.body), d.rarg) for d in defs), idx)
    raise ErasureError(f"cannot erase {t}")
