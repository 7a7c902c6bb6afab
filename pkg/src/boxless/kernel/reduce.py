"""Weak-head reduction.

``whnf`` is the conversion workhorse (beta, iota, zeta, delta, local lets).
``whnf_betaiotazeta`` is the restricted reducer used by type erasure: it only
unfolds a constant when doing so exposes a further beta/iota/zeta step, and it
never recurses into subterms.
"""
from __future__ import annotations

from .env import Context, GlobalEnv
from .term import (
    Case, Const, Ctor, Fix, Lambda, LetIn, Term, Var, decompose_app,
    instantiate, lift, mk_apps, subst1,
)


def unfold_fix(fix: Fix) -> Term:
    """Body of the selected definition with every sibling substituted."""
    n = len(fix.defs)
    return instantiate(fix.defs[fix.index].body, [Fix(fix.defs, n - 1 - m) for m in range(n)])


def iota_branch(case: Case, ctor_args: list[Term], j: int) -> Term:
    """Instantiate branch ``j`` with the non-parameter constructor arguments."""
    args = ctor_args[case.npars:]
    return instantiate(case.branches[j].body, list(reversed(args)))


def _ctor_head(env: GlobalEnv, ctx: Context, t: Term) -> tuple[Ctor, list[Term]] | None:
    h, args = decompose_app(whnf(env, ctx, t))
    if isinstance(h, Ctor):
        return h, args
    return None


def whnf(env: GlobalEnv, ctx: Context, t: Term, delta: bool = True) -> Term:
    head, args = decompose_app(t)
    while True:
        match head:
            case Lambda(_, _, body) if args:
                head, extra = decompose_app(subst1(body, args[0]))
                args = extra + args[1:]
            case LetIn(_, value, _, body):
                head, extra = decompose_app(subst1(body, value))
                args = extra + args
            case Var(i) if i < len(ctx) and ctx[i].definition is not None:
                head, extra = decompose_app(lift(ctx[i].definition, i + 1))
                args = extra + args
            case Const(name) if delta:
                decl = env.constant(name)
                if decl.body is None:
                    break
                head, extra = decompose_app(decl.body)
                args = extra + args
            case Case() as case:
                hit = _ctor_head(env, ctx, case.scrutinee)
                if hit is None or hit[0].ind != case.ind:
                    break
                ctor, cargs = hit
                head, extra = decompose_app(iota_branch(case, cargs, ctor.index))
                args = extra + args
            case Fix(defs, idx) as fix:
                rarg = defs[idx].rarg
                if len(args) <= rarg:
                    break
                principal = whnf(env, ctx, args[rarg], delta)
                if not isinstance(decompose_app(principal)[0], Ctor):
                    break
                args = args[:rarg] + [principal] + args[rarg + 1:]
                head, extra = decompose_app(unfold_fix(fix))
                args = extra + args
            case _:
                break
    return mk_apps(head, args)


def _betaiotazeta_step(env: GlobalEnv, ctx: Context, head: Term, args: list[Term]):
    """One head step, or None.  Iota may use full reduction on the scrutinee."""
    match head:
        case Lambda(_, _, body) if args:
            h, extra = decompose_app(subst1(body, args[0]))
            return h, extra + args[1:]
        case LetIn(_, value, _, body):
            h, extra = decompose_app(subst1(body, value))
            return h, extra + args
        case Case() as case:
            hit = _ctor_head(env, ctx, case.scrutinee)
            if hit is None or hit[0].ind != case.ind:
                return None
            ctor, cargs = hit
            h, extra = decompose_app(iota_branch(case, cargs, ctor.index))
            return h, extra + args
        case Fix(defs, idx) as fix:
            rarg = defs[idx].rarg
            if len(args) <= rarg:
                return None
            principal = whnf(env, ctx, args[rarg])
            if not isinstance(decompose_app(principal)[0], Ctor):
                return None
            h, extra = decompose_app(unfold_fix(fix))
            return h, extra + args[:rarg] + [principal] + args[rarg + 1:]
        case Const(name):
            decl = env.constant(name)
            if decl.body is None:
                return None
            h, extra = decompose_app(decl.body)
            # unfold only if it exposes a real beta/iota/zeta step; constant
            # chains recurse through this same rule
            return _betaiotazeta_step(env, ctx, h, extra + args)
    return None


def whnf_betaiotazeta(env: GlobalEnv, ctx: Context, t: Term) -> Term:
    head, args = decompose_app(t)
    while True:
        nxt = _betaiotazeta_step(env, ctx, head, args)
        if nxt is None:
            return mk_apps(head, args)
        head, args = nxt
