"""Type inference, conversion and environment checking.

Two sorts with ``Prop : Type``, ``Type : Type`` and ``Prop <= Type``.
Products into ``Prop`` are impredicative.  No guard or positivity checking:
evaluators are fuel-bounded instead.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import BoxlessError, IllTyped, KernelError, UnknownName
from .env import (
    ConstantDecl, Context, GlobalEnv, InductiveDecl, push, push_many,
    var_type,
)
from .reduce import whnf
from .term import (
    PROP, PROP_SORT, TYPE, TYPE_SORT, App, Case, Const, Ctor, Fix, Ind, Lambda, LetIn,
    Prod, Sort, Term, Var, decompose_app, decompose_lambda, decompose_prod, free_in,
    lift, map_vars, mk_apps, subst1,
)


def lower(t: Term, n: int) -> Term:
    """Drop ``n`` unused innermost binders from the scope of ``t``."""
    return map_vars(t, lambda i, d: Var(i - n) if i >= d + n else Var(i))


# -- conversion ---------------------------------------------------------------

def _dummy(ctx: Context, n: int) -> Context:
    for _ in range(n):
        ctx = push(ctx, "_", TYPE_SORT)
    return ctx


def conv(env: GlobalEnv, ctx: Context, a: Term, b: Term, leq: bool = False) -> bool:
    if a == b:
        return True
    # cheap path: identical constant heads before unfolding them
    la, lb = whnf(env, ctx, a, delta=False), whnf(env, ctx, b, delta=False)
    ha, aa = decompose_app(la)
    hb, ab = decompose_app(lb)
    if (isinstance(ha, Const) and ha == hb and len(aa) == len(ab)
            and all(conv(env, ctx, x, y) for x, y in zip(aa, ab))):
        return True
    a, b = whnf(env, ctx, la), whnf(env, ctx, lb)
    if a == b:
        return True
    match a, b:
        case Sort(s1), Sort(s2):
            return leq and s1 == PROP and s2 == TYPE
        case Prod(n, d1, c1), Prod(_, d2, c2):
            return conv(env, ctx, d1, d2) and conv(env, push(ctx, n, d1), c1, c2, leq)
        case Lambda(n, t1, b1), Lambda(_, _, b2):
            return conv(env, push(ctx, n, t1), b1, b2)
        case Lambda(n, t1, b1), _:
            return conv(env, push(ctx, n, t1), b1, App(lift(b, 1), Var(0)))
        case _, Lambda(n, t2, b2):
            return conv(env, push(ctx, n, t2), App(lift(a, 1), Var(0)), b2)
    ha, aa = decompose_app(a)
    hb, ab = decompose_app(b)
    if len(aa) != len(ab) or not _conv_head(env, ctx, ha, hb):
        return False
    return all(conv(env, ctx, x, y) for x, y in zip(aa, ab))


def _conv_head(env: GlobalEnv, ctx: Context, a: Term, b: Term) -> bool:
    match a, b:
        case (Var() | Const() | Ind() | Ctor() | Sort()), _:
            return a == b
        case Case(), Case():
            return (a.ind == b.ind and len(a.branches) == len(b.branches)
                    and conv(env, ctx, a.scrutinee, b.scrutinee)
                    and all(x.arity == y.arity and conv(env, _dummy(ctx, x.arity), x.body, y.body)
                            for x, y in zip(a.branches, b.branches)))
        case Fix(), Fix():
            n = len(a.defs)
            return (a.index == b.index and n == len(b.defs)
                    and all(x.rarg == y.rarg and conv(env, _dummy(ctx, n), x.body, y.body)
                            for x, y in zip(a.defs, b.defs)))
    return False


def cumul(env: GlobalEnv, ctx: Context, a: Term, b: Term) -> bool:
    return conv(env, ctx, a, b, leq=True)


# -- inference ----------------------------------------------------------------

def infer_sort(env: GlobalEnv, ctx: Context, t: Term) -> str:
    ty = whnf(env, ctx, infer_type(env, ctx, t))
    if not isinstance(ty, Sort):
        raise IllTyped(f"expected a type, got a term of type {ty}")
    return ty.level


def check(env: GlobalEnv, ctx: Context, t: Term, expected: Term) -> None:
    actual = infer_type(env, ctx, t)
    if not cumul(env, ctx, actual, expected):
        raise IllTyped(f"type mismatch: {t} has type {actual}, expected {expected}")


def infer_type(env: GlobalEnv, ctx: Context, t: Term) -> Term:
    match t:
        case Var(i):
            if i >= len(ctx):
                raise IllTyped(f"unbound variable #{i}")
            return var_type(ctx, i)
        case Sort():
            return TYPE_SORT
        case Prod(n, a, b):
            infer_sort(env, ctx, a)
            s = infer_sort(env, push(ctx, n, a), b)
            return PROP_SORT if s == PROP else TYPE_SORT
        case Lambda(n, a, b):
            infer_sort(env, ctx, a)
            return Prod(n, a, infer_type(env, push(ctx, n, a), b))
        case LetIn(n, v, a, b):
            infer_sort(env, ctx, a)
            check(env, ctx, v, a)
            return subst1(infer_type(env, push(ctx, n, a, v), b), v)
        case App():
            head, args = decompose_app(t)
            ty = infer_type(env, ctx, head)
            for arg in args:
                fn_ty = whnf(env, ctx, ty)
                if not isinstance(fn_ty, Prod):
                    raise IllTyped(f"{head} applied to too many arguments (type {fn_ty})")
                check(env, ctx, arg, fn_ty.domain)
                ty = subst1(fn_ty.codomain, arg)
            return ty
        case Const(name):
            if not env.is_constant(name):
                raise UnknownName(name)
            return env.constant(name).type
        case Ind(name):
            return env.one_inductive(name).arity
        case Ctor(ind, j):
            return env.ctor_type(ind, j)
        case Case():
            return _infer_case(env, ctx, t)
        case Fix():
            return _infer_fix(env, ctx, t)
    raise IllTyped(f"not a term: {t!r}")


def instantiate_params(ctor_type: Term, params: list[Term]) -> Term:
    for p in params:
        if not isinstance(ctor_type, Prod):
            raise IllTyped("constructor type has too few parameters")
        ctor_type = subst1(ctor_type.codomain, p)
    return ctor_type


def scrutinee_params(env: GlobalEnv, ctx: Context, case: Case) -> tuple[list[Term], list[Term]]:
    st = whnf(env, ctx, infer_type(env, ctx, case.scrutinee))
    head, args = decompose_app(st)
    if head != Ind(case.ind):
        raise IllTyped(f"match as {case.ind} on a term of type {st}")
    if len(args) < case.npars:
        raise IllTyped(f"{case.ind} under-applied in scrutinee type")
    return args[:case.npars], args[case.npars:]


def branch_binders(env: GlobalEnv, case: Case, params: list[Term], j: int):
    """Binders (outermost first) and conclusion indices of branch ``j``."""
    ty = instantiate_params(env.ctor_type(case.ind, j), params)
    binders, concl = decompose_prod(ty)
    _, cargs = decompose_app(concl)
    return binders, cargs[case.npars:]


def is_prop_inductive(env: GlobalEnv, ind: str) -> bool:
    _, sort = decompose_prod(env.one_inductive(ind).arity)
    return sort == PROP_SORT


def _infer_case(env: GlobalEnv, ctx: Context, case: Case) -> Term:
    decl, k = env.inductive(case.ind)
    if decl.npars != case.npars:
        raise IllTyped(f"match on {case.ind}: expected {decl.npars} parameters, got {case.npars}")
    body = decl.bodies[k]
    if len(case.branches) != len(body.ctors):
        raise IllTyped(f"match on {case.ind}: {len(case.branches)} branches for "
                       f"{len(body.ctors)} constructors")
    params, indices = scrutinee_params(env, ctx, case)
    if case.motive is not None:
        infer_type(env, ctx, case.motive)
    result: Term | None = None
    if case.motive is not None:
        result = mk_apps(case.motive, indices + [case.scrutinee])
    for j, br in enumerate(case.branches):
        binders, idx = branch_binders(env, case, params, j)
        n = len(binders)
        if br.arity != n:
            raise IllTyped(f"branch {body.ctors[j].name} binds {br.arity} variables, "
                           f"constructor has {n} arguments")
        bctx = push_many(ctx, binders)
        if case.motive is not None:
            value = mk_apps(Ctor(case.ind, j), [lift(p, n) for p in params]
                            + [Var(n - 1 - i) for i in range(n)])
            expected = mk_apps(lift(case.motive, n), idx + [value])
            check(env, bctx, br.body, expected)
            continue
        ty = infer_type(env, bctx, br.body)
        if any(free_in(ty, i) for i in range(n)):
            ty = whnf(env, bctx, ty)
            if any(free_in(ty, i) for i in range(n)):
                raise IllTyped(f"branch {body.ctors[j].name}: type depends on pattern "
                               "variables; give the match a return clause")
        ty = lower(ty, n)
        if result is None:
            result = ty
        elif not conv(env, ctx, ty, result):
            raise IllTyped(f"match branches disagree: {ty} vs {result}")
    if result is None:
        raise IllTyped(f"empty match on {case.ind} needs a return clause")
    if is_prop_inductive(env, case.ind) and len(body.ctors) > 1:
        if infer_sort(env, ctx, result) != PROP:
            raise IllTyped(f"cannot eliminate proof of {case.ind} into a computational type")
    return result


def _infer_fix(env: GlobalEnv, ctx: Context, fix: Fix) -> Term:
    n = len(fix.defs)
    if not 0 <= fix.index < n:
        raise IllTyped("fixpoint index out of range")
    fctx = ctx
    for i, d in enumerate(fix.defs):
        infer_sort(env, ctx, d.type)
        fctx = push(fctx, d.name, lift(d.type, i))
    for d in fix.defs:
        lams, _ = decompose_lambda(d.body)
        if d.rarg >= len(lams):
            raise IllTyped(f"fixpoint {d.name}: structural argument {d.rarg} "
                           f"beyond its {len(lams)} parameters")
        check(env, fctx, d.body, lift(d.type, n))
    return fix.defs[fix.index].type


# -- environments -------------------------------------------------------------

@dataclass
class EnvReport:
    axioms: list[str] = field(default_factory=list)
    errors: list[tuple[str, BoxlessError]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors

    def raise_first(self) -> None:
        if self.errors:
            raise self.errors[0][1]


def _check_inductive(env: GlobalEnv, decl: InductiveDecl) -> None:
    if decl.name != decl.bodies[0].name:
        raise IllTyped("block name must be the name of its first body")
    for body in decl.bodies:
        infer_sort(env, (), body.arity)
        binders, sort = decompose_prod(whnf(env, (), body.arity))
        if not isinstance(sort, Sort):
            raise IllTyped(f"arity of {body.name} does not end in a sort")
        if len(binders) < decl.npars:
            raise IllTyped(f"arity of {body.name} has fewer than {decl.npars} parameters")
    # constructor types are checked with the block already declared
    local = env.add(decl)
    nb = len(decl.bodies)
    for k, body in enumerate(decl.bodies):
        for j, c in enumerate(body.ctors):
            infer_sort(local, (), local.ctor_type(body.name, j))
            binders, concl = decompose_prod(c.type)
            if len(binders) < decl.npars:
                raise IllTyped(f"constructor {c.name} does not bind the parameters")
            head, args = decompose_app(concl)
            if head != Var(len(binders) + nb - 1 - k):
                raise IllTyped(f"constructor {c.name} does not build {body.name}")
            for p in range(decl.npars):
                if args[p] != Var(len(binders) - 1 - p):
                    raise IllTyped(f"constructor {c.name} changes parameter {p}")


def check_decl(env: GlobalEnv, decl) -> None:
    if isinstance(decl, ConstantDecl):
        infer_sort(env, (), decl.type)
        if decl.body is not None:
            check(env, (), decl.body, decl.type)
    else:
        _check_inductive(env, decl)


def check_env(env: GlobalEnv) -> EnvReport:
    report = EnvReport(axioms=env.axioms())
    prefix = GlobalEnv()
    for decl in env.decls:
        try:
            check_decl(prefix, decl)
        except (KernelError, RecursionError) as exc:
            if isinstance(exc, RecursionError):
                exc = IllTyped("recursion limit exceeded while checking")
            report.errors.append((decl.name, exc))
        prefix = prefix.add(decl)
    return report
