"""Erasure of source types to prenex erased types.

The recursion follows the textbook presentation: reduce the head with
beta/iota/zeta, box logical types and sorts, turn sort-domain products into
type variables, and decompose applications into an erasable head and
arguments.  ``vs`` collects type-variable names; growing it anywhere except
at a top-level product is a non-prenex quantifier.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import NotPrenex, TypeEraseError
from ..kernel.env import Context, GlobalEnv, push
from ..kernel.reduce import whnf_betaiotazeta
from ..kernel.term import App, Const, Ind, Prod, Sort, Term, Var, decompose_app, term_size
from ..kernel.typecheck import infer_type
from ..lambdabox.env import TANY, TBOX, BoxType, TApp, TArr, TConst, TInd, TVar
from .flags import flag_of_type


@dataclass(frozen=True)
class RelTypeVar:
    index: int


@dataclass(frozen=True)
class RelInductive:
    name: str


@dataclass(frozen=True)
class RelOther:
    pass


EraseCtxEntry = RelTypeVar | RelInductive | RelOther
REL_OTHER = RelOther()

# calls allowed per node of the reduced input type
BUDGET_PER_NODE = 64


def type_var_name(name: str, vs: tuple[str, ...]) -> str:
    """Binder name made unique within ``vs`` by suffixing its position."""
    pos = len(vs)
    if not name or name == "_":
        return f"a{pos}"
    return f"{name}{pos}" if name in vs else name


def erase_var(ectx: tuple, i: int) -> BoxType:
    match ectx[i]:
        case RelTypeVar(k):
            return TVar(k)
        case RelInductive(name):
            return TInd(name)
    return TBOX


def erase_type_head(ectx: tuple, hd: Term) -> BoxType:
    match hd:
        case Var(i):
            entry = ectx[i]
            if isinstance(entry, RelInductive):
                return TInd(entry.name)
            raise TypeEraseError(f"type variable #{i} cannot be applied")
        case Const(name):
            return TConst(name)
        case Ind(name):
            return TInd(name)
    raise TypeEraseError(f"cannot erase type head {hd}")


class _TypeEraser:
    def __init__(self, env: GlobalEnv, limit: int):
        self.env = env
        self.calls = 0
        self.limit = limit

    def tick(self) -> None:
        self.calls += 1
        if self.calls > self.limit:
            raise TypeEraseError("internal: type erasure exceeded its recursion budget")

    def erase(self, ctx: Context, ectx: tuple, t: Term, vs: tuple[str, ...]):
        self.tick()
        env = self.env
        t = whnf_betaiotazeta(env, ctx, t)
        if flag_of_type(env, ctx, t).is_logical:
            return vs, TBOX
        match t:
            case Var(i):
                return vs, erase_var(ectx, i)
            case Sort():
                return vs, TBOX
            case Prod(name, dom, cod):
                flag = flag_of_type(env, ctx, dom)
                inner = push(ctx, name, dom)
                if flag.is_logical:
                    vs_t, tau = self.erase(inner, (REL_OTHER,) + ectx, cod, vs)
                    return vs_t, TArr(TBOX, tau)
                if not flag.is_arity:
                    vs_s, sigma = self.erase(ctx, ectx, dom, vs)
                    if len(vs) < len(vs_s):
                        raise NotPrenex(f"quantifier inside the domain of {name!r}")
                    vs_t, tau = self.erase(inner, (REL_OTHER,) + ectx, cod, vs)
                    return vs_t, TArr(sigma, tau)
                if flag.is_sort:
                    var = RelTypeVar(len(vs))
                    vs_t, tau = self.erase(inner, (var,) + ectx, cod,
                                           vs + (type_var_name(name, vs),))
                    return vs_t, TArr(TBOX, tau)
                raise NotPrenex(f"binder {name!r} ranges over type constructors")
            case App():
                hd, args = decompose_app(t)
                return self.erase_app(ctx, ectx, args, vs, erase_type_head(ectx, hd))
            case Const(name):
                return vs, TConst(name)
            case Ind(name):
                return vs, TInd(name)
        raise TypeEraseError(f"cannot erase type {t}")

    def erase_app(self, ctx: Context, ectx: tuple, args: list[Term], vs, sigma: BoxType):
        for a in args:
            flag = flag_of_type(self.env, ctx, infer_type(self.env, ctx, a))
            if flag.is_logical:
                tau = TBOX
            elif flag.is_sort:
                vs_t, tau = self.erase(ctx, ectx, a, vs)
                if len(vs) < len(vs_t):
                    raise NotPrenex("quantifier inside a type argument")
            else:
                tau = TANY
            sigma = TApp(sigma, tau)
        return vs, sigma


def erase_type(env: GlobalEnv, ctx: Context, ectx, ty: Term, vs=()) -> tuple[tuple[str, ...], BoxType]:
    """Erase ``ty`` under ``ctx`` whose erasure mirror is ``ectx`` (both innermost first)."""
    ectx = tuple(ectx)
    if len(ectx) != len(ctx):
        raise ValueError("erasure context must mirror the typing context")
    limit = BUDGET_PER_NODE * (term_size(whnf_betaiotazeta(env, ctx, ty)) + 1)
    return _TypeEraser(env, limit).erase(ctx, ectx, ty, tuple(vs))
