"""Big-step call-by-value evaluation of erased terms.

Besides the usual rules, boxes absorb application (``□ v`` gives ``□``), a
match on a box runs its single branch with every binder bound to a box, and
a fixpoint whose structural argument is a box unfolds as if it were a
constructor.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..errors import FuelExhausted, Stuck
from ..kernel.evaluate import DEFAULT_FUEL, deep_recursion
from .env import ErasedEnv
from .syntax import (
    EApp, EBox, ECase, EConst, ECtor, EFix, ELambda, ELetIn, ETerm, EVar, BOX,
    einstantiate, mk_eapps,
)


@dataclass(frozen=True)
class VBox:
    pass


@dataclass(frozen=True)
class VCtor:
    ind: str
    index: int
    args: tuple["EValue", ...] = ()


@dataclass(frozen=True, eq=False)
class VClosure:
    env: tuple = field(repr=False)
    term: ELambda


@dataclass(frozen=True, eq=False)
class VFix:
    env: tuple = field(repr=False)
    fix: EFix
    args: tuple = ()


EValue = VBox | VCtor | VClosure | VFix

VBOX = VBox()


def value_to_term(v: EValue) -> ETerm:
    """Read a value back as a closed term."""
    match v:
        case VBox():
            return BOX
        case VCtor(ind, j, args):
            return mk_eapps(ECtor(ind, j), [value_to_term(a) for a in args])
        case VClosure(env, lam):
            return einstantiate(lam, [value_to_term(x) for x in env])
        case VFix(env, fix, args):
            head = einstantiate(fix, [value_to_term(x) for x in env])
            return mk_eapps(head, [value_to_term(a) for a in args])
    raise TypeError(v)


def is_first_order(v: EValue) -> bool:
    """Built only from constructors and boxes."""
    match v:
        case VBox():
            return True
        case VCtor(_, _, args):
            return all(is_first_order(a) for a in args)
    return False


class BoxMachine:
    def __init__(self, eenv: ErasedEnv, fuel: int = DEFAULT_FUEL):
        self.eenv = eenv
        self.fuel = fuel
        self.steps = 0
        self.constants: dict[str, EValue] = {}

    def tick(self) -> None:
        self.steps += 1
        if self.steps > self.fuel:
            raise FuelExhausted(self.fuel)

    def eval(self, t: ETerm, rho: tuple = ()) -> EValue:
        self.tick()
        match t:
            case EBox():
                return VBOX
            case EVar(i):
                if i >= len(rho):
                    raise Stuck(f"free variable #{i}")
                return rho[i]
            case ELambda():
                return VClosure(rho, t)
            case ELetIn(_, v, b):
                return self.eval(b, (self.eval(v, rho),) + rho)
            case EApp(f, a):
                fv = self.eval(f, rho)
                return self.apply(fv, self.eval(a, rho))
            case EConst(name):
                if name not in self.constants:
                    decl = self.eenv.constant(name)
                    if decl.body is None:
                        raise Stuck(f"constant {name!r} has no body")
                    self.constants[name] = self.eval(decl.body, ())
                return self.constants[name]
            case ECtor(ind, j):
                return VCtor(ind, j)
            case ECase(ind, npars, s, branches):
                sv = self.eval(s, rho)
                if isinstance(sv, VBox):
                    if len(branches) != 1:
                        raise Stuck(f"match on a box with {len(branches)} branches")
                    br = branches[0]
                    return self.eval(br.body, (VBOX,) * br.arity + rho)
                if not isinstance(sv, VCtor) or sv.ind != ind:
                    raise Stuck(f"match as {ind} on {sv!r}")
                if len(sv.args) != self.eenv.ctor_arity(ind, sv.index):
                    raise Stuck(f"match on partially applied constructor {sv!r}")
                br = branches[sv.index]
                fields = sv.args[npars:]
                if len(fields) != br.arity:
                    raise Stuck(f"branch {sv.index} of {ind} binds {br.arity}, got {len(fields)}")
                return self.eval(br.body, tuple(reversed(fields)) + rho)
            case EFix():
                return VFix(rho, t)
        raise Stuck(f"cannot evaluate {t!r}")

    def apply(self, f: EValue, a: EValue) -> EValue:
        self.tick()
        match f:
            case VBox():
                return VBOX
            case VClosure(rho, lam):
                return self.eval(lam.body, (a,) + rho)
            case VCtor(ind, j, args):
                if len(args) >= self.eenv.ctor_arity(ind, j):
                    raise Stuck(f"constructor {ind}#{j} applied beyond its arity")
                return VCtor(ind, j, args + (a,))
            case VFix(rho, fix, args):
                args = args + (a,)
                d = fix.defs[fix.index]
                if len(args) <= d.rarg:
                    return VFix(rho, fix, args)
                if not isinstance(args[d.rarg], (VCtor, VBox)):
                    raise Stuck(f"fixpoint {d.name} applied to {args[d.rarg]!r}")
                n = len(fix.defs)
                inner = tuple(VFix(rho, EFix(fix.defs, n - 1 - m)) for m in range(n)) + rho
                result = self.eval(d.body, inner)
                for x in args:
                    result = self.apply(result, x)
                return result
        raise Stuck(f"cannot apply {f!r}")


def eval_box(eenv: ErasedEnv, t: ETerm, fuel: int = DEFAULT_FUEL) -> EValue:
    with deep_recursion():
        return BoxMachine(eenv, fuel).eval(t)


def apply_value(eenv: ErasedEnv, f: EValue, args: Sequence[EValue], fuel: int = DEFAULT_FUEL) -> EValue:
    m = BoxMachine(eenv, fuel)
    with deep_recursion():
        for a in args:
            f = m.apply(f, a)
    return f
