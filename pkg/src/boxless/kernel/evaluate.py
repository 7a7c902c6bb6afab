"""Big-step call-by-value evaluation of closed source terms.

Environment machine: closures capture the local environment instead of
substituting.  ``to_term`` reads a value back as a closed term.
"""
from __future__ import annotations

import sys
from contextlib import contextmanager
from dataclasses import dataclass, field

from ..errors import Stuck, FuelExhausted
from .env import GlobalEnv
from .term import (
    App, Case, Const, Ctor, Fix, Ind, Lambda, LetIn, Prod, Sort, Term, Var,
    instantiate, mk_apps,
)

DEFAULT_FUEL = 10**7


@dataclass(frozen=True)
class SCtor:
    ind: str
    index: int
    args: tuple["SourceValue", ...] = ()


@dataclass(frozen=True, eq=False)
class SClosure:
    env: tuple = field(repr=False)
    term: Lambda


@dataclass(frozen=True, eq=False)
class SFix:
    env: tuple = field(repr=False)
    fix: Fix
    args: tuple = ()


@dataclass(frozen=True)
class SType:
    """Types, products and type families evaluate to themselves."""

    term: Term


SourceValue = SCtor | SClosure | SFix | SType


@contextmanager
def deep_recursion(limit: int = 50_000):
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, limit))
    try:
        yield
    finally:
        sys.setrecursionlimit(old)


def to_term(v: SourceValue) -> Term:
    match v:
        case SCtor(ind, j, args):
            return mk_apps(Ctor(ind, j), [to_term(a) for a in args])
        case SType(t):
            return t
        case SClosure(env, lam):
            return instantiate(lam, [to_term(x) for x in env])
        case SFix(env, fix, args):
            return mk_apps(instantiate(fix, [to_term(x) for x in env]), [to_term(a) for a in args])
    raise TypeError(v)


class _Machine:
    def __init__(self, env: GlobalEnv, fuel: int):
        self.env = env
        self.fuel = fuel
        self.steps = 0
        self.constants: dict[str, SourceValue] = {}
        self.arity: dict[tuple[str, int], int] = {}

    def tick(self) -> None:
        self.steps += 1
        if self.steps > self.fuel:
            raise FuelExhausted(self.fuel)

    def ctor_arity(self, ind: str, j: int) -> int:
        key = (ind, j)
        if key not in self.arity:
            self.arity[key] = self.env.npars(ind) + self.env.ctor_nargs(ind, j)
        return self.arity[key]

    def eval(self, t: Term, rho: tuple) -> SourceValue:
        self.tick()
        match t:
            case Var(i):
                if i >= len(rho):
                    raise Stuck(f"free variable #{i}")
                return rho[i]
            case Sort() | Ind():
                return SType(t)
            case Prod():
                return SType(instantiate(t, [to_term(x) for x in rho]) if rho else t)
            case Lambda():
                return SClosure(rho, t)
            case LetIn(_, value, _, body):
                return self.eval(body, (self.eval(value, rho),) + rho)
            case App(f, a):
                fv = self.eval(f, rho)
                return self.apply(fv, self.eval(a, rho))
            case Const(name):
                if name not in self.constants:
                    decl = self.env.constant(name)
                    if decl.body is None:
                        raise Stuck(f"evaluation reached axiom {name!r}")
                    self.constants[name] = self.eval(decl.body, ())
                return self.constants[name]
            case Ctor(ind, j):
                return SCtor(ind, j)
            case Case():
                s = self.eval(t.scrutinee, rho)
                if not isinstance(s, SCtor) or s.ind != t.ind:
                    raise Stuck(f"match on {t.ind} got {s!r}")
                if len(s.args) != self.ctor_arity(s.ind, s.index):
                    raise Stuck(f"match on partially applied constructor {s!r}")
                inner = rho
                for a in s.args[t.npars:]:
                    inner = (a,) + inner
                return self.eval(t.branches[s.index].body, inner)
            case Fix():
                return SFix(rho, t)
        raise Stuck(f"cannot evaluate {t!r}")

    def apply(self, f: SourceValue, a: SourceValue) -> SourceValue:
        self.tick()
        match f:
            case SClosure(rho, lam):
                return self.eval(lam.body, (a,) + rho)
            case SCtor(ind, j, args):
                if len(args) >= self.ctor_arity(ind, j):
                    raise Stuck(f"constructor {ind}#{j} applied beyond its arity")
                return SCtor(ind, j, args + (a,))
            case SType(t):
                return SType(App(t, to_term(a)))
            case SFix(rho, fix, args):
                args = args + (a,)
                d = fix.defs[fix.index]
                if len(args) <= d.rarg:
                    return SFix(rho, fix, args)
                if not isinstance(args[d.rarg], SCtor):
                    raise Stuck(f"fixpoint {d.name} applied to non-constructor {args[d.rarg]!r}")
                n = len(fix.defs)
                inner = tuple(SFix(rho, Fix(fix.defs, n - 1 - m)) for m in range(n)) + rho
                result = self.eval(d.body, inner)
                for x in args:
                    result = self.apply(result, x)
                return result
        raise Stuck(f"cannot apply {f!r}")


def eval_source(env: GlobalEnv, t: Term, fuel: int = DEFAULT_FUEL) -> SourceValue:
    with deep_recursion():
        return _Machine(env, fuel).eval(t, ())
