"""Named surface syntax of ``.ccx`` programs and its pretty printer."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

Loc = tuple[int, int]
NOWHERE: Loc = (0, 0)


@dataclass(frozen=True)
class SIdent:
    name: str
    loc: Loc = field(default=NOWHERE, compare=False)


@dataclass(frozen=True)
class SSort:
    level: str


@dataclass(frozen=True)
class SBinder:
    name: str
    type: "STerm | None" = None


@dataclass(frozen=True)
class SForall:
    binders: tuple[SBinder, ...]
    body: "STerm"


@dataclass(frozen=True)
class SFun:
    binders: tuple[SBinder, ...]
    body: "STerm"


@dataclass(frozen=True)
class SArrow:
    domain: "STerm"
    codomain: "STerm"


@dataclass(frozen=True)
class SApp:
    head: "STerm"
    args: tuple["STerm", ...]


@dataclass(frozen=True)
class SLet:
    name: str
    type: "STerm | None"
    value: "STerm"
    body: "STerm"


@dataclass(frozen=True)
class SBranch:
    ctor: str
    vars: tuple[str, ...]
    body: "STerm"
    loc: Loc = field(default=NOWHERE, compare=False)


@dataclass(frozen=True)
class SMatch:
    scrutinee: "STerm"
    ind: str
    ret: "STerm | None"
    branches: tuple[SBranch, ...]
    loc: Loc = field(default=NOWHERE, compare=False)


@dataclass(frozen=True)
class SFixDef:
    name: str
    binders: tuple[SBinder, ...]
    struct: str
    rtype: "STerm"
    body: "STerm"


@dataclass(frozen=True)
class SFix:
    defs: tuple[SFixDef, ...]
    selected: str


STerm = Union[SIdent, SSort, SForall, SFun, SArrow, SApp, SLet, SMatch, SFix]


@dataclass(frozen=True)
class Definition:
    name: str
    type: STerm
    body: STerm
    loc: Loc = field(default=NOWHERE, compare=False)


@dataclass(frozen=True)
class IndBody:
    name: str
    arity: STerm
    ctors: tuple[tuple[str, STerm], ...]


@dataclass(frozen=True)
class Inductive:
    params: tuple[SBinder, ...]
    bodies: tuple[IndBody, ...]
    loc: Loc = field(default=NOWHERE, compare=False)

    @property
    def name(self) -> str:
        return self.bodies[0].name


@dataclass(frozen=True)
class Axiom:
    name: str
    type: STerm
    loc: Loc = field(default=NOWHERE, compare=False)


@dataclass(frozen=True)
class Require:
    path: str
    loc: Loc = field(default=NOWHERE, compare=False)


SurfaceDecl = Union[Definition, Inductive, Axiom, Require]


# -- printing -----------------------------------------------------------------

def _binder(b: SBinder) -> str:
    if b.type is None:
        return b.name
    return f"({b.name} : {show(b.type)})"


def _binders(bs) -> str:
    return " ".join(_binder(b) for b in bs)


def _ends_in_fix(t: STerm) -> bool:
    """Whether printing ``t`` unparenthesized ends with a fix that would
    capture a following ``with`` or ``for``."""
    match t:
        case SFix():
            return True
        case SFun(_, body) | SForall(_, body) | SLet(_, _, _, body):
            return _ends_in_fix(body)
        case SArrow(_, c):
            return _ends_in_fix(c)
    return False


def show(t: STerm, prec: int = 0) -> str:
    """Render a surface term; ``prec`` 0 = any, 1 = arrow operand, 2 = atom."""
    match t:
        case SIdent(name):
            return name
        case SSort(level):
            return level
        case SMatch(s, ind, ret, brs):
            head = f"match {show(s)} as {ind}"
            if ret is not None:
                head += f" return {show(ret, 2)}"
            arms = " ".join(
                f"| {' '.join((b.ctor,) + b.vars)} => {show(b.body)}" for b in brs)
            return f"{head} with {arms} end" if arms else f"{head} with end"
        case SApp(h, args):
            s = " ".join([show(h, 2)] + [show(a, 2) for a in args])
            return s if prec < 2 else f"({s})"
        case SArrow(d, c):
            s = f"{show(d, 1)} -> {show(c, 0)}"
            return s if prec == 0 else f"({s})"
    match t:
        case SForall(bs, body):
            s = f"forall {_binders(bs)}, {show(body)}"
        case SFun(bs, body):
            s = f"fun {_binders(bs)} => {show(body)}"
        case SLet(n, ty, v, body):
            ann = "" if ty is None else f" : {show(ty)}"
            s = f"let {n}{ann} := {show(v)} in {show(body)}"
        case SFix(defs, sel):
            parts = [f"{d.name} {_binders(d.binders)} {{struct {d.struct}}} : "
                     f"{show(d.rtype)} := {show(d.body, 1 if _ends_in_fix(d.body) else 0)}"
                     for d in defs]
            s = "fix " + " with ".join(parts)
            if len(defs) > 1 or sel != defs[0].name:
                s += f" for {sel}"
        case _:
            raise TypeError(f"not a surface term: {t!r}")
    return s if prec == 0 else f"({s})"


def show_decl(d: SurfaceDecl) -> str:
    match d:
        case Definition(name, ty, body):
            return f"def {name} : {show(ty)} :=\n  {show(body)}\n"
        case Axiom(name, ty):
            return f"axiom {name} : {show(ty)}\n"
        case Require(path):
            return f'require "{path}"\n'
        case Inductive(params, bodies):
            chunks = []
            for i, b in enumerate(bodies):
                ps = f" {_binders(params)}" if i == 0 and params else ""
                lines = [f"{b.name}{ps} : {show(b.arity)} :="]
                lines += [f"  | {c} : {show(ct)}" for c, ct in b.ctors]
                chunks.append("\n".join(lines))
            return "inductive " + "\nwith ".join(chunks) + "\n"
    raise TypeError(d)


def pretty_source(decls) -> str:
    return "\n".join(show_decl(d) for d in decls)
