"""Untyped erased terms with the distinguished constant box."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence, Union


@dataclass(frozen=True)
class EBox:
    pass


@dataclass(frozen=True)
class EVar:
    index: int


@dataclass(frozen=True)
class ELambda:
    name: str = field(compare=False)
    body: "ETerm"


@dataclass(frozen=True)
class ELetIn:
    name: str = field(compare=False)
    value: "ETerm"
    body: "ETerm"


@dataclass(frozen=True)
class EApp:
    head: "ETerm"
    arg: "ETerm"


@dataclass(frozen=True)
class EConst:
    name: str


@dataclass(frozen=True)
class ECtor:
    ind: str
    index: int


@dataclass(frozen=True)
class EBranch:
    arity: int
    body: "ETerm"
    names: tuple[str, ...] = field(default=(), compare=False)


@dataclass(frozen=True)
class ECase:
    """``npars`` leading constructor arguments are parameters and are not bound
    by the branches."""

    ind: str
    npars: int
    scrutinee: "ETerm"
    branches: tuple[EBranch, ...]


@dataclass(frozen=True)
class EFixDef:
    name: str = field(compare=False)
    body: "ETerm"
    rarg: int


@dataclass(frozen=True)
class EFix:
    defs: tuple[EFixDef, ...]
    index: int


ETerm = Union[EBox, EVar, ELambda, ELetIn, EApp, EConst, ECtor, ECase, EFix]

BOX = EBox()


def mk_eapps(head: ETerm, args: Sequence[ETerm]) -> ETerm:
    for a in args:
        head = EApp(head, a)
    return head


def decompose_eapp(t: ETerm) -> tuple[ETerm, list[ETerm]]:
    args = []
    while isinstance(t, EApp):
        args.append(t.arg)
        t = t.head
    args.reverse()
    return t, args


def emap_vars(t: ETerm, fn: Callable[[int, int], ETerm], depth: int = 0) -> ETerm:
    """Rebuild ``t`` replacing each variable via ``fn(index, binder_depth)``."""
    match t:
        case EVar(i):
            return fn(i, depth)
        case EBox() | EConst() | ECtor():
            return t
        case ELambda(n, b):
            return ELambda(n, emap_vars(b, fn, depth + 1))
        case ELetIn(n, v, b):
            return ELetIn(n, emap_vars(v, fn, depth), emap_vars(b, fn, depth + 1))
        case EApp(f, a):
            return EApp(emap_vars(f, fn, depth), emap_vars(a, fn, depth))
        case ECase(ind, npars, s, brs):
            return ECase(ind, npars, emap_vars(s, fn, depth), tuple(
                EBranch(b.arity, emap_vars(b.body, fn, depth + b.arity), b.names) for b in brs))
        case EFix(defs, idx):
            n = len(defs)
            return EFix(tuple(EFixDef(d.name, emap_vars(d.body, fn, depth + n), d.rarg)
                              for d in defs), idx)
    raise TypeError(f"not an erased term: {t!r}")


def elift(t: ETerm, n: int, k: int = 0) -> ETerm:
    if n == 0:
        return t
    return emap_vars(t, lambda i, d: EVar(i + n) if i >= d + k else EVar(i))


def einstantiate(t: ETerm, values: Sequence[ETerm], k: int = 0) -> ETerm:
    """Replace ``EVar(k + j)`` by ``values[j]`` and close the gap."""
    m = len(values)

    def fn(i: int, d: int) -> ETerm:
        if i < d + k:
            return EVar(i)
        if i < d + k + m:
            return elift(values[i - d - k], d + k)
        return EVar(i - m)

    return emap_vars(t, fn)


def esubst1(t: ETerm, value: ETerm) -> ETerm:
    return einstantiate(t, [value])


def closed_under(t: ETerm, n: int) -> bool:
    ok = True

    def fn(i: int, d: int) -> ETerm:
        nonlocal ok
        if i >= d + n:
            ok = False
        return EVar(i)

    emap_vars(t, fn)
    return ok


def closed(t: ETerm) -> bool:
    return closed_under(t, 0)


def occurs(t: ETerm, index: int) -> bool:
    """Whether ``EVar(index)`` (relative to the top of ``t``) occurs in ``t``."""
    found = False

    def fn(i: int, d: int) -> ETerm:
        nonlocal found
        if i == index + d:
            found = True
        return EVar(i)

    emap_vars(t, fn)
    return found


def subterms(t: ETerm) -> Iterator[ETerm]:
    """Pre-order traversal."""
    stack = [t]
    while stack:
        u = stack.pop()
        yield u
        match u:
            case ELambda(_, b):
                stack.append(b)
            case ELetIn(_, v, b):
                stack += [b, v]
            case EApp(f, a):
                stack += [a, f]
            case ECase(_, _, s, brs):
                stack += [b.body for b in reversed(brs)] + [s]
            case EFix(defs, _):
                stack += [d.body for d in reversed(defs)]


def count_boxes(t: ETerm) -> int:
    return sum(1 for u in subterms(t) if isinstance(u, EBox))


def eterm_size(t: ETerm) -> int:
    return sum(1 for _ in subterms(t))


def eglobals(t: ETerm) -> tuple[set[str], set[str]]:
    """Constants and inductives mentioned in ``t``."""
    consts, inds = set(), set()
    for u in subterms(t):
        match u:
            case EConst(n):
                consts.add(n)
            case ECtor(ind, _) | ECase(ind, _, _, _):
                inds.add(ind)
    return consts, inds


def decompose_elambda(t: ETerm) -> tuple[list[str], ETerm]:
    names = []
    while isinstance(t, ELambda):
        names.append(t.name)
        t = t.body
    return names, t


def show_eterm(t: ETerm, names: tuple[str, ...] = ()) -> str:
    """Compact debugging syntax; boxes print as ``□``."""
    return _show(t, list(names), 0)


def _fresh(base: str, names: list[str]) -> str:
    base = base or "x"
    if base == "_":
        base = "x"
    name, k = base, 0
    while name in names:
        k += 1
        name = f"{base}{k}"
    return name


def _show(t: ETerm, names: list[str], prec: int) -> str:
    def paren(s: str, needed: bool) -> str:
        return f"({s})" if needed else s

    match t:
        case EBox():
            return "□"
        case EVar(i):
            return names[i] if i < len(names) else f"#{i}"
        case EConst(n):
            return n
        case ECtor(ind, j):
            return f"{ind}#{j}"
        case ELambda(n, b):
            x = _fresh(n, names)
            return paren(f"fun {x} => {_show(b, [x] + names, 0)}", prec > 0)
        case ELetIn(n, v, b):
            x = _fresh(n, names)
            return paren(f"let {x} := {_show(v, names, 0)} in {_show(b, [x] + names, 0)}", prec > 0)
        case EApp():
            h, args = decompose_eapp(t)
            s = " ".join([_show(h, names, 2)] + [_show(a, names, 2) for a in args])
            return paren(s, prec > 1)
        case ECase(ind, _, s, brs):
            arms = []
            for j, b in enumerate(brs):
                xs: list[str] = []
                for k in range(b.arity):
                    base = b.names[k] if k < len(b.names) else "x"
                    xs.append(_fresh(base, xs + names))
                body = _show(b.body, list(reversed(xs)) + names, 0)
                arms.append(" ".join([f"| #{j}"] + xs) + f" => {body}")
            return paren(f"match {_show(s, names, 0)} as {ind} with {' '.join(arms)} end", prec > 1)
        case EFix(defs, idx):
            fs: list[str] = []
            for d in defs:
                fs.append(_fresh(d.name, fs + names))
            inner = list(reversed(fs)) + names
            parts = [f"{f} := {_show(d.body, inner, 0)}" for f, d in zip(fs, defs)]
            return paren(f"fix {' with '.join(parts)} for {fs[idx]}", prec > 0)
    raise TypeError(t)
