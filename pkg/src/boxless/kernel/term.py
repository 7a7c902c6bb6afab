"""Core calculus syntax with de Bruijn indices.

Binder names are carried for printing only; they are excluded from equality,
so ``==`` on terms is alpha-equivalence.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence, Union

PROP = "Prop"
TYPE = "Type"


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class Sort:
    level: str  # PROP or TYPE


@dataclass(frozen=True)
class Prod:
    name: str = field(compare=False)
    domain: "Term"
    codomain: "Term"


@dataclass(frozen=True)
class Lambda:
    name: str = field(compare=False)
    annotation: "Term"
    body: "Term"


@dataclass(frozen=True)
class LetIn:
    name: str = field(compare=False)
    value: "Term"
    annotation: "Term"
    body: "Term"


@dataclass(frozen=True)
class App:
    head: "Term"
    arg: "Term"


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class Ind:
    name: str


@dataclass(frozen=True)
class Ctor:
    ind: str
    index: int


@dataclass(frozen=True)
class Branch:
    arity: int
    body: "Term"
    names: tuple[str, ...] = field(default=(), compare=False)


@dataclass(frozen=True)
class Case:
    """Match on an inductive.

    ``motive`` is optional: when given it abstracts the indices and then the
    scrutinee (``fun idx.. (x : I pars idx..) => T``); without it the match is
    non-dependent and its type is read off the first branch.
    """

    ind: str
    npars: int
    scrutinee: "Term"
    branches: tuple[Branch, ...]
    motive: "Term | None" = None


@dataclass(frozen=True)
class FixDef:
    name: str = field(compare=False)
    type: "Term"
    rarg: int
    body: "Term"


@dataclass(frozen=True)
class Fix:
    defs: tuple[FixDef, ...]
    index: int


Term = Union[Var, Sort, Prod, Lambda, LetIn, App, Const, Ind, Ctor, Case, Fix]

PROP_SORT = Sort(PROP)
TYPE_SORT = Sort(TYPE)


def mk_apps(head: Term, args: Sequence[Term]) -> Term:
    for a in args:
        head = App(head, a)
    return head


def decompose_app(t: Term) -> tuple[Term, list[Term]]:
    args = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.head
    args.reverse()
    return t, args


def arrow(dom: Term, cod: Term) -> Prod:
    """Non-dependent product; ``cod`` is given in the outer scope."""
    return Prod("_", dom, lift(cod, 1))


def map_vars(t: Term, fn: Callable[[int, int], Term], depth: int = 0) -> Term:
    """Rebuild ``t`` replacing every ``Var`` by ``fn(index, depth)``."""

    def go(t: Term, k: int) -> Term:
        match t:
            case Var(i):
                return fn(i, k)
            case Sort() | Const() | Ind() | Ctor():
                return t
            case Prod(n, a, b):
                return Prod(n, go(a, k), go(b, k + 1))
            case Lambda(n, a, b):
                return Lambda(n, go(a, k), go(b, k + 1))
            case LetIn(n, v, a, b):
                return LetIn(n, go(v, k), go(a, k), go(b, k + 1))
            case App(f, a):
                return App(go(f, k), go(a, k))
            case Case(ind, npars, s, brs, motive):
                return Case(
                    ind,
                    npars,
                    go(s, k),
                    tuple(Branch(b.arity, go(b.body, k + b.arity), b.names) for b in brs),
                    None if motive is None else go(motive, k),
                )
            case Fix(defs, idx):
                n = len(defs)
                return Fix(
                    tuple(FixDef(d.name, go(d.type, k), d.rarg, go(d.body, k + n)) for d in defs),
                    idx,
                )
        raise TypeError(f"not a term: {t!r}")

    return go(t, depth)


def lift(t: Term, n: int, k: int = 0) -> Term:
    if n == 0:
        return t
    return map_vars(t, lambda i, d: Var(i + n) if i >= d else Var(i), k)


def instantiate(t: Term, values: Sequence[Term], k: int = 0) -> Term:
    """Substitute ``values[j]`` for ``Var(k + j)`` and close the gap."""
    n = len(values)
    if n == 0:
        return t

    def fn(i: int, d: int) -> Term:
        if i < d:
            return Var(i)
        if i < d + n:
            return lift(values[i - d], d)
        return Var(i - n)

    return map_vars(t, fn, k)


def subst1(t: Term, value: Term) -> Term:
    return instantiate(t, [value])


def free_in(t: Term, index: int) -> bool:
    """Whether ``Var(index)`` (relative to ``t``'s root) occurs in ``t``."""
    found = False

    def fn(i: int, d: int) -> Term:
        nonlocal found
        if i == index + d:
            found = True
        return Var(i)

    map_vars(t, fn)
    return found


def closed_under(t: Term, n: int) -> bool:
    """True iff every free variable of ``t`` has index < n."""
    ok = True

    def fn(i: int, d: int) -> Term:
        nonlocal ok
        if i - d >= n:
            ok = False
        return Var(i)

    map_vars(t, fn)
    return ok


def term_size(t: Term) -> int:
    match t:
        case Var() | Sort() | Const() | Ind() | Ctor():
            return 1
        case Prod(_, a, b) | Lambda(_, a, b):
            return 1 + term_size(a) + term_size(b)
        case LetIn(_, v, a, b):
            return 1 + term_size(v) + term_size(a) + term_size(b)
        case App(f, a):
            return 1 + term_size(f) + term_size(a)
        case Case(_, _, s, brs, m):
            return (1 + term_size(s) + sum(term_size(b.body) for b in brs)
                    + (0 if m is None else term_size(m)))
        case Fix(defs, _):
            return 1 + sum(term_size(d.type) + term_size(d.body) for d in defs)
    raise TypeError(f"not a term: {t!r}")


def decompose_prod(t: Term) -> tuple[list[tuple[str, Term]], Term]:
    """Syntactic telescope of leading products."""
    binders = []
    while isinstance(t, Prod):
        binders.append((t.name, t.domain))
        t = t.codomain
    return binders, t


def decompose_lambda(t: Term) -> tuple[list[tuple[str, Term]], Term]:
    binders = []
    while isinstance(t, Lambda):
        binders.append((t.name, t.annotation))
        t = t.body
    return binders, t


def it_mk_prod(binders: Sequence[tuple[str, Term]], body: Term) -> Term:
    for name, dom in reversed(binders):
        body = Prod(name, dom, body)
    return body


def it_mk_lambda(binders: Sequence[tuple[str, Term]], body: Term) -> Term:
    for name, dom in reversed(binders):
        body = Lambda(name, dom, body)
    return body


def globals_of(t: Term) -> set[str]:
    """Global names (constants and inductives) mentioned in ``t``."""
    out: set[str] = set()

    def go(t: Term) -> None:
        match t:
            case Const(n) | Ind(n):
                out.add(n)
            case Ctor(ind, _):
                out.add(ind)
            case Var() | Sort():
                pass
            case Prod(_, a, b) | Lambda(_, a, b) | App(a, b):
                go(a)
                go(b)
            case LetIn(_, v, a, b):
                go(v)
                go(a)
                go(b)
            case Case(ind, _, s, brs, m):
                out.add(ind)
                go(s)
                for b in brs:
                    go(b.body)
                if m is not None:
                    go(m)
            case Fix(defs, _):
                for d in defs:
                    go(d.type)
                    go(d.body)

    go(t)
    return out
