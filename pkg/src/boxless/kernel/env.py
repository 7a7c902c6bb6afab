"""Global environments and local typing contexts."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from ..errors import UnknownName
from .term import Ind, Term, decompose_app, decompose_prod, instantiate, lift


@dataclass(frozen=True)
class ConstantDecl:
    name: str
    type: Term
    body: Term | None = None

    @property
    def is_axiom(self) -> bool:
        return self.body is None


@dataclass(frozen=True)
class CtorDecl:
    """``type`` lives under the block context: ``Var(n - 1 - k)`` is body ``k``
    of an ``n``-body block.  It quantifies over the parameters first."""

    name: str
    type: Term


@dataclass(frozen=True)
class OneInductive:
    name: str
    arity: Term  # closed: forall params indices, sort
    ctors: tuple[CtorDecl, ...]


@dataclass(frozen=True)
class InductiveDecl:
    name: str
    npars: int
    bodies: tuple[OneInductive, ...]


Decl = ConstantDecl | InductiveDecl


@dataclass(frozen=True)
class CtxEntry:
    name: str
    type: Term
    definition: Term | None = None


# innermost entry first, matching de Bruijn order
Context = tuple[CtxEntry, ...]

EMPTY_CTX: Context = ()


def push(ctx: Context, name: str, type: Term, definition: Term | None = None) -> Context:
    return (CtxEntry(name, type, definition),) + ctx


def push_many(ctx: Context, binders: Iterable[tuple[str, Term]]) -> Context:
    """Push binders given outermost first."""
    for name, ty in binders:
        ctx = push(ctx, name, ty)
    return ctx


@dataclass(frozen=True)
class GlobalEnv:
    decls: tuple[Decl, ...] = ()
    _index: dict = field(default_factory=dict, init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        index = self._index
        for decl in self.decls:
            if isinstance(decl, ConstantDecl):
                names = [decl.name]
            else:
                names = [decl.name] + [b.name for b in decl.bodies]
                names += [c.name for b in decl.bodies for c in b.ctors]
            for n in dict.fromkeys(names):
                if n in index:
                    raise ValueError(f"duplicate global name {n!r}")
            if isinstance(decl, ConstantDecl):
                index[decl.name] = decl
            else:
                for k, body in enumerate(decl.bodies):
                    index[body.name] = (decl, k)
                    for j, c in enumerate(body.ctors):
                        index[c.name] = (decl, k, j)

    def add(self, decl: Decl) -> "GlobalEnv":
        return GlobalEnv(self.decls + (decl,))

    def __iter__(self) -> Iterator[Decl]:
        return iter(self.decls)

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def constant(self, name: str) -> ConstantDecl:
        d = self._index.get(name)
        if not isinstance(d, ConstantDecl):
            raise UnknownName(name)
        return d

    def is_constant(self, name: str) -> bool:
        return isinstance(self._index.get(name), ConstantDecl)

    def is_inductive(self, name: str) -> bool:
        d = self._index.get(name)
        return isinstance(d, tuple) and len(d) == 2

    def inductive(self, name: str) -> tuple[InductiveDecl, int]:
        d = self._index.get(name)
        if not (isinstance(d, tuple) and len(d) == 2):
            raise UnknownName(name)
        return d

    def one_inductive(self, name: str) -> OneInductive:
        decl, k = self.inductive(name)
        return decl.bodies[k]

    def ctor_by_name(self, name: str) -> tuple[str, int] | None:
        d = self._index.get(name)
        if isinstance(d, tuple) and len(d) == 3:
            decl, k, j = d
            return decl.bodies[k].name, j
        return None

    def npars(self, ind: str) -> int:
        return self.inductive(ind)[0].npars

    def ctor_type(self, ind: str, j: int) -> Term:
        """Closed constructor type with block references resolved."""
        decl, k = self.inductive(ind)
        body = decl.bodies[k]
        if not 0 <= j < len(body.ctors):
            raise UnknownName(f"{ind}#{j}")
        n = len(decl.bodies)
        # Var(0) is the last body of the block
        block = [Ind(decl.bodies[n - 1 - i].name) for i in range(n)]
        return instantiate(body.ctors[j].type, block)

    def ctor_nargs(self, ind: str, j: int) -> int:
        binders, _ = decompose_prod(self.ctor_type(ind, j))
        return len(binders) - self.npars(ind)

    def ctor_name(self, ind: str, j: int) -> str:
        return self.one_inductive(ind).ctors[j].name

    def axioms(self) -> list[str]:
        return [d.name for d in self.decls if isinstance(d, ConstantDecl) and d.is_axiom]


def block_context(decl: InductiveDecl) -> Context:
    """Context binding the bodies of ``decl`` (body 0 outermost)."""
    ctx: Context = EMPTY_CTX
    for i, body in enumerate(decl.bodies):
        ctx = push(ctx, body.name, lift(body.arity, i))
    return ctx


def ctor_conclusion_args(ctor_type: Term) -> list[Term]:
    """Arguments of the inductive in the conclusion of a constructor type."""
    _, concl = decompose_prod(ctor_type)
    _, args = decompose_app(concl)
    return args


def var_type(ctx: Context, i: int) -> Term:
    if i >= len(ctx):
        raise IndexError(i)
    return lift(ctx[i].type, i + 1)

