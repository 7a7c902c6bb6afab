"""Erased types and erased global environments."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterator, Sequence, Union

from ..errors import UnknownName
from .syntax import ETerm

# -- erased types -------------------------------------------------------------


@dataclass(frozen=True)
class TVar:
    index: int  # position in the accompanying type-variable list


@dataclass(frozen=True)
class TInd:
    name: str


@dataclass(frozen=True)
class TConst:
    name: str


@dataclass(frozen=True)
class TApp:
    head: "BoxType"
    arg: "BoxType"


@dataclass(frozen=True)
class TArr:
    domain: "BoxType"
    codomain: "BoxType"


@dataclass(frozen=True)
class TBox:
    pass


@dataclass(frozen=True)
class TAny:
    pass


BoxType = Union[TVar, TInd, TConst, TApp, TArr, TBox, TAny]

TBOX = TBox()
TANY = TAny()


def mk_tapps(head: BoxType, args: Sequence[BoxType]) -> BoxType:
    for a in args:
        head = TApp(head, a)
    return head


def decompose_tapp(t: BoxType) -> tuple[BoxType, list[BoxType]]:
    args = []
    while isinstance(t, TApp):
        args.append(t.arg)
        t = t.head
    args.reverse()
    return t, args


def decompose_arr(t: BoxType) -> tuple[list[BoxType], BoxType]:
    doms = []
    while isinstance(t, TArr):
        doms.append(t.domain)
        t = t.codomain
    return doms, t


def mk_arrs(doms: Sequence[BoxType], cod: BoxType) -> BoxType:
    for d in reversed(doms):
        cod = TArr(d, cod)
    return cod


def box_type_nodes(t: BoxType) -> Iterator[BoxType]:
    yield t
    match t:
        case TApp(h, a):
            yield from box_type_nodes(h)
            yield from box_type_nodes(a)
        case TArr(d, c):
            yield from box_type_nodes(d)
            yield from box_type_nodes(c)


def show_box_type(t: BoxType, vs: Sequence[str] = (), prec: int = 0) -> str:
    match t:
        case TVar(i):
            return vs[i] if i < len(vs) else f"'{i}"
        case TInd(n) | TConst(n):
            return n
        case TBox():
            return "□"
        case TAny():
            return "Any"
        case TApp(h, a):
            s = f"{show_box_type(h, vs, 1)} {show_box_type(a, vs, 2)}"
            return f"({s})" if prec > 1 else s
        case TArr(d, c):
            s = f"{show_box_type(d, vs, 1)} -> {show_box_type(c, vs, 0)}"
            return f"({s})" if prec > 0 else s
    raise TypeError(t)


# -- declarations -------------------------------------------------------------


@dataclass(frozen=True)
class Remap:
    """Target-language replacement for a global."""

    target: str
    inline: str | None = None
    ann: str | None = None


@dataclass(frozen=True)
class ErasedConstant:
    name: str
    type_vars: tuple[str, ...]
    signature: BoxType
    body: ETerm | None
    remap: Remap | None = None


@dataclass(frozen=True)
class ErasedTypeAlias:
    """A constant whose type is an arity, e.g. ``def storage : Type := Z``."""

    name: str
    type_vars: tuple[str, ...]
    body: BoxType | None
    remap: Remap | None = None


@dataclass(frozen=True)
class ErasedParam:
    name: str
    is_logical: bool  # removed at the type level by remove_logical_params
    is_type_var: bool  # becomes a type variable of the declaration
    term_erased: bool  # occurrences in terms are boxes


@dataclass(frozen=True)
class ErasedCtor:
    name: str
    arg_types: tuple[BoxType, ...]
    arg_names: tuple[str, ...] = field(default=(), compare=False)


@dataclass(frozen=True)
class ErasedOneInductive:
    name: str
    ctors: tuple[ErasedCtor, ...]
    remaps: tuple[tuple[str, Remap], ...] = ()  # constructor remaps by name


@dataclass(frozen=True)
class ErasedInductive:
    """``params`` lists the type-level parameters that ``TApp`` chains apply.
    ``term_params`` has one entry per parameter still passed to constructors
    at the term level, telling whether its occurrences are boxes."""

    name: str
    params: tuple[ErasedParam, ...]
    term_params: tuple[bool, ...]
    bodies: tuple[ErasedOneInductive, ...]
    remap: Remap | None = None

    @property
    def npars(self) -> int:
        return len(self.term_params)

    @property
    def param_logical(self) -> tuple[bool, ...]:
        return tuple(p.is_logical for p in self.params)

    @property
    def type_vars(self) -> tuple[str, ...]:
        return tuple(p.name for p in self.params if p.is_type_var)


ErasedDecl = Union[ErasedConstant, ErasedTypeAlias, ErasedInductive]


@dataclass(frozen=True)
class ErasedEnv:
    decls: tuple[ErasedDecl, ...] = ()
    _index: dict = field(default_factory=dict, init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        for decl in self.decls:
            if isinstance(decl, ErasedInductive):
                for k, body in enumerate(decl.bodies):
                    self._index[body.name] = (decl, k)
            else:
                self._index[decl.name] = decl

    def __iter__(self) -> Iterator[ErasedDecl]:
        return iter(self.decls)

    def __len__(self) -> int:
        return len(self.decls)

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def lookup(self, name: str):
        if name not in self._index:
            raise UnknownName(name)
        return self._index[name]

    def constant(self, name: str) -> ErasedConstant:
        d = self._index.get(name)
        if not isinstance(d, ErasedConstant):
            raise UnknownName(name)
        return d

    def inductive(self, name: str) -> tuple[ErasedInductive, int]:
        d = self._index.get(name)
        if not isinstance(d, tuple):
            raise UnknownName(name)
        return d

    def one_inductive(self, name: str) -> ErasedOneInductive:
        decl, k = self.inductive(name)
        return decl.bodies[k]

    def ctor(self, ind: str, j: int) -> ErasedCtor:
        return self.one_inductive(ind).ctors[j]

    def ctor_arity(self, ind: str, j: int) -> int:
        """Arguments a fully applied constructor takes, parameters included."""
        decl, k = self.inductive(ind)
        return decl.npars + len(decl.bodies[k].ctors[j].arg_types)

    def names(self) -> list[str]:
        out = []
        for d in self.decls:
            if isinstance(d, ErasedInductive):
                out += [b.name for b in d.bodies]
            else:
                out.append(d.name)
        return out

    def map_decls(self, fn) -> "ErasedEnv":
        return ErasedEnv(tuple(fn(d) for d in self.decls))

    def replace_decl(self, decl: ErasedDecl) -> "ErasedEnv":
        return ErasedEnv(tuple(decl if d.name == decl.name else d for d in self.decls))


def with_remap(decl: ErasedDecl, remap: Remap) -> ErasedDecl:
    return replace(decl, remap=remap)
