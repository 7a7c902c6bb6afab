"""Printer for the OCaml-like Liquidity dialect.

Liquidity has no recursive or single-constructor variants, packs constructor
arguments into one tuple and only allows tail recursion on one argument.
"""
from __future__ import annotations

import re

from ..errors import (
    BackendError, BoxInOutput, ContainsTAny, RecursiveDatatype, SingleCtorVariant,
    UnsupportedRecursion,
)
from ..lambdabox.env import (
    BoxType, ErasedConstant, ErasedEnv, ErasedInductive, ErasedTypeAlias, TAny, TArr,
    TBox, TConst, TInd, TVar, box_type_nodes, decompose_arr, decompose_tapp,
)
from ..lambdabox.syntax import (
    EApp, EBox, ECase, EConst, ECtor, EFix, ELambda, ELetIn, ETerm, EVar, decompose_eapp,
    occurs, subterms,
)
from .common import PrintedModule, block_names, ctor_remap, inline_blocks, pattern_template, saturate
from .naming import fresh, liq_ctor, liq_local, liq_type, liq_tyvar, liq_value
from .prenex import check_prenex
from .remap import RemapTable, fill, placeholders

_ATOM = re.compile(r"^(?:[A-Za-z_][\w'.]*|-?\d[\w.]*|\[\]|\(\)|\"[^\"]*\")$")


def _atomic(s: str) -> bool:
    if _ATOM.match(s):
        return True
    if not (s.startswith("(") and s.endswith(")")):
        return False
    depth = 0
    for i, ch in enumerate(s):
        depth += ch == "("
        depth -= ch == ")"
        if depth == 0 and i < len(s) - 1:
            return False
    return True


def _paren(s: str) -> str:
    return s if _atomic(s) else f"({s})"


def _indent(col: int) -> str:
    return "\n" + " " * col


# -- restrictions --------------------------------------------------------------

def _tail_recursive(t: ETerm, f: int) -> bool:
    """``EVar(f)`` occurs only as the head of tail calls with one argument."""
    match t:
        case ECase(_, _, s, brs):
            return not occurs(s, f) and all(_tail_recursive(b.body, f + b.arity) for b in brs)
        case ELetIn(_, v, b):
            return not occurs(v, f) and _tail_recursive(b, f + 1)
        case EApp():
            head, args = decompose_eapp(t)
            if head == EVar(f):
                return len(args) == 1 and not occurs(args[0], f)
    return not occurs(t, f)


def _check_fix(name: str, fix: EFix) -> None:
    if len(fix.defs) != 1:
        raise UnsupportedRecursion(f"{name}: mutual recursion is not supported")
    d = fix.defs[0]
    body = d.body
    if not isinstance(body, ELambda) or isinstance(body.body, ELambda):
        raise UnsupportedRecursion(f"{name}: recursive function {d.name!r} must take one argument")
    if not _tail_recursive(body.body, 1):
        raise UnsupportedRecursion(f"{name}: recursion in {d.name!r} is not a tail call")


def check_liquidity(eenv: ErasedEnv) -> None:
    """Raise the first Liquidity restriction ``eenv`` violates."""
    check_prenex(eenv).raise_first()
    for d in eenv:
        if d.remap is not None:
            continue
        if isinstance(d, ErasedInductive):
            own = block_names(d)
            for b in d.bodies:
                for c in b.ctors:
                    refs = {n.name for t in c.arg_types for n in box_type_nodes(t)
                            if isinstance(n, TInd)}
                    if refs & own:
                        raise RecursiveDatatype(f"{b.name}: constructor {c.name} is recursive")
                if len(b.ctors) == 1:
                    raise SingleCtorVariant(f"{b.name} has a single constructor; remap it")
        elif isinstance(d, ErasedConstant) and d.body is not None:
            for u in subterms(d.body):
                if isinstance(u, EBox):
                    raise BoxInOutput(f"{d.name}: body still contains a box")
                if isinstance(u, EFix):
                    _check_fix(d.name, u)


# -- printer -------------------------------------------------------------------

class LiquidityPrinter:
    def __init__(self, eenv: ErasedEnv, table: RemapTable):
        self.table = table
        self.eenv = saturate(eenv)
        self.values: dict[str, str] = {}
        taken: set[str] = set()
        for r in table.values():
            if re.fullmatch(r"[a-z_][\w']*", r.target):
                taken.add(r.target)
            if r.inline:
                taken.update(re.findall(r"^let(?:\[@inline\])?\s+(?:rec\s+)?([a-z_][\w']*)", r.inline, re.M))
        for d in self.eenv:
            if isinstance(d, ErasedConstant) and d.remap is None:
                self.values[d.name] = fresh(liq_value(d.name), taken)
                taken.add(self.values[d.name])
        self.taken = frozenset(taken)
        self.decl = ""  # name of the declaration being printed, for errors

    # -- types --

    def type_head(self, name: str) -> tuple[str, bool]:
        """Printed head and whether it is a template."""
        entry = self.eenv.lookup(name)
        decl = entry[0] if isinstance(entry, tuple) else entry
        if decl.remap is not None and decl.name == name:
            return decl.remap.target, placeholders(decl.remap.target) > 0
        return liq_type(name), False

    def ty(self, t: BoxType, vs: tuple[str, ...], prec: int = 0) -> str:
        match t:
            case TVar(i):
                return vs[i]
            case TBox():
                return "unit"
            case TAny():
                raise ContainsTAny(self.decl, "printed type")
            case TArr(d, c):
                s = f"{self.ty(d, vs, 1)} -> {self.ty(c, vs, 0)}"
                return f"({s})" if prec > 0 else s
        head, args = decompose_tapp(t)
        if not isinstance(head, (TInd, TConst)):
            raise BackendError(f"{self.decl}: cannot print type application of {head!r}")
        name, template = self.type_head(head.name)
        printed = [self.ty(a, vs, 2) for a in args]
        if template:
            return fill(name, printed)
        if not printed:
            return name
        if len(printed) == 1:
            return f"{printed[0]} {name}"
        return f"({', '.join(self.ty(a, vs, 0) for a in args)}) {name}"

    def type_params(self, names: tuple[str, ...]) -> tuple[str, ...]:
        out: list[str] = []
        for n in names:
            out.append(fresh(liq_tyvar(n), out))
        return tuple(out)

    @staticmethod
    def params_prefix(vs: tuple[str, ...]) -> str:
        if not vs:
            return ""
        if len(vs) == 1:
            return vs[0] + " "
        return f"({', '.join(vs)}) "

    def inductive(self, d: ErasedInductive) -> list[str]:
        vs = self.type_params(d.type_vars)
        out = []
        for b in d.bodies:
            alts = []
            for c in b.ctors:
                args = [self.ty(t, vs, 2) for t in c.arg_types]
                if not args:
                    alts.append(liq_ctor(c.name))
                elif len(args) == 1:
                    alts.append(f"{liq_ctor(c.name)} of {args[0]}")
                else:
                    alts.append(f"{liq_ctor(c.name)} of ({' * '.join(args)})")
            out.append(f"type {self.params_prefix(vs)}{liq_type(b.name)} = {' | '.join(alts)}")
        return out

    def alias(self, d: ErasedTypeAlias) -> str:
        vs = self.type_params(d.type_vars)
        return f"type {self.params_prefix(vs)}{liq_type(d.name)} = {self.ty(d.body, vs)}"

    # -- terms --

    def bind(self, name: str, scope: list[str]) -> str:
        return fresh(liq_local(name), set(scope) | self.taken)

    def term(self, t: ETerm, names: list[str], col: int, prec: int) -> str:
        """``prec`` 0: anything; 1: compound forms need parentheses; 2: atoms only."""
        match t:
            case EBox():
                raise BoxInOutput(f"{self.decl}: box in printed code")
            case EVar(i):
                return names[i]
            case ELambda():
                return self.lam(t, names, col, prec)
            case ELetIn(n, v, b):
                c = col + (prec > 0)
                x = self.bind(n, names)
                head = f"let {x} = {self.term(v, names, c + 7 + len(x), 0)} in"
                s = head + _indent(c) + self.term(b, [x] + names, c, 0)
                return f"({s})" if prec > 0 else s
            case ECase():
                return self.case(t, names, col, prec)
            case EFix():
                return self.fix(t, names, col, prec)
        return self.app(t, names, col, prec)

    def lam(self, t: ETerm, names: list[str], col: int, prec: int) -> str:
        c = col + (prec > 0)
        xs: list[str] = []
        while isinstance(t, ELambda):
            x = self.bind(t.name, xs + names)
            xs.insert(0, x)
            t = t.body
        prefix = " ".join(f"fun {x} ->" for x in reversed(xs)) + " "
        s = prefix + self.term(t, xs + names, c + len(prefix), 0)
        return f"({s})" if prec > 0 else s

    def app(self, t: ETerm, names: list[str], col: int, prec: int) -> str:
        head, args = decompose_eapp(t)
        match head:
            case EConst(n) if n in self.values:
                s = self.spine(self.values[n], args, names, col)
            case EConst(n):
                r = self.eenv.constant(n).remap
                s = self.templated(r.target, args, names, col)
            case ECtor(ind, j):
                s = self.ctor(ind, j, args, names, col)
            case _:
                s = self.spine(self.term(head, names, col, 2), args, names, col)
        if prec >= 2 and not _atomic(s):
            return f"({s})"
        return s

    def spine(self, head: str, args: list[ETerm], names: list[str], col: int) -> str:
        parts = [head]
        for a in args:
            c = col + sum(len(p) + 1 for p in parts)
            parts.append(self.term(a, names, c, 2))
        return " ".join(parts)

    def templated(self, target: str, args: list[ETerm], names: list[str], col: int) -> str:
        n = placeholders(target)
        if not n:
            return self.spine(target if not args else _paren(target), args, names, col)
        filled = fill(target, [self.term(a, names, col, 2) for a in args[:n]])
        if len(args) == n:
            return filled
        return self.spine(_paren(filled), args[n:], names, col)

    def packed(self, fields: list[str]) -> str:
        if len(fields) == 1:
            return fields[0]
        return f"({', '.join(fields)})"

    def ctor(self, ind: str, j: int, args: list[ETerm], names: list[str], col: int) -> str:
        decl, _ = self.eenv.inductive(ind)
        fields_t = args[decl.npars:]
        r = ctor_remap(self.eenv, ind, j)
        if r is not None and placeholders(r.target):
            return self.templated(r.target, fields_t, names, col)
        name = r.target if r is not None else self.ctor_name(ind, j)
        if not fields_t:
            return name
        prec = 2 if len(fields_t) == 1 else 1
        fields = [self.term(a, names, col, prec) for a in fields_t]
        return f"{name} {self.packed(fields)}"

    def pattern(self, ind: str, j: int, xs: list[str]) -> str:
        r = pattern_template(self.eenv, ind, j, self.decl)
        if r is not None and placeholders(r.target):
            return fill(r.target, xs)
        name = r.target if r is not None else self.ctor_name(ind, j)
        return f"{name} {self.packed(xs)}" if xs else name

    def ctor_name(self, ind: str, j: int) -> str:
        decl, _ = self.eenv.inductive(ind)
        name = self.eenv.ctor(ind, j).name
        if decl.remap is not None:
            raise BackendError(f"{self.decl}: constructor {name} of remapped type {ind} has no remap")
        return liq_ctor(name)

    def bool_case(self, ind: str) -> tuple[int, int] | None:
        """Branch indices for ``then`` and ``else`` when ``ind`` prints as bool."""
        decl, _ = self.eenv.inductive(ind)
        if decl.remap is None or decl.remap.target != "bool":
            return None
        targets = [getattr(ctor_remap(self.eenv, ind, j), "target", None) for j in (0, 1)]
        if targets == ["true", "false"]:
            return 0, 1
        if targets == ["false", "true"]:
            return 1, 0
        return None

    def case(self, t: ECase, names: list[str], col: int, prec: int) -> str:
        c = col + (prec > 0)
        wrap = (lambda s: f"({s})") if prec > 0 else (lambda s: s)
        if not t.branches:
            return "(failwith ())"
        tf = self.bool_case(t.ind)
        if tf is not None and all(b.arity == 0 for b in t.branches):
            cond = self.term(t.scrutinee, names, c + 3, 1)
            yes = self.term(t.branches[tf[0]].body, names, c + 2, 1)
            no = self.term(t.branches[tf[1]].body, names, c + 2, 1)
            flat = f"if {cond} then {yes} else {no}"
            if "\n" not in flat and len(flat) + c <= 100:
                return wrap(flat)
            return wrap(f"if {cond} then{_indent(c + 2)}{yes}{_indent(c)}else{_indent(c + 2)}{no}")
        scrut = self.term(t.scrutinee, names, c + 6, 1)
        lines = [f"match {scrut} with"]
        for j, br in enumerate(t.branches):
            xs: list[str] = []
            for k in range(br.arity):
                base = br.names[k] if k < len(br.names) else "x"
                xs.append(self.bind(base, xs + names))
            body = self.term(br.body, list(reversed(xs)) + names, c + 4, 1)
            head = f"| {self.pattern(t.ind, j, xs)} ->"
            if "\n" in body:
                lines.append(f"{head}{_indent(c + 4)}{body}")
            else:
                lines.append(f"{head} {body}")
        return wrap(_indent(c).join(lines))

    def fix(self, t: EFix, names: list[str], col: int, prec: int) -> str:
        _check_fix(self.decl, t)
        d = t.defs[0]
        c = col + (prec > 0)
        f = self.bind(d.name, names)
        x = self.bind(d.body.name, [f] + names)
        body = self.term(d.body.body, [x, f] + names, c + 2, 0)
        s = f"let rec {f} {x} ={_indent(c + 2)}{body}{_indent(c)}in {f}"
        return f"({s})" if prec > 0 else s

    # -- declarations --

    def constant(self, d: ErasedConstant) -> str:
        self.decl = d.name
        name = self.values[d.name]
        vs = self.type_params(d.type_vars)
        doms, _ = decompose_arr(d.signature)
        body = d.body
        if isinstance(body, EFix) and len(body.defs) == 1 and body.index == 0:
            _check_fix(d.name, body)
            lam = body.defs[0].body
            x = self.bind(lam.name, [name])
            param = f"({x} : {self.ty(doms[0], vs)})" if doms else x
            text = self.term(lam.body, [x, name], 2, 0)
            return f"let rec {name} {param} ={_indent(2)}{text}"
        xs: list[str] = []
        params = []
        while isinstance(body, ELambda):
            x = self.bind(body.name, xs)
            k = len(xs)
            params.append(f"({x} : {self.ty(doms[k], vs)})" if k < len(doms) else x)
            xs.insert(0, x)
            body = body.body
        text = self.term(body, xs, 2, 0)
        if params:
            return f"let {name} {' '.join(params)} ={_indent(2)}{text}"
        return f"let {name} : {self.ty(d.signature, vs)} ={_indent(2)}{text}"

    def wrapper(self, entry: str) -> str:
        self.decl = entry
        d = self.eenv.constant(entry)
        doms, _ = decompose_arr(d.signature)
        if len(doms) != 2:
            raise BackendError(f"entry point {entry!r} must take a parameter and a storage")
        storage = self.ty(doms[1], self.type_params(d.type_vars))
        return (f"let wrapper param (st : {storage}) ="
                f"\n  match {self.values[entry]} param st with"
                "\n  | Some v -> v"
                "\n  | None -> failwith ()")

    def module(self, entry: str | None = None) -> PrintedModule:
        types, values = [], []
        for d in self.eenv:
            if d.remap is not None:
                continue
            self.decl = d.name
            if isinstance(d, ErasedInductive):
                types += self.inductive(d)
            elif isinstance(d, ErasedTypeAlias) and d.body is not None:
                types.append(self.alias(d))
            elif isinstance(d, ErasedConstant) and d.body is not None:
                values.append(self.constant(d))
        return PrintedModule(
            prelude="\n".join(inline_blocks(self.table, self.eenv)),
            type_decls="\n".join(types),
            value_decls="\n\n".join(values),
            entry_wrapper=self.wrapper(entry) if entry else None,
        )


def print_liquidity(eenv: ErasedEnv, table: RemapTable, entry: str | None = None) -> PrintedModule:
    check_liquidity(eenv)
    return LiquidityPrinter(eenv, table).module(entry)
