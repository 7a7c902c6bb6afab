"""Printer for the Elm-like Midlang dialect.

The target is indentation sensitive and rejects shadowing, so every printing
function receives the absolute column it starts at and the set of names
already visible.
"""
from __future__ import annotations

import re

from ..errors import BackendError, ContainsTAny
from ..lambdabox.env import (
    BoxType, ErasedConstant, ErasedEnv, ErasedInductive, ErasedTypeAlias, TAny, TArr, TBox,
    TConst, TInd, TVar, decompose_tapp,
)
from ..lambdabox.syntax import (
    EBox, ECase, EConst, ECtor, EFix, ELambda, ELetIn, ETerm, EVar, decompose_eapp,
)
from .common import PrintedModule, ctor_remap, inline_blocks, pattern_template, saturate
from .naming import elm_local, elm_type, elm_tyvar, elm_value, fresh
from .prenex import check_prenex
from .remap import RemapTable, fill, placeholders

_SIMPLE = re.compile(r"^(?:[A-Za-z_][\w.]*|-?\d[\w.]*|\[\]|\(\)|\"[^\"]*\")$")


def _atomic(s: str) -> bool:
    if _SIMPLE.match(s):
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


def _nl(col: int) -> str:
    return "\n" + " " * col


def module_name(stem: str) -> str:
    return "".join(part[:1].upper() + part[1:] for part in re.split(r"[^A-Za-z0-9]+", stem) if part)


class ElmPrinter:
    def __init__(self, eenv: ErasedEnv, table: RemapTable):
        self.table = table
        self.eenv = saturate(eenv)
        self.values: dict[str, str] = {}
        self.types: dict[str, str] = {}
        self.ctors: dict[tuple[str, int], str] = {}
        taken: set[str] = set()
        for r in table.values():
            taken.update(re.findall(r"\b[a-z_][\w]*", r.target))
            if r.inline:
                taken.update(m.group(1) for m in re.finditer(r"^([a-z_]\w*)", r.inline, re.M))
        type_taken: set[str] = set()
        ctor_taken: set[str] = set()
        for d in self.eenv:
            if d.remap is not None:
                continue
            if isinstance(d, ErasedInductive):
                for b in d.bodies:
                    self.types[b.name] = fresh(elm_type(b.name), type_taken)
                    type_taken.add(self.types[b.name])
                    remaps = dict(b.remaps)
                    for j, c in enumerate(b.ctors):
                        if c.name not in remaps:
                            self.ctors[(b.name, j)] = fresh(elm_type(c.name), ctor_taken)
                            ctor_taken.add(self.ctors[(b.name, j)])
            elif isinstance(d, ErasedTypeAlias):
                self.types[d.name] = fresh(elm_type(d.name), type_taken)
                type_taken.add(self.types[d.name])
            else:
                self.values[d.name] = fresh(elm_value(d.name), taken)
                taken.add(self.values[d.name])
        self.globals = frozenset(taken)
        self.decl = ""

    # -- types --

    def type_head(self, name: str) -> tuple[str, bool]:
        entry = self.eenv.lookup(name)
        decl = entry[0] if isinstance(entry, tuple) else entry
        if decl.remap is not None and decl.name == name:
            return decl.remap.target, placeholders(decl.remap.target) > 0
        return self.types[name], False

    def ty(self, t: BoxType, vs: tuple[str, ...], prec: int = 0) -> str:
        """``prec`` 1: arrow domain; 2: type argument."""
        match t:
            case TVar(i):
                return vs[i]
            case TBox():
                return "()"
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
        s = " ".join([name] + printed)
        return f"({s})" if prec > 1 else s

    @staticmethod
    def type_params(names: tuple[str, ...]) -> tuple[str, ...]:
        out: list[str] = []
        for n in names:
            out.append(fresh(elm_tyvar(n), out))
        return tuple(out)

    def inductive(self, d: ErasedInductive) -> list[str]:
        vs = self.type_params(d.type_vars)
        out = []
        for b in d.bodies:
            head = " ".join((self.types[b.name],) + vs)
            alts = []
            for j, c in enumerate(b.ctors):
                alts.append(" ".join([self.ctors[(b.name, j)]] + [self.ty(t, vs, 2) for t in c.arg_types]))
            if not alts:
                raise BackendError(f"{b.name}: an empty type cannot be declared; remap it")
            lines = [f"type {head}", f"  = {alts[0]}"] + [f"  | {a}" for a in alts[1:]]
            out.append("\n".join(lines))
        return out

    def alias(self, d: ErasedTypeAlias) -> str:
        vs = self.type_params(d.type_vars)
        head = " ".join((self.types[d.name],) + vs)
        return f"type alias {head} = {self.ty(d.body, vs)}"

    # -- terms --

    def bind(self, name: str, scope) -> str:
        return fresh(elm_local(name), set(scope) | self.globals)

    def term(self, t: ETerm, names: list[str], col: int, prec: int) -> str:
        """``prec`` 0: anything; 1: function position; 2: argument."""
        match t:
            case EBox():
                return "()"
            case EVar(i):
                return names[i]
            case ELambda():
                c = col + (prec > 0)
                xs: list[str] = []
                while isinstance(t, ELambda):
                    xs.insert(0, self.bind(t.name, xs + names))
                    t = t.body
                prefix = "\\" + " ".join(reversed(xs)) + " -> "
                s = prefix + self.term(t, xs + names, c + len(prefix), 0)
                return f"({s})" if prec > 0 else s
            case ELetIn(n, v, b):
                c = col + (prec > 0)
                x = self.bind(n, names)
                value = self.term(v, names, c + 4, 0)
                s = (f"let{_nl(c + 2)}{x} ={_nl(c + 4)}{value}{_nl(c)}in{_nl(c)}"
                     + self.term(b, [x] + names, c, 0))
                return f"({s})" if prec > 0 else s
            case ECase():
                return self.case(t, names, col, prec)
            case EFix():
                return self.fix(t, names, col, prec)
        return self.app(t, names, col, prec)

    def spine(self, head: str, args: list[ETerm], names: list[str], col: int) -> str:
        out = head
        for a in args:
            line_start = out.rfind("\n") + 1
            c = col + len(out) + 1 if line_start == 0 else len(out) - line_start + 1
            out += " " + self.term(a, names, c, 2)
        return out

    def templated(self, target: str, args: list[ETerm], names: list[str], col: int) -> str:
        n = placeholders(target)
        if not n:
            return self.spine(target if not args or _atomic(target) else f"({target})", args, names, col)
        filled = fill(target, [self.term(a, names, col, 2) for a in args[:n]])
        rest = args[n:]
        if not rest:
            return filled
        return self.spine(filled if _atomic(filled) else f"({filled})", rest, names, col)

    def app(self, t: ETerm, names: list[str], col: int, prec: int) -> str:
        head, args = decompose_eapp(t)
        match head:
            case EConst(n) if n in self.values:
                s = self.spine(self.values[n], args, names, col)
            case EConst(n):
                s = self.templated(self.eenv.constant(n).remap.target, args, names, col)
            case ECtor(ind, j):
                decl, _ = self.eenv.inductive(ind)
                fields = args[decl.npars:]
                r = ctor_remap(self.eenv, ind, j)
                if r is not None:
                    s = self.templated(r.target, fields, names, col)
                else:
                    s = self.spine(self.ctor_name(ind, j), fields, names, col)
            case _:
                s = self.spine(self.term(head, names, col, 1), args, names, col)
        if prec >= 2 and not _atomic(s):
            return f"({s})"
        return s

    def pattern(self, ind: str, j: int, xs: list[str]) -> str:
        r = pattern_template(self.eenv, ind, j, self.decl)
        if r is not None:
            if placeholders(r.target):
                return fill(r.target, xs)
            return " ".join([r.target] + xs)
        return " ".join([self.ctor_name(ind, j)] + xs)

    def ctor_name(self, ind: str, j: int) -> str:
        if (ind, j) not in self.ctors:
            name = self.eenv.ctor(ind, j).name
            raise BackendError(f"{self.decl}: constructor {name} of remapped type {ind} has no remap")
        return self.ctors[(ind, j)]

    def case(self, t: ECase, names: list[str], col: int, prec: int) -> str:
        c = col + (prec > 0)
        if not t.branches:
            raise BackendError(f"{self.decl}: match on an empty type; remap its eliminator")
        scrut = self.term(t.scrutinee, names, c + 5, 0)
        lines = [f"case {scrut} of"]
        for j, br in enumerate(t.branches):
            xs: list[str] = []
            for k in range(br.arity):
                base = br.names[k] if k < len(br.names) else "x"
                xs.append(self.bind(base, xs + names))
            body = self.term(br.body, list(reversed(xs)) + names, c + 4, 0)
            lines.append(f"{' ' * (c + 2)}{self.pattern(t.ind, j, xs)} ->")
            lines.append(f"{' ' * (c + 4)}{body}")
        s = "\n".join(lines)
        return f"({s})" if prec > 0 else s

    def fix(self, t: EFix, names: list[str], col: int, prec: int) -> str:
        c = col + (prec > 0)
        fs: list[str] = []
        for d in t.defs:
            fs.append(self.bind(d.name, fs + names))
        inner = list(reversed(fs)) + names
        parts = ["let"]
        for f, d in zip(fs, t.defs):
            body = d.body
            xs: list[str] = []
            while isinstance(body, ELambda):
                xs.insert(0, self.bind(body.name, xs + inner))
                body = body.body
            text = self.term(body, xs + inner, c + 4, 0)
            parts.append(f"{' ' * (c + 2)}{' '.join([f] + list(reversed(xs)))} =")
            parts.append(f"{' ' * (c + 4)}{text}")
        parts.append(f"{' ' * c}in")
        parts.append(f"{' ' * c}{fs[t.index]}")
        s = "\n".join(parts)
        return f"({s})" if prec > 0 else s

    # -- declarations --

    def constant(self, d: ErasedConstant) -> str:
        self.decl = d.name
        name = self.values[d.name]
        vs = self.type_params(d.type_vars)
        annotation = f"{name} : {self.ty(d.signature, vs)}"
        body = d.body
        xs: list[str] = []
        while isinstance(body, ELambda):
            xs.insert(0, self.bind(body.name, xs))
            body = body.body
        head = " ".join([name] + list(reversed(xs)))
        return f"{annotation}\n{head} =\n  {self.term(body, xs, 2, 0)}"

    def module(self, name: str) -> PrintedModule:
        blocks = inline_blocks(self.table, self.eenv)
        imports = [ln for b in blocks for ln in b.splitlines() if ln.startswith("import ")]
        code = []
        for b in blocks:
            rest = "\n".join(ln for ln in b.splitlines() if not ln.startswith("import "))
            if rest.strip():
                code.append(rest)
        prelude = "\n".join([f"module {name} exposing (..)", ""] + list(dict.fromkeys(imports)))
        if code:
            prelude += "\n\n" + "\n\n".join(code)
        decls = []
        for d in self.eenv:
            if d.remap is not None:
                continue
            self.decl = d.name
            if isinstance(d, ErasedInductive):
                decls += self.inductive(d)
            elif isinstance(d, ErasedTypeAlias) and d.body is not None:
                decls.append(self.alias(d))
            elif isinstance(d, ErasedConstant) and d.body is not None:
                decls.append(self.constant(d))
        return PrintedModule(prelude=prelude, type_decls="", value_decls="\n\n".join(decls))


def print_elm(eenv: ErasedEnv, table: RemapTable, module: str = "Main") -> PrintedModule:
    check_prenex(eenv).raise_first()
    return ElmPrinter(eenv, table).module(module)
