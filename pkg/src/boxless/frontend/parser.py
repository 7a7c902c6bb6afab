"""Recursive-descent parser for ``.ccx`` source files.

Grammar (informal)::

    decl   ::= 'def' ID ':' term ':=' term
             | 'inductive' ID binder* [':' term] ':=' ctor* ('with' ID [':' term] ':=' ctor*)*
             | 'axiom' ID ':' term
             | 'require' STRING
    ctor   ::= '|' ID ':' term
    term   ::= 'forall' binder+ ',' term | 'fun' binder+ '=>' term
             | 'let' ID [':' term] ':=' term 'in' term
             | 'fix' fixdef ('with' fixdef)* ['for' ID]
             | app ['->' term]
    app    ::= atom atom*
    atom   ::= ID | 'Prop' | 'Type' | '(' term ')'
             | 'match' term 'as' ID ['return' atom] 'with' ('|' ID ID* '=>' term)* 'end'
    fixdef ::= ID binder+ ['{' 'struct' ID '}'] ':' term ':=' term
    binder ::= ID | '(' ID+ ':' term ')'

Comments are ``(* ... *)`` and nest.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import ParseError
from .surface import (
    Axiom, Definition, IndBody, Inductive, Require, SApp, SArrow, SBinder, SBranch,
    SFix, SFixDef, SForall, SFun, SIdent, SLet, SMatch, SSort, STerm, SurfaceDecl,
)

KEYWORDS = {
    "def", "inductive", "axiom", "require", "forall", "fun", "let", "in", "match", "as",
    "return", "with", "end", "fix", "for", "struct", "Prop", "Type",
}
DECL_STARTS = {"def", "inductive", "axiom", "require"}

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<string>"[^"\n]*")
  | (?P<sym>:=|=>|->|[(){}:,|])
  | (?P<ident>[A-Za-z_][A-Za-z0-9_'.]*)
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str  # ident, kw, sym, string, eof
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    pos, line, line_start = 0, 1, 0
    n = len(text)
    while pos < n:
        if text.startswith("(*", pos):
            depth, start_line, start_col = 0, line, pos - line_start + 1
            while pos < n:
                if text.startswith("(*", pos):
                    depth += 1
                    pos += 2
                elif text.startswith("*)", pos):
                    depth -= 1
                    pos += 2
                    if depth == 0:
                        break
                else:
                    if text[pos] == "\n":
                        line += 1
                        line_start = pos + 1
                    pos += 1
            if depth:
                raise ParseError(start_line, start_col, "end of comment '*)'")
            continue
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(line, pos - line_start + 1, "a token", text[pos])
        kind = m.lastgroup
        value = m.group()
        col = pos - line_start + 1
        if kind == "ws":
            for i, ch in enumerate(value):
                if ch == "\n":
                    line += 1
                    line_start = pos + i + 1
        elif kind == "ident":
            tokens.append(Token("kw" if value in KEYWORDS else "ident", value, line, col))
        elif kind == "string":
            tokens.append(Token("string", value[1:-1], line, col))
        else:
            tokens.append(Token("sym", value, line, col))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    # -- token helpers --

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def at(self, text: str) -> bool:
        t = self.tok
        return t.kind in ("sym", "kw") and t.text == text

    def fail(self, expected: str):
        t = self.tok
        raise ParseError(t.line, t.col, expected, t.text or "end of input")

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail(repr(text))
        t = self.tok
        self.i += 1
        return t

    def ident(self) -> Token:
        t = self.tok
        if t.kind != "ident":
            self.fail("an identifier")
        self.i += 1
        return t

    # -- declarations --

    def program(self) -> list[SurfaceDecl]:
        decls = []
        while self.tok.kind != "eof":
            decls.append(self.decl())
        return decls

    def decl(self) -> SurfaceDecl:
        t = self.tok
        loc = (t.line, t.col)
        if self.at("def"):
            self.i += 1
            name = self.ident().text
            self.expect(":")
            ty = self.term()
            self.expect(":=")
            return Definition(name, ty, self.term(), loc)
        if self.at("axiom"):
            self.i += 1
            name = self.ident().text
            self.expect(":")
            return Axiom(name, self.term(), loc)
        if self.at("require"):
            self.i += 1
            if self.tok.kind != "string":
                self.fail("a quoted path")
            path = self.tok.text
            self.i += 1
            return Require(path, loc)
        if self.at("inductive"):
            self.i += 1
            name = self.ident().text
            params = self.binders(allow_bare=False)
            bodies = [self.ind_body(name)]
            while self.at("with"):
                self.i += 1
                bodies.append(self.ind_body(self.ident().text))
            return Inductive(tuple(params), tuple(bodies), loc)
        self.fail("a declaration ('def', 'inductive', 'axiom' or 'require')")

    def ind_body(self, name: str) -> IndBody:
        arity: STerm = SSort("Type")
        if self.at(":"):
            self.i += 1
            arity = self.term()
        self.expect(":=")
        ctors = []
        while self.at("|"):
            self.i += 1
            cname = self.ident().text
            self.expect(":")
            ctors.append((cname, self.term()))
        return IndBody(name, arity, tuple(ctors))

    # -- terms --

    def binders(self, allow_bare: bool = True) -> list[SBinder]:
        out: list[SBinder] = []
        while True:
            if self.tok.kind == "ident" and allow_bare:
                out.append(SBinder(self.ident().text))
            elif self.at("(") and self.toks[self.i + 1].kind == "ident":
                self.i += 1
                names = [self.ident().text]
                while self.tok.kind == "ident":
                    names.append(self.ident().text)
                self.expect(":")
                ty = self.term()
                self.expect(")")
                out.extend(SBinder(n, ty) for n in names)
            else:
                return out

    def term(self) -> STerm:
        if self.at("forall"):
            self.i += 1
            bs = self.binders()
            if not bs:
                self.fail("a binder")
            self.expect(",")
            return SForall(tuple(bs), self.term())
        if self.at("fun"):
            self.i += 1
            bs = self.binders()
            if not bs:
                self.fail("a binder")
            self.expect("=>")
            return SFun(tuple(bs), self.term())
        if self.at("let"):
            self.i += 1
            name = self.ident().text
            ty = None
            if self.at(":"):
                self.i += 1
                ty = self.term()
            self.expect(":=")
            value = self.term()
            self.expect("in")
            return SLet(name, ty, value, self.term())
        if self.at("fix"):
            self.i += 1
            defs = [self.fixdef()]
            while self.at("with"):
                self.i += 1
                defs.append(self.fixdef())
            selected = defs[0].name
            if self.at("for"):
                self.i += 1
                selected = self.ident().text
            return SFix(tuple(defs), selected)
        left = self.app()
        if self.at("->"):
            self.i += 1
            return SArrow(left, self.term())
        return left

    def fixdef(self) -> SFixDef:
        name = self.ident().text
        bs = self.binders(allow_bare=False)
        if not bs:
            self.fail("an annotated binder")
        struct = bs[0].name
        if self.at("{"):
            self.i += 1
            self.expect("struct")
            struct = self.ident().text
            self.expect("}")
        self.expect(":")
        rtype = self.term()
        self.expect(":=")
        return SFixDef(name, tuple(bs), struct, rtype, self.term())

    def starts_atom(self) -> bool:
        t = self.tok
        return t.kind == "ident" or (t.kind in ("sym", "kw") and t.text in ("(", "Prop", "Type", "match"))

    def app(self) -> STerm:
        head = self.atom()
        args = []
        while self.starts_atom():
            args.append(self.atom())
        return SApp(head, tuple(args)) if args else head

    def atom(self) -> STerm:
        t = self.tok
        if t.kind == "ident":
            self.i += 1
            return SIdent(t.text, (t.line, t.col))
        if self.at("Prop") or self.at("Type"):
            self.i += 1
            return SSort(t.text)
        if self.at("("):
            self.i += 1
            inner = self.term()
            self.expect(")")
            return inner
        if self.at("match"):
            self.i += 1
            scrut = self.term()
            self.expect("as")
            ind = self.ident().text
            ret = None
            if self.at("return"):
                self.i += 1
                ret = self.atom()
            self.expect("with")
            branches = []
            while self.at("|"):
                self.i += 1
                c = self.ident()
                vars_ = []
                while self.tok.kind == "ident":
                    vars_.append(self.ident().text)
                self.expect("=>")
                branches.append(SBranch(c.text, tuple(vars_), self.term(), (c.line, c.col)))
            self.expect("end")
            return SMatch(scrut, ind, ret, tuple(branches), (t.line, t.col))
        self.fail("a term")


def parse_program(text: str) -> list[SurfaceDecl]:
    return Parser(text).program()


def parse_term(text: str) -> STerm:
    p = Parser(text)
    t = p.term()
    if p.tok.kind != "eof":
        p.fail("end of input")
    return t
