"""Well-formedness checkers for printed code.

Neither target toolchain is available, so these recognise the subset of each
dialect the printers emit: a layout-aware parser with a scope check for the
Elm dialect and a plain recursive-descent parser for the Liquidity dialect.
Both return a list of problems; an empty list means the text is accepted.
"""
from __future__ import annotations

import re
from dataclasses import dataclass


@dataclass(frozen=True)
class Tok:
    kind: str  # lower, upper, num, str, sym, eof
    text: str
    line: int
    col: int


class Reject(Exception):
    pass


def _tokenize(text: str, pattern: re.Pattern, comment: str) -> list[Tok]:
    toks = []
    for lineno, line in enumerate(text.splitlines(), 1):
        pos = 0
        while pos < len(line):
            if line.startswith(comment, pos):
                break
            if line[pos].isspace():
                pos += 1
                continue
            m = pattern.match(line, pos)
            if m is None:
                raise Reject(f"{lineno}:{pos + 1}: unexpected character {line[pos]!r}")
            kind = m.lastgroup
            toks.append(Tok(kind, m.group(), lineno, pos + 1))
            pos = m.end()
    toks.append(Tok("eof", "", len(text.splitlines()) + 1, 0))
    return toks


class _Parser:
    def __init__(self, toks: list[Tok], externals):
        self.toks = toks
        self.i = 0
        self.externals = externals
        self.problems: list[str] = []
        self.globals: set[str] = set()

    @property
    def tok(self) -> Tok:
        return self.toks[self.i]

    def at(self, *texts: str) -> bool:
        return self.tok.kind in ("sym", "lower") and self.tok.text in texts

    def fail(self, expected: str):
        t = self.tok
        raise Reject(f"{t.line}:{t.col}: expected {expected}, found {t.text or 'end of input'!r}")

    def expect(self, text: str) -> Tok:
        if not self.at(text):
            self.fail(repr(text))
        t = self.tok
        self.i += 1
        return t

    def use(self, t: Tok, scope) -> None:
        name = t.text
        if "." in name or name in scope or name in self.globals:
            return
        if self.externals is not None and name not in self.externals:
            self.problems.append(f"{t.line}:{t.col}: unbound name {name!r}")


# -- Elm ----------------------------------------------------------------------

_ELM_TOKEN = re.compile(r"""
    (?P<str>"(?:[^"\\]|\\.)*")
  | (?P<num>-?\d+(?:\.\d+)?)
  | (?P<upper>[A-Z][\w]*(?:\.[A-Za-z_]\w*)*)
  | (?P<lower>[a-z_][\w]*)
  | (?P<sym>->|::|\+\+|==|/=|<=|>=|\|>|<\||\.\.|[=:(),|\\\[\]<>+*/-])
""", re.VERBOSE)

_ELM_KEYWORDS = {"case", "of", "let", "in", "if", "then", "else", "type", "alias", "module",
                 "exposing", "import", "as", "where", "port"}
_ELM_BINOPS = {"::", "++", "+", "-", "*", "/", "<", ">", "<=", ">=", "==", "/=", "|>", "<|"}


class _Elm(_Parser):
    def continues(self, limit: int) -> bool:
        """The current token belongs to an expression whose block is at ``limit``."""
        t, prev = self.tok, self.toks[self.i - 1]
        if t.kind == "eof":
            return False
        return t.line == prev.line or t.col > limit

    def bind(self, t: Tok, scope: list[str]) -> None:
        if t.text == "_":
            return
        if t.text in scope or t.text in self.globals:
            self.problems.append(f"{t.line}:{t.col}: {t.text!r} shadows a name in scope")
        scope.append(t.text)

    # patterns

    def apattern(self, scope: list[str]) -> None:
        t = self.tok
        if t.kind == "lower" and t.text not in _ELM_KEYWORDS:
            self.i += 1
            self.bind(t, scope)
        elif t.kind in ("num", "str", "upper"):
            self.i += 1
        elif self.at("["):
            self.i += 1
            self.expect("]")
        elif self.at("("):
            self.i += 1
            if self.at(")"):
                self.i += 1
                return
            self.pattern(scope)
            while self.at(",", "::"):
                self.i += 1
                self.pattern(scope)
            self.expect(")")
        else:
            self.fail("a pattern")

    def pattern(self, scope: list[str]) -> None:
        if self.tok.kind == "upper":
            self.i += 1
            while self.tok.kind in ("lower", "upper", "num") or self.at("(", "["):
                if self.tok.kind == "lower" and self.tok.text in _ELM_KEYWORDS:
                    break
                self.apattern(scope)
        else:
            self.apattern(scope)
        if self.at("::"):
            self.i += 1
            self.pattern(scope)

    # expressions

    def expr(self, limit: int, scope: list[str]) -> None:
        if self.at("\\"):
            self.i += 1
            inner = list(scope)
            self.apattern(inner)
            while not self.at("->"):
                self.apattern(inner)
            self.i += 1
            self.expr(limit, inner)
        elif self.at("case"):
            self.i += 1
            self.expr(limit, scope)
            self.expect("of")
            col = self.tok.col
            if self.tok.line == self.toks[self.i - 1].line or col <= limit:
                self.fail("case alternatives on new, indented lines")
            while True:
                inner = list(scope)
                self.pattern(inner)
                self.expect("->")
                self.expr(col, inner)
                t = self.tok
                if t.kind == "eof" or t.col != col or t.line == self.toks[self.i - 1].line:
                    break
        elif self.at("let"):
            self.i += 1
            col = self.tok.col
            inner = list(scope)
            # the bindings of one let are mutually recursive, so bind every name first
            for t in self.let_names(col):
                self.bind(t, inner)
            while not self.at("in"):
                if self.tok.kind != "lower":
                    self.fail("a let binding")
                self.i += 1
                params = list(inner)
                while not self.at("="):
                    self.apattern(params)
                self.i += 1
                self.expr(col, params)
                if not self.at("in") and self.tok.col != col:
                    self.fail("a binding aligned with the first one, or 'in'")
            self.i += 1
            self.expr(limit, inner)
        elif self.at("if"):
            self.i += 1
            self.expr(limit, scope)
            self.expect("then")
            self.expr(limit, scope)
            self.expect("else")
            self.expr(limit, scope)
        else:
            self.app(limit, scope)
            while self.continues(limit) and self.tok.kind == "sym" and self.tok.text in _ELM_BINOPS:
                self.i += 1
                self.app(limit, scope)

    def let_names(self, col: int) -> list[Tok]:
        """Names bound by the let whose first binding is the current token."""
        names, depth = [self.tok], 0
        for k in range(self.i + 1, len(self.toks)):
            t = self.toks[k]
            if t.text == "let" and t.kind == "lower":
                depth += 1
            elif t.text == "in" and t.kind == "lower":
                if depth == 0:
                    break
                depth -= 1
            elif depth == 0 and t.col == col and t.line != self.toks[k - 1].line and t.kind == "lower":
                names.append(t)
        return names

    def starts_atom(self) -> bool:
        t = self.tok
        if t.kind == "lower":
            return t.text not in _ELM_KEYWORDS
        return t.kind in ("upper", "num", "str") or self.at("(", "[")

    def app(self, limit: int, scope: list[str]) -> None:
        self.atom(limit, scope)
        while self.continues(limit) and (self.starts_atom() or self.at("\\")):
            if self.at("\\"):
                self.expr(limit, scope)
                return
            self.atom(limit, scope)

    def atom(self, limit: int, scope: list[str]) -> None:
        t = self.tok
        if t.kind == "lower" and t.text not in _ELM_KEYWORDS:
            self.i += 1
            self.use(t, scope)
        elif t.kind in ("upper", "num", "str"):
            self.i += 1
        elif self.at("("):
            self.i += 1
            if self.at(")"):
                self.i += 1
                return
            self.expr(0, scope)
            while self.at(","):
                self.i += 1
                self.expr(0, scope)
            self.expect(")")
        elif self.at("["):
            self.i += 1
            if not self.at("]"):
                self.expr(0, scope)
                while self.at(","):
                    self.i += 1
                    self.expr(0, scope)
            self.expect("]")
        else:
            self.fail("an expression")

    # declarations

    def type_expr(self) -> None:
        depth = 0
        while True:
            t = self.tok
            if t.kind == "eof" or (t.col == 1 and t.line != self.toks[self.i - 1].line):
                break
            if self.at("("):
                depth += 1
            elif self.at(")"):
                depth -= 1
                if depth < 0:
                    self.fail("balanced parentheses")
            elif not (t.kind in ("upper", "lower") or self.at("->", ",", "|")):
                self.fail("a type")
            self.i += 1
        if depth:
            self.fail("balanced parentheses")

    def skip_line(self) -> None:
        line = self.tok.line
        while self.tok.kind != "eof" and self.tok.line == line:
            self.i += 1

    def collect_globals(self) -> None:
        for t in self.toks:
            if t.col == 1 and t.kind == "lower" and t.text not in _ELM_KEYWORDS:
                self.globals.add(t.text)

    def module(self) -> None:
        self.collect_globals()
        annotated: dict[str, int] = {}
        defined: set[str] = set()
        ctors: set[str] = set()
        while self.tok.kind != "eof":
            t = self.tok
            if t.col != 1:
                self.fail("a declaration at column 1")
            if self.at("module", "import"):
                self.skip_line()
            elif self.at("type"):
                self.i += 1
                if self.at("alias"):
                    self.i += 1
                    if self.tok.kind != "upper":
                        self.fail("a type name")
                    self.i += 1
                    while self.tok.kind == "lower" and not self.at("="):
                        self.i += 1
                    self.expect("=")
                    self.type_expr()
                    continue
                if self.tok.kind != "upper":
                    self.fail("a type name")
                self.i += 1
                while self.tok.kind == "lower" and not self.at("="):
                    self.i += 1
                self.expect("=")
                while True:
                    c = self.tok
                    if c.kind != "upper":
                        self.fail("a constructor")
                    if c.text in ctors:
                        self.problems.append(f"{c.line}:{c.col}: constructor {c.text!r} declared twice")
                    ctors.add(c.text)
                    self.i += 1
                    depth = 0
                    while not (depth == 0 and self.at("|")):
                        n = self.tok
                        if n.kind == "eof" or (n.col == 1 and n.line != self.toks[self.i - 1].line):
                            break
                        depth += self.at("(") - self.at(")")
                        self.i += 1
                    if not self.at("|"):
                        break
                    self.i += 1
            elif t.kind == "lower" and self.toks[self.i + 1].text == ":":
                if t.text in annotated:
                    self.problems.append(f"{t.line}:1: {t.text!r} annotated twice")
                annotated[t.text] = t.line
                self.i += 2
                self.type_expr()
            elif t.kind == "lower":
                if t.text in defined:
                    self.problems.append(f"{t.line}:1: {t.text!r} defined twice")
                defined.add(t.text)
                self.i += 1
                scope: list[str] = []
                while not self.at("="):
                    self.apattern(scope)
                self.i += 1
                self.expr(1, scope)
            else:
                self.fail("a declaration")
        for name, line in annotated.items():
            if name not in defined:
                self.problems.append(f"{line}:1: annotation for {name!r} has no definition")


def elm_problems(text: str, externals=None) -> list[str]:
    """Problems found in Elm-dialect ``text``.

    When ``externals`` is given, lower-case names that are neither bound nor
    listed there are reported as unbound.
    """
    try:
        p = _Elm(_tokenize(text, _ELM_TOKEN, "--"), externals)
        p.module()
    except Reject as exc:
        return [str(exc)]
    return p.problems


# -- Liquidity ----------------------------------------------------------------

_LIQ_TOKEN = re.compile(r"""
    (?P<str>"(?:[^"\\]|\\.)*")
  | (?P<attr>\[@\w+\])
  | (?P<tyvar>'[a-z]\w*)
  | (?P<num>-?\d[\w.]*)
  | (?P<upper>[A-Z][\w']*(?:\.[A-Za-z_][\w']*)*)
  | (?P<lower>[a-z_][\w']*)
  | (?P<sym>->|::|<=|>=|<>|\.\(|[=:(),|\[\];<>+*/-])
""", re.VERBOSE)

_LIQ_KEYWORDS = {"let", "rec", "in", "fun", "match", "with", "if", "then", "else", "type", "of",
                 "true", "false", "and"}
_LIQ_BINOPS = {"::", "+", "-", "*", "/", "<", ">", "<=", ">=", "=", "<>"}


class _Liquidity(_Parser):
    def bind(self, t: Tok, scope: list[str]) -> None:
        if t.text != "_":
            scope.append(t.text)

    def pattern(self, scope: list[str]) -> None:
        self.simple_pattern(scope)
        while self.at(",", "::"):
            self.i += 1
            self.simple_pattern(scope)

    def simple_pattern(self, scope: list[str]) -> None:
        t = self.tok
        if t.kind == "upper":
            self.i += 1
            if self.tok.kind in ("lower", "num") and self.tok.text not in _LIQ_KEYWORDS or self.at("("):
                self.simple_pattern(scope)
        elif t.kind == "lower" and t.text in ("true", "false"):
            self.i += 1
        elif t.kind == "lower" and t.text not in _LIQ_KEYWORDS:
            self.i += 1
            self.bind(t, scope)
        elif t.kind in ("num", "str"):
            self.i += 1
        elif self.at("["):
            self.i += 1
            self.expect("]")
        elif self.at("("):
            self.i += 1
            if not self.at(")"):
                self.pattern(scope)
                if self.at(":"):
                    self.i += 1
                    self.type_expr(")")
            self.expect(")")
        else:
            self.fail("a pattern")

    def type_expr(self, *stops: str) -> None:
        depth = 0
        while True:
            t = self.tok
            if self.top_level() or (depth == 0 and self.at(*stops)):
                return
            if self.at("("):
                depth += 1
            elif self.at(")"):
                depth -= 1
            elif not (t.kind in ("lower", "upper", "tyvar") or self.at("->", "*", ",")):
                self.fail("a type")
            self.i += 1

    def expr(self, scope: list[str]) -> None:
        if self.at("fun"):
            self.i += 1
            inner = list(scope)
            while not self.at("->"):
                self.simple_pattern(inner)
            self.i += 1
            self.expr(inner)
        elif self.at("let"):
            self.i += 1
            rec = self.at("rec")
            self.i += rec
            name = self.tok
            if name.kind != "lower":
                self.fail("a name")
            self.i += 1
            inner = list(scope)
            params = list(scope)
            if rec:
                self.bind(name, params)
            while not self.at("="):
                self.simple_pattern(params)
            self.i += 1
            self.expr(params)
            self.expect("in")
            self.bind(name, inner)
            self.expr(inner)
        elif self.at("match"):
            self.i += 1
            self.expr(scope)
            self.expect("with")
            if self.at("|"):
                self.i += 1
            while True:
                inner = list(scope)
                self.pattern(inner)
                self.expect("->")
                self.expr(inner)
                if not self.at("|"):
                    break
                self.i += 1
        elif self.at("if"):
            self.i += 1
            self.expr(scope)
            self.expect("then")
            self.expr(scope)
            self.expect("else")
            self.expr(scope)
        else:
            self.operand(scope)
            while self.tok.kind == "sym" and self.tok.text in _LIQ_BINOPS | {","}:
                self.i += 1
                if self.at("fun", "let", "match", "if"):
                    self.expr(scope)
                    return
                self.operand(scope)

    def starts_atom(self) -> bool:
        t = self.tok
        if t.kind == "lower":
            return t.text not in _LIQ_KEYWORDS or t.text in ("true", "false")
        return t.kind in ("upper", "num", "str") or self.at("(", "[")

    def operand(self, scope: list[str]) -> None:
        self.atom(scope)
        while self.starts_atom():
            self.atom(scope)

    def atom(self, scope: list[str]) -> None:
        t = self.tok
        if t.kind == "lower" and t.text in ("true", "false"):
            self.i += 1
        elif t.kind == "lower" and t.text not in _LIQ_KEYWORDS:
            self.i += 1
            self.use(t, scope)
        elif t.kind in ("upper", "num", "str"):
            self.i += 1
        elif self.at("("):
            self.i += 1
            if not self.at(")"):
                self.expr(scope)
                if self.at(":"):
                    self.i += 1
                    self.type_expr(")")
            self.expect(")")
        elif self.at("["):
            self.i += 1
            if not self.at("]"):
                self.expr(scope)
                while self.at(";"):
                    self.i += 1
                    self.expr(scope)
            self.expect("]")
        else:
            self.fail("an expression")
        while self.at(".("):
            self.i += 1
            self.expr(scope)
            self.expect(")")

    def top_level(self) -> bool:
        t, prev = self.tok, self.toks[self.i - 1]
        return t.kind == "eof" or (t.col == 1 and t.line != prev.line)

    def module(self) -> None:
        for k, t in enumerate(self.toks):
            if t.text == "let" and t.col == 1:
                j = k + 1
                while self.toks[j].kind == "attr" or self.toks[j].text == "rec":
                    j += 1
                self.globals.add(self.toks[j].text)
        while self.tok.kind != "eof":
            if self.tok.col != 1:
                self.fail("a declaration at column 1")
            if self.at("type"):
                self.i += 1
                self.type_decl()
            elif self.at("let"):
                self.i += 1
                if self.tok.kind == "attr":
                    self.i += 1
                if self.at("rec"):
                    self.i += 1
                if self.tok.kind != "lower":
                    self.fail("a name")
                self.i += 1
                scope: list[str] = []
                while not self.at("=", ":"):
                    self.simple_pattern(scope)
                if self.at(":"):
                    self.i += 1
                    self.type_expr("=")
                self.expect("=")
                self.expr(scope)
                if not self.top_level():
                    self.fail("the end of the declaration")
            else:
                self.fail("'let' or 'type'")

    def type_decl(self) -> None:
        if self.tok.kind == "tyvar":
            self.i += 1
        elif self.at("("):
            self.i += 1
            while not self.at(")"):
                if self.tok.kind != "tyvar" and not self.at(","):
                    self.fail("a type parameter")
                self.i += 1
            self.i += 1
        if self.tok.kind != "lower":
            self.fail("a type name")
        self.i += 1
        self.expect("=")
        if self.tok.kind == "upper" and not self.toks[self.i + 1].text == ".":
            while True:
                if self.tok.kind != "upper":
                    self.fail("a constructor")
                self.i += 1
                if self.at("of"):
                    self.i += 1
                    self.type_expr("|")
                    if not self.top_level() and not self.at("|"):
                        self.fail("'|' or the end of the type")
                if not self.at("|"):
                    break
                self.i += 1
        else:
            self.type_expr()


def liquidity_problems(text: str, externals=None) -> list[str]:
    """Problems found in Liquidity-dialect ``text``; see ``elm_problems``."""
    problems = []
    if "□" in text:
        problems.append("box marker in output")
    try:
        p = _Liquidity(_tokenize(text, _LIQ_TOKEN, "(*"), externals)
        p.module()
    except Reject as exc:
        return problems + [str(exc)]
    return problems + p.problems
