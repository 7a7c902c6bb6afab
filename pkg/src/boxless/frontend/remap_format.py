"""Reader for remap tables.

One entry per line::

    source-name => target [inline "<code>"] [ann "<type>"]

``target`` is a bare word or a quoted string; ``{0}``, ``{1}`` ... in a
target are filled with the printed arguments.  Quoted strings use JSON
escapes, so ``\\n`` separates lines of inline code.  ``#`` starts a comment.
"""
from __future__ import annotations

import json
import re

from ..errors import DuplicateKey, ParseError
from ..lambdabox.env import Remap

_TOKEN = re.compile(r'\s*(?:(?P<str>"(?:[^"\\]|\\.)*")|(?P<arrow>=>)|(?P<word>[^\s"#]+)|(?P<comment>#.*))')


def _tokens(line: str, lineno: int) -> list[tuple[str, str, int]]:
    out, pos = [], 0
    while pos < len(line):
        m = _TOKEN.match(line, pos)
        if m is None or m.end() == pos:
            if line[pos:].strip():
                raise ParseError(lineno, pos + 1, "a word or a quoted string", line[pos:].strip()[:10])
            break
        kind = m.lastgroup
        if kind == "comment":
            break
        text = m.group(kind)
        if kind == "str":
            text = json.loads(text)
        out.append((kind, text, m.start(kind) + 1))
        pos = m.end()
    return out


def parse_remap(text: str) -> dict[str, Remap]:
    table: dict[str, Remap] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        toks = _tokens(line, lineno)
        if not toks:
            continue
        if len(toks) < 3 or toks[0][0] != "word" or toks[1][0] != "arrow" or toks[2][0] == "arrow":
            col = toks[min(len(toks) - 1, 1)][2]
            raise ParseError(lineno, col, "'source => target'")
        key, target = toks[0][1], toks[2][1]
        extra: dict[str, str] = {}
        rest = toks[3:]
        while rest:
            if len(rest) < 2 or rest[0][1] not in ("inline", "ann") or rest[1][0] != "str":
                raise ParseError(lineno, rest[0][2], "'inline \"...\"' or 'ann \"...\"'", rest[0][1])
            if rest[0][1] in extra:
                raise ParseError(lineno, rest[0][2], "at most one " + rest[0][1], rest[0][1])
            extra[rest[0][1]] = rest[1][1]
            rest = rest[2:]
        if key in table:
            raise DuplicateKey(key, lineno)
        table[key] = Remap(target, extra.get("inline"), extra.get("ann"))
    return table


def format_remap(table: dict[str, Remap]) -> str:
    """Inverse of ``parse_remap`` up to comments and spacing."""
    lines = []
    for key, r in table.items():
        target = r.target if re.fullmatch(r'[^\s"#]+', r.target) and r.target != "=>" else json.dumps(r.target)
        line = f"{key} => {target}"
        if r.inline is not None:
            line += f" inline {json.dumps(r.inline)}"
        if r.ann is not None:
            line += f" ann {json.dumps(r.ann)}"
        lines.append(line)
    return "\n".join(lines) + ("\n" if lines else "")
