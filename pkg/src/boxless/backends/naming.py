"""Identifier conventions and fresh-name generation for both dialects."""
from __future__ import annotations

import re
from typing import Iterable

OCAML_KEYWORDS = frozenset("""
and as assert begin class constraint do done downto else end exception external false for
fun function functor if in include inherit initializer lazy let match method module mutable
new nonrec object of open or private rec sig struct then to true try type val virtual when
while with
""".split())

ELM_RESERVED = frozenset("""
if then else case of let in type module where import exposing as port alias infix
""".split())


def flatten(name: str) -> str:
    """``Z.add`` becomes ``Z_add``; primes are not legal in Elm."""
    return re.sub(r"[.']", "_", name)


def fresh(base: str, taken: Iterable[str]) -> str:
    """``base`` if free, else ``base1``, ``base2`` and so on."""
    taken = taken if isinstance(taken, (set, frozenset, dict)) else set(taken)
    if base not in taken:
        return base
    k = 1
    while f"{base}{k}" in taken:
        k += 1
    return f"{base}{k}"


def _lower_first(s: str) -> str:
    return s[:1].lower() + s[1:]


def _upper_first(s: str) -> str:
    return s[:1].upper() + s[1:]


# -- Liquidity --

def liq_value(name: str) -> str:
    return "coq_" + flatten(name)


def liq_type(name: str) -> str:
    return "coq_" + flatten(name)


def liq_ctor(name: str) -> str:
    return "Coq_" + flatten(name)


def liq_local(name: str) -> str:
    base = _lower_first(flatten(name)) if name and name != "_" else "x"
    return base + "_" if base in OCAML_KEYWORDS else base


def liq_tyvar(name: str) -> str:
    return "'" + flatten(name).lower()


# -- Elm --

def _elm_safe(s: str) -> str:
    return s + "_" if s in ELM_RESERVED else s


def elm_value(name: str) -> str:
    return _elm_safe(_lower_first(flatten(name)))


def elm_type(name: str) -> str:
    return _upper_first(flatten(name))


def elm_local(name: str) -> str:
    base = flatten(name).strip("_") if name else ""
    return _elm_safe(_lower_first(base) or "x")


def elm_tyvar(name: str) -> str:
    return _elm_safe(flatten(name).lower() or "a")
