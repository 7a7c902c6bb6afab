"""Checking that erased signatures fit prenex polymorphism."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import BackendError, ContainsTAny, NonPrenex
from ..lambdabox.env import (
    BoxType, ErasedConstant, ErasedEnv, ErasedInductive, ErasedTypeAlias, TAny, TApp, TArr, TVar,
)


@dataclass
class PrenexReport:
    issues: list[BackendError] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.issues

    def raise_first(self) -> None:
        if self.issues:
            raise self.issues[0]


def _scan(t: BoxType, nvars: int, name: str, path: str, out: list) -> None:
    match t:
        case TVar(i) if i >= nvars:
            out.append(NonPrenex(name, f"(type variable {i} at {path} is not bound at the top)"))
        case TAny():
            out.append(ContainsTAny(name, path))
        case TApp(h, a):
            _scan(h, nvars, name, f"{path}.head", out)
            _scan(a, nvars, name, f"{path}.arg", out)
        case TArr(d, c):
            _scan(d, nvars, name, f"{path}.dom", out)
            _scan(c, nvars, name, f"{path}.cod", out)


def check_prenex(eenv: ErasedEnv, skip_remapped: bool = True) -> PrenexReport:
    report = PrenexReport()
    for d in eenv:
        if skip_remapped and d.remap is not None:
            continue
        match d:
            case ErasedConstant(name, vs, sig):
                _scan(sig, len(vs), name, "signature", report.issues)
            case ErasedTypeAlias(name, vs, body) if body is not None:
                _scan(body, len(vs), name, "body", report.issues)
            case ErasedInductive():
                nvars = len(d.type_vars)
                for b in d.bodies:
                    for c in b.ctors:
                        for k, t in enumerate(c.arg_types):
                            _scan(t, nvars, b.name, f"{c.name}.arg{k}", report.issues)
    return report
