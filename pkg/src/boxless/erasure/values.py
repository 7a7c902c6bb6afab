"""Erasing source values, for comparing source and erased evaluation."""
from __future__ import annotations

from ..kernel.evaluate import SCtor, SType, SourceValue
from ..lambdabox.env import ErasedEnv, TBox
from ..lambdabox.evaluate import VBOX, EValue, VCtor


def erase_value(eenv: ErasedEnv, v: SourceValue) -> EValue | None:
    """The erased counterpart of a first-order source value.

    Types and values of inductives absent from ``eenv`` (propositions are
    never extracted) become boxes.  Returns ``None`` for functions.
    """
    match v:
        case SType():
            return VBOX
        case SCtor(ind, j, args):
            if ind not in eenv:
                return VBOX
            decl, k = eenv.inductive(ind)
            ctor = decl.bodies[k].ctors[j]
            out = [VBOX] * min(decl.npars, len(args))
            for i, a in enumerate(args[decl.npars:]):
                if i < len(ctor.arg_types) and isinstance(ctor.arg_types[i], TBox):
                    out.append(VBOX)
                    continue
                e = erase_value(eenv, a)
                if e is None:
                    return None
                out.append(e)
            return VCtor(ind, j, tuple(out))
    return None
