"""Erasure of declarations and of the dependency closure of seed names."""
from __future__ import annotations

from ..errors import AxiomReached, ErasureError, NotPrenex, UnknownName
from ..kernel.env import ConstantDecl, GlobalEnv, InductiveDecl, block_context, push
from ..kernel.term import decompose_lambda, decompose_prod
from ..lambdabox.env import (
    TBOX, BoxType, ErasedConstant, ErasedCtor, ErasedDecl, ErasedEnv, ErasedInductive,
    ErasedOneInductive, ErasedParam, ErasedTypeAlias, TConst, TInd, box_type_nodes,
    decompose_arr,
)
from ..lambdabox.syntax import eglobals
from .flags import flag_of_type
from .terms import erase_term
from .types import REL_OTHER, RelInductive, RelTypeVar, erase_type, type_var_name


def erase_constant(env: GlobalEnv, decl: ConstantDecl) -> ErasedConstant | ErasedTypeAlias:
    flag = flag_of_type(env, (), decl.type)
    if flag.is_arity:
        return _erase_alias(env, decl, flag.is_logical)
    vs, sig = erase_type(env, (), (), decl.type)
    body = None if decl.body is None else erase_term(env, (), decl.body)
    return ErasedConstant(decl.name, vs, sig, body)


def _erase_alias(env: GlobalEnv, decl: ConstantDecl, logical: bool) -> ErasedTypeAlias:
    if decl.body is None:
        return ErasedTypeAlias(decl.name, (), None)
    if logical:
        return ErasedTypeAlias(decl.name, (), TBOX)
    lams, body = decompose_lambda(decl.body)
    ctx, ectx, vs = (), (), ()
    for name, dom in lams:
        f = flag_of_type(env, ctx, dom)
        if f.is_sort and not f.is_logical:
            ectx = (RelTypeVar(len(vs)),) + ectx
            vs = vs + (type_var_name(name, vs),)
        elif f.is_arity and not f.is_logical:
            raise NotPrenex(f"type alias parameter {name!r} ranges over type constructors")
        else:
            ectx = (REL_OTHER,) + ectx
        ctx = push(ctx, name, dom)
    vs_body, bt = erase_type(env, ctx, ectx, body, vs)
    if len(vs_body) > len(vs):
        raise NotPrenex("type alias body quantifies over types")
    return ErasedTypeAlias(decl.name, vs, bt)


def erase_inductive(env: GlobalEnv, decl: InductiveDecl) -> ErasedInductive:
    n = len(decl.bodies)
    bctx = block_context(decl)
    # Var(0) is the last body of the block
    bectx = tuple(RelInductive(decl.bodies[n - 1 - i].name) for i in range(n))
    binders, _ = decompose_prod(decl.bodies[0].arity)
    params, ctx, names = [], (), ()
    for name, ty in binders[:decl.npars]:
        f = flag_of_type(env, ctx, ty)
        if f.is_arity and not f.is_sort and not f.is_logical:
            raise NotPrenex(f"parameter {name!r} ranges over type constructors")
        is_tv = f.is_sort and not f.is_logical
        pname = name
        if is_tv:
            pname = type_var_name(name, names)
            names = names + (pname,)
        params.append(ErasedParam(pname, f.is_logical, is_tv, f.is_logical or f.is_arity))
        ctx = push(ctx, name, ty)
    bodies = []
    for body in decl.bodies:
        ctors = []
        for c in body.ctors:
            cbinders, _ = decompose_prod(c.type)
            nargs = len(cbinders) - decl.npars
            _, ety = erase_type(env, bctx, bectx, c.type)
            doms, _ = decompose_arr(ety)
            args = doms[decl.npars:]
            # a logical constructor type erases to a bare box
            args = tuple(args) + (TBOX,) * (nargs - len(args))
            ctors.append(ErasedCtor(c.name, args[:nargs], tuple(x for x, _ in cbinders[decl.npars:])))
        bodies.append(ErasedOneInductive(body.name, tuple(ctors)))
    return ErasedInductive(decl.name, tuple(params), tuple(p.term_erased for p in params),
                           tuple(bodies))


def box_type_refs(t: BoxType | None) -> set[str]:
    if t is None:
        return set()
    return {u.name for u in box_type_nodes(t) if isinstance(u, (TInd, TConst))}


def decl_refs(d: ErasedDecl) -> set[str]:
    """Globals an erased declaration depends on."""
    match d:
        case ErasedConstant(_, _, sig, body):
            refs = box_type_refs(sig)
            if body is not None:
                consts, inds = eglobals(body)
                refs |= consts | inds
            return refs
        case ErasedTypeAlias(_, _, body):
            return box_type_refs(body)
        case ErasedInductive():
            return {n for b in d.bodies for c in b.ctors for t in c.arg_types
                    for n in box_type_refs(t)}
    raise TypeError(d)


def _tag(exc: ErasureError, name: str) -> ErasureError:
    if exc.decl is None:
        exc.decl = name
        exc.args = (f"{name}: {exc.args[0]}",) + exc.args[1:]
    return exc


def _block_of(env: GlobalEnv, name: str):
    if env.is_constant(name):
        return env.constant(name)
    if env.is_inductive(name):
        return env.inductive(name)[0]
    ctor = env.ctor_by_name(name)
    if ctor is not None:
        return env.inductive(ctor[0])[0]
    raise UnknownName(name)


def erase_decl(env: GlobalEnv, decl) -> ErasedDecl:
    try:
        if isinstance(decl, ConstantDecl):
            return erase_constant(env, decl)
        return erase_inductive(env, decl)
    except ErasureError as exc:
        raise _tag(exc, decl.name)


def erase_dependencies(env: GlobalEnv, seeds, opaque=frozenset()) -> ErasedEnv:
    """Erase ``seeds`` and everything they reach, dependencies first.

    Names in ``opaque`` are erased without following their dependencies (used
    for globals replaced by target primitives).
    """
    done: dict[str, ErasedDecl] = {}
    todo = list(seeds)
    while todo:
        decl = _block_of(env, todo.pop())
        if decl.name in done:
            continue
        if isinstance(decl, ConstantDecl) and decl.is_axiom and decl.name not in opaque:
            raise AxiomReached(decl.name)
        erased = erase_decl(env, decl)
        done[decl.name] = erased
        if decl.name not in opaque:
            todo.extend(sorted(decl_refs(erased)))
    return ErasedEnv(tuple(done[d.name] for d in env.decls if d.name in done))
