"""Usage analysis: which parameters and constructor arguments are dead."""
from __future__ import annotations

from collections import defaultdict

from ..lambdabox.env import ErasedConstant, ErasedEnv, ErasedInductive, TBox
from ..lambdabox.syntax import ECase, ETerm, decompose_elambda, occurs, subterms
from .masks import Masks, MibMask, trim


def branch_usage(t: ETerm) -> dict[tuple[str, int], list[bool]]:
    """For every (inductive, ctor) matched in ``t``: which binders are used."""
    used: dict[tuple[str, int], list[bool]] = {}
    for u in subterms(t):
        if isinstance(u, ECase):
            for j, br in enumerate(u.branches):
                marks = used.setdefault((u.ind, j), [False] * br.arity)
                if len(marks) < br.arity:
                    marks.extend([False] * (br.arity - len(marks)))
                for k in range(br.arity):
                    if not marks[k] and occurs(br.body, br.arity - 1 - k):
                        marks[k] = True
    return used


def merge_usage(into: dict, more: dict) -> None:
    """Positionwise OR of used marks."""
    for key, marks in more.items():
        cur = into.setdefault(key, [False] * len(marks))
        if len(cur) < len(marks):
            cur.extend([False] * (len(marks) - len(cur)))
        for k, m in enumerate(marks):
            cur[k] = cur[k] or m


def const_mask(body: ETerm) -> tuple[bool, ...]:
    names, inner = decompose_elambda(body)
    n = len(names)
    return trim(not occurs(inner, n - 1 - k) for k in range(n))


def analyze_usage(eenv: ErasedEnv) -> Masks:
    """One linear pass over every body."""
    cst: dict[str, tuple[bool, ...]] = {}
    used: dict[tuple[str, int], list[bool]] = defaultdict(list)
    for d in eenv:
        if isinstance(d, ErasedConstant) and d.body is not None:
            cst[d.name] = const_mask(d.body)
            merge_usage(used, branch_usage(d.body))
    ind: dict[str, MibMask] = {}
    for d in eenv:
        if not isinstance(d, ErasedInductive):
            continue
        params = trim(d.term_params)
        for body in d.bodies:
            ctor_masks = []
            for j, c in enumerate(body.ctors):
                marks = used.get((body.name, j), [])
                ctor_masks.append(trim(
                    isinstance(ty, TBox) and not (k < len(marks) and marks[k])
                    for k, ty in enumerate(c.arg_types)))
            ind[body.name] = MibMask(d.npars, params, tuple(ctor_masks))
    return Masks(ind, cst)
