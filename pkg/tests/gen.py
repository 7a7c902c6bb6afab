"""Seeded generators of random programs for the differential and invariant suites."""
from __future__ import annotations

import random

from boxless.frontend.surface import (
    Definition, Inductive, IndBody, SApp, SArrow, SBinder, SBranch, SFix, SFixDef, SForall,
    SFun, SIdent, SLet, SMatch, SSort,
)
from boxless.kernel.term import App, Const, Ctor
from boxless.lambdabox.env import (
    ErasedConstant, ErasedCtor, ErasedEnv, ErasedInductive, ErasedOneInductive, ErasedParam,
    TApp, TArr, TBOX, TInd, TVar,
)
from boxless.lambdabox.syntax import (
    BOX, EApp, EBranch, ECase, EConst, ECtor, EFix, EFixDef, ELambda, ELetIn, EVar,
)

# -- first-order erased programs ------------------------------------------------

NAT, BOOL, PAIR, OPT, BOXT = "nat", "bool", "pairb", "opt", "box"
DATA = (NAT, BOOL, PAIR, OPT)

# constructor field types per datatype; opt carries one erased parameter
FIELDS = {
    NAT: ((), (NAT,)),
    BOOL: ((), ()),
    PAIR: ((NAT, BOXT, BOOL),),
    OPT: ((), (NAT,)),
}
NPARS = {NAT: 0, BOOL: 0, PAIR: 0, OPT: 1}


def _box_type(ty: str):
    if ty == BOXT:
        return TBOX
    if ty == OPT:
        return TApp(TInd(OPT), TInd(NAT))
    return TInd(ty)


def base_inductives() -> list[ErasedInductive]:
    def simple(name, ctors):
        return ErasedInductive(name, (), (), (ErasedOneInductive(name, tuple(ctors)),))

    return [
        simple(BOOL, [ErasedCtor("true", ()), ErasedCtor("false", ())]),
        simple(NAT, [ErasedCtor("O", ()), ErasedCtor("S", (TInd(NAT),))]),
        simple(PAIR, [ErasedCtor("mk", (TInd(NAT), TBOX, TInd(BOOL)))]),
        ErasedInductive(
            OPT, (ErasedParam("A", False, True, True),), (True,),
            (ErasedOneInductive(OPT, (ErasedCtor("none", ()), ErasedCtor("some", (TVar(0),)))),)),
    ]


class ProgramGen:
    """A random closed first-order program: a few functions, each calling only
    earlier ones, and several closed ``main`` constants."""

    def __init__(self, rng: random.Random):
        self.rng = rng
        self.fns: list[tuple[str, tuple[str, ...], str]] = []

    def ctor(self, ty, j, args):
        return _apps(ECtor(ty, j), [BOX] * NPARS[ty] + list(args))

    def leaf(self, ty, ctx):
        vars_ = [i for i, t in enumerate(ctx) if t == ty]
        if vars_ and self.rng.random() < 0.6:
            return EVar(self.rng.choice(vars_))
        if ty == BOXT:
            return BOX
        if ty == NAT:
            return self.nat_literal(self.rng.randrange(3))
        if ty == BOOL:
            return ECtor(BOOL, self.rng.randrange(2))
        if ty == PAIR:
            return self.ctor(PAIR, 0, [self.leaf(NAT, ctx), BOX, self.leaf(BOOL, ctx)])
        return self.ctor(OPT, 0, [])

    def nat_literal(self, n):
        t = ECtor(NAT, 0)
        for _ in range(n):
            t = EApp(ECtor(NAT, 1), t)
        return t

    def gen(self, ty, ctx, depth):
        if depth <= 0 or ty == BOXT:
            return self.leaf(ty, ctx)
        r = self.rng.random()
        callees = [f for f in self.fns if f[2] == ty]
        if r < 0.2:
            return self.leaf(ty, ctx)
        if r < 0.45 and callees:
            name, params, _ = self.rng.choice(callees)
            if len(params) >= 2 and self.rng.random() < 0.3:
                # bind a partial application, then finish it
                first = self.gen(params[0], ctx, depth - 1)
                inner = ["fn"] + ctx
                rest = [self.gen(p, inner, depth - 1) for p in params[1:]]
                return ELetIn("h", EApp(EConst(name), first), _apps(EVar(0), rest))
            return _apps(EConst(name), [self.gen(p, ctx, depth - 1) for p in params])
        if r < 0.65:
            j = self.rng.randrange(len(FIELDS[ty]))
            return self.ctor(ty, j, [self.gen(f, ctx, depth - 1) for f in FIELDS[ty][j]])
        if r < 0.9:
            sty = self.rng.choice(DATA)
            scrut = self.gen(sty, ctx, depth - 1)
            branches = []
            for fields in FIELDS[sty]:
                inner = list(reversed(fields)) + ctx
                branches.append(EBranch(len(fields), self.gen(ty, inner, depth - 1)))
            return ECase(sty, NPARS[sty], scrut, tuple(branches))
        vty = self.rng.choice(DATA)
        return ELetIn("v", self.gen(vty, ctx, depth - 1), self.gen(ty, [vty] + ctx, depth - 1))

    def recursive_body(self, ret, ctx, nat_index):
        """``fix go n := match n with O => base | S p => let r := go p in step``."""
        base = self.gen(ret, [NAT, "fn"] + ctx, 2)
        step = self.gen(ret, [ret, NAT, NAT, "fn"] + ctx, 2)
        body = ELambda("n", ECase(NAT, 0, EVar(0), (
            EBranch(0, base),
            EBranch(1, ELetIn("r", EApp(EVar(2), EVar(0)), step)),
        )))
        return EApp(EFix((EFixDef("go", body, 0),), 0), EVar(nat_index))

    def function(self, k: int) -> ErasedConstant:
        params = tuple(self.rng.choice(DATA + (BOXT,)) for _ in range(self.rng.randrange(4)))
        ret = self.rng.choice(DATA)
        ctx = list(reversed(params))
        nats = [i for i, t in enumerate(ctx) if t == NAT]
        if nats and self.rng.random() < 0.35:
            body = self.recursive_body(ret, ctx, self.rng.choice(nats))
        else:
            body = self.gen(ret, ctx, 3)
        for i in reversed(range(len(params))):
            body = ELambda(f"x{i}", body)
        name = f"f{k}"
        self.fns.append((name, params, ret))
        sig = _box_type(ret)
        for p in reversed(params):
            sig = TArr(_box_type(p), sig)
        return ErasedConstant(name, (), sig, body)

    def program(self, nfns: int = 5, nmains: int = 3) -> ErasedEnv:
        decls = base_inductives()
        for k in range(nfns):
            decls.append(self.function(k))
        for k in range(nmains):
            name, params, ret = self.fns[-1 - k % len(self.fns)]
            body = _apps(EConst(name), [self.gen(p, [], 2) for p in params])
            decls.append(ErasedConstant(f"main{k}", (), _box_type(ret), body))
        return ErasedEnv(tuple(decls))


def _apps(head, args):
    for a in args:
        head = EApp(head, a)
    return head


def random_program(seed: int) -> ErasedEnv:
    return ProgramGen(random.Random(seed)).program()


# -- source terms over the prelude ----------------------------------------------

NAT_FNS = {"add": 2, "mul": 2}


def source_nat(rng: random.Random, depth: int):
    """A closed, well-typed nat expression built from prelude arithmetic."""
    if depth <= 0 or rng.random() < 0.3:
        t = Ctor("nat", 0)
        for _ in range(rng.randrange(3)):
            t = App(Ctor("nat", 1), t)
        return t
    if rng.random() < 0.3:
        return App(Ctor("nat", 1), source_nat(rng, depth - 1))
    name = rng.choice(sorted(NAT_FNS))
    return App(App(Const(name), source_nat(rng, depth - 1)), source_nat(rng, depth - 1))


# -- surface programs for the parser round trip ----------------------------------

IDENTS = ("a", "b", "x", "y", "f", "n", "nat", "bool", "S", "O", "Z.add", "p'")


def surface_term(rng: random.Random, depth: int):
    if depth <= 0:
        return rng.choice([SIdent(rng.choice(IDENTS)), SSort(rng.choice(["Prop", "Type"]))])
    k = rng.randrange(9)
    sub = lambda: surface_term(rng, depth - 1)  # noqa: E731
    binders = lambda: tuple(  # noqa: E731
        SBinder(rng.choice(IDENTS[:6]), sub() if rng.random() < 0.7 else None)
        for _ in range(rng.randrange(1, 3)))
    if k == 0:
        return SApp(sub(), tuple(sub() for _ in range(rng.randrange(1, 3))))
    if k == 1:
        return SArrow(sub(), sub())
    if k == 2:
        return SForall(tuple(SBinder(b.name, b.type or SIdent("nat")) for b in binders()), sub())
    if k == 3:
        return SFun(binders(), sub())
    if k == 4:
        return SLet(rng.choice(IDENTS[:6]), sub() if rng.random() < 0.5 else None, sub(), sub())
    if k == 5:
        brs = tuple(SBranch(c, tuple(rng.choice(IDENTS[:6]) for _ in range(rng.randrange(3))), sub())
                    for c in rng.sample(["O", "S", "true", "nil"], rng.randrange(0, 3)))
        ret = sub() if rng.random() < 0.3 else None
        return SMatch(sub(), rng.choice(["nat", "bool", "list"]), ret, brs)
    if k == 6:
        defs = tuple(
            SFixDef(f"g{i}", (SBinder("n", SIdent("nat")), SBinder("m", sub())), "n", sub(), sub())
            for i in range(rng.randrange(1, 3)))
        return SFix(defs, rng.choice(defs).name)
    return SIdent(rng.choice(IDENTS))


def surface_program(rng: random.Random):
    decls = []
    for i in range(rng.randrange(1, 4)):
        if rng.random() < 0.3:
            ctors = tuple((f"C{i}_{j}", surface_term(rng, 2)) for j in range(rng.randrange(3)))
            params = tuple(SBinder(f"A{j}", SSort("Type")) for j in range(rng.randrange(2)))
            decls.append(Inductive(params, (IndBody(f"T{i}", SSort("Type"), ctors),)))
        else:
            decls.append(Definition(f"d{i}", surface_term(rng, 3), surface_term(rng, 3)))
    return decls
