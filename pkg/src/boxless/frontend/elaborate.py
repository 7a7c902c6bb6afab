"""Elaboration of named surface syntax into kernel declarations.

Names resolve to the innermost local binder first, then to globals.  Type
information flows inward: unannotated ``fun`` binders take their domain from
the expected type, which is known for definition bodies, application
arguments, match branches and fixpoint bodies.
"""
from __future__ import annotations

from pathlib import Path

from ..errors import ElabError
from ..kernel.env import (
    ConstantDecl, Context, CtorDecl, GlobalEnv, InductiveDecl, OneInductive,
    block_context, push,
)
from ..kernel.reduce import whnf
from ..kernel.term import (
    TYPE_SORT, Branch, Case, Const, Ctor, Fix, FixDef, Ind, Lambda, LetIn, Prod,
    Sort, Term, Var, decompose_app, decompose_prod, it_mk_prod, lift, mk_apps, subst1,
)
from ..kernel.typecheck import branch_binders, infer_type, instantiate_params
from .parser import parse_program
from .surface import (
    Axiom, Definition, Inductive, Require, SApp, SArrow, SBinder, SFix, SForall, SFun,
    SIdent, SLet, SMatch, SSort, STerm,
)

CORPUS_DIR = Path(__file__).resolve().parent.parent / "corpus"


class Elaborator:
    def __init__(self, env: GlobalEnv):
        self.env = env

    # -- names --

    def resolve(self, ident: SIdent, ctx: Context) -> Term:
        name = ident.name
        if name != "_":
            for i, entry in enumerate(ctx):
                if entry.name == name:
                    return Var(i)
        if self.env.is_constant(name):
            return Const(name)
        if self.env.is_inductive(name):
            return Ind(name)
        ctor = self.env.ctor_by_name(name)
        if ctor is not None:
            return Ctor(*ctor)
        line, col = ident.loc
        raise ElabError(f"{line}:{col}: unknown name {name!r}")

    # -- terms --

    def expect_prod(self, ctx: Context, ty: Term | None) -> Prod | None:
        if ty is None:
            return None
        ty = whnf(self.env, ctx, ty)
        return ty if isinstance(ty, Prod) else None

    def binder_types(self, bs, ctx: Context):
        """Elaborate annotated binders left to right; returns the extended ctx."""
        out = []
        for b in bs:
            if b.type is None:
                raise ElabError(f"binder {b.name!r} needs a type annotation")
            ty = self.elab(b.type, ctx)
            out.append((b.name, ty))
            ctx = push(ctx, b.name, ty)
        return out, ctx

    def elab(self, t: STerm, ctx: Context, expected: Term | None = None) -> Term:
        match t:
            case SIdent():
                return self.resolve(t, ctx)
            case SSort(level):
                return Sort(level)
            case SArrow(d, c):
                dom = self.elab(d, ctx)
                return Prod("_", dom, self.elab(c, push(ctx, "_", dom)))
            case SForall(bs, body):
                binders, inner = self.binder_types(bs, ctx)
                return it_mk_prod(binders, self.elab(body, inner))
            case SFun(bs, body):
                return self.elab_fun(list(bs), body, ctx, expected)
            case SLet(name, ann, value, body):
                if ann is None:
                    v = self.elab(value, ctx)
                    ty = infer_type(self.env, ctx, v)
                else:
                    ty = self.elab(ann, ctx)
                    v = self.elab(value, ctx, ty)
                exp = None if expected is None else lift(expected, 1)
                return LetIn(name, v, ty, self.elab(body, push(ctx, name, ty, v), exp))
            case SApp(head, args):
                h = self.elab(head, ctx)
                ty = infer_type(self.env, ctx, h)
                out = []
                for a in args:
                    prod = self.expect_prod(ctx, ty)
                    if prod is None:
                        raise ElabError(f"{_show_loc(head)}too many arguments for {h}")
                    arg = self.elab(a, ctx, prod.domain)
                    out.append(arg)
                    ty = subst1(prod.codomain, arg)
                return mk_apps(h, out)
            case SMatch():
                return self.elab_match(t, ctx, expected)
            case SFix():
                return self.elab_fix(t, ctx)
        raise ElabError(f"cannot elaborate {t!r}")

    def elab_fun(self, bs: list[SBinder], body: STerm, ctx: Context, expected: Term | None) -> Term:
        if not bs:
            return self.elab(body, ctx, expected)
        b = bs[0]
        prod = self.expect_prod(ctx, expected)
        if b.type is not None:
            dom = self.elab(b.type, ctx)
        elif prod is not None:
            dom = prod.domain
        else:
            raise ElabError(f"cannot infer the type of binder {b.name!r}")
        inner_expected = prod.codomain if prod is not None else None
        inner = push(ctx, b.name, dom)
        return Lambda(b.name, dom, self.elab_fun(bs[1:], body, inner, inner_expected))

    def elab_match(self, m: SMatch, ctx: Context, expected: Term | None) -> Term:
        line, col = m.loc
        where = f"{line}:{col}: "
        if not self.env.is_inductive(m.ind):
            raise ElabError(f"{where}{m.ind!r} is not an inductive type")
        decl, k = self.env.inductive(m.ind)
        body = decl.bodies[k]
        scrut = self.elab(m.scrutinee, ctx)
        sty = whnf(self.env, ctx, infer_type(self.env, ctx, scrut))
        head, sargs = decompose_app(sty)
        if head != Ind(m.ind):
            raise ElabError(f"{where}scrutinee has type {sty}, not {m.ind}")
        params = sargs[:decl.npars]
        motive = None
        if m.ret is not None:
            motive = self.elab(m.ret, ctx, self.motive_type(m.ind, params))
        names = [c.name for c in body.ctors]
        by_ctor = {}
        for br in m.branches:
            if br.ctor not in names:
                raise ElabError(f"{br.loc[0]}:{br.loc[1]}: {br.ctor!r} is not a constructor of {m.ind}")
            if br.ctor in by_ctor:
                raise ElabError(f"{br.loc[0]}:{br.loc[1]}: duplicate branch for {br.ctor!r}")
            by_ctor[br.ctor] = br
        missing = [n for n in names if n not in by_ctor]
        if missing:
            raise ElabError(f"{where}match on {m.ind} is missing {', '.join(missing)}")
        probe = Case(m.ind, decl.npars, scrut, ())
        branches = []
        for j, cname in enumerate(names):
            br = by_ctor[cname]
            binders, idx = branch_binders(self.env, probe, params, j)
            n = len(binders)
            if len(br.vars) != n:
                raise ElabError(f"{br.loc[0]}:{br.loc[1]}: {cname} binds {n} variables, "
                                f"pattern has {len(br.vars)}")
            bctx = ctx
            for v, (_, ty) in zip(br.vars, binders):
                bctx = push(bctx, v, ty)
            if motive is not None:
                value = mk_apps(Ctor(m.ind, j), [lift(p, n) for p in params]
                                + [Var(n - 1 - i) for i in range(n)])
                exp = mk_apps(lift(motive, n), idx + [value])
            else:
                exp = None if expected is None else lift(expected, n)
            branches.append(Branch(n, self.elab(br.body, bctx, exp), tuple(br.vars)))
        return Case(m.ind, decl.npars, scrut, tuple(branches), motive)

    def motive_type(self, ind: str, params: list[Term]) -> Term:
        arity = instantiate_params(self.env.one_inductive(ind).arity, params)
        idx_binders, _ = decompose_prod(arity)
        n = len(idx_binders)
        subject = mk_apps(Ind(ind), [lift(p, n) for p in params] + [Var(n - 1 - i) for i in range(n)])
        return it_mk_prod(idx_binders, Prod("x", subject, TYPE_SORT))

    def elab_fix(self, f: SFix, ctx: Context) -> Term:
        n = len(f.defs)
        types, rargs = [], []
        for d in f.defs:
            binders, inner = self.binder_types(d.binders, ctx)
            names = [b.name for b in d.binders]
            if d.struct not in names:
                raise ElabError(f"fixpoint {d.name}: struct argument {d.struct!r} is not a parameter")
            rargs.append(names.index(d.struct))
            types.append(it_mk_prod(binders, self.elab(d.rtype, inner)))
        fctx = ctx
        for i, (d, ty) in enumerate(zip(f.defs, types)):
            fctx = push(fctx, d.name, lift(ty, i))
        defs = []
        for d, ty, rarg in zip(f.defs, types, rargs):
            body = self.elab(SFun(d.binders, d.body), fctx, lift(ty, n))
            defs.append(FixDef(d.name, ty, rarg, body))
        sel = [d.name for d in f.defs]
        if f.selected not in sel:
            raise ElabError(f"fixpoint block has no definition {f.selected!r}")
        return Fix(tuple(defs), sel.index(f.selected))

    # -- declarations --

    def declare(self, d) -> None:
        match d:
            case Definition(name, ty, body):
                t = self.elab(ty, ())
                b = self.elab(body, (), t)
                self.env = self.env.add(ConstantDecl(name, t, b))
            case Axiom(name, ty):
                self.env = self.env.add(ConstantDecl(name, self.elab(ty, ())))
            case Inductive():
                self.env = self.env.add(self.elab_inductive(d))
            case _:
                raise ElabError(f"unexpected declaration {d!r}")

    def elab_inductive(self, d: Inductive) -> InductiveDecl:
        params, pctx = self.binder_types(d.params, ())
        npars = len(params)
        bodies = []
        for b in d.bodies:
            arity = it_mk_prod(params, self.elab(b.arity, pctx))
            bodies.append(OneInductive(b.name, arity, ()))
        skeleton = InductiveDecl(d.name, npars, tuple(bodies))
        bctx = block_context(skeleton)
        # parameters are re-elaborated under the block so references shift
        bparams, inner = self.binder_types(d.params, bctx)
        full = []
        for b, ob in zip(d.bodies, bodies):
            ctors = tuple(CtorDecl(c, it_mk_prod(bparams, self.elab(cty, inner)))
                          for c, cty in b.ctors)
            full.append(OneInductive(ob.name, ob.arity, ctors))
        return InductiveDecl(d.name, npars, tuple(full))


def _show_loc(t: STerm) -> str:
    if isinstance(t, SIdent) and t.loc != (0, 0):
        return f"{t.loc[0]}:{t.loc[1]}: "
    return ""


def elaborate(decls, env: GlobalEnv | None = None) -> GlobalEnv:
    """Elaborate declarations without ``require`` handling."""
    el = Elaborator(env or GlobalEnv())
    for d in decls:
        if isinstance(d, Require):
            raise ElabError(f"require {d.path!r} needs a file context; use load_program")
        el.declare(d)
    return el.env


def _resolve(path: str, base: Path) -> Path:
    for cand in (base / path, CORPUS_DIR / path):
        if cand.is_file():
            return cand.resolve()
    raise ElabError(f"required file {path!r} not found")


def load_program(path: str | Path) -> GlobalEnv:
    """Parse and elaborate a ``.ccx`` file, following ``require`` lines once each."""
    el = Elaborator(GlobalEnv())
    seen: set[Path] = set()

    def visit(p: Path) -> None:
        p = p.resolve()
        if p in seen:
            return
        seen.add(p)
        for d in parse_program(p.read_text(encoding="utf-8")):
            if isinstance(d, Require):
                visit(_resolve(d.path, p.parent))
            else:
                el.declare(d)

    visit(Path(path))
    return el.env


def load_corpus(name: str) -> GlobalEnv:
    """Load a shipped corpus program by file stem, e.g. ``"counter"``."""
    return load_program(CORPUS_DIR / f"{name}.ccx")
