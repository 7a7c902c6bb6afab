"""Source calculus: syntax, environments, typing, reduction, evaluation."""
from .env import (
    EMPTY_CTX, ConstantDecl, Context, CtorDecl, CtxEntry, GlobalEnv, InductiveDecl,
    OneInductive, push, push_many,
)
from .evaluate import DEFAULT_FUEL, SClosure, SCtor, SFix, SType, SourceValue, eval_source, to_term
from .reduce import whnf, whnf_betaiotazeta
from .term import (
    PROP, PROP_SORT, TYPE, TYPE_SORT, App, Branch, Case, Const, Ctor, Fix, FixDef, Ind,
    Lambda, LetIn, Prod, Sort, Term, Var, arrow, decompose_app, lift, mk_apps,
)
from .typecheck import EnvReport, check, check_env, conv, infer_type

__all__ = [
    "EMPTY_CTX", "ConstantDecl", "Context", "CtorDecl", "CtxEntry", "GlobalEnv",
    "InductiveDecl", "OneInductive", "push", "push_many", "DEFAULT_FUEL", "SClosure",
    "SCtor", "SFix", "SType", "SourceValue", "eval_source", "to_term", "whnf",
    "whnf_betaiotazeta", "PROP", "PROP_SORT", "TYPE", "TYPE_SORT", "App", "Branch", "Case",
    "Const", "Ctor", "Fix", "FixDef", "Ind", "Lambda", "LetIn", "Prod", "Sort", "Term",
    "Var", "arrow", "decompose_app", "lift", "mk_apps", "EnvReport", "check", "check_env",
    "conv", "infer_type",
]
