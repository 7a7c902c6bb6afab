"""The erased calculus: terms, erased environments and evaluation."""
from .env import (
    TANY, TBOX, BoxType, ErasedConstant, ErasedCtor, ErasedDecl, ErasedEnv, ErasedInductive,
    ErasedOneInductive, ErasedParam, ErasedTypeAlias, Remap, TAny, TApp, TArr, TBox, TConst,
    TInd, TVar, show_box_type,
)
from .evaluate import VBOX, BoxMachine, EValue, VBox, VClosure, VCtor, VFix, apply_value, eval_box
from .syntax import (
    BOX, EApp, EBox, EBranch, ECase, EConst, ECtor, EFix, EFixDef, ELambda, ELetIn, ETerm,
    EVar, closed, count_boxes, mk_eapps, show_eterm,
)

__all__ = [
    "TANY", "TBOX", "BoxType", "ErasedConstant", "ErasedCtor", "ErasedDecl", "ErasedEnv",
    "ErasedInductive", "ErasedOneInductive", "ErasedParam", "ErasedTypeAlias", "Remap", "TAny",
    "TApp", "TArr", "TBox", "TConst", "TInd", "TVar", "show_box_type", "VBOX", "BoxMachine",
    "EValue", "VBox", "VClosure", "VCtor", "VFix", "apply_value", "eval_box", "BOX", "EApp",
    "EBox", "EBranch", "ECase", "EConst", "ECtor", "EFix", "EFixDef", "ELambda", "ELetIn",
    "ETerm", "EVar", "closed", "count_boxes", "mk_eapps", "show_eterm",
]
