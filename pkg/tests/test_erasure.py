import pytest

from boxless.errors import AxiomReached, NotPrenex
from boxless.erasure import (
    REL_OTHER, ErasedInductive, TypeFlag, erase_dependencies, erase_term, erase_type,
    flag_of_type,
)
from boxless.erasure.values import erase_value
from boxless.kernel import (
    EMPTY_CTX, PROP_SORT, TYPE_SORT, App, Const, Ctor, Ind, Prod, Var, arrow, eval_source, push,
)
from boxless.lambdabox import (
    BOX, EBox, EConst, ECtor, TApp, TArr, TBOX, TInd, TVar, eval_box, mk_eapps,
    show_box_type, show_eterm,
)
from boxless.lambdabox.env import mk_arrs, mk_tapps

from corpus import PROGRAMS, erased, source

POLY_ID = Prod("A", TYPE_SORT, arrow(Var(0), Var(0)))


@pytest.mark.parametrize("ty, expected", [
    (TYPE_SORT, TypeFlag(False, True, True)),
    (arrow(TYPE_SORT, PROP_SORT), TypeFlag(True, True, False)),
    (POLY_ID, TypeFlag(False, False, False)),
    (PROP_SORT, TypeFlag(True, True, True)),
    (Ind("nat"), TypeFlag(False, False, False)),
    (Ind("True"), TypeFlag(True, False, False)),
])
def test_flags(ty, expected):
    assert flag_of_type(source("prelude"), EMPTY_CTX, ty) == expected


def test_erase_polymorphic_identity_type():
    vs, ty = erase_type(source("prelude"), EMPTY_CTX, (), POLY_ID)
    assert vs == ("A",)
    assert ty == TArr(TBOX, TArr(TVar(0), TVar(0)))


def test_erase_prop_is_box():
    assert erase_type(source("prelude"), EMPTY_CTX, (), PROP_SORT) == ((), TBOX)


def test_erase_sig_type():
    env = source("prelude")
    ctx = push(EMPTY_CTX, "P", arrow(Ind("nat"), PROP_SORT))
    ty = App(App(Ind("sig"), Ind("nat")), Var(0))
    assert erase_type(env, ctx, (REL_OTHER,), ty) == ((), TApp(TApp(TInd("sig"), TInd("nat")), TBOX))


def test_rank2_not_prenex():
    env = source("rank2")
    with pytest.raises(NotPrenex):
        erase_type(env, EMPTY_CTX, (), env.constant("rank2").type)


def test_sum_nat_body():
    body = erased("sum_nat").constant("sum_list").body
    assert show_eterm(body) == "fun xs => fold_left □ □ add xs nat#0"


def test_square_body():
    body = erased("square").constant("square").body
    assert show_eterm(body) == "fun xs => map □ □ (fun x => mul x x) xs"


def test_proof_term_is_box():
    assert erase_term(source("prelude"), EMPTY_CTX, Ctor("True", 0)) == EBox()


def test_type_argument_is_box():
    t = App(Ctor("list", 0), Ind("nat"))
    assert erase_term(source("prelude"), EMPTY_CTX, t) == mk_eapps(ECtor("list", 0), [BOX])


def test_sig_inductive():
    decl, k = erased("sig_exist").inductive("sig")
    exist = decl.bodies[k].ctors[0]
    assert [p.is_logical for p in decl.params] == [False, True]
    assert exist.arg_types == (TVar(0), TBOX)
    result = mk_tapps(TInd("sig"), [TVar(0), TBOX])
    assert show_box_type(mk_arrs(exist.arg_types, result), ("A",)) == "A -> □ -> sig A □"


def test_msg_inductive():
    decl, _ = erased("counter", ("counter",)).inductive("msg")
    assert [(c.name, c.arg_types) for c in decl.bodies[0].ctors] == [
        ("Inc", (TInd("Z"),)), ("Dec", (TInd("Z"),))]


def test_false_has_no_constructors():
    decl, _ = erased("safe_head").inductive("False")
    assert isinstance(decl, ErasedInductive)
    assert decl.bodies[0].ctors == ()


# Reachability from ``counter`` worked out by hand from the corpus file: the
# contract itself, its helpers, the datatypes in its signatures, and the
# binary-integer arithmetic behind Z.add, Z.sub and Z.ltb.
COUNTER_CLOSURE = {
    "counter", "inc_counter", "dec_counter", "my_bool_dec", "msg", "storage", "sig",
    "proj1_sig", "sumbool", "bool", "option", "prod", "list", "operation", "actions",
    "no_actions", "positive", "Z", "comparison", "Z.add", "Z.sub", "Z.opp", "Z.ltb",
    "Z.compare", "Z.pos_sub", "Z.double", "Z.succ_double", "Z.pred_double", "Pos.succ",
    "Pos.add", "Pos.pred_double", "Pos.compare", "Pos.compare_cont",
}


def test_counter_dependencies():
    eenv = erase_dependencies(source("counter"), ["counter"])
    assert {d.name for d in eenv} == COUNTER_CLOSURE
    names = [d.name for d in eenv]
    # dependencies come before their users
    assert names.index("inc_counter") < names.index("counter")
    assert names.index("Z") < names.index("Z.add")


def test_axiom_reached():
    with pytest.raises(AxiomReached) as info:
        erase_dependencies(source("axiom_magic"), ["main"])
    assert info.value.name == "magic"


def test_unreachable_axiom_is_fine():
    eenv = erase_dependencies(source("axiom_magic"), ["add"])
    assert "magic" not in eenv


def test_exist_erases_type_and_proof():
    body = erased("sig_exist").constant("the_two").body
    assert body == mk_eapps(ECtor("sig", 0), [BOX, BOX, EConst("two"), BOX])


def test_inc_counter_body():
    body = erased("counter", ("counter",)).constant("inc_counter").body
    assert show_eterm(body) == "fun st => fun inc => sig#0 □ □ (Z.add st (proj1_sig □ □ inc)) □"


@pytest.mark.parametrize("program", PROGRAMS)
def test_erasure_commutes_with_evaluation(program):
    eenv = erased(program)
    expected = erase_value(eenv, eval_source(source(program), Const("main")))
    assert expected is not None
    assert eval_box(eenv, EConst("main")) == expected
