import pytest
from hypothesis import given, strategies as st

from boxless.dearg import (
    EMPTY_MASKS, Masks, MibMask, analyze_usage, compose, dearg_env, dearg_term, dearg_value,
    eta_expand, eta_expand_term, optimize, remove_logical_params, trim, valid_masks,
)
from boxless.dearg.logical import drop_type_args
from boxless.dearg.masks import apply_mask
from boxless.erasure import erase_type
from boxless.errors import ArityMismatch, NotExpanded
from boxless.frontend.elaborate import Elaborator, elaborate
from boxless.frontend.parser import parse_program, parse_term
from boxless.kernel import EMPTY_CTX
from boxless.lambdabox import (
    BOX, VBOX, EApp, EBranch, ECase, EConst, ECtor, ELambda, ErasedConstant, ErasedEnv, EVar,
    TApp, TArr, TBOX, TConst, TInd, TVar, VCtor, eval_box, mk_eapps, show_box_type,
)

from corpus import PROGRAMS, dearged, erased, own_constants, source
from gen import base_inductives, random_program
from oracles import oracle_eval, shape, usage_scan

NAT = TInd("nat")
O = ECtor("nat", 0)
S = ECtor("nat", 1)


def env_with(*consts):
    return ErasedEnv(tuple(base_inductives()) + consts)


def const(name, body, arity=2):
    sig = NAT
    for _ in range(arity):
        sig = TArr(NAT, sig)
    return ErasedConstant(name, (), sig, body)


K = const("k", ELambda("x", ELambda("y", EVar(1))))


# -- analysis ----------------------------------------------------------------------

def test_sig_proof_argument_removable():
    mib = dearged("sig_exist")[1].ind["sig"]
    assert mib.param_mask == (True, True)
    assert mib.ctor_masks == ((False, True),)


def test_unused_second_parameter():
    assert analyze_usage(env_with(K)).cst["k"] == (False, True)


def test_forwarded_argument_kept_in_one_pass():
    g = const("g", ELambda("y", O), 1)
    f = const("f", ELambda("x", EApp(EConst("g"), EVar(0))), 1)
    eenv = env_with(g, f)
    masks = analyze_usage(eenv)
    assert masks.cst["g"] == (True,)
    assert masks.cst["f"] == ()
    # a second round sees that f no longer uses x
    _, total = optimize(eenv, "iterate")
    assert total.cst["f"] == (True,)


@pytest.mark.parametrize("program", PROGRAMS)
def test_analysis_matches_usage_scan(program):
    eenv = erased(program, own_constants(program))
    masks = analyze_usage(eenv)
    cst, ind = usage_scan(eenv)
    assert {k: v for k, v in masks.cst.items() if v} == {k: v for k, v in cst.items() if v}
    for name, (params, ctors) in ind.items():
        mib = masks.ind[name]
        assert mib.param_mask == params
        assert tuple(trim(m) for m in mib.ctor_masks) == ctors
    assert valid_masks(eenv, masks)


# -- validity ----------------------------------------------------------------------

def test_mask_removing_used_argument_is_invalid():
    assert not valid_masks(env_with(K), Masks(cst={"k": (True,)}))


def test_mask_removing_used_ctor_argument_is_invalid():
    body = ELambda("n", ECase("nat", 0, EVar(0), (EBranch(0, O), EBranch(1, EVar(0)))))
    eenv = env_with(const("pred", body, 1))
    masks = Masks(ind={"nat": MibMask(0, (), ((), (True,)))})
    assert not valid_masks(eenv, masks)


def test_empty_masks_valid():
    assert valid_masks(env_with(K), EMPTY_MASKS)


# -- eta-expansion -----------------------------------------------------------------

def test_eta_bare_constructor():
    exist = ECtor("sig", 0)
    expanded = eta_expand_term(exist, lambda head: 2)
    assert expanded == ELambda("x", ELambda("x", mk_eapps(exist, [EVar(1), EVar(0)])))


def test_eta_partial_application_lifts():
    t = EApp(EConst("add"), EVar(3))
    expanded = eta_expand_term(t, lambda head: 2)
    assert expanded == ELambda("y", mk_eapps(EConst("add"), [EVar(4), EVar(0)]))


def test_eta_leaves_full_application():
    t = mk_eapps(EConst("add"), [O, O])
    assert eta_expand_term(t, lambda head: 2 if head == EConst("add") else 0) == t


@given(st.integers(0, 100_000))
def test_eta_expansion_agrees_on_applications(seed):
    eenv = random_program(seed)
    masks = analyze_usage(eenv)
    expanded = eta_expand(eenv, masks)
    for d in eenv:
        if isinstance(d, ErasedConstant) and d.name.startswith("main"):
            before = shape(oracle_eval(eenv, d.body))
            assert shape(oracle_eval(expanded, expanded.constant(d.name).body)) == before
            assert shape(eval_box(expanded, EConst(d.name))) == before


# -- term and value transformation -------------------------------------------------

def test_fold_left_call():
    masks = Masks(cst={"fold_left": (True, True)})
    call = mk_eapps(EConst("fold_left"), [BOX, BOX, EConst("add"), EVar(0), O])
    assert dearg_term(masks, call) == mk_eapps(EConst("fold_left"), [EConst("add"), EVar(0), O])


def test_exist_drops_proof():
    masks = Masks(ind={"sig": MibMask(2, (), ((False, True),))})
    t = mk_eapps(ECtor("sig", 0), [BOX, BOX, EVar(0), BOX])
    assert dearg_term(masks, t) == mk_eapps(ECtor("sig", 0), [BOX, BOX, EVar(0)])


def test_inl_keeps_payload_box():
    masks = Masks(ind={"sum": MibMask(2, (True, True), ((False,), (False,)))})
    assert dearg_term(masks, mk_eapps(ECtor("sum", 0), [BOX, BOX, BOX])) == EApp(ECtor("sum", 0), BOX)


def test_under_applied_masked_global():
    with pytest.raises(NotExpanded):
        dearg_term(Masks(cst={"k": (False, True)}), EApp(EConst("k"), O))


def test_empty_masks_identity():
    t = mk_eapps(EConst("fold_left"), [BOX, BOX, EConst("add"), EVar(0), O])
    assert dearg_term(EMPTY_MASKS, t) == t


def test_dearg_constant_drops_binder_and_domain():
    out = dearg_env(Masks(cst={"k": (False, True)}), env_with(K)).constant("k")
    assert out.body == ELambda("x", EVar(0))
    assert out.signature == TArr(NAT, NAT)


def test_dearged_constant_evaluates_like_original():
    masks = Masks(cst={"k": (False, True)})
    before, after = env_with(K), dearg_env(masks, env_with(K))
    call = mk_eapps(EConst("k"), [EApp(S, O), O])
    assert eval_box(after, dearg_term(masks, call)) == eval_box(before, call)


def test_branch_binders_strengthened():
    masks = Masks(ind={"pairb": MibMask(0, (), ((False, True, False),))})
    body = ECase("pairb", 0, EVar(0), (EBranch(3, EVar(0)),))
    out = dearg_term(masks, body)
    assert out == ECase("pairb", 0, EVar(0), (EBranch(2, EVar(0)),))


def test_dearg_value():
    masks = Masks(ind={"sig": MibMask(2, (True, True), ((False, True),))})
    v = VCtor("sig", 0, (VBOX, VBOX, VCtor("nat", 0), VBOX))
    assert dearg_value(masks, v) == VCtor("sig", 0, (VCtor("nat", 0),))


def test_inc_counter_signature():
    eenv = erased("counter", ("counter",))
    before = eenv.constant("inc_counter").signature
    assert show_box_type(before) == "storage -> sig Z □ -> sig storage □"
    after, _ = optimize(eenv, "on")
    sig = remove_logical_params(after).constant("inc_counter").signature
    storage = TConst("storage")
    assert sig == TArr(storage, TArr(TApp(TInd("sig"), TInd("Z")), TApp(TInd("sig"), storage)))


# -- logical parameters ------------------------------------------------------------

def test_sig_loses_logical_parameter():
    out = remove_logical_params(dearged("sig_exist")[0])
    decl, k = out.inductive("sig")
    assert [p.name for p in decl.params] == ["A"]
    exist = decl.bodies[k].ctors[0]
    assert exist.arg_types == (TVar(0),)
    assert show_box_type(TArr(exist.arg_types[0], TApp(TInd("sig"), TVar(0))), ("A",)) == "A -> sig A"


def test_inductive_without_logical_parameters_unchanged():
    eenv = ErasedEnv(tuple(base_inductives()))
    assert remove_logical_params(eenv) == eenv


def test_drop_type_args_matches_re_erasure():
    ty = TApp(TApp(TInd("sig"), NAT), TBOX)
    dropped = drop_type_args(ty, {"sig": (1,)})
    assert dropped == TApp(TInd("sig"), NAT)
    # erasing the same application of a sig without its predicate gives the same shape
    env = elaborate(parse_program(
        "inductive sig1 (A : Type) : Type := | exist1 : A -> sig1 A"), source("prelude"))
    _, direct = erase_type(env, EMPTY_CTX, (), Elaborator(env).elab(parse_term("sig1 nat"), EMPTY_CTX))
    assert direct == TApp(TInd("sig1"), NAT)


def test_drop_type_args_under_applied():
    with pytest.raises(ArityMismatch):
        drop_type_args(TApp(TInd("sig"), NAT), {"sig": (1,)})


# -- masks and modes ---------------------------------------------------------------

masks_st = st.lists(st.booleans(), max_size=8)


@given(masks_st, masks_st, st.integers(0, 12))
def test_compose_is_sequential_removal(first, second, n):
    items = list(range(n))
    assert apply_mask(compose(first, second), items) == apply_mask(second, apply_mask(first, items))


@given(masks_st)
def test_compose_with_empty(m):
    assert compose(m, ()) == trim(m)
    assert compose((), m) == trim(m)


def test_optimize_modes():
    eenv = erased("counter", ("counter",))
    off_env, off_masks = optimize(eenv, "off")
    assert off_env == eenv and off_masks.is_empty()
    _, on_masks = optimize(eenv, "on")
    assert on_masks == analyze_usage(eenv)
    _, it_masks = optimize(eenv, "iterate")
    assert valid_masks(eenv, it_masks)
    with pytest.raises(ValueError):
        optimize(eenv, "sometimes")


@pytest.mark.parametrize("program", PROGRAMS)
def test_iterate_agrees_with_source(program):
    eenv = erased(program)
    after, masks = optimize(eenv, "iterate")
    expected = dearg_value(masks, eval_box(eenv, EConst("main")))
    assert eval_box(after, dearg_term(masks, EConst("main"))) == expected
