import random

import pytest
from hypothesis import given, strategies as st

from boxless.errors import FuelExhausted, IllTyped, UnknownName
from boxless.kernel import (
    EMPTY_CTX, PROP_SORT, TYPE_SORT, App, Branch, Case, ConstantDecl, Const, Ctor, GlobalEnv,
    Ind, Lambda, LetIn, Prod, Var, arrow, check_env, conv, eval_source, infer_type, to_term, whnf,
    whnf_betaiotazeta,
)
from boxless.frontend.elaborate import elaborate
from boxless.frontend.parser import parse_program
from boxless.kernel.evaluate import SCtor

from corpus import PROGRAMS, source
from gen import source_nat
from oracles import counter_call, nat_value, z_value

NAT = Ind("nat")


def test_infer_identity():
    env = source("prelude")
    assert infer_type(env, EMPTY_CTX, Lambda("x", NAT, Var(0))) == arrow(NAT, NAT)


def test_infer_constant_lookup():
    env = source("prelude")
    assert conv(env, EMPTY_CTX, infer_type(env, EMPTY_CTX, Const("add")), arrow(NAT, arrow(NAT, NAT)))


def test_sort_is_not_a_function():
    with pytest.raises(IllTyped):
        infer_type(GlobalEnv(), EMPTY_CTX, App(TYPE_SORT, TYPE_SORT))


def test_infer_unknown_global():
    with pytest.raises(UnknownName):
        infer_type(GlobalEnv(), EMPTY_CTX, Const("plus"))


def test_prop_is_below_type():
    env = source("prelude")
    # True : Prop is accepted where a Type is expected
    assert infer_type(env, EMPTY_CTX, App(App(Ind("sum"), Ind("True")), NAT)) == TYPE_SORT


def test_whnf_beta():
    env = source("prelude")
    t = App(Lambda("x", TYPE_SORT, Var(0)), NAT)
    assert whnf_betaiotazeta(env, EMPTY_CTX, t) == NAT


def test_whnf_zeta():
    t = LetIn("x", NAT, TYPE_SORT, Var(0))
    assert whnf_betaiotazeta(source("prelude"), EMPTY_CTX, t) == NAT


def test_whnf_leaves_subterms_alone():
    t = Lambda("x", NAT, App(Lambda("y", NAT, Var(0)), Var(0)))
    assert whnf_betaiotazeta(source("prelude"), EMPTY_CTX, t) == t


def test_whnf_unfolds_constant_to_expose_structure():
    env = source("counter")
    assert whnf(env, EMPTY_CTX, Const("storage")) == Ind("Z")


def test_eval_counter_inc():
    env = source("counter")
    v = eval_source(env, counter_call(0, 5, 10))
    assert (v.ind, v.index) == ("option", 0)
    pair = v.args[-1]
    assert (pair.ind, pair.index) == ("prod", 0)
    actions, state = pair.args[-2:]
    assert (actions.ind, actions.index) == ("list", 0)
    assert z_value(state) == 15


def test_eval_fact():
    env = source("fact")
    three = App(Ctor("nat", 1), App(Ctor("nat", 1), App(Ctor("nat", 1), Ctor("nat", 0))))
    assert nat_value(eval_source(env, App(Const("fact"), three))) == 6


def test_ctor_value_evaluates_to_itself():
    env = source("prelude")
    v = eval_source(env, App(Ctor("nat", 1), Ctor("nat", 0)))
    assert v == SCtor("nat", 1, (SCtor("nat", 0),))
    assert eval_source(env, to_term(v)) == v


def test_eval_fuel_guard():
    env = source("fact")
    with pytest.raises(FuelExhausted):
        eval_source(env, Const("main"), fuel=50)


def test_check_env_counter():
    report = check_env(source("counter"))
    assert report.ok and report.axioms == []


def test_check_env_lists_axioms():
    report = check_env(source("axiom_magic"))
    assert report.ok and report.axioms == ["magic"]


def test_check_env_unknown_name():
    env = GlobalEnv((ConstantDecl("x", Ind("nat"), Ctor("nat", 0)),))
    report = check_env(env)
    assert not report.ok
    name, err = report.errors[0]
    assert name == "x" and isinstance(err, UnknownName)


def test_check_env_ill_typed():
    env = source("prelude").add(ConstantDecl("bad", NAT, Ctor("bool", 0)))
    report = check_env(env)
    assert [n for n, _ in report.errors] == ["bad"]
    assert isinstance(report.errors[0][1], IllTyped)


@pytest.mark.parametrize("program", PROGRAMS)
def test_corpus_checks(program):
    assert check_env(source(program)).ok


def test_prop_elimination_restricted():
    env = elaborate(parse_program("inductive two : Prop := | l : two | r : two"), source("prelude"))
    branches = (Branch(0, Ctor("nat", 0)), Branch(0, Ctor("nat", 0)))
    with pytest.raises(IllTyped, match="cannot eliminate"):
        infer_type(env, EMPTY_CTX, Lambda("h", Ind("two"), Case("two", 0, Var(0), branches)))
    # a singleton proposition may still be eliminated into a type
    assert infer_type(env, EMPTY_CTX, Lambda("h", Ind("True"), Case("True", 0, Var(0), branches[:1]))) \
        == arrow(Ind("True"), NAT)


# -- properties -------------------------------------------------------------------

@given(st.integers(0, 10_000))
def test_subject_reduction_at_head(seed):
    env = source("prelude")
    t = source_nat(random.Random(seed), 3)
    reduced = whnf(env, EMPTY_CTX, t)
    assert conv(env, EMPTY_CTX, infer_type(env, EMPTY_CTX, reduced), NAT)


@given(st.integers(0, 10_000))
def test_eval_deterministic_and_values_normal(seed):
    env = source("prelude")
    t = source_nat(random.Random(seed), 3)
    v = eval_source(env, t)
    assert eval_source(env, t) == v
    assert eval_source(env, to_term(v)) == v


def test_whnf_of_product_is_itself():
    t = Prod("A", TYPE_SORT, arrow(Var(0), PROP_SORT))
    assert whnf(GlobalEnv(), EMPTY_CTX, t) == t
