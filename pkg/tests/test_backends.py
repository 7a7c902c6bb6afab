import logging
import re
from pathlib import Path

import pytest

from boxless.backends import (
    apply_remap, check_prenex, elm_problems, liquidity_problems, print_elm, print_liquidity,
)
from boxless.dearg import optimize, remove_logical_params
from boxless.errors import (
    BackendError, BoxInOutput, ContainsTAny, NonPrenex, RecursiveDatatype, SingleCtorVariant,
    UnsupportedRecursion,
)
from boxless.frontend.elaborate import CORPUS_DIR
from boxless.frontend.pipeline import PipelineConfig, run_pipeline
from boxless.lambdabox import (
    TANY, ErasedConstant, ErasedEnv, TArr, TBOX, TInd, TVar, EVar, ELambda,
)

from corpus import PROGRAMS, erased, remap_table

SMALL = '''require "prelude.ccx"

inductive msg : Type :=
  | inc : bool -> msg
  | dec : bool -> msg

inductive duo : Type :=
  | Pair : bool -> bool -> duo
  | Solo : duo

def both : bool -> bool -> duo := fun a b => Pair a b

def shadow : bool -> bool -> bool := fun x => fun x => x

def flip : msg -> msg := fun m => match m as msg with | inc b => dec b | dec b => inc b end

def outer : bool -> bool :=
  fun x => match x as bool with | true => (fun (x : bool) => x) false | false => x end

def pair_up : bool -> prod bool bool := fun b => pair bool bool b b
'''
SMALL_SEEDS = ("both", "shadow", "flip", "outer")


@pytest.fixture(scope="module")
def small(tmp_path_factory):
    path = tmp_path_factory.mktemp("src") / "small.ccx"
    path.write_text(SMALL, encoding="utf-8")
    return path


def extract(path, target, seeds=("main",), remap=True, entry=None, dearg="on"):
    remap_path = CORPUS_DIR / f"{target}.remap" if remap else None
    cfg = PipelineConfig(path, seeds, target, remap_path, entry, dearg)
    return run_pipeline(cfg, write=False).text


def corpus_file(name):
    return CORPUS_DIR / f"{name}.ccx"


@pytest.fixture(autouse=True)
def quiet_remap_warnings():
    logging.getLogger("boxless.remap").setLevel(logging.ERROR)
    yield
    logging.getLogger("boxless.remap").setLevel(logging.NOTSET)


# -- prenex check --------------------------------------------------------------------

def test_dearged_counter_is_prenex():
    env, _ = optimize(erased("counter", ("counter",)), "on")
    assert check_prenex(remove_logical_params(env)).ok


def test_unbound_type_variable_is_not_prenex():
    bad = ErasedConstant("f", (), TArr(TVar(0), TVar(0)), ELambda("x", EVar(0)))
    report = check_prenex(ErasedEnv((bad,)))
    # one issue per unbound occurrence
    assert [type(e) for e in report.issues] == [NonPrenex, NonPrenex]
    with pytest.raises(NonPrenex):
        report.raise_first()


def test_any_is_reported():
    bad = ErasedConstant("g", (), TArr(TANY, TInd("nat")), ELambda("x", EVar(0)))
    (issue,) = check_prenex(ErasedEnv((bad,))).issues
    assert isinstance(issue, ContainsTAny) and issue.path == "signature.dom"


def test_bound_type_variables_are_fine():
    ok = ErasedConstant("id", ("A",), TArr(TBOX, TArr(TVar(0), TVar(0))), None)
    assert check_prenex(ErasedEnv((ok,))).ok


# -- remapping -----------------------------------------------------------------------

def test_empty_remap_table_is_identity():
    eenv = erased("square")
    assert apply_remap({}, eenv) == eenv


def test_remap_drops_replaced_body():
    eenv = apply_remap(remap_table("liquidity"), erased("square"))
    m = eenv.constant("map")
    assert m.body is None and m.remap.target == "List.map"


def test_square_uses_target_map():
    text = extract(corpus_file("square"), "liquidity")
    assert "List.map (fun x -> mul x x) xs" in text


def test_sig_inline_prelude():
    text = extract(corpus_file("counter"), "liquidity", ("counter",), entry="counter")
    assert "type 'a sig_ = 'a" in text.splitlines()


def test_false_rect_remap_for_elm():
    text = extract(corpus_file("safe_head"), "elm")
    assert "false_rec _ = false_rec ()" in text.splitlines()
    assert "\\h -> false_rec ()" in text


# -- Liquidity -----------------------------------------------------------------------

def test_counter_shape():
    text = extract(corpus_file("counter"), "liquidity", ("counter",), entry="counter")
    assert "let coq_counter (msg : coq_msg) (st : storage) =\n  match msg with\n  | Coq_Inc i ->" in text
    assert ("let wrapper param (st : storage) =\n  match coq_counter param st with\n"
            "  | Some v -> v\n  | None -> failwith ()") in text


def test_constructor_arguments_packed_as_tuple(small):
    text = extract(small, "liquidity", SMALL_SEEDS, remap=False)
    assert "Coq_Pair (a, b)" in text
    assert "type coq_duo = Coq_Pair of (coq_bool * coq_bool) | Coq_Solo" in text


def test_liquidity_renames_shadowed_binder(small):
    text = extract(small, "liquidity", SMALL_SEEDS, remap=False)
    assert "(fun x1 -> x1) Coq_false" in text


def test_single_constructor_variant_rejected(small):
    with pytest.raises(SingleCtorVariant):
        extract(small, "liquidity", ("pair_up",), remap=False)


def test_recursive_datatype_rejected():
    with pytest.raises(RecursiveDatatype):
        extract(corpus_file("pairs"), "liquidity", remap=False)


# program -> error raised when printing it for Liquidity with the bundled table
LIQUIDITY_REJECTS = {
    "even_odd": UnsupportedRecursion,
    "fact": UnsupportedRecursion,
    "ghost_args": BackendError,
    "higher_order": UnsupportedRecursion,
    "inl_cumulativity": BoxInOutput,
    "lists": UnsupportedRecursion,
    "nat_arith": UnsupportedRecursion,
    "options": BackendError,
    "safe_head": BoxInOutput,
    "sig_exist": BackendError,
    "sum_nat": UnsupportedRecursion,
    "trees": UnsupportedRecursion,
    "vectors": ContainsTAny,
    "z_arith": UnsupportedRecursion,
}


@pytest.mark.parametrize("program", PROGRAMS)
def test_liquidity_corpus(program):
    seeds, entry = (("counter",), "counter") if program == "counter" else (("main",), None)
    expected = LIQUIDITY_REJECTS.get(program)
    if expected is not None:
        with pytest.raises(expected) as info:
            extract(corpus_file(program), "liquidity", seeds, entry=entry)
        assert type(info.value) is expected
        return
    text = extract(corpus_file(program), "liquidity", seeds, entry=entry)
    assert liquidity_problems(text, _externals("liquidity")) == []


def test_nat_successor_pattern_rejected():
    with pytest.raises(BackendError, match="is not a pattern"):
        extract(corpus_file("options"), "liquidity")


# -- Elm -----------------------------------------------------------------------------

def test_counter_annotation():
    text = extract(corpus_file("counter"), "elm", ("counter",))
    assert "counter : Msg -> Storage -> Option (Prod Transaction Storage)" in text.splitlines()


def test_elm_renames_shadowed_binder(small):
    text = extract(small, "elm", SMALL_SEEDS, remap=False, dearg="off")
    assert "shadow x x1 =\n  x1" in text
    assert "(\\x1 -> x1) False" in text
    assert elm_problems(text) == []


def test_constructors_capitalized(small):
    text = extract(small, "elm", SMALL_SEEDS, remap=False)
    assert "  = Inc Bool\n  | Dec Bool" in text
    assert "Inc b ->\n      Dec b" in text


@pytest.mark.parametrize("program", PROGRAMS)
def test_elm_corpus(program):
    seeds = ("counter",) if program == "counter" else ("main",)
    if program == "vectors":
        with pytest.raises(ContainsTAny):
            extract(corpus_file(program), "elm", seeds)
        return
    text = extract(corpus_file(program), "elm", seeds)
    assert elm_problems(text, _externals("elm")) == []


def test_printers_are_deterministic():
    env, _ = optimize(erased("square"), "on")
    env = remove_logical_params(apply_remap(remap_table("elm"), env))
    assert print_elm(env, remap_table("elm"), "Square").text == \
        print_elm(env, remap_table("elm"), "Square").text
    env, _ = optimize(erased("bool_ops"), "on")
    env = remove_logical_params(apply_remap(remap_table("liquidity"), env))
    first = print_liquidity(env, remap_table("liquidity")).text
    assert first == print_liquidity(env, remap_table("liquidity")).text


def _externals(target):
    """Lower-case names a remap table introduces, which the checkers treat as bound."""
    names = {"failwith"}
    for r in remap_table(target).values():
        names |= set(re.findall(r"[a-z_][\w.]*", r.target))
    return names


# -- target-side checkers ------------------------------------------------------------

def test_elm_checker_finds_shadowing():
    text = "module M exposing (..)\n\nf : a -> a\nf x =\n  (\\x -> x) x\n"
    assert any("shadow" in p for p in elm_problems(text))


def test_elm_checker_finds_unbound_name():
    text = "module M exposing (..)\n\nf : a -> a\nf x =\n  g x\n"
    assert any("g" in p for p in elm_problems(text, externals=set()))


def test_elm_checker_finds_duplicate_constructor():
    text = "module M exposing (..)\n\ntype A\n  = C\n  | C\n"
    assert elm_problems(text) != []


def test_elm_checker_finds_annotation_without_definition():
    text = "module M exposing (..)\n\nf : a -> a\n"
    assert elm_problems(text) != []


def test_liquidity_checker_finds_box():
    assert liquidity_problems("let f (x : int) =\n  □\n") != []


def test_liquidity_checker_finds_unbound_name():
    problems = liquidity_problems("let f (x : int) =\n  g x\n", externals=set())
    assert any("g" in p for p in problems)


def test_liquidity_checker_accepts_counter_golden():
    golden = Path(__file__).parent / "golden" / "counter.liq.ml"
    assert liquidity_problems(golden.read_text(encoding="utf-8")) == []
