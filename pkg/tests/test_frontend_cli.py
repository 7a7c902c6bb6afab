import json
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from boxless import cli
from boxless.errors import DuplicateKey, ElabError, ParseError
from boxless.frontend.elaborate import CORPUS_DIR, load_program
from boxless.frontend.parser import parse_program
from boxless.frontend.pipeline import PipelineConfig, run_pipeline
from boxless.frontend.remap_format import format_remap, parse_remap
from boxless.frontend.surface import (
    Axiom, Definition, Inductive, SArrow, SBinder, SForall, SFun, SIdent, SSort, pretty_source,
)
from boxless.lambdabox import Remap

GOLDEN = Path(__file__).parent / "golden"
COUNTER = CORPUS_DIR / "counter.ccx"


# -- source parser -------------------------------------------------------------------

def test_parse_definition():
    (d,) = parse_program("def id : forall (A : Type), A -> A := fun A x => x")
    assert d == Definition(
        "id",
        SForall((SBinder("A", SSort("Type")),), SArrow(SIdent("A"), SIdent("A"))),
        SFun((SBinder("A", None), SBinder("x", None)), SIdent("x")),
    )


def test_parse_axiom_and_inductive():
    decls = parse_program("axiom magic : nat\ninductive unit : Type := | tt : unit")
    assert isinstance(decls[0], Axiom) and decls[0].name == "magic"
    assert isinstance(decls[1], Inductive)
    assert [c for c, _ in decls[1].bodies[0].ctors] == ["tt"]


def test_counter_parsed_form():
    decls = parse_program(COUNTER.read_text(encoding="utf-8"))
    assert len(decls) >= 9
    assert pretty_source(decls) == (GOLDEN / "counter.parsed.ccx").read_text(encoding="utf-8")


def test_missing_body_is_parse_error():
    with pytest.raises(ParseError) as info:
        parse_program("def x :=")
    assert (info.value.line, info.value.col, info.value.expected) == (1, 7, "':'")


def test_parse_error_location():
    with pytest.raises(ParseError) as info:
        parse_program("def x : nat :=\n  fun => x")
    assert info.value.line == 2


def test_comments_are_skipped():
    assert parse_program("(* a (* nested *) comment *)\naxiom a : Type") == [Axiom("a", SSort("Type"))]


def test_unknown_name_reported_by_elaborator(tmp_path):
    path = tmp_path / "bad.ccx"
    path.write_text("def x : nat := O\n", encoding="utf-8")
    with pytest.raises(ElabError):
        load_program(path)


# -- remap tables --------------------------------------------------------------------

def test_remap_plain_entry():
    assert parse_remap("map => List.map") == {"map": Remap("List.map")}


def test_remap_inline_entry():
    table = parse_remap("sig => sig_ inline \"type 'a sig_ = 'a\"")
    assert table == {"sig": Remap("sig_", "type 'a sig_ = 'a")}


def test_remap_template_and_annotation():
    table = parse_remap('# comment\npair => "({0}, {1})" ann "a * b"  # trailing\n')
    assert table == {"pair": Remap("({0}, {1})", None, "a * b")}


def test_remap_duplicate_key():
    with pytest.raises(DuplicateKey) as info:
        parse_remap("a => b\nc => d\na => e\n")
    assert (info.value.key, info.value.line) == ("a", 3)


def test_remap_malformed_line():
    with pytest.raises(ParseError):
        parse_remap("a b")


@pytest.mark.parametrize("target", ["liquidity", "elm"])
def test_bundled_tables_round_trip(target):
    table = parse_remap((CORPUS_DIR / f"{target}.remap").read_text(encoding="utf-8"))
    assert parse_remap(format_remap(table)) == table


_word = st.from_regex(r"[A-Za-z_][\w.']{0,8}", fullmatch=True)
_text = st.text(st.characters(blacklist_categories=("Cs",)), max_size=12)
_remap = st.builds(Remap, st.one_of(_word, _text), st.none() | _text, st.none() | _text)


@given(st.dictionaries(_word, _remap, max_size=6))
def test_format_remap_round_trip(table):
    assert parse_remap(format_remap(table)) == table


# -- pipeline ------------------------------------------------------------------------

def test_report_contents(tmp_path):
    out, rep = tmp_path / "c.ml", tmp_path / "c.json"
    cfg = PipelineConfig(COUNTER, ("counter",), "liquidity", CORPUS_DIR / "liquidity.remap",
                         "counter", output_path=out, report_path=rep)
    result = run_pipeline(cfg)
    report = json.loads(rep.read_text(encoding="utf-8"))
    assert out.read_text(encoding="utf-8") == result.text
    assert report["boxes_after"] <= report["boxes_before"]
    assert report["declaration_count"] == len(report["declarations"])
    assert report["masks"]["inductives"]["sig"] == {"params": [True, True], "ctors": [[False, True]]}
    assert {"input", "target", "seeds", "entry", "dearg", "masks", "unused_remap_keys",
            "evaluations"} <= set(report)


def test_config_validation():
    with pytest.raises(ValueError):
        PipelineConfig(COUNTER, (), "elm")
    with pytest.raises(ValueError):
        PipelineConfig(COUNTER, ("counter",), "elm", entry="main")
    with pytest.raises(ValueError):
        PipelineConfig(COUNTER, ("counter",), "ocaml")


def test_seed_evaluations_agree():
    cfg = PipelineConfig(CORPUS_DIR / "square.ccx", ("main",), "elm", CORPUS_DIR / "elm.remap")
    assert run_pipeline(cfg, write=False).report["evaluations"]["main"]["agree"] is True


# -- command line --------------------------------------------------------------------

def run_cli(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_cli_liquidity(capsys):
    code, out, _ = run_cli(capsys, COUNTER, "--seed", "counter", "--target", "liquidity",
                           "--remap", CORPUS_DIR / "liquidity.remap", "--entry", "counter")
    assert code == 0
    assert out == (GOLDEN / "counter.liq.ml").read_text(encoding="utf-8")


def test_cli_elm_to_file(capsys, tmp_path):
    out_path, rep = tmp_path / "Counter.elm", tmp_path / "report.json"
    code, out, _ = run_cli(capsys, COUNTER, "--seed", "counter", "--target", "elm", "--remap",
                           CORPUS_DIR / "elm.remap", "-o", out_path, "--report", rep)
    assert code == 0 and out == ""
    assert out_path.read_text(encoding="utf-8") == (GOLDEN / "counter.elm").read_text(encoding="utf-8")
    assert json.loads(rep.read_text(encoding="utf-8"))["target"] == "elm"


def test_cli_is_deterministic(tmp_path, capsys):
    outputs = []
    for k in range(2):
        path = tmp_path / f"out{k}.ml"
        run_cli(capsys, COUNTER, "--seed", "counter", "--target", "liquidity", "-o", path,
                "--remap", CORPUS_DIR / "liquidity.remap", "--entry", "counter")
        outputs.append(path.read_bytes())
    assert outputs[0] == outputs[1]


def test_cli_dearg_off_snapshot(capsys):
    code, out, err = run_cli(capsys, COUNTER, "--seed", "counter", "--target", "liquidity",
                             "--remap", CORPUS_DIR / "liquidity.remap", "--entry", "counter",
                             "--dearg", "off")
    assert code == 4 and out == ""
    assert err == "error[backend]: my_bool_dec: body still contains a box\n"
    # Elm accepts the boxes, printed as unit values
    code, out, _ = run_cli(capsys, COUNTER, "--seed", "counter", "--target", "elm",
                           "--remap", CORPUS_DIR / "elm.remap", "--dearg", "off")
    assert code == 0
    assert out == (GOLDEN / "counter.off.elm").read_text(encoding="utf-8")
    assert "Exist (add st (proj1_sig () () inc)) ()" in out


def test_cli_parse_error(capsys, tmp_path):
    path = tmp_path / "broken.ccx"
    path.write_text("def x :=", encoding="utf-8")
    code, _, err = run_cli(capsys, path, "--seed", "x", "--target", "elm")
    assert code == 2 and err.startswith("error[parse]: 1:7: expected ':'")


def test_cli_missing_file(capsys, tmp_path):
    code, _, err = run_cli(capsys, tmp_path / "absent.ccx", "--seed", "x", "--target", "elm")
    assert code == 2 and err.startswith("error[io]")


def test_cli_not_prenex(capsys):
    code, _, err = run_cli(capsys, CORPUS_DIR / "rank2.ccx", "--seed", "main", "--target", "elm")
    assert code == 3 and err.startswith("error[erasure]: rank2")


def test_cli_axiom(capsys):
    code, _, err = run_cli(capsys, CORPUS_DIR / "axiom_magic.ccx", "--seed", "main", "--target", "elm")
    assert code == 3 and "magic" in err


def test_cli_backend_error(capsys):
    code, _, err = run_cli(capsys, CORPUS_DIR / "vectors.ccx", "--seed", "main", "--target", "elm",
                           "--remap", CORPUS_DIR / "elm.remap")
    assert code == 4 and "Any" in err


def test_cli_color(capsys, monkeypatch):
    monkeypatch.setenv("BOXLESS_COLOR", "1")
    _, _, err = run_cli(capsys, CORPUS_DIR / "rank2.ccx", "--seed", "main", "--target", "elm")
    assert err.startswith("\x1b[1;31merror[erasure]\x1b[0m")
    monkeypatch.setenv("BOXLESS_COLOR", "0")
    _, _, err = run_cli(capsys, CORPUS_DIR / "rank2.ccx", "--seed", "main", "--target", "elm")
    assert err.startswith("error[erasure]")


def test_cli_requires_seed():
    with pytest.raises(SystemExit) as info:
        cli.main([str(COUNTER), "--target", "elm"])
    assert info.value.code == 2
