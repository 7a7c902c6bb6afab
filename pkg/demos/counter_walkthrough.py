"""Follow the counter contract through every pipeline stage.

Run with ``python3 demos/counter_walkthrough.py``.
"""
import logging

from boxless.backends import (
    apply_remap, check_prenex, print_elm, print_liquidity, prune, unknown_keys,
)
from boxless.dearg import optimize, remove_logical_params
from boxless.erasure import erase_dependencies
from boxless.frontend.elaborate import CORPUS_DIR, load_program
from boxless.frontend.remap_format import parse_remap
from boxless.kernel import check_env
from boxless.lambdabox import ErasedConstant, count_boxes, show_box_type, show_eterm


def banner(title):
    print(f"\n== {title} " + "=" * (60 - len(title)))


def show_constants(eenv, names):
    for name in names:
        d = eenv.constant(name)
        print(f"{name} : {show_box_type(d.signature, d.type_vars)}")
        print(f"  {show_eterm(d.body)}")


def main():
    logging.basicConfig(level=logging.ERROR)
    env = load_program(CORPUS_DIR / "counter.ccx")
    report = check_env(env)
    banner("source")
    print(f"{len(env.decls)} declarations, well-typed: {report.ok}, axioms: {report.axioms}")

    erased = erase_dependencies(env, ["counter"])
    banner("after erasure")
    show_constants(erased, ["inc_counter", "counter"])
    boxes = sum(count_boxes(d.body) for d in erased if isinstance(d, ErasedConstant) and d.body)
    print(f"boxes in bodies: {boxes}")

    dearged, masks = optimize(erased, "on")
    dearged = remove_logical_params(dearged)
    banner("after dearging")
    for name, m in masks.to_json()["inductives"].items():
        print(f"{name}: params {m['params']} ctors {m['ctors']}")
    for name, m in masks.to_json()["constants"].items():
        print(f"{name}: {m}")
    show_constants(dearged, ["inc_counter", "counter"])

    for target, printer in (("liquidity", print_liquidity), ("elm", print_elm)):
        table = parse_remap((CORPUS_DIR / f"{target}.remap").read_text(encoding="utf-8"))
        unused = unknown_keys(table, dearged)
        known = {k: r for k, r in table.items() if k not in unused}
        printed = prune(apply_remap(known, dearged), ["counter"])
        check_prenex(printed).raise_first()
        args = ("counter",) if target == "liquidity" else ("Counter",)
        banner(f"{target} output")
        print(printer(printed, table, *args).text)


if __name__ == "__main__":
    main()
