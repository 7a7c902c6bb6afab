"""Small dearging examples: what the masks remove and what they must keep.

Run with ``python3 demos/dearging_examples.py``.
"""
from boxless.dearg import dearg_value, optimize, remove_logical_params
from boxless.erasure import erase_dependencies
from boxless.frontend.elaborate import elaborate, load_corpus
from boxless.frontend.parser import parse_program
from boxless.lambdabox import EConst, eval_box, show_box_type, show_eterm


def before_after(program, names):
    erased = erase_dependencies(load_corpus(program), ["main"])
    dearged, masks = optimize(erased, "on")
    dearged = remove_logical_params(dearged)
    print(f"-- {program}")
    for name in names:
        b, a = erased.constant(name), dearged.constant(name)
        print(f"  {name}")
        print(f"    before: {show_eterm(b.body)}")
        print(f"    after:  {show_eterm(a.body)}")
        print(f"    type:   {show_box_type(b.signature, b.type_vars)}"
              f"  ~>  {show_box_type(a.signature, a.type_vars)}")
    v_before = eval_box(erased, EConst("main"))
    v_after = eval_box(dearged, EConst("main"))
    print(f"  main agrees after dropping masked arguments: {dearg_value(masks, v_before) == v_after}")
    return erased, dearged


def main():
    # type arguments of a polymorphic library function disappear
    before_after("sum_nat", ["sum_list"])
    before_after("square", ["square"])

    # the proof inside exist is never inspected, so the constructor loses it
    _, dearged = before_after("sig_exist", ["the_two", "pred_sig"])
    decl, k = dearged.inductive("sig")
    exist = decl.bodies[k].ctors[0]
    print(f"  exist : {' -> '.join(show_box_type(t, decl.type_vars) for t in exist.arg_types)}"
          f" -> sig {' '.join(decl.type_vars)}")

    # a proposition passed where a type is expected: the payload box survives
    before_after("inl_cumulativity", ["lhs"])

    # forwarding an argument counts as a use; only iteration removes it
    env = elaborate(parse_program(FORWARDING), load_corpus("prelude"))
    erased = erase_dependencies(env, ["main"])
    for mode in ("on", "iterate"):
        after, masks = optimize(erased, mode)
        removed = {n: m for n, m in masks.cst.items() if any(m)}
        print(f"-- forwarding, mode {mode}: removed {removed}")
        print(f"    f = {show_eterm(after.constant('f').body)}")


FORWARDING = """
def g : nat -> nat := fun y => O
def f : nat -> nat := fun x => g x
def main : nat := f (S O)
"""


if __name__ == "__main__":
    main()
