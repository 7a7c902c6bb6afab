"""Dead-argument masks.  ``True`` marks a position to remove."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

Mask = tuple[bool, ...]


def trim(mask: Sequence[bool]) -> Mask:
    """Drop trailing ``False`` entries (the canonical form)."""
    m = list(mask)
    while m and not m[-1]:
        m.pop()
    return tuple(m)


def pad(mask: Sequence[bool], n: int) -> Mask:
    return tuple(mask) + (False,) * (n - len(mask))


def apply_mask(mask: Sequence[bool], items: Sequence) -> list:
    """Items at unmasked positions; positions past the mask are kept."""
    return [x for i, x in enumerate(items) if not (i < len(mask) and mask[i])]


def compose(first: Sequence[bool], second: Sequence[bool]) -> Mask:
    """Mask equivalent to removing ``first`` and then ``second`` from the survivors."""
    out, k = [], 0
    for removed in first:
        if removed:
            out.append(True)
        else:
            out.append(k < len(second) and second[k])
            k += 1
    out.extend(second[k:])
    return trim(out)


@dataclass(frozen=True)
class MibMask:
    """Masks of one inductive body: its parameters and each constructor's arguments."""

    npars: int
    param_mask: Mask
    ctor_masks: tuple[Mask, ...]

    def ctor_mask(self, j: int) -> Mask:
        """Mask over the full argument list, parameters first."""
        ctor = self.ctor_masks[j] if j < len(self.ctor_masks) else ()
        return trim(pad(self.param_mask, self.npars) + tuple(ctor))

    @property
    def removed_params(self) -> int:
        return sum(self.param_mask)


@dataclass(frozen=True)
class Masks:
    ind: dict[str, MibMask] = field(default_factory=dict)
    cst: dict[str, Mask] = field(default_factory=dict)

    def const_mask(self, name: str) -> Mask:
        return self.cst.get(name, ())

    def ctor_mask(self, ind: str, j: int) -> Mask:
        mib = self.ind.get(ind)
        return () if mib is None else mib.ctor_mask(j)

    def is_empty(self) -> bool:
        return (not any(self.cst.values())
                and not any(m.param_mask or any(m.ctor_masks) for m in self.ind.values()))

    def to_json(self) -> dict:
        return {
            "constants": {k: list(v) for k, v in sorted(self.cst.items()) if v},
            "inductives": {
                k: {"params": list(m.param_mask), "ctors": [list(c) for c in m.ctor_masks]}
                for k, m in sorted(self.ind.items())
                if m.param_mask or any(m.ctor_masks)
            },
        }


EMPTY_MASKS = Masks()


def compose_masks(first: Masks, second: Masks) -> Masks:
    cst = {k: compose(first.const_mask(k), second.const_mask(k))
           for k in set(first.cst) | set(second.cst)}
    ind = {}
    for k in set(first.ind) | set(second.ind):
        a, b = first.ind.get(k), second.ind.get(k)
        if a is None or b is None:
            ind[k] = a or b
            continue
        n = max(len(a.ctor_masks), len(b.ctor_masks))
        ctors = tuple(compose(a.ctor_masks[j] if j < len(a.ctor_masks) else (),
                              b.ctor_masks[j] if j < len(b.ctor_masks) else ()) for j in range(n))
        ind[k] = MibMask(a.npars, compose(a.param_mask, b.param_mask), ctors)
    return Masks(ind, cst)
