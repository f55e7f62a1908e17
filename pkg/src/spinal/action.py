"""Action of the spinal generators on levels X^n and on boundary points."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence, Union

from .algebra import BElement, ParameterError, SpinalGroup, eval_epi, kernel
from .words import BoundaryPoint, canonicalize, letter_at, replace_letter


@dataclass(frozen=True, order=True)
class RotA:
    """The rotation a^j, 1 <= j <= d-1."""

    j: int

    def __str__(self) -> str:
        return f"a^{self.j}"


@dataclass(frozen=True, order=True)
class SpinalB:
    """The spinal automorphism b_omega for a nonzero b in B."""

    b: BElement

    def __str__(self) -> str:
        return "b=(" + ",".join(map(str, self.b)) + ")"


GeneratorLabel = Union[RotA, SpinalB]


def parse_label(text: str) -> GeneratorLabel:
    s = text.strip()
    m = re.fullmatch(r"a\^(\d+)", s)
    if m:
        return RotA(int(m.group(1)))
    m = re.fullmatch(r"b=\(([\d,\s]+)\)", s)
    if m:
        return SpinalB(tuple(int(t) for t in m.group(1).split(",")))
    raise ValueError(f"cannot parse generator label {text!r}")


def is_b(s: GeneratorLabel) -> bool:
    return isinstance(s, SpinalB)


def act_a(j: int, w, d: int):
    if isinstance(w, BoundaryPoint):
        return replace_letter(w, 0, (letter_at(w, 0) + j) % d)
    if not w:
        raise ParameterError("a acts on nonempty words only")
    return ((w[0] + j) % d,) + tuple(w[1:])


def spine_depth(w, d: int):
    """Index r of the first letter that is not d-1, or None if there is none."""
    top = d - 1
    if isinstance(w, BoundaryPoint):
        if w.v == (top,):
            if all(x == top for x in w.u):
                return None
        r = 0
        while letter_at(w, r) == top:
            r += 1
        return r
    for r, x in enumerate(w):
        if x != top:
            return r
    return None


def moved_index(w, d: int):
    """The letter index a spinal generator may move: r+1 for a prefix (d-1)^r 0."""
    r = spine_depth(w, d)
    if r is None:
        return None, None
    if isinstance(w, BoundaryPoint):
        if letter_at(w, r) != 0:
            return None, None
    elif w[r] != 0 or r + 1 >= len(w):
        return None, None
    return r, r + 1


def act_b(b: Sequence[int], group: SpinalGroup, w):
    b = tuple(b)
    if len(b) != group.m:
        raise ParameterError(f"b must have {group.m} coordinates")
    if not any(x % group.d for x in b):
        raise ParameterError("b must be nonzero")
    d = group.d
    r, idx = moved_index(w, d)
    if r is None:
        return w
    j = eval_epi(group.omega[r], b)
    if j == 0:
        return w
    if isinstance(w, BoundaryPoint):
        return replace_letter(w, idx, (letter_at(w, idx) + j) % d)
    w = tuple(w)
    return w[:idx] + ((w[idx] + j) % d,) + w[idx + 1:]


def act(s: GeneratorLabel, group: SpinalGroup, w):
    if isinstance(s, RotA):
        if not 1 <= s.j < group.d:
            raise ParameterError(f"a^{s.j} is not a generator for d={group.d}")
        return act_a(s.j, w, group.d)
    if isinstance(s, SpinalB):
        return act_b(s.b, group, w)
    raise TypeError(f"not a generator label: {s!r}")


def fixed_by(b: Sequence[int], xi: BoundaryPoint, group: SpinalGroup) -> bool:
    r, _ = moved_index(xi, group.d)
    if r is None:
        return True
    return tuple(b) in kernel(group.omega[r])


def fixed_by_B(xi: BoundaryPoint, group: SpinalGroup) -> bool:
    """True unless xi = (d-1)^r 0 ..., the only shape a spinal generator moves.

    Every omega_r is onto, so such a point is moved by some b.
    """
    r, _ = moved_index(xi, group.d)
    return r is None


def apply_word(word: Sequence[GeneratorLabel], group: SpinalGroup, w):
    """Apply generators left to right (first element acts first)."""
    for s in word:
        w = act(s, group, w)
    return w


def spine(d: int) -> BoundaryPoint:
    return canonicalize((), (d - 1,))
