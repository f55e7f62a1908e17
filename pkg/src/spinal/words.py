"""Finite words and eventually periodic infinite words over X = {0, ..., d-1}.

Finite words are plain tuples of ints.  Infinite words are restricted to
eventually periodic ones, stored as a canonical pair ``u(v)`` meaning
``u v v v ...``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import lcm
from typing import Hashable, Optional, Sequence, Tuple

Word = Tuple[int, ...]


def primitive_root(v: Sequence[Hashable]) -> tuple:
    """Shortest p such that v == p * k for some k."""
    v = tuple(v)
    n = len(v)
    for p in range(1, n + 1):
        if n % p == 0 and v[:p] * (n // p) == v:
            return v[:p]
    return v


def reduce_periodic(u: Sequence[Hashable], v: Sequence[Hashable]) -> tuple[tuple, tuple]:
    """Canonical (preperiod, period) of the sequence u v v v ...

    Works for any hashable symbols; used for letters and for epimorphisms.
    """
    if not v:
        raise ValueError("period must be nonempty")
    u = tuple(u)
    v = primitive_root(v)
    while u and u[-1] == v[-1]:
        u = u[:-1]
        v = v[-1:] + v[:-1]
    return u, v


@dataclass(frozen=True, order=True)
class BoundaryPoint:
    """The infinite word u v v v ..., always in canonical form.

    Build through :func:`canonicalize` or :func:`parse_point`; the
    constructor does not reduce its input.
    """

    u: Word
    v: Word

    def __str__(self) -> str:
        return format_point(self)

    def letter(self, n: int) -> int:
        return letter_at(self, n)

    def prefix(self, n: int) -> Word:
        return prefix(self, n)

    def unrolled(self, n: int) -> Word:
        """Preperiod extended with whole periods until it has length >= n."""
        u = self.u
        while len(u) < n:
            u = u + self.v
        return u

    @property
    def horizon(self) -> int:
        return len(self.u) + len(self.v)


def canonicalize(u: Sequence[int], v: Sequence[int]) -> BoundaryPoint:
    cu, cv = reduce_periodic(tuple(int(x) for x in u), tuple(int(x) for x in v))
    return BoundaryPoint(cu, cv)


def constant(letter: int) -> BoundaryPoint:
    return BoundaryPoint((), (letter,))


def letter_at(xi: BoundaryPoint, n: int) -> int:
    if n < 0:
        raise IndexError(n)
    if n < len(xi.u):
        return xi.u[n]
    return xi.v[(n - len(xi.u)) % len(xi.v)]


def prefix(xi: BoundaryPoint, n: int) -> Word:
    return tuple(letter_at(xi, i) for i in range(n))


def shift(xi: BoundaryPoint, k: int = 1) -> BoundaryPoint:
    if k < 0:
        raise ValueError("shift amount must be >= 0")
    if k <= len(xi.u):
        return BoundaryPoint(xi.u[k:], xi.v)
    r = (k - len(xi.u)) % len(xi.v)
    return BoundaryPoint((), xi.v[r:] + xi.v[:r])


def prepend(w: Sequence[int], xi: BoundaryPoint) -> BoundaryPoint:
    """The point w xi."""
    return canonicalize(tuple(w) + xi.u, xi.v)


def replace_letter(xi: BoundaryPoint, n: int, letter: int) -> BoundaryPoint:
    u = list(xi.unrolled(n + 1))
    u[n] = letter
    return canonicalize(u, xi.v)


def discrepancy(xi: BoundaryPoint, eta: BoundaryPoint) -> Optional[int]:
    """min{s : shift(xi, s) == shift(eta, s)}, or None when not cofinal."""
    k = max(len(xi.u), len(eta.u))
    span = lcm(len(xi.v), len(eta.v))
    for n in range(k, k + span):
        if letter_at(xi, n) != letter_at(eta, n):
            return None
    r = k
    while r > 0 and letter_at(xi, r - 1) == letter_at(eta, r - 1):
        r -= 1
    return r


def is_cofinal(xi: BoundaryPoint, eta: BoundaryPoint) -> bool:
    return discrepancy(xi, eta) is not None


def is_cofinal_with_constant(xi: BoundaryPoint, letter: int) -> bool:
    return xi.v == (letter,)


# -- text format ------------------------------------------------------------

def _split_letters(text: str, comma: bool) -> list[int]:
    if not text:
        return []
    if comma:
        return [int(t) for t in text.split(",") if t != ""]
    return [int(c) for c in text]


def format_word(w: Sequence[int], d: Optional[int] = None) -> str:
    if (d is not None and d > 10) or any(x >= 10 for x in w):
        return ",".join(str(x) for x in w)
    return "".join(str(x) for x in w)


def parse_word(text: str, d: int) -> Word:
    text = re.sub(r"\s+", "", text)
    letters = tuple(_split_letters(text, d > 10))
    _check_letters(letters, d)
    return letters


def format_point(xi: BoundaryPoint, d: Optional[int] = None) -> str:
    return f"{format_word(xi.u, d)}({format_word(xi.v, d)})"


_POINT_RE = re.compile(r"^([0-9,]*)\(([0-9,]+)\)$")


def parse_point(text: str, d: int) -> BoundaryPoint:
    """Parse ``u(v)``; letters are digits for d <= 10, comma lists otherwise."""
    s = re.sub(r"\s+", "", text)
    match = _POINT_RE.match(s)
    if not match:
        raise ValueError(f"cannot parse boundary point {text!r}")
    comma = d > 10
    if not comma and "," in s:
        raise ValueError(f"unexpected ',' in {text!r} for d={d}")
    u = _split_letters(match.group(1).rstrip(","), comma)
    v = _split_letters(match.group(2), comma)
    if not v:
        raise ValueError(f"empty period in {text!r}")
    _check_letters(u + v, d)
    return canonicalize(u, v)


def _check_letters(letters: Sequence[int], d: int) -> None:
    for x in letters:
        if not 0 <= x < d:
            raise ValueError(f"letter {x} outside alphabet of size {d}")
