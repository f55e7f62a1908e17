"""The groups A = Z/d and B = (Z/d)^m, epimorphisms B -> A and the
sequences omega that define a spinal group.

Elements of B are tuples of residues.  An epimorphism is stored as the
linear form ``b -> sum(c_i * b_i) mod d``; every homomorphism
(Z/d)^m -> Z/d has this shape.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property, reduce
from math import gcd
from typing import Iterator, Mapping, Optional, Sequence

from .words import reduce_periodic

GUARD = 10**6

BElement = tuple[int, ...]


class SpinalError(Exception):
    """Base class for domain errors raised by this package."""


class ParameterError(SpinalError, ValueError):
    pass


class InvalidOmega(SpinalError, ValueError):
    """The kernel condition fails; ``index`` is the smallest failing i."""

    def __init__(self, index: int):
        super().__init__(f"kernel intersection over j >= {index} is nontrivial")
        self.index = index


class Unsupported(SpinalError):
    pass


@dataclass(frozen=True)
class Params:
    d: int
    m: int

    def __post_init__(self):
        if self.d < 2:
            raise ParameterError(f"d must be >= 2, got {self.d}")
        if self.m < 1:
            raise ParameterError(f"m must be >= 1, got {self.m}")
        if self.d**self.m > GUARD:
            raise ParameterError(f"d^m = {self.d ** self.m} exceeds {GUARD}")

    def elements(self) -> Iterator[BElement]:
        """All of B, in lexicographic order."""
        return itertools.product(range(self.d), repeat=self.m)

    def nonzero_elements(self) -> list[BElement]:
        return [b for b in self.elements() if any(b)]

    @property
    def zero(self) -> BElement:
        return (0,) * self.m


def b_element(params: Params, coords: Sequence[int]) -> BElement:
    if len(coords) != params.m:
        raise ParameterError(f"expected {params.m} coordinates, got {len(coords)}")
    return tuple(int(c) % params.d for c in coords)


@dataclass(frozen=True, order=True)
class Epimorphism:
    d: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(c) % self.d for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if not coeffs:
            raise ParameterError("epimorphism needs at least one coefficient")
        if reduce(gcd, coeffs, self.d) != 1:
            raise ParameterError(f"{coeffs} is not surjective onto Z/{self.d}")

    @property
    def m(self) -> int:
        return len(self.coeffs)

    def __call__(self, b: Sequence[int]) -> int:
        return eval_epi(self, b)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.coeffs)) + ")"


def eval_epi(pi: Epimorphism, b: Sequence[int]) -> int:
    if len(b) != len(pi.coeffs):
        raise ParameterError(f"length mismatch: {len(b)} vs {len(pi.coeffs)}")
    return sum(c * x for c, x in zip(pi.coeffs, b)) % pi.d


def kernel(pi: Epimorphism) -> frozenset[BElement]:
    params = Params(pi.d, pi.m)
    return frozenset(b for b in params.elements() if eval_epi(pi, b) == 0)


@dataclass(frozen=True)
class OmegaSequence:
    """omega = pre + per + per + ...; kept in canonical eventually periodic form."""

    preperiod: tuple[Epimorphism, ...]
    period: tuple[Epimorphism, ...]

    def __getitem__(self, n: int) -> Epimorphism:
        if n < 0:
            raise IndexError(n)
        if n < len(self.preperiod):
            return self.preperiod[n]
        return self.period[(n - len(self.preperiod)) % len(self.period)]

    def distinct_recurrent(self) -> set[Epimorphism]:
        return set(self.period)


def _intersection_trivial(params: Params, epis: Sequence[Epimorphism]) -> bool:
    for b in params.elements():
        if any(b) and all(eval_epi(p, b) == 0 for p in epis):
            return False
    return True


def validate_omega(params: Params, pre: Sequence[Epimorphism],
                   per: Sequence[Epimorphism]) -> OmegaSequence:
    """Check the kernel condition and return the canonical sequence.

    Raises InvalidOmega carrying the smallest i for which the kernels of
    omega_j, j >= i, intersect nontrivially.
    """
    if not per:
        raise ParameterError("period must be nonempty")
    for p in itertools.chain(pre, per):
        if p.d != params.d or p.m != params.m:
            raise ParameterError(f"epimorphism {p} does not match {params}")
    pre, per = tuple(pre), tuple(per)
    # i beyond len(pre) sees the same tail set as i = len(pre)
    for i in range(len(pre) + len(per)):
        tail = pre[i:] + per
        if not _intersection_trivial(params, tail):
            raise InvalidOmega(i)
    cpre, cper = reduce_periodic(pre, per)
    return OmegaSequence(cpre, cper)


def shift_omega(omega: OmegaSequence) -> OmegaSequence:
    if omega.preperiod:
        pre, per = omega.preperiod[1:], omega.period
    else:
        pre, per = (), omega.period[1:] + omega.period[:1]
    cpre, cper = reduce_periodic(pre, per)
    return OmegaSequence(cpre, cper)


@dataclass(frozen=True)
class SpinalGroup:
    params: Params
    omega: OmegaSequence
    name: str = field(default="", compare=False)

    @property
    def d(self) -> int:
        return self.params.d

    @property
    def m(self) -> int:
        return self.params.m

    def omega_at(self, n: int) -> Epimorphism:
        return self.omega[n]

    @cached_property
    def generators(self) -> tuple:
        """S = A u B minus the identity: a^1..a^(d-1), then nonzero b in lex order."""
        from .action import RotA, SpinalB
        return tuple([RotA(j) for j in range(1, self.d)]
                     + [SpinalB(b) for b in self.params.nonzero_elements()])

    def spec_string(self) -> str:
        return format_group_spec(self)

    def __str__(self) -> str:
        return self.name or self.spec_string()


def make_group(d: int, m: int, pre: Sequence[Sequence[int]],
               per: Sequence[Sequence[int]], name: str = "") -> SpinalGroup:
    params = Params(d, m)
    pre_e = [Epimorphism(d, tuple(c)) for c in pre]
    per_e = [Epimorphism(d, tuple(c)) for c in per]
    for e in pre_e + per_e:
        if e.m != m:
            raise ParameterError(f"epimorphism {e} has {e.m} coefficients, expected {m}")
    return SpinalGroup(params, validate_omega(params, pre_e, per_e), name)


# -- Aut(B) and self-similarity ---------------------------------------------

def _det(mat: Sequence[Sequence[int]]) -> int:
    n = len(mat)
    if n == 1:
        return mat[0][0]
    if n == 2:
        return mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0]
    total = 0
    for j in range(n):
        if mat[0][j]:
            minor = [row[:j] + row[j + 1:] for row in mat[1:]]
            total += (-1) ** j * mat[0][j] * _det(minor)
    return total


@dataclass(frozen=True)
class AutB:
    """An automorphism of B given by an m x m matrix acting on column vectors."""

    d: int
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        mat = tuple(tuple(int(x) % self.d for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", mat)
        if any(len(row) != len(mat) for row in mat):
            raise ParameterError("matrix must be square")
        if gcd(_det(mat) % self.d, self.d) != 1:
            raise ParameterError(f"matrix {mat} is not invertible mod {self.d}")

    @property
    def m(self) -> int:
        return len(self.matrix)

    def apply(self, b: Sequence[int]) -> BElement:
        return tuple(sum(r * x for r, x in zip(row, b)) % self.d for row in self.matrix)

    def compose(self, other: "AutB") -> "AutB":
        """self o other."""
        n = self.m
        prod = tuple(tuple(sum(self.matrix[i][k] * other.matrix[k][j] for k in range(n))
                           for j in range(n)) for i in range(n))
        return AutB(self.d, prod)

    def pullback(self, pi: Epimorphism) -> Epimorphism:
        """pi o rho, as a linear form: the row vector coeffs * matrix."""
        n = self.m
        return Epimorphism(self.d, tuple(
            sum(pi.coeffs[k] * self.matrix[k][j] for k in range(n)) for j in range(n)))

    def is_identity(self) -> bool:
        return all(self.matrix[i][j] == (i == j) for i in range(self.m) for j in range(self.m))

    def order(self) -> int:
        power, k = self, 1
        while not power.is_identity():
            power, k = power.compose(self), k + 1
        return k

    def __str__(self) -> str:
        return "[" + ",".join("(" + ",".join(map(str, r)) + ")" for r in self.matrix) + "]"


def identity_aut(d: int, m: int) -> AutB:
    return AutB(d, tuple(tuple(int(i == j) for j in range(m)) for i in range(m)))


def invertible_matrices(d: int, m: int) -> Iterator[AutB]:
    if d ** (m * m) > GUARD:
        raise Unsupported(f"search over {d}^{m * m} matrices exceeds {GUARD}")
    for flat in itertools.product(range(d), repeat=m * m):
        mat = tuple(tuple(flat[i * m:(i + 1) * m]) for i in range(m))
        if gcd(_det(mat) % d, d) == 1:
            yield AutB(d, mat)


def detect_self_similar(group: SpinalGroup) -> Optional[AutB]:
    """Some rho in Aut(B) with omega_n = omega_0 o rho^n for all n, or None."""
    omega = group.omega
    horizon = len(omega.preperiod) + 2 * len(omega.period)
    for rho in invertible_matrices(group.d, group.m):
        if all(rho.pullback(omega[n]) == omega[n + 1] for n in range(horizon)):
            # omega_{L+P} = omega_L, so the recursion closes up beyond the horizon
            return rho
    return None


def sunic_sequence(alpha: Epimorphism, rho: AutB) -> tuple[tuple[Epimorphism, ...], tuple[Epimorphism, ...]]:
    """omega_i = alpha o rho^i; purely periodic since rho is invertible."""
    seq = [alpha]
    while True:
        nxt = rho.pullback(seq[-1])
        if nxt == seq[0]:
            return reduce_periodic((), seq)
        seq.append(nxt)


# -- presets ----------------------------------------------------------------

def companion(d: int, poly: Sequence[int]) -> AutB:
    """Companion matrix of the monic polynomial x^m + poly[m-1] x^(m-1) + ... + poly[0]."""
    m = len(poly)
    rows = []
    for i in range(m):
        row = [0] * m
        if i + 1 < m:
            row[i + 1] = 1
        rows.append(row)
    rows[-1] = [(-c) % d for c in poly]
    return AutB(d, tuple(tuple(r) for r in rows))


def _parse_symbols(text, p: int) -> list[tuple[int, int]]:
    if isinstance(text, str):
        items = [t for t in re.split(r"[,\s]+", text.strip()) if t]
    else:
        items = list(text)
    coeffs = []
    for item in items:
        if str(item).lower() in ("pi", "p", "*"):
            coeffs.append((0, 1))
        else:
            i = int(item)
            if not 0 <= i < p:
                raise ParameterError(f"pi_{i} is not defined for p={p}")
            coeffs.append((1, i))
    return coeffs


def _parse_vector(value) -> tuple[int, ...]:
    if isinstance(value, str):
        return tuple(int(t) for t in re.findall(r"-?\d+", value))
    return tuple(int(x) for x in value)


def _parse_matrix(value, m: int) -> tuple[tuple[int, ...], ...]:
    if isinstance(value, str):
        flat = [int(t) for t in re.findall(r"-?\d+", value)]
        if len(flat) != m * m:
            raise ParameterError(f"rho needs {m * m} entries, got {len(flat)}")
        return tuple(tuple(flat[i * m:(i + 1) * m]) for i in range(m))
    return tuple(tuple(int(x) for x in row) for row in value)


PRESETS = ("dihedral", "grigorchuk", "fabrykowski-gupta", "grigorchuk-p", "sunic")


def preset(name: str, args: Optional[Mapping[str, object]] = None) -> SpinalGroup:
    """Named spinal groups.

    grigorchuk-p takes ``p``, ``per`` and optional ``pre``: sequences over
    the symbols 0..p-1 (pi_i: b -> a, c -> a^i) and ``pi`` (b -> 1, c -> a).
    sunic takes ``p``, ``m``, ``alpha`` and either ``rho`` (row-major
    matrix) or ``poly`` (low-order-first coefficients of a monic
    polynomial, whose companion matrix is used).  Defaults: p=5, m=1,
    alpha=(1,), rho=identity.
    """
    args = dict(args or {})
    key = name.lower().replace("_", "-")
    if key == "dihedral":
        return make_group(2, 1, [], [(1,)], name="dihedral")
    if key == "grigorchuk":
        return make_group(2, 2, [], [(0, 1), (1, 0), (1, 1)], name="grigorchuk")
    if key in ("fabrykowski-gupta", "fg"):
        return make_group(3, 1, [], [(1,)], name="fabrykowski-gupta")
    if key == "grigorchuk-p":
        p = int(args.get("p", 3))
        per = _parse_symbols(args.get("per", ",".join(map(str, range(p))) + ",pi"), p)
        pre = _parse_symbols(args.get("pre", ""), p)
        return make_group(p, 2, pre, per, name=f"grigorchuk-p(p={p})")
    if key == "sunic":
        p = int(args.get("p", 5))
        m = int(args.get("m", 1))
        alpha = Epimorphism(p, _parse_vector(args.get("alpha", (0,) * (m - 1) + (1,))))
        if alpha.m != m:
            raise ParameterError(f"alpha must have {m} coefficients")
        if "poly" in args:
            rho = companion(p, _parse_vector(args["poly"]))
        else:
            rho = AutB(p, _parse_matrix(args.get("rho", identity_aut(p, m).matrix), m))
        if rho.m != m:
            raise ParameterError(f"rho must be {m} x {m}")
        pre, per = sunic_sequence(alpha, rho)
        params = Params(p, m)
        return SpinalGroup(params, validate_omega(params, pre, per), name=f"sunic(p={p},m={m})")
    raise ParameterError(f"unknown preset {name!r}; known: {', '.join(PRESETS)}")


# -- text format ------------------------------------------------------------

_SPEC_RE = re.compile(r"^d=(\d+);m=(\d+);pre=(\[.*?\]);per=(\[.*?\])$")


def _parse_epi_list(text: str) -> list[tuple[int, ...]]:
    if text == "[]":
        return []
    body = text[1:-1]
    tuples = re.findall(r"\(([^()]*)\)", body)
    if re.sub(r"\([^()]*\)", "", body).replace(",", ""):
        raise ParameterError(f"malformed epimorphism list {text!r}")
    return [tuple(int(t) for t in tup.split(",")) for tup in tuples]


def parse_group_spec(text: str) -> SpinalGroup:
    """Parse ``d=<int>;m=<int>;pre=[(..),..];per=[(..),..]``."""
    s = re.sub(r"\s+", "", text)
    match = _SPEC_RE.match(s)
    if not match:
        raise ParameterError(f"cannot parse group spec {text!r}")
    d, m = int(match.group(1)), int(match.group(2))
    pre = _parse_epi_list(match.group(3))
    per = _parse_epi_list(match.group(4))
    for c in pre + per:
        if any(not 0 <= x < d for x in c):
            raise ParameterError(f"coefficient out of range in {c}")
    return make_group(d, m, pre, per)


def format_group_spec(group: SpinalGroup) -> str:
    def epis(seq):
        return "[" + ",".join(str(e) for e in seq) + "]"
    return (f"d={group.d};m={group.m};pre={epis(group.omega.preperiod)};"
            f"per={epis(group.omega.period)}")
