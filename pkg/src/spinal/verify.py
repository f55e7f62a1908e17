"""Cross-checks between the constructions and their brute-force oracles.

Each check returns a list of :class:`Check` results so the CLI and the
test-suite can share them.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from .action import fixed_by_B
from .algebra import detect_self_similar, make_group, preset
from .boundary import (ball, delta, ends_class, limit_ball, stabilized_annulus,
                       verify_ball_identities)
from .graph import diameter, equal_labeled, gamma_direct, gamma_prime, gamma_recursive
from .isomorphism import (compatible, iso_labeled_rooted, iso_unlabeled_rooted, ISO_GUARD,
                          verify_phi_ball, zero_blocks, y_class)
from .words import BoundaryPoint, canonicalize, prefix, shift


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name}" + (f" ({self.detail})" if self.detail else "")


# presets paired with the largest level used by the recursion / diameter checks
LEVEL_CASES = [("dihedral", {}, 10), ("grigorchuk", {}, 8),
               ("fabrykowski-gupta", {}, 6), ("sunic", {"p": 5, "m": 1}, 4)]

SUNIC_CASES = [
    {"p": 5, "m": 1},
    {"p": 3, "m": 1, "alpha": "(2)"},
    {"p": 2, "m": 2, "poly": "(1,1)"},
    {"p": 3, "m": 2, "poly": "(1,1)"},
    {"p": 2, "m": 3, "poly": "(1,1,0)"},
]


def random_point(rng: random.Random, d: int, max_pre: int = 3, max_per: int = 3) -> BoundaryPoint:
    u = [rng.randrange(d) for _ in range(rng.randint(0, max_pre))]
    v = [rng.randrange(d) for _ in range(rng.randint(1, max_per))]
    return canonicalize(u, v)


def compatible_partner(rng: random.Random, xi: BoundaryPoint, d: int) -> BoundaryPoint:
    """A random point with the same zero positions and block classes as xi."""
    top = d - 1

    def redraw(w):
        k = y_class(w, d)
        body = len(w) - k
        if body == 0:
            return w
        head = [rng.randrange(1, d) for _ in range(body - 1)]
        last = rng.randrange(1, d - 1) if d > 2 else top
        return tuple(head) + (last,) + (top,) * k

    dec = zero_blocks(xi)
    head = [x for w in dec.pre for x in redraw(w) + (0,)]
    if dec.tail is not None:
        # letters of an infinite block are free apart from being nonzero
        tail = dec.tail
        u = [rng.randrange(1, d) if x else 0 for x in tail.u]
        v = [rng.randrange(1, d) if x else 0 for x in tail.v]
        return canonicalize(head + u, v)
    per = [x for w in dec.per for x in redraw(w) + (0,)]
    return canonicalize(head, per)


def check_recursion(cases=LEVEL_CASES) -> list[Check]:
    out = []
    for name, args, top in cases:
        group = preset(name, args)
        bad = [n for n in range(1, top + 1)
               if not equal_labeled(gamma_direct(group, n), gamma_recursive(group, n))]
        out.append(Check(f"recursion {name} n<={top}", not bad, f"failing levels {bad}" if bad else ""))
    return out


def check_diameter(cases=LEVEL_CASES) -> list[Check]:
    out = []
    for name, args, top in cases:
        group = preset(name, args)
        bad = [(n, diameter(gamma_direct(group, n))) for n in range(1, top + 1)
               if diameter(gamma_direct(group, n)) != 2**n - 1]
        out.append(Check(f"diameter {name} n<={top}", not bad, str(bad) if bad else ""))
    return out


def check_delta_copies(rng: random.Random, samples: int = 20, max_n: int = 5) -> list[Check]:
    out = []
    for name, args, _ in LEVEL_CASES:
        group = preset(name, args)
        bad = []
        for _ in range(samples):
            xi = random_point(rng, group.d)
            for n in range(1, max_n + 1):
                copy = delta(group, xi, n).graph.relabel(lambda p, n=n: prefix(p, n))
                if not equal_labeled(copy, gamma_prime(group, n, fixed_by_B(shift(xi, n), group))):
                    bad.append((str(xi), n))
        out.append(Check(f"delta copies {name}", not bad, str(bad[:3]) if bad else ""))
    return out


def check_ball_identities(rng: random.Random, samples: int = 10, max_n: int = 4) -> list[Check]:
    out = []
    for name, args, _ in LEVEL_CASES:
        group = preset(name, args)
        bad = []
        for _ in range(samples):
            xi = random_point(rng, group.d)
            bad += [(str(xi), n) for n in range(max_n + 1)
                    if not verify_ball_identities(group, xi, n)]
        out.append(Check(f"ball identities {name}", not bad, str(bad[:3]) if bad else ""))
    return out


def check_ends(rng: random.Random, samples: int = 20, r: int = 3) -> list[Check]:
    fg = preset("fabrykowski-gupta")
    out = [Check("ends (2) is one-ended in FG", int(ends_class(fg, canonicalize((), (2,)))) == 1),
           Check("ends (0) is two-ended in FG", int(ends_class(fg, canonicalize((), (0,)))) == 2)]
    groups = {2: preset("grigorchuk"), 3: fg, 5: preset("sunic")}
    bad = []
    for i in range(samples):
        d = (2, 3, 5)[i % 3]
        group = groups[d]
        xi = random_point(rng, d, 2, 2)
        if rng.random() < 0.5:
            # bias towards two-ended tails
            xi = canonicalize(xi.u, [rng.choice((0, d - 1)) for _ in xi.v])
        got = stabilized_annulus(group, xi, r)
        if got != int(ends_class(group, xi)):
            bad.append((d, str(xi), got))
    out.append(Check(f"annulus agrees with ends class on {samples} points", not bad, str(bad) if bad else ""))
    return out


def _incompatible_detected(group, xi, eta, max_r: int = 31) -> Optional[int]:
    """Smallest radius at which the unlabeled oracle separates the balls."""
    for r in range(1, max_r + 1):
        b1, b2 = ball(group, xi, r), ball(group, eta, r)
        if len(b1) != len(b2):
            return r
        if max(len(b1), len(b2)) > ISO_GUARD:
            return None
        if iso_unlabeled_rooted(b1, b2) is None:
            return r
    return None


def check_isomorphism(rng: random.Random, pairs: int = 100,
                      radii: Iterable[int] = (7, 15, 31)) -> list[Check]:
    groups = {3: preset("fabrykowski-gupta"), 5: preset("sunic")}
    disagreements = []
    n_compat = n_incompat = n_skipped = 0
    for i in range(pairs):
        d = (3, 5)[i % 2]
        group = groups[d]
        xi = random_point(rng, d, 2, 2)
        eta = compatible_partner(rng, xi, d) if rng.random() < 0.5 else random_point(rng, d, 2, 2)
        verdict = compatible(xi, eta, d)
        if verdict:
            n_compat += 1
            for r in radii:
                if not verify_phi_ball(group, xi, eta, r):
                    disagreements.append(("phi", str(xi), str(eta), r))
        elif verdict.witness_position <= 2:
            n_incompat += 1
            if _incompatible_detected(group, xi, eta) is None:
                disagreements.append(("oracle", str(xi), str(eta)))
        else:
            n_skipped += 1
    detail = f"{n_compat} compatible, {n_incompat} incompatible, {n_skipped} deep differences skipped"
    if disagreements:
        detail += f"; {disagreements[:3]}"
    return [Check(f"isomorphism equivalence on {pairs} pairs", not disagreements, detail)]


def check_common_prefix(rng: random.Random, pairs: int = 60,
                        radii: Iterable[int] = (4, 8, 16)) -> list[Check]:
    """Labeled-isomorphic radius-r balls share a prefix of length floor(log2 r).

    Only d >= 3 is sampled: for d = 2 a reflection of the level graph gives
    counterexamples, which the second check reproduces.
    """
    groups = [preset("fabrykowski-gupta"), preset("sunic"), preset("grigorchuk-p")]
    bad, hits = [], 0
    for i in range(pairs):
        group = groups[i % 3]
        xi = random_point(rng, group.d)
        k = rng.randint(0, 5)
        rest = shift(xi, k + 1)
        eta = canonicalize(prefix(xi, k) + (rng.randrange(group.d),) + rest.u, rest.v)
        for r in radii:
            if iso_labeled_rooted(ball(group, xi, r), ball(group, eta, r)) is not None:
                hits += 1
                k = int(math.log2(r))
                if prefix(xi, k) != prefix(eta, k):
                    bad.append((str(xi), str(eta), r))
    grig = preset("grigorchuk")
    xi, eta = canonicalize((0, 0), (1, 0, 1)), canonicalize((0, 0, 1, 1), (1, 1, 0))
    reflected = iso_labeled_rooted(ball(grig, xi, 16), ball(grig, eta, 16)) is not None
    return [Check("common prefix of labeled-isomorphic balls, d >= 3", not bad,
                  f"{hits} isomorphic ball pairs" + (f"; {bad[:3]}" if bad else "")),
            Check("d = 2 counterexample 00(101) vs 0011(110) at r = 16 reproduces", reflected)]


def check_limits(radius: int = 7, ks: Iterable[int] = range(5, 10)) -> list[Check]:
    group = preset("fabrykowski-gupta")
    pi = group.omega[0]
    limit = limit_ball(group, pi, radius)
    balls = [ball(group, canonicalize((2,) * k + (0,), (0,)), radius) for k in ks]
    pairwise = all(iso_labeled_rooted(balls[0], b) is not None for b in balls[1:])
    to_limit = iso_labeled_rooted(balls[0], limit) is not None
    return [Check(f"FG balls of radius {radius} at 2^k 0 (0) agree for k in {list(ks)}", pairwise),
            Check("those balls match the limit graph", to_limit)]


def check_line_structure(radius: int = 10) -> list[Check]:
    group = preset("grigorchuk")
    b = ball(group, canonicalize((), (0,)), radius)
    g, dist = b.graph, b.distances
    bad = []
    for v, r in dist.items():
        if r == radius:
            continue
        loops = sum(1 for dst, _ in g.out_edges[v] if dst == v)
        mult = sorted(sum(1 for dst, _ in g.out_edges[v] if dst == w) for w in g.neighbors[v])
        if loops != 1 or mult != [1, 2]:
            bad.append((str(g.vertices[v]), loops, mult))
    return [Check("grigorchuk line: 1 loop, 1 and 2 edges to neighbours", not bad, str(bad[:3]) if bad else "")]


def check_self_similarity() -> list[Check]:
    out = []
    for name in ("grigorchuk", "fabrykowski-gupta", "dihedral"):
        out.append(Check(f"self-similar {name}", detect_self_similar(preset(name)) is not None))
    for args in SUNIC_CASES:
        out.append(Check(f"self-similar sunic {args}", detect_self_similar(preset("sunic", args)) is not None))
    group = make_group(2, 2, [], [(0, 1), (0, 1), (1, 0), (1, 1)])
    out.append(Check("not self-similar (pi01,pi01,pi10,pi11)", detect_self_similar(group) is None))
    return out


SUITES: dict[str, Callable[[random.Random], list[Check]]] = {
    "recursion": lambda rng: check_recursion(),
    "diameter": lambda rng: check_diameter(),
    "iso": lambda rng: check_isomorphism(rng) + check_common_prefix(rng) + check_line_structure(),
    "ends": lambda rng: check_ends(rng),
    "limits": lambda rng: check_limits() + check_delta_copies(rng) + check_ball_identities(rng),
    "selfsim": lambda rng: check_self_similarity(),
}


def run_suite(name: str, seed: int = 0) -> list[Check]:
    names = list(SUITES) if name == "all" else [name]
    out = []
    for n in names:
        out += SUITES[n](random.Random(seed))
    return out
