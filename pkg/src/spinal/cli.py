"""Command-line front end.

Classification commands print a single token on stdout; ``--verbose``
adds a human-readable line.  Exit codes: 0 success, 1 domain error,
2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .algebra import (SpinalError, detect_self_similar, format_group_spec,
                      parse_group_spec, preset, validate_omega)
from .boundary import (annulus_components, ball, delta, ends_class, limit_ball,
                       sch_continuous_at)
from .graph import (diameter, equal_labeled, export, gamma_direct, gamma_recursive)
from .isomorphism import (compatible, iso_labeled_rooted, iso_unlabeled_rooted, phi,
                          unrooted_witness)
from .verify import SUITES, run_suite
from .words import format_point, parse_point


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage()}")


def _preset_args(pairs: Sequence[str]) -> dict:
    out = {}
    for item in pairs or ():
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"--arg expects key=value, got {item!r}")
        out[key.strip()] = value.strip()
    return out


def _group(ns):
    if getattr(ns, "group_spec", None):
        return parse_group_spec(ns.group_spec)
    if getattr(ns, "preset", None):
        return preset(ns.preset, _preset_args(ns.arg))
    raise UsageError("one of --preset or --group-spec is required")


def _emit(ns, data: bytes) -> None:
    if getattr(ns, "out", None):
        with open(ns.out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.write(data.decode())


def _say(ns, token, detail: Optional[str] = None) -> None:
    print(token)
    if ns.verbose and detail:
        print(detail)


# -- subcommands -------------------------------------------------------------

def cmd_gamma(ns) -> int:
    group = _group(ns)
    if ns.mode == "both":
        direct, rec = gamma_direct(group, ns.level), gamma_recursive(group, ns.level)
        same = equal_labeled(direct, rec)
        _say(ns, "equal" if same else "different",
             f"level {ns.level}: {len(direct)} vertices, diameter {diameter(direct)}")
        return 0 if same else 1
    build = gamma_recursive if ns.mode == "recursive" else gamma_direct
    _emit(ns, export(build(group, ns.level), ns.format))
    return 0


def cmd_ball(ns) -> int:
    group = _group(ns)
    _emit(ns, export(ball(group, parse_point(ns.xi, group.d), ns.radius), ns.format))
    return 0


def cmd_delta(ns) -> int:
    group = _group(ns)
    _emit(ns, export(delta(group, parse_point(ns.xi, group.d), ns.n), ns.format))
    return 0


def cmd_ends(ns) -> int:
    group = _group(ns)
    xi = parse_point(ns.xi, group.d)
    cls = ends_class(group, xi)
    cont = "continuous" if sch_continuous_at(group, xi) else "discontinuous"
    _say(ns, int(cls), f"{format_point(xi, group.d)}: {int(cls)} end(s), Sch {cont} here")
    return 0


def cmd_annulus(ns) -> int:
    group = _group(ns)
    count = annulus_components(group, parse_point(ns.xi, group.d), ns.r, ns.R)
    _say(ns, count, f"components of B({ns.R}) minus B({ns.r}) reaching the outer sphere")
    return 0


def cmd_limit(ns) -> int:
    group = _group(ns)
    period = group.omega.period
    if not 0 <= ns.pi < len(period):
        raise UsageError(f"--pi must index the period (0..{len(period) - 1})")
    _emit(ns, export(limit_ball(group, period[ns.pi], ns.radius), ns.format))
    return 0


def cmd_compat(ns) -> int:
    verdict = compatible(parse_point(ns.xi, ns.d), parse_point(ns.eta, ns.d), ns.d)
    detail = None
    if not verdict:
        detail = f"first structural difference at letter {verdict.witness_position}"
    _say(ns, verdict, detail)
    return 0


def cmd_iso(ns) -> int:
    group = _group(ns)
    xi, eta = parse_point(ns.xi, group.d), parse_point(ns.eta, group.d)
    if ns.unrooted:
        if ns.labeled:
            raise SpinalError("unrooted comparison is only available for unlabeled graphs")
        result = unrooted_witness(group, xi, eta, ns.kmax)
        _say(ns, "isomorphic" if result.point is not None else
             "not-isomorphic" if result.impossible else "unknown", str(result))
        return 0
    b1, b2 = ball(group, xi, ns.radius), ball(group, eta, ns.radius)
    oracle = iso_labeled_rooted if ns.labeled else iso_unlabeled_rooted
    found = oracle(b1, b2) is not None
    kind = "labeled" if ns.labeled else "unlabeled"
    _say(ns, "isomorphic" if found else "not-isomorphic",
         f"{kind} rooted balls of radius {ns.radius}: {len(b1)} and {len(b2)} vertices")
    return 0


def cmd_phi(ns) -> int:
    group = _group(ns)
    d = group.d
    xi, eta, point = (parse_point(t, d) for t in (ns.xi, ns.eta, ns.point))
    if not compatible(xi, eta, d):
        raise SpinalError(f"{ns.xi} and {ns.eta} are not compatible")
    print(format_point(phi(xi, eta, point), d))
    return 0


def cmd_selfsim(ns) -> int:
    rho = detect_self_similar(_group(ns))
    if rho is None:
        _say(ns, "none")
    else:
        _say(ns, ";".join(",".join(map(str, row)) for row in rho.matrix), f"order {rho.order()}")
    return 0


def cmd_validate(ns) -> int:
    group = parse_group_spec(ns.group_spec)
    validate_omega(group.params, group.omega.preperiod, group.omega.period)
    _say(ns, "valid", format_group_spec(group))
    return 0


def cmd_verify(ns) -> int:
    checks = run_suite(ns.suite, ns.seed)
    for c in checks:
        print(c.line())
    return 0 if all(c.ok for c in checks) else 1


# -- parser ------------------------------------------------------------------

def _group_flags(p) -> None:
    p.add_argument("--preset")
    p.add_argument("--arg", action="append", metavar="KEY=VALUE",
                   help="preset parameter, repeatable (e.g. --arg p=5)")
    p.add_argument("--group-spec")


def _output_flags(p) -> None:
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.add_argument("--out")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="spinal", description="Schreier graphs of spinal groups")
    parser.add_argument("--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("gamma", help="finite Schreier graph of level n")
    _group_flags(p)
    _output_flags(p)
    p.add_argument("--level", type=int, required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--recursive", dest="mode", action="store_const", const="recursive")
    mode.add_argument("--direct", dest="mode", action="store_const", const="direct")
    mode.add_argument("--both", dest="mode", action="store_const", const="both")
    p.set_defaults(func=cmd_gamma, mode="direct")

    p = sub.add_parser("ball", help="ball in an orbital Schreier graph")
    _group_flags(p)
    _output_flags(p)
    p.add_argument("--xi", required=True)
    p.add_argument("--radius", type=int, required=True)
    p.set_defaults(func=cmd_ball)

    p = sub.add_parser("delta", help="copy of level n around a boundary point")
    _group_flags(p)
    _output_flags(p)
    p.add_argument("--xi", required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_delta)

    p = sub.add_parser("ends", help="number of ends of an orbital graph")
    _group_flags(p)
    p.add_argument("--xi", required=True)
    p.set_defaults(func=cmd_ends)

    p = sub.add_parser("annulus", help="unbounded components outside a ball")
    _group_flags(p)
    p.add_argument("--xi", required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--R", type=int, required=True)
    p.set_defaults(func=cmd_annulus)

    p = sub.add_parser("limit", help="ball in a limit graph")
    _group_flags(p)
    _output_flags(p)
    p.add_argument("--pi", type=int, required=True, help="index into the period of omega")
    p.add_argument("--radius", type=int, required=True)
    p.set_defaults(func=cmd_limit)

    p = sub.add_parser("compat", help="compatibility of two boundary points")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--xi", required=True)
    p.add_argument("--eta", required=True)
    p.set_defaults(func=cmd_compat)

    p = sub.add_parser("iso", help="isomorphism test between orbital graphs")
    _group_flags(p)
    p.add_argument("--xi", required=True)
    p.add_argument("--eta", required=True)
    p.add_argument("--radius", type=int, default=7)
    p.add_argument("--kmax", type=int, default=6, help="search depth for --unrooted")
    rooted = p.add_mutually_exclusive_group()
    rooted.add_argument("--rooted", dest="unrooted", action="store_false")
    rooted.add_argument("--unrooted", dest="unrooted", action="store_true")
    lab = p.add_mutually_exclusive_group()
    lab.add_argument("--labeled", dest="labeled", action="store_true")
    lab.add_argument("--unlabeled", dest="labeled", action="store_false")
    p.set_defaults(func=cmd_iso, unrooted=False, labeled=False)

    p = sub.add_parser("phi", help="image of a point under the compatibility map")
    _group_flags(p)
    p.add_argument("--xi", required=True)
    p.add_argument("--eta", required=True)
    p.add_argument("--point", required=True)
    p.set_defaults(func=cmd_phi)

    p = sub.add_parser("selfsim", help="find rho with omega shifted = omega composed with rho")
    _group_flags(p)
    p.set_defaults(func=cmd_selfsim)

    p = sub.add_parser("validate", help="check a group spec")
    p.add_argument("--group-spec", required=True)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", choices=("all",) + tuple(SUITES), default="all")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    for action in sub.choices.values():
        action.add_argument("--verbose", action="store_true", default=argparse.SUPPRESS)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
        if ns.command is None:
            raise UsageError(parser.format_usage())
        return ns.func(ns)
    except UsageError as exc:
        print(str(exc).rstrip(), file=sys.stderr)
        return 2
    except (SpinalError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
