"""Command line front end.

Exit status: 0 on success, 1 when ``verify-feq`` finds the equation false,
2 on bad input (parse errors, invalid parameters, unsupported germs).
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from fractions import Fraction
from typing import List, Optional

from . import __version__
from .algebra import fmt_rat, format_poly
from .dmodule import verify_functional_equation
from .invariants import (
    DEFAULT_K,
    DEFAULT_L,
    InvariantError,
    candidate_bs_roots,
    candidate_jumping_numbers,
    candidate_zeta_poles,
    convergence_strip,
    lct,
)
from .multiplier import (
    StabilityWarning,
    constancy_regions,
    constraint_vector,
    mixed_constraint_vector,
    mixed_multiplier_ideal,
    multiplier_ideal,
)
from .parser import ParseError, parse_equation_data, parse_germ, parse_rational, parse_spoly
from .resolution import (
    DEFAULT_CAP,
    SCHEMA_VERSION,
    ResolutionError,
    format_table,
    from_json,
    log_resolution,
    resolve_pair,
    to_json,
)


class InputError(Exception):
    pass


def _rat(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r} ({exc.message})")


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def _positive(text: str) -> int:
    v = _nonneg(text)
    if v == 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", help="write the report to this file instead of stdout")
    common.add_argument("--blowup-cap", type=_positive, default=DEFAULT_CAP, metavar="N")

    germ = argparse.ArgumentParser(add_help=False)
    germ.add_argument("germ", nargs="?", help='meromorphic germ, e.g. "(y^3+x^5)/x"')
    germ.add_argument("--resolution", metavar="FILE", help="reuse a resolution saved by 'resolve --out'")

    p = argparse.ArgumentParser(prog="merogerm", description="Invariants of meromorphic plane germs f/g.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("resolve", parents=[common, germ], help="log resolution and divisor table")
    r.add_argument("--no-separate", action="store_true", help="skip the blow-ups separating zeros from poles")

    sub.add_parser("invariants", parents=[common, germ], help="lct, strip and candidate sets").add_argument(
        "--lambda-max", type=_rat, default=Fraction(1), metavar="Q"
    )
    sub.choices["invariants"].add_argument("--ell-max", type=_nonneg, default=DEFAULT_L, metavar="L")

    m = sub.add_parser("multiplier", parents=[common, germ], help="multiplier ideal at one lambda")
    m.add_argument("--lambda", dest="lam", type=_rat, required=True, metavar="Q")
    m.add_argument("--mixed", type=_rat, metavar="Q2", help="compute J(f^lambda g^Q2) instead")
    m.add_argument("--degree", type=_positive, metavar="D")

    j = sub.add_parser("jumping", parents=[common, germ], help="jumping numbers and constancy regions")
    j.add_argument("--lambda-max", type=_rat, default=Fraction(1), metavar="Q")
    j.add_argument("--degree", type=_positive, metavar="D")

    b = sub.add_parser("bs-candidates", parents=[common, germ], help="candidate Bernstein-Sato roots")
    b.add_argument("--ell-max", type=_nonneg, default=DEFAULT_L, metavar="L")

    z = sub.add_parser("zeta-candidates", parents=[common, germ], help="candidate poles of the zeta function")
    z.add_argument("--ell-max", type=_nonneg, default=DEFAULT_L, metavar="L")
    z.add_argument("--lattice-depth", type=_nonneg, default=DEFAULT_K, metavar="K")

    v = sub.add_parser("verify-feq", parents=[common], help="check a functional equation exactly")
    v.add_argument("--f", required=True)
    v.add_argument("--g", default="1")
    v.add_argument("--op", required=True, help='operator, e.g. "(1/4)*dx^2"')
    v.add_argument("--b", required=True, help='b(s), e.g. "(s+1)*(s+1/2)"')
    v.add_argument("--alpha", type=_rat, default=Fraction(0))
    v.add_argument("--mode", choices=("numerator", "quotient"), default="numerator")
    return p


# ---------------------------------------------------------------------------
# helpers


def _germ(args):
    if args.germ is None:
        raise InputError("a germ is required")
    return parse_germ(args.germ, require_nonconstant=True)


def _resolution(args, separate: bool = True):
    if getattr(args, "resolution", None):
        try:
            with open(args.resolution, encoding="utf-8") as fh:
                res = from_json(json.load(fh))
        except (OSError, ValueError, KeyError) as exc:
            raise InputError(f"cannot load resolution: {exc}")
        if args.germ is not None and str(_germ(args)) != str(res.germ):
            raise InputError("germ does not match the saved resolution")
        return res
    germ = _germ(args)
    if separate:
        return log_resolution(germ, args.blowup_cap)
    return resolve_pair(germ, args.blowup_cap)


def _lct_text(res, side):
    try:
        return fmt_rat(lct(res, side))
    except InvariantError:
        return None


def _envelope(command: str, payload: dict) -> dict:
    out = {"schema_version": SCHEMA_VERSION, "command": command}
    out.update(payload)
    return out


# ---------------------------------------------------------------------------
# commands; each returns (exit code, json payload, text)


def cmd_resolve(args):
    res = _resolution(args, separate=not args.no_separate)
    lines = [f"germ: {res.germ}", format_table(res), "", "edges: " + " ".join(f"E{a}-E{b}" for a, b in res.edges)]
    if res.history:
        lines.append("blow-ups:")
        for h in res.history:
            center = "+".join(f"E{c}" for c in h["center"]) or "origin"
            lines.append(f"  E{h['divisor']} at {center} ({h['stage']})")
    return 0, to_json(res), "\n".join(lines)


def cmd_invariants(args):
    res = _resolution(args)
    roots = candidate_bs_roots(res, args.ell_max)
    jn = candidate_jumping_numbers(res, args.lambda_max)
    strip = convergence_strip(res)
    payload = {
        "germ": str(res.germ),
        "lct": {"f": _lct_text(res, "f"), "g": _lct_text(res, "g")},
        "strip": strip.to_json(),
        "bs_candidates": roots.to_json(),
        "jn_candidates": [
            {"lambda": fmt_rat(t.value), "divisors": list(t.divisors)} for t in jn
        ],
    }
    lines = [
        f"germ: {res.germ}",
        f"lct(f) = {payload['lct']['f'] or 'inf'}",
        f"lct(g) = {payload['lct']['g'] or 'inf'}",
        f"convergence strip: {strip}",
        "candidate b-roots: " + (", ".join(fmt_rat(r) for r in roots.enumerated) or "none"),
        f"candidate jumping numbers <= {fmt_rat(args.lambda_max)}: "
        + (", ".join(fmt_rat(t.value) for t in jn) or "none"),
    ]
    return 0, payload, "\n".join(lines)


def cmd_multiplier(args):
    if args.lam < 0 or (args.mixed is not None and args.mixed < 0):
        raise InputError("lambda must be non-negative")
    res = _resolution(args)
    if args.mixed is None:
        cv = constraint_vector(res, args.lam)
        J = multiplier_ideal(res, args.lam, args.degree)
        what = f"J((f/g)^{fmt_rat(args.lam)})"
    else:
        cv = mixed_constraint_vector(res, args.lam, args.mixed)
        J = mixed_multiplier_ideal(res, args.lam, args.mixed, args.degree)
        what = f"J(f^{fmt_rat(args.lam)} g^{fmt_rat(args.mixed)})"
    payload = {"germ": str(res.germ), "lambda": fmt_rat(args.lam), "constraints": cv.to_json()}
    if args.mixed is not None:
        payload["lambda_g"] = fmt_rat(args.mixed)
    payload.update(J.to_json())
    text = f"{what} = {J}  [truncation {J.degree}{'' if J.stable else ', UNSTABLE'}]"
    return 0, payload, text


def cmd_jumping(args):
    if args.lambda_max <= 0:
        raise InputError("--lambda-max must be positive")
    res = _resolution(args)
    regions = constancy_regions(res, args.lambda_max, args.degree)
    payload = {
        "germ": str(res.germ),
        "lambda_max": fmt_rat(args.lambda_max),
        "jumping_numbers": [fmt_rat(r.lo) for r in regions[1:]],
        "regions": [r.to_json() for r in regions],
    }
    lines = ["jumping numbers: " + (", ".join(payload["jumping_numbers"]) or "none")]
    for r in regions:
        hi = "..." if r.hi is None else fmt_rat(r.hi)
        lines.append(f"  [{fmt_rat(r.lo)}, {hi}): {r.ideal}")
    return 0, payload, "\n".join(lines)


def cmd_bs_candidates(args):
    res = _resolution(args)
    roots = candidate_bs_roots(res, args.ell_max)
    payload = {"germ": str(res.germ)}
    payload.update(roots.to_json())
    if roots.is_empty():
        note = "no zero divisors: f is a unit, so b(s) = 1 and there are no roots"
        payload["note"] = note
        return 0, payload, note
    lines = [f"E{i}: -({fmt_rat(b)} + l*{fmt_rat(s)})" for i, b, s in roots.generators]
    lines.append("candidates: " + ", ".join(fmt_rat(r) for r in roots.enumerated))
    return 0, payload, "\n".join(lines)


def cmd_zeta_candidates(args):
    res = _resolution(args)
    try:
        rep = candidate_zeta_poles(res, args.lattice_depth, args.ell_max)
    except InvariantError as exc:
        raise InputError(str(exc))
    payload = {"germ": str(res.germ)}
    payload.update(rep.to_json())
    lines = [
        f"alpha = lct(g) = {fmt_rat(rep.alpha)}",
        f"convergence strip: {rep.strip}",
        "left candidates: " + (", ".join(fmt_rat(v) for v in rep.left) or "none"),
        "right candidates: " + (", ".join(fmt_rat(v) for v in rep.right) or "none"),
        f"note: {rep.note}",
    ]
    return 0, payload, "\n".join(lines)


def cmd_verify_feq(args):
    germ, op = parse_equation_data(args.f, args.g, args.op)
    b = parse_spoly(args.b)
    ver = verify_functional_equation(op, b, germ, args.alpha, args.mode)
    payload = {
        "f": format_poly(germ.f),
        "g": format_poly(germ.g),
        "operator": str(op),
        "b": str(b),
        "alpha": fmt_rat(args.alpha),
        "mode": args.mode,
        "holds": ver.holds,
        "witness": None if ver.witness is None else format_poly(ver.witness),
    }
    text = "holds" if ver.holds else f"fails; difference numerator: {payload['witness']}"
    return (0 if ver.holds else 1), payload, text


COMMANDS = {
    "resolve": cmd_resolve,
    "invariants": cmd_invariants,
    "multiplier": cmd_multiplier,
    "jumping": cmd_jumping,
    "bs-candidates": cmd_bs_candidates,
    "zeta-candidates": cmd_zeta_candidates,
    "verify-feq": cmd_verify_feq,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", StabilityWarning)
        try:
            code, payload, text = COMMANDS[args.command](args)
        except ParseError as exc:
            print(f"error: {exc.message} at offset {exc.offset}", file=sys.stderr)
            return 2
        except (InputError, ResolutionError, InvariantError, ValueError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
    notes = [str(w.message) for w in caught if issubclass(w.category, StabilityWarning)]
    for n in notes:
        print(f"warning: {n}", file=sys.stderr)
    if args.format == "json":
        payload = _envelope(args.command, payload) if "schema_version" not in payload else payload
        if notes:
            payload["warnings"] = notes
        body = json.dumps(payload, indent=2, ensure_ascii=False)
    else:
        body = text
    if args.out and args.command == "resolve" and args.format == "text":
        # a saved resolution is always JSON so that --resolution can reload it
        print(body)
        body = json.dumps(payload, indent=2, ensure_ascii=False)
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(body + "\n")
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
    else:
        print(body)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
