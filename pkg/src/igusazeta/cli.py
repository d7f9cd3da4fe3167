"""Command-line front end.

Exit codes: 0 on success, 1 on bad input, 2 when a verification fails.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import asdict
from typing import List, Optional

from . import __version__, oracle
from .finite_field import CharacterSpec, FieldError, is_nondegenerate_fp, require_prime
from .lattice import Convention, LatticeError, enumerate_parallelepiped, h3_invariants, mu_profile
from .motivic import MotivicError, motivic_local_zeta, specialize
from .newton import NewtonError, NewtonPolyhedron
from .polynomial import PolynomialError, format_polynomial, parse_polynomial
from .rational import ZetaRational
from .zeta import (
    ZetaError,
    char_zeta_breakdown,
    pole_spectrum,
    verify_b1_theorem,
    zeta_breakdown,
)

EXIT_OK, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2
INPUT_ERRORS = (PolynomialError, NewtonError, FieldError, LatticeError, ZetaError, MotivicError,
                oracle.OracleError)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# --- serialization ----------------------------------------------------------------------

# Top-level JSON keys per subcommand: (always present, present only with some flags).
SCHEMA = {
    "analyze": ({"polynomial", "facets", "compact_faces", "candidate_poles"}, set()),
    "zeta": ({"polynomial", "mode", "zeta", "poles", "faces"}, {"symbols", "series_check"}),
    "char-zeta": ({"polynomial", "prime", "character_order", "primitive_root", "zeta", "poles", "faces"}, set()),
    "motivic": ({"polynomial", "zeta", "symbols"}, {"specialized"}),
    "fundpar": ({"generators", "convention", "mu", "points"}, {"mu_profile", "h3_invariants"}),
    "verify": ({"ok", "checks"}, set()),
}
ZETA_KEYS = {"variable", "text", "numerator", "denominator"}
FACTOR_KEYS = {"factor", "multiplicity", "m", "sigma", "d", "coefficients"}


def check_schema(command: str, payload: dict) -> None:
    """Raise ValueError when ``payload`` does not follow the documented layout."""
    required, optional = SCHEMA[command]
    keys = set(payload)
    if not required <= keys or keys - required - optional:
        raise ValueError("%s: keys %s, expected %s (+ %s)" % (command, sorted(keys), sorted(required), sorted(optional)))
    zetas = [payload.get("zeta"), (payload.get("specialized") or {}).get("zeta")]
    for z in filter(None, zetas):
        if set(z) != ZETA_KEYS or any(set(fc) != FACTOR_KEYS for fc in z["denominator"]):
            raise ValueError("%s: malformed zeta entry" % command)


def zeta_json(Z: ZetaRational) -> dict:
    ring = Z.ring
    return {
        "variable": Z.var,
        "text": str(Z),
        "numerator": [ring.to_json(c) for c in Z.num.coeffs],
        "denominator": [
            {"factor": s, "multiplicity": e, "m": k[0], "sigma": k[1], "d": k[2],
             "coefficients": [ring.to_json(c) for c in Z.atom(k).coeffs]}
            for (s, e), k in zip(Z.factor_strings(), sorted(Z.den, key=repr))
        ],
    }


def _families(np_) -> list:
    fams = {(1, 1)}
    for cp in np_.candidate_poles():
        fams.update(cp.families)
    return sorted(fams)


def pole_json(Z: ZetaRational, families=None) -> dict:
    rep = pole_spectrum(Z, families)
    return {
        "families": [
            {"m": fr.m, "sigma": fr.sigma, "survives": fr.survives,
             "factors": [{"factor": a.factor, "multiplicity": a.multiplicity} for a in fr.atoms]}
            for fr in rep.families
        ],
        "poles": [
            {"real_part": str(-s0.q), "class": str(s0.r), "order": order}
            for s0, order in sorted(rep.surviving().items(), key=lambda kv: (kv[0].q, kv[0].r))
        ],
    }


def _vec(v) -> str:
    return "(%s)" % ",".join(map(str, v))


def _emit(args, payload: dict, text_lines: List[str]) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print("\n".join(text_lines))


# --- commands ------------------------------------------------------------------------


def _poly(args):
    return parse_polynomial(args.f, args.n, require_vanishing_at_origin=True)


def cmd_analyze(args) -> int:
    f = _poly(args)
    np_ = NewtonPolyhedron(f)
    facets = []
    lines = ["f = %s" % format_polynomial(f), "", "facet  normal      m  sigma  B1"]
    for j, fc in enumerate(np_.facets):
        b1 = np_.classify_b1(j)
        facets.append({"index": j, "normal": list(fc.normal), "m": fc.m, "sigma": fc.sigma,
                       "b1": b1.kind, "b1_variables": b1.names()})
        lines.append("%-6d %-11s %-2d %-6d %s" % (j, _vec(fc.normal), fc.m, fc.sigma,
                                                  b1.kind + ("(" + ",".join(b1.names()) + ")" if b1.is_b1 else "")))
    faces = []
    lines += ["", "compact faces"]
    for face in np_.compact_faces:
        gens = np_.face_cone(face)
        faces.append({"index": face.index, "dim": face.dim, "vertices": [list(v) for v in face.vertices],
                      "cone": [list(g) for g in gens],
                      "pieces": [[list(g) for g in pc.generators] for pc in np_.cone_pieces(face)]})
        lines.append("  %-30s cone %s" % (repr(face), " ".join(_vec(g) for g in gens)))
    poles = []
    lines += ["", "candidate poles"]
    for cp in np_.candidate_poles():
        entry = {"real_part": str(cp.real_part), "families": [list(x) for x in cp.families],
                 "universal": cp.universal, "classes": []}
        lines.append("  Re s = %s  families %s" % (cp.real_part, cp.families))
        if not cp.universal:
            for s0 in np_.candidate_classes(-cp.real_part):
                hv = np_.check_theorem_hypotheses(s0)
                eo = np_.expected_order(s0)
                entry["classes"].append({"class": str(s0.r), "expected_order": eo,
                                         "hypotheses": hv.applies, "reason": hv.reason})
                lines.append("    r = %-5s expected order %d  %s" % (
                    s0.r, eo, "hypotheses hold" if hv.applies else "hypotheses fail: " + hv.reason))
        poles.append(entry)
    _emit(args, {"polynomial": format_polynomial(f), "facets": facets, "compact_faces": faces,
                 "candidate_poles": poles}, lines)
    return EXIT_OK


def _series_check(f, Z, p, lmax):
    """Compare Taylor coefficients with residue counting; returns (ok, rows)."""
    expect = oracle.series_coefficients_padic(f, p, lmax)
    got = Z.series(lmax + 1)
    rows = [{"l": l, "zeta": str(got[l]), "oracle": str(expect[l]), "equal": got[l] == expect[l]}
            for l in range(lmax + 1)]
    return all(r["equal"] for r in rows), rows


def cmd_zeta(args) -> int:
    f = _poly(args)
    if args.char_order:
        return _char(args, f)
    if args.symbolic:
        bd = zeta_breakdown(f, "symbolic")
    elif args.prime:
        bd = zeta_breakdown(f, args.prime)
    else:
        raise UsageError("give --prime p or --symbolic")
    Z = bd.zeta
    payload = {"polynomial": format_polynomial(f), "mode": "symbolic" if args.symbolic else "p=%d" % args.prime,
               "zeta": zeta_json(Z), "poles": pole_json(Z, _families(bd.polyhedron)),
               "faces": [{"face": repr(t.face), "count": bd.ring.to_json(bd.ring.coerce(t.count)),
                          "L": str(t.L), "S": str(t.S)} for t in bd.terms]}
    if bd.class_symbols:
        payload["symbols"] = {k: repr(v) for k, v in bd.class_symbols.items()}
    lines = ["Z = %s" % Z, "", "face terms"]
    lines += ["  %-30s N = %-12s L = %s\n  %30s S = %s" % (repr(t.face), bd.ring.fmt(bd.ring.coerce(t.count)),
                                                         t.L, "", t.S) for t in bd.terms]
    lines += ["", "poles"] + ["  Re s = %s, class %s: order %s" % (q["real_part"], q["class"], q["order"])
                              for q in payload["poles"]["poles"]]
    status = EXIT_OK
    if args.lmax and not args.symbolic:
        ok, rows = _series_check(f, Z, args.prime, args.lmax)
        payload["series_check"] = {"ok": ok, "rows": rows}
        lines.append("series check up to t^%d: %s" % (args.lmax, "ok" if ok else "MISMATCH"))
        status = EXIT_OK if ok else EXIT_VERIFY
    _emit(args, payload, lines)
    return status


def _char(args, f) -> int:
    if not args.prime:
        raise UsageError("a character needs --prime")
    chi = CharacterSpec(args.prime, args.char_order)
    bd = char_zeta_breakdown(f, chi)
    Z = bd.zeta
    payload = {"polynomial": format_polynomial(f), "prime": args.prime, "character_order": chi.d,
               "primitive_root": chi.g, "zeta": zeta_json(Z), "poles": pole_json(Z, _families(bd.polyhedron)),
               "faces": [{"face": repr(t.face), "character_sum": str(t.count), "L": str(t.L), "S": str(t.S)}
                         for t in bd.terms]}
    lines = ["character of order %d sending %d to z%d" % (chi.d, chi.g, chi.d), "Z = %s" % Z]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_char_zeta(args) -> int:
    if not args.char_order:
        raise UsageError("char-zeta needs --char-order")
    return _char(args, _poly(args))


def cmd_motivic(args) -> int:
    f = _poly(args)
    zm = motivic_local_zeta(f)
    payload = {"polynomial": format_polynomial(f), "zeta": zeta_json(zm.zeta),
               "symbols": {k: repr(v) for k, v in zm.symbols.items()}}
    lines = ["Z_mot = %s" % zm.zeta]
    lines += ["  %s = class of face %r" % (k, v) for k, v in zm.symbols.items()]
    if args.specialize:
        Zp = specialize(zm, args.specialize)
        payload["specialized"] = {"prime": args.specialize, "zeta": zeta_json(Zp)}
        lines.append("at p = %d: %s" % (args.specialize, Zp))
    _emit(args, payload, lines)
    return EXIT_OK


def _parse_vector(text: str):
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError("bad vector %r" % text)


def cmd_fundpar(args) -> int:
    gens = [_parse_vector(v) for v in args.vectors]
    if len({len(g) for g in gens}) != 1:
        raise UsageError("vectors of different lengths")
    conv = Convention.HIGH if args.convention == "high" else Convention.LOW
    par = enumerate_parallelepiped(gens, conv)
    payload = {"generators": [list(g) for g in gens], "convention": conv.value, "mu": par.mu,
               "points": [{"point": list(pt), "coefficients": [str(c) for c in cs]}
                          for pt, cs in zip(par.points, par.coords)]}
    lines = ["mu = %d" % par.mu]
    lines += ["  %s = %s" % (_vec(pt), " + ".join("%s*%s" % (c, _vec(g)) for c, g in zip(cs, gens) if c) or "0")
              for pt, cs in zip(par.points, par.coords)]
    if len(gens) == 3 and len(gens[0]) == 3:
        prof = asdict(mu_profile(*gens))
        inv = asdict(h3_invariants(*gens))
        payload["mu_profile"], payload["h3_invariants"] = prof, inv
        lines.append("")
        lines.append("  ".join("%s=%d" % kv for kv in prof.items()))
        lines.append("  ".join("%s=%d" % kv for kv in inv.items()))
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_verify(args) -> int:
    f = _poly(args)
    p = args.prime
    if not p:
        raise UsageError("verify needs --prime")
    checks = []
    nd = is_nondegenerate_fp(f, p)
    checks.append(("non-degenerate over F_%d" % p, nd.ok, "" if nd.ok else "witness %r" % (nd.point,)))
    if not nd.ok:
        return _report(args, checks)
    bd = zeta_breakdown(f, p, check=False)
    ok, rows = _series_check(f, bd.zeta, p, args.lmax)
    checks.append(("series agrees with residue counts up to t^%d" % args.lmax, ok,
                   "" if ok else str([r for r in rows if not r["equal"]])))
    # parallelepipeds of every piece against a box scan
    np_ = bd.polyhedron
    bad = []
    for face in np_.compact_faces:
        for pc in np_.cone_pieces(face):
            for conv in (Convention.LOW, Convention.HIGH):
                if enumerate_parallelepiped(pc.generators, conv).point_set() != \
                        oracle.brute_parallelepiped(pc.generators, conv.value):
                    bad.append((repr(face), conv.value))
    checks.append(("parallelepipeds match box scan", not bad, str(bad) if bad else ""))
    bad = [repr(face) for face in np_.compact_faces
           if not oracle.brute_cone_partition_check(np_.cone_pieces(face), args.radius, np_.face_cone(face))]
    checks.append(("cone pieces partition their cones", not bad, str(bad) if bad else ""))
    zm = specialize(motivic_local_zeta(np_), p)
    checks.append(("motivic specialization equals p-adic result", zm == bd.zeta, ""))
    rep = verify_b1_theorem(f, p, bd)
    checks.append(("no survivor among %d classes meeting the B1 hypotheses" % len(rep.applicable), rep.ok,
                   "" if rep.ok else str([str(v.candidate) for v in rep.applicable if not v.ok])))
    # random parallelepipeds, reproducible through --seed
    rng = random.Random(args.seed)
    bad = []
    for _ in range(args.samples):
        gens = _random_independent(rng)
        if enumerate_parallelepiped(gens).point_set() != oracle.brute_parallelepiped(gens):
            bad.append(gens)
    checks.append(("%d random parallelepipeds (seed %d)" % (args.samples, args.seed), not bad, str(bad) if bad else ""))
    return _report(args, checks)


def _random_independent(rng, n=3, bound=6):
    from ._linalg import rank

    while True:
        gens = [tuple(rng.randint(0, bound) for _ in range(n)) for _ in range(n)]
        if rank(gens) == n:
            return gens


def _report(args, checks) -> int:
    ok = all(c[1] for c in checks)
    payload = {"ok": ok, "checks": [{"check": name, "ok": good, "detail": detail} for name, good, detail in checks]}
    lines = ["%s  %s%s" % ("PASS" if good else "FAIL", name, ("  " + detail) if detail else "")
             for name, good, detail in checks]
    _emit(args, payload, lines)
    return EXIT_OK if ok else EXIT_VERIFY


# --- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="igusazeta", description="Local zeta functions of non-degenerate polynomials.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def common(sp, poly=True):
        if poly:
            sp.add_argument("-f", required=True, help='polynomial, e.g. "x^3+x*y+y^2+z^2"')
            sp.add_argument("--n", type=int, default=3, help="number of variables (default 3)")
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("analyze", help="Newton polyhedron, cones and candidate poles")
    common(sp)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("zeta", help="local zeta function")
    common(sp)
    sp.add_argument("--prime", type=int)
    sp.add_argument("--symbolic", action="store_true")
    sp.add_argument("--char-order", type=int, default=0)
    sp.add_argument("--lmax", type=int, default=0, help="compare the series with residue counts up to t^lmax")
    sp.set_defaults(func=cmd_zeta)

    sp = sub.add_parser("char-zeta", help="zeta function twisted by a character")
    common(sp)
    sp.add_argument("--prime", type=int, required=True)
    sp.add_argument("--char-order", type=int, default=0)
    sp.set_defaults(func=cmd_char_zeta)

    sp = sub.add_parser("motivic", help="motivic zeta function")
    common(sp)
    sp.add_argument("--specialize", type=int, metavar="P")
    sp.set_defaults(func=cmd_motivic)

    sp = sub.add_parser("fundpar", help="lattice points of a fundamental parallelepiped")
    common(sp, poly=False)
    sp.add_argument("vectors", nargs="+", help="generators such as 2,4,3")
    sp.add_argument("--convention", choices=("low", "high"), default="low")
    sp.set_defaults(func=cmd_fundpar)

    sp = sub.add_parser("verify", help="cross-check the pipeline against brute force")
    common(sp)
    sp.add_argument("--prime", type=int)
    sp.add_argument("--lmax", type=int, default=3)
    sp.add_argument("--radius", type=int, default=6)
    sp.add_argument("--samples", type=int, default=10)
    sp.set_defaults(func=cmd_verify)
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        for name in ("prime", "specialize"):
            if getattr(args, name, None) is not None:
                require_prime(getattr(args, name))
        return args.func(args)
    except UsageError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    except INPUT_ERRORS as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())
