"""Command-line front end: ``artifact <group> <command> [options]``.

Module labels use the grammar ``V(lam,gamma)[eps]`` for untwisted modules
(``[eps]`` only when lam = 0) and ``T(eta,i)[eps]`` for twisted ones, where
lam is a string over 0abc and gamma, eta are strings over 012, for example
``V(c,0)``, ``V(00,12)[2]`` or ``T(1,2)[0]``.

All numbers are printed exactly.  ``--format structured`` switches every
command to JSON output with numbers rendered as strings.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from . import characters, codes, fusion, lattice, twisted_rep, verify
from .codes import CodeFormatError


class _Output:
    def __init__(self, structured: bool, stream):
        self.structured = structured
        self.stream = stream

    def emit(self, lines: List[str], data: Dict):
        if self.structured:
            self.stream.write(json.dumps(data, indent=2, default=str) + "\n")
        else:
            self.stream.write("\n".join(lines) + "\n")


def _load(path: Optional[str], default):
    return codes.load_code(path) if path else default


def _series_rows(series) -> List[List[str]]:
    return [[str(e), str(c)] for e, c in series.items()]


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_codes_check(args, out: _Output) -> int:
    code = codes.load_code(args.file)
    dual = code.dual()
    dist: Dict[int, int] = {}
    for w in code.words():
        dist[codes.weight(w)] = dist.get(codes.weight(w), 0) + 1
    mw = code.min_weight()
    data = {
        "code": code.describe(),
        "dual": dual.describe(),
        "size": len(code),
        "dual_size": len(dual),
        "weight_distribution": {str(k): v for k, v in sorted(dist.items())},
        "min_weight": str(mw),
        "self_orthogonal": code.is_self_orthogonal(),
        "self_dual": code.is_self_dual(),
    }
    if code.kind == "K":
        data["even"] = code.is_even()
        data["tau_invariant"] = code.is_tau_invariant()
    lines = [f"{k.replace('_', ' ')}: {v}" for k, v in data.items()]
    out.emit(lines, data)
    return 0


def _glued(args) -> lattice.GluedLattice:
    C = _load(args.C, codes.e8_klein_code())
    D = _load(args.D, codes.tetracode())
    return lattice.GluedLattice(C, D)


def cmd_lattice_info(args, out: _Output) -> int:
    lat = _glued(args)
    data = {
        "C": lat.C.describe(),
        "D": lat.D.describe(),
        "rank": lat.rank,
        "determinant": str(lat.determinant()),
        "integral": lat.is_integral(),
        "even": lat.is_even(),
        "unimodular": lat.is_unimodular(),
    }
    out.emit([f"{k}: {v}" for k, v in data.items()], data)
    return 0


def cmd_lattice_theta(args, out: _Output) -> int:
    lat = _glued(args)
    series = lat.theta_series(Fraction(args.order))
    rows = _series_rows(series)
    lines = [f"theta of L_(C x D), rank {lat.rank}, to q^{args.order}"]
    lines += [f"q^{e}: {c}" for e, c in rows]
    out.emit(lines, {"rank": lat.rank, "order": args.order, "coefficients": rows})
    return 0


def cmd_twisted_catalog(args, out: _Output) -> int:
    D = _load(args.D, codes.Code.zero("Z3", 1))
    candidates = None if args.every_eta else D.coset_reps_in(D.dual())
    classes = twisted_rep.equivalence_classes(D, candidates, power=args.power)
    expected = len(D.dual()) // len(D)
    lines = [f"D: {D.describe()}", f"twist power: {args.power}"]
    for cls in classes:
        lines.append(f"class of {codes.z3_str(cls[0])}: " + ", ".join(codes.z3_str(e) for e in cls)
                     + f"  (dimension {len(D)})")
    lines.append(f"classes: {len(classes)}  |D^perp/D| = {expected}")
    data = {
        "D": D.describe(),
        "power": args.power,
        "classes": [[codes.z3_str(e) for e in cls] for cls in classes],
        "module_dimension": len(D),
        "count": len(classes),
        "dual_quotient_size": expected,
    }
    out.emit(lines, data)
    return 0 if len(classes) == expected else 1


def _fusion_ring(name: str, args) -> fusion.FusionRing:
    if name == "vl":
        return fusion.ring_VL()
    if name == "ll":
        return fusion.ring_Ll(args.ell)
    if name == "d":
        if not args.D:
            raise ValueError("--ring d needs --D <file>")
        return fusion.ring_D(codes.load_code(args.D))
    if name == "mt":
        return fusion.ring_Mt()
    if name == "mk":
        return fusion.ring_Mk()
    raise SystemExit(f"unknown ring {name!r}")


def cmd_fusion_mult(args, out: _Output) -> int:
    a, b = characters.parse_label(args.a), characters.parse_label(args.b)
    if args.ring == "vl":
        prod = fusion.fuse_VL(a, b)
    elif args.ring == "ll":
        prod = fusion.fuse_Ll(len(a.lam) if not a.is_twisted else len(a.eta), a, b)
    else:
        if not args.D:
            raise ValueError("--ring d needs --D <file>")
        prod = fusion.fuse_D(codes.load_code(args.D), a, b)
    text = "UNDEFINED" if prod is fusion.UNDEFINED else str(prod)
    out.emit([f"{a} x {b} = {text}"], {"a": str(a), "b": str(b), "product": text})
    return 0


def cmd_fusion_table(args, out: _Output) -> int:
    ring = _fusion_ring(args.ring, args)
    lines = ring.table()
    out.emit([f"# {ring.name}"] + lines,
             {"ring": ring.name, "labels": [str(x) for x in ring.labels], "products": lines})
    return 0


def cmd_char_module(args, out: _Output) -> int:
    label = characters.parse_label(args.label)
    D = codes.load_code(args.D) if args.D else None
    rep = characters.char_report(label, Fraction(args.order), D)
    rows = _series_rows(rep.series)
    lines = [f"{label}: lowest weight {rep.lowest_weight}"] + [f"q^{e}: {c}" for e, c in rows]
    out.emit(lines, {"label": str(label), "lowest_weight": str(rep.lowest_weight), "coefficients": rows})
    return 0


def cmd_char_decompose(args, out: _Output) -> int:
    D = codes.load_code(args.D) if args.D else codes.Code.zero("Z3", len(args.eta))
    eta = characters.b_to_word(args.eta)
    rep = characters.verify_twisted_decomposition(D, eta, args.power, Fraction(args.order))
    lines = [str(rep)]
    data = {
        "ok": rep.ok,
        "checks": [[name, ok] for name, ok in rep.checks],
        "mismatches": [[str(x) for x in m] for m in rep.mismatches],
    }
    out.emit(lines, data)
    return 0 if rep.ok else 1


def cmd_verify_all(args, out: _Output) -> int:
    reports = verify.run_suite(args.ell, engine=not args.no_engine)
    ok = all(r.ok for r in reports)
    lines = [str(r) for r in reports] + [f"{'ALL PASS' if ok else 'FAILURES'}: {len(reports)} checks"]
    data = [
        {
            "name": r.name,
            "anchor": r.anchor,
            "ok": r.ok,
            "instances_checked": r.instances_checked,
            "failures": [str(f) for f in r.failures],
        }
        for r in reports
    ]
    out.emit(lines, {"ok": ok, "reports": data})
    return 0 if ok else 1


def cmd_ops_tables(args, out: _Output) -> int:
    from .fock import TwistedEngine, twelve_identities

    D = codes.Code.zero("Z3", 1)
    lines, data, ok = [], [], True
    for power in (1, 2):
        for eta in range(3):
            engine = TwistedEngine(D, (eta,), power)
            for op, state, good in twelve_identities(engine, 0, (0,)):
                ok &= good
                lines.append(f"{'ok ' if good else 'BAD'} power {power} eta {eta}: {op} on {state}")
                data.append({"power": power, "eta": eta, "operator": op, "state": state, "ok": good})
    lines.append("ALL PASS" if ok else "FAILURES")
    out.emit(lines, {"ok": ok, "identities": data})
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="artifact",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--format", choices=("text", "structured"), default="text")
    groups = parser.add_subparsers(dest="group", required=True)

    g = groups.add_parser("codes", help="code utilities").add_subparsers(dest="command", required=True)
    p = g.add_parser("check", help="dual, weights, self-duality, tau-invariance")
    p.add_argument("file")
    p.set_defaults(func=cmd_codes_check)

    g = groups.add_parser("lattice", help="glued lattices").add_subparsers(dest="command", required=True)
    for name, func, helptext in (
        ("info", cmd_lattice_info, "rank, determinant, parity"),
        ("theta", cmd_lattice_theta, "theta series coefficients"),
    ):
        p = g.add_parser(name, help=helptext + " (defaults: the E8 codes)")
        p.add_argument("--C", help="K-code file")
        p.add_argument("--D", help="Z3-code file")
        if name == "theta":
            p.add_argument("--order", default="3", help="largest exponent (rational)")
        p.set_defaults(func=func)

    g = groups.add_parser("twisted", help="twisted representations").add_subparsers(dest="command", required=True)
    p = g.add_parser("catalog", help="classes of psi_eta and their count")
    p.add_argument("--D", help="Z3-code file (default: zero code of length 1)")
    p.add_argument("--power", type=int, choices=(1, 2), default=1)
    p.add_argument("--every-eta", action="store_true",
                   help="partition all of D^perp instead of one eta per coset of D")
    p.set_defaults(func=cmd_twisted_catalog)

    g = groups.add_parser("fusion", help="fusion rules").add_subparsers(dest="command", required=True)
    p = g.add_parser("mult", help="product of two module labels")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--ring", choices=("vl", "ll", "d"), default="vl")
    p.add_argument("--D", help="Z3-code file for --ring d")
    p.set_defaults(func=cmd_fusion_mult)
    p = g.add_parser("table", help="full multiplication table, one product per line")
    p.add_argument("--ring", choices=("vl", "ll", "d", "mt", "mk"), default="vl")
    p.add_argument("--ell", type=int, default=1)
    p.add_argument("--D", help="Z3-code file for --ring d")
    p.set_defaults(func=cmd_fusion_table)

    g = groups.add_parser("char", help="characters").add_subparsers(dest="command", required=True)
    p = g.add_parser("module", help="character of one module")
    p.add_argument("label")
    p.add_argument("--order", default="2")
    p.add_argument("--D", help="Z3-code file (twisted labels over a code D)")
    p.set_defaults(func=cmd_char_module)
    p = g.add_parser("decompose", help="twisted character as a sum of single-site products")
    p.add_argument("--D", help="Z3-code file (default: zero code)")
    p.add_argument("--eta", required=True, help="word over 012 in D^perp")
    p.add_argument("--power", type=int, choices=(1, 2), default=1)
    p.add_argument("--order", default="2")
    p.set_defaults(func=cmd_char_decompose)

    g = groups.add_parser("verify", help="brute-force checks").add_subparsers(dest="command", required=True)
    p = g.add_parser("all", help="run the default check suite")
    p.add_argument("--ell", type=int, default=4, choices=(2, 4, 6))
    p.add_argument("--no-engine", action="store_true", help="skip the vertex-operator cross-check")
    p.set_defaults(func=cmd_verify_all)

    g = groups.add_parser("ops", help="twisted vertex operators").add_subparsers(dest="command", required=True)
    p = g.add_parser("tables", help="the twelve action identities, both twists")
    p.set_defaults(func=cmd_ops_tables)
    return parser


def run(argv: Optional[Sequence[str]] = None, stream=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = _Output(args.format == "structured", stream or sys.stdout)
    try:
        return args.func(args, out)
    except CodeFormatError as exc:
        sys.stderr.write(f"artifact: code file error: {exc}\n")
    except (ValueError, OSError) as exc:
        sys.stderr.write(f"artifact: {exc}\n")
    return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
