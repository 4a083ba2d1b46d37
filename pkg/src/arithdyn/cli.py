"""Command-line interface for the verification laboratory.

Subcommands
-----------
count      point counts of a variety over F_{q^n} as a CSV table
zeta       zeta-function factorization computed from a counts CSV
weil       Riemann-hypothesis check of a zeta JSON file
lefschetz  reconstruct counts from a zeta JSON and compare with a counts CSV
dyndeg     dynamical-degree report for a monomial map or a graded model
props      property-suite summary CSV for models / unit-modulus tuples
lattice    dual bases and orthogonal decompositions of a pairing file

Exit codes: 0 when every check passes (or a pure artifact was written),
1 when any check fails, 2 on an input or guard error (with a JSON
diagnostic on stderr), 3 when a check is indeterminate.

All output is deterministic: rerunning a command with the same inputs
produces byte-identical artifacts.  Floats are serialized with 15
significant digits.  ``--threads`` is accepted everywhere as a scheduling
hint; results never depend on it.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import corr, cyclelattice, dyndeg, zeta
from .counting import api as counting
from .errors import ArithdynError, InputError
from .ratlinalg import parse_rational
from .verdict import (FAIL, INDETERMINATE, PASS, Verdict, combine,
                      round_floats)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_INDETERMINATE = 3

_STATUS_EXIT = {PASS: EXIT_PASS, FAIL: EXIT_FAIL,
                INDETERMINATE: EXIT_INDETERMINATE}


# ---------------------------------------------------------------------------
# Output helpers
# ---------------------------------------------------------------------------

def _json_text(data) -> str:
    return json.dumps(round_floats(data), indent=2, sort_keys=True) + "\n"


def _write_text(out, text: str):
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _emit_error(kind: str, message: str):
    sys.stderr.write(json.dumps(
        {"error": {"kind": kind, "message": message}}, sort_keys=True) + "\n")


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"cannot read JSON file {path}: {e}") from None


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_count(args) -> int:
    v = counting.load_variety(args.variety)
    if isinstance(v, counting.HyperellipticCurve):
        cs = counting.hyperelliptic_sequence(v, args.n_max)
    else:
        cs = counting.count_sequence(v, args.n_max)
    lines = ["n,q_n,N_n"]
    for i, N in enumerate(cs.counts, start=1):
        lines.append(f"{i},{cs.q ** i},{N}")
    _write_text(args.out, "\n".join(lines) + "\n")
    return EXIT_PASS


def cmd_zeta(args) -> int:
    cs = counting.load_counts_csv(args.counts)
    z = zeta.zeta_from_counts(cs)
    _write_text(args.out, _json_text(zeta.zeta_to_json(z)))
    if any(f.weight == zeta.MIXED for f in z.factors):
        return EXIT_INDETERMINATE
    return EXIT_PASS


def cmd_weil(args) -> int:
    z = zeta.load_zeta_json(args.zeta)
    if args.tol is None:
        v = zeta.weil_check(z)
    else:
        v = zeta.weil_check(z, rel_tol=args.tol)
    _write_text(args.out, _json_text(v.to_json()))
    return _STATUS_EXIT[v.status]


def cmd_lefschetz(args) -> int:
    z = zeta.load_zeta_json(args.zeta)
    cs = counting.load_counts_csv(args.counts)
    if any(f.weight == zeta.MIXED for f in z.factors):
        v = Verdict("lefschetz", INDETERMINATE,
                    {"reason": "a mixed-weight factor blocks exact "
                               "eigenvalue reconstruction"})
    else:
        mismatches = []
        recon = []
        for n in range(1, len(cs.counts) + 1):
            r = zeta.lefschetz_reconstruct(z, n)
            recon.append(r)
            if r != cs.counts[n - 1]:
                mismatches.append(
                    {"n": n, "reconstructed": r, "counted": cs.counts[n - 1]})
        status = PASS if not mismatches else FAIL
        v = Verdict("lefschetz", status,
                    {"checked": len(cs.counts), "counted": list(cs.counts),
                     "reconstructed": recon, "mismatches": mismatches})
    _write_text(args.out, _json_text(v.to_json()))
    return _STATUS_EXIT[v.status]


def cmd_dyndeg(args) -> int:
    if args.monomial is not None:
        f = corr.load_monomial(args.monomial)
        report = dyndeg.report_for_monomial(f, n_max=args.iters)
    else:
        model = corr.load_model(args.model)
        report = dyndeg.report_for_model(model)
    checks = dyndeg.property_suite(report)
    data = dyndeg.report_to_json(report, checks)
    _write_text(args.out, _json_text(data))
    return _STATUS_EXIT[data["overall"]]


def _parse_frobenius(text: str):
    fields = {}
    for part in text.split(","):
        key, sep, val = part.partition("=")
        if not sep:
            raise InputError(
                f"bad --frobenius value {text!r}; expected q=<int>,k=<int>")
        fields[key.strip()] = val.strip()
    if set(fields) != {"q", "k"}:
        raise InputError(
            f"--frobenius needs exactly q=<int>,k=<int>, got {text!r}")
    try:
        return int(fields["q"]), int(fields["k"])
    except ValueError:
        raise InputError(
            f"--frobenius values must be integers, got {text!r}") from None


def _near_identity_verdict(mus, eps, k_max) -> Verdict:
    rep = dyndeg.near_identity_report(mus, eps, k_max)
    status = {"found": PASS, "bound not reached": INDETERMINATE,
              "missing beyond bound": FAIL}[rep["status"]]
    witness = dict(rep)
    witness["value"] = rep["ks"][0] if rep["ks"] else None
    witness["reference"] = rep["pigeonhole_bound"]
    witness["tol"] = rep["eps"]
    return Verdict("near_identity", status, witness)


def cmd_props(args) -> int:
    if args.frobenius is not None:
        q, k = _parse_frobenius(args.frobenius)
        report = dyndeg.report_for_model(corr.frobenius_model(q, k))
        checks = sorted(
            list(dyndeg.property_suite(report)) +
            [dyndeg.weil_from_dyndeg(q, k)],
            key=lambda v: v.name)
    else:
        data = _load_json(args.model)
        if isinstance(data, dict) and "mus" in data:
            mus = [tuple(m) for m in data["mus"]]
            checks = [_near_identity_verdict(mus, args.eps, args.k_max)]
        else:
            model = corr.model_from_json(data)
            report = dyndeg.report_for_model(model)
            checks = list(dyndeg.property_suite(report))
    _write_text(args.out, dyndeg.summary_csv(checks))
    return _STATUS_EXIT[combine(checks).status]


def cmd_lattice(args) -> int:
    raw = _load_json(args.pairing)
    mp = cyclelattice.middle_from_json(raw)
    if args.dual_basis:
        ys = cyclelattice.dual_basis(mp.gram, mp.alg_span)
        data = {"dual_basis": [[str(c) for c in y] for y in ys]}
        _write_text(args.out, _json_text(data))
        return EXIT_PASS
    if "x" not in raw:
        raise InputError(
            'pairing file has no "x" vector to decompose; '
            "pass --dual-basis for the dual-basis computation")
    x = [parse_rational(c) for c in raw["x"]]
    d = cyclelattice.decompose(x, mp)
    _write_text(args.out, _json_text(cyclelattice.decomposition_to_json(d)))
    return EXIT_PASS


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _add_common(p):
    p.add_argument("--out", default=None,
                   help="output file (default: stdout)")
    p.add_argument("--threads", type=int, default=1,
                   help="scheduling hint; results never depend on it")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arithdyn",
        description="Exact verification tools for point counts, zeta "
                    "functions, cycle lattices, and degree growth.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="count points over F_{q^n}")
    p.add_argument("--variety", required=True, help="variety JSON file")
    p.add_argument("--n-max", type=int, default=4,
                   help="largest extension degree n (default 4)")
    _add_common(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("zeta", help="factor a zeta function from counts")
    p.add_argument("--counts", required=True, help="counts CSV file")
    _add_common(p)
    p.set_defaults(func=cmd_zeta)

    p = sub.add_parser("weil", help="check eigenvalue moduli of a zeta file")
    p.add_argument("--zeta", required=True, help="zeta JSON file")
    p.add_argument("--tol", type=float, default=None,
                   help="relative modulus tolerance (default 1e-9)")
    _add_common(p)
    p.set_defaults(func=cmd_weil)

    p = sub.add_parser("lefschetz",
                       help="compare reconstructed counts with a counts CSV")
    p.add_argument("--zeta", required=True, help="zeta JSON file")
    p.add_argument("--counts", required=True, help="counts CSV file")
    _add_common(p)
    p.set_defaults(func=cmd_lefschetz)

    p = sub.add_parser("dyndeg",
                       help="dynamical-degree report with property checks")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--monomial", help="monomial map JSON file")
    g.add_argument("--model", help="graded model JSON file")
    p.add_argument("--iters", type=int, default=12,
                   help="degree-sequence iterates (default 12)")
    _add_common(p)
    p.set_defaults(func=cmd_dyndeg)

    p = sub.add_parser("props", help="property-suite summary as CSV")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--frobenius", metavar="q=Q,k=K",
                   help="build the rank-one power model for q and k")
    g.add_argument("--model",
                   help="graded model JSON file, or a unit-modulus tuple "
                        'file with a "mus" array')
    p.add_argument("--eps", type=float, default=0.1,
                   help="near-identity distance bound (default 0.1)")
    p.add_argument("--k-max", type=int, default=10 ** 4,
                   help="largest power searched (default 10000)")
    _add_common(p)
    p.set_defaults(func=cmd_props)

    p = sub.add_parser("lattice",
                       help="dual bases / decompositions for a pairing file")
    p.add_argument("--pairing", required=True, help="pairing JSON file")
    p.add_argument("--dual-basis", action="store_true",
                   help="emit the dual basis of the file's algebraic span")
    _add_common(p)
    p.set_defaults(func=cmd_lattice)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ArithdynError as e:
        _emit_error(e.kind, str(e))
        return EXIT_INPUT
    except OSError as e:
        _emit_error("io", str(e))
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
