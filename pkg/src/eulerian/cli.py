"""
Command-line front end.

Every subcommand prints exact results (rationals as ``"p/q"``); JSON output is
byte-stable for identical arguments. Exit codes: 0 success or pass,
1 verification failure, 2 usage error, 3 capacity guardrail hit.

    eulerian stats --perm 1,4,3,2
    eulerian verify --n 4 --identity b
    eulerian shuffle --n 5 --m 8 --tvd
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from contextlib import nullcontext
from fractions import Fraction

from .descent_algebras import (
    eulerian_polynomial, eulerian_element, get_kind, loday_elements, structure_poly_coeffs,
    structure_poly_eval, verify_eulerian_props, verify_loday, verify_product_identity,
    verify_q_identity, verify_theta, PRODUCT_LAWS, Q_PAIRS,
)
from .errors import CapacityError, EulerianError, InvariantViolation
from .perm_core import (
    descent_stats, format_window, lifted_guardrails, parse_window,
    signed_descent_stats,
)
from .poset_engine import (
    chain_poset, count_partitions, linear_extensions, order_poly_closed, parse_poset,
    q_count_partitions, q_order_poly_closed,
)
from .qpoly import QPolynomial, fmt_rational
from .shuffle import a_shuffle_distribution, repeated_shuffle, tvd_table, verify_shuffle

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3
TVD_PLACES = 12

_FLAVOR = {"ordinary": "ordinary", "typeb": "typeb", "aug": "augmented"}
_KIND_CHOICES = ["a", "cyclic", "b", "aug"]
_IDENTITIES = list(PRODUCT_LAWS) + ["loday", "theta", "props", "shuffle"]


class UsageError(Exception):
    pass


def decimal_str(value, places: int) -> str:
    """Round a rational to ``places`` decimals (half-even) without floating point."""
    scaled = round(Fraction(value) * 10 ** places)
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled)).rjust(places + 1, "0")
    if not places:
        return sign + digits
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _render_value(v):
    if isinstance(v, QPolynomial):
        return v.to_json()
    if isinstance(v, Fraction):
        return fmt_rational(v)
    return v


# -- subcommand handlers ------------------------------------------------------
# each returns (payload, exit code); payload is a JSON-able object or CSV text

def cmd_stats(args):
    pi = parse_window(args.perm, signed=args.signed)
    if args.signed:
        st = signed_descent_stats(pi)
        body = {"des_set": sorted(st.des_set), "des": st.des, "ades_set": sorted(st.ades_set),
                "ades": st.ades, "comaj": st.comaj, "acomaj": st.acomaj}
    else:
        st = descent_stats(pi)
        body = {"des_set": sorted(st.des_set), "des": st.des, "cdes_set": sorted(st.cdes_set),
                "cdes": st.cdes, "comaj": st.comaj, "maj": st.maj}
    return {"window": list(pi.window), "group": pi.kind, **body}, EXIT_OK


def cmd_eulerian(args):
    kind = get_kind(args.kind)
    coeffs = eulerian_polynomial(args.n, kind)
    first = 1 if kind.name in ("A", "B") else kind.eulerian_indices(args.n)[0]
    if args.format == "csv":
        return _csv_text(["exponent", "count"],
                         [(first + i, c) for i, c in enumerate(coeffs)]), EXIT_OK
    return {"n": args.n, "kind": kind.name, "first_exponent": first,
            "coefficients": coeffs}, EXIT_OK


def _load_poset(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_poset(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read poset file: {exc}") from None


def cmd_orderpoly(args):
    flavor = _FLAVOR[args.flavor]
    signed = flavor != "ordinary"
    pi = parse_window(args.perm, signed=signed) if args.perm else None
    if args.poset:
        P = _load_poset(args.poset)
    elif pi is not None:
        P = chain_poset(pi)
    else:
        raise UsageError("orderpoly needs --poset FILE or --perm W")
    if (P.kind == "B") != signed:
        raise UsageError(f"flavor {args.flavor} does not match a type {P.kind} poset")

    count = q_count_partitions if args.q else count_partitions
    closed = q_order_poly_closed if args.q else order_poly_closed
    oracle = count(P, args.k, flavor)
    out = {"flavor": flavor, "k": args.k, "q": args.q, "oracle": _render_value(oracle)}
    code = EXIT_OK
    if args.closed:
        if pi is not None:
            value = closed(pi, args.k, flavor)
            source = "perm"
        else:
            # closed form of a general poset: sum over its linear extensions
            exts = linear_extensions(P)
            value = QPolynomial() if args.q else 0
            for ext in exts:
                value = value + closed(ext, args.k, flavor)
            source = "linear_extensions"
        out["closed"] = _render_value(value)
        out["closed_source"] = source
        out["match"] = value == oracle
        code = EXIT_OK if value == oracle else EXIT_FAIL
    return out, code


def cmd_linext(args):
    P = _load_poset(args.poset)
    exts = [list(e.window) for e in linear_extensions(P)]
    if args.format == "csv":
        return _csv_text(["window"], [[format_window(e)] for e in exts]), EXIT_OK
    return {"kind": P.kind, "n": P.n, "count": len(exts), "extensions": exts}, EXIT_OK


def _element_payload(elem, args, **extra):
    data = elem.to_json()
    if args.decimal is not None and elem.ring == "rational":
        for term in data["terms"]:
            term["decimal"] = decimal_str(Fraction(term["coeff"]), args.decimal)
    return {**extra, **data}


def cmd_element(args):
    kind = get_kind(args.kind)
    if args.eulerian is not None:
        elem, label = eulerian_element(args.n, kind, args.eulerian), f"E_{args.eulerian}"
    elif args.structure is not None:
        try:
            x = Fraction(args.structure)
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"--structure expects a rational, got {args.structure!r}") from None
        elem, label = structure_poly_eval(args.n, kind, x), f"S({fmt_rational(x)})"
    else:
        if kind.name != "A":
            raise UsageError("--loday is defined for kind a only")
        elem, label = loday_elements(args.n, args.loday)[1], f"lambda^{args.loday}"
    if args.bar:
        elem, label = elem.bar(), label + "-bar"

    if args.format == "csv":
        header = ["perm", "coeff"] + (["decimal"] if args.decimal is not None else [])
        rows = []
        for w, c in elem.items():
            row = [format_window(w), fmt_rational(c)]
            if args.decimal is not None:
                row.append(decimal_str(c, args.decimal))
            rows.append(row)
        return _csv_text(header, rows), EXIT_OK
    return _element_payload(elem, args, kind=kind.name, label=label), EXIT_OK


def cmd_idempotents(args):
    kind = get_kind(args.kind)
    family = structure_poly_coeffs(args.n, kind, verify=True)
    members = [_element_payload(family[i], args, index=i) for i in family.indices()]
    return {"kind": kind.name, "n": args.n, "verified": True, "members": members}, EXIT_OK


def cmd_verify(args):
    ident = args.identity
    if ident in PRODUCT_LAWS:
        report = verify_product_identity(args.n, ident, bar=args.bar, threads=args.threads)
    elif args.bar:
        raise UsageError("--bar applies to the product identities only")
    elif ident == "loday":
        report = verify_loday(args.n)
    elif ident == "theta":
        report = verify_theta(args.n)
    elif ident == "props":
        report = verify_eulerian_props(args.n)
    else:
        report = verify_shuffle(args.n)
    return report.to_json(timing=args.timing), EXIT_OK if report.passed else EXIT_FAIL


def cmd_qverify(args):
    report = verify_q_identity(args.n, args.pair, args.k, args.l)
    return report.to_json(timing=args.timing), EXIT_OK if report.passed else EXIT_FAIL


def cmd_shuffle(args):
    if args.tvd:
        if args.m is None:
            raise UsageError("--tvd needs --m M")
        table = tvd_table(args.n, range(1, args.m + 1))
        rows = [(m, decimal_str(t, TVD_PLACES), fmt_rational(t)) for m, t in table]
        if (args.format or "csv") == "csv":
            return _csv_text(["m", "tvd", "tvd_exact"], rows), EXIT_OK
        return {"n": args.n, "table": [{"m": m, "tvd": d, "tvd_exact": e} for m, d, e in rows]}, EXIT_OK

    dist = a_shuffle_distribution(args.n, args.a) if args.a is not None else repeated_shuffle(args.n, args.m)
    items = sorted(dist.probabilities.items())
    if args.format == "csv":
        header = ["window", "probability"] + (["decimal"] if args.decimal is not None else [])
        rows = []
        for w, p in items:
            row = [format_window(w), fmt_rational(p)]
            if args.decimal is not None:
                row.append(decimal_str(p, args.decimal))
            rows.append(row)
        return _csv_text(header, rows), EXIT_OK
    out = dist.to_json()
    if args.m is not None:
        out["m"] = args.m
    if args.decimal is not None:
        out["decimal"] = {format_window(w): decimal_str(p, args.decimal) for w, p in items}
    return out, EXIT_OK


# -- parser ---------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting, so ``run`` owns the exit code."""

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _nonnegative(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["json", "csv"], default=None,
                        help="output format (default json; TVD tables default to csv)")
    common.add_argument("--decimal", type=_nonnegative, metavar="P",
                        help="also print rationals rounded to P decimal places")
    common.add_argument("--force", action="store_true",
                        help="allow enumerating groups beyond the size guardrails")

    parser = _Parser(prog="eulerian", description=__doc__.split("\n\n")[0].strip())
    sub = parser.add_subparsers(dest="command", parser_class=_Parser, required=True)

    p = sub.add_parser("stats", parents=[common], help="descent statistics of one permutation")
    p.add_argument("--perm", required=True, metavar="W", help="window such as 2,3,1 or -2,1")
    p.add_argument("--signed", action="store_true", help="treat W as a signed permutation")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("eulerian", parents=[common], help="Eulerian polynomial coefficients")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--kind", choices=_KIND_CHOICES, required=True)
    p.set_defaults(func=cmd_eulerian)

    p = sub.add_parser("orderpoly", parents=[common], help="count P-partitions")
    p.add_argument("--poset", metavar="FILE")
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--flavor", choices=list(_FLAVOR), required=True)
    p.add_argument("--q", action="store_true", help="q-weighted count")
    p.add_argument("--closed", action="store_true", help="also evaluate the closed form and compare")
    p.add_argument("--perm", metavar="W", help="use the chain of W (or W's closed form)")
    p.set_defaults(func=cmd_orderpoly)

    p = sub.add_parser("linext", parents=[common], help="linear extensions of a poset")
    p.add_argument("--poset", metavar="FILE", required=True)
    p.set_defaults(func=cmd_linext)

    p = sub.add_parser("element", parents=[common], help="print one group algebra element")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--kind", choices=_KIND_CHOICES, required=True)
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--eulerian", type=int, metavar="I")
    which.add_argument("--structure", metavar="X", help="rational evaluation point")
    which.add_argument("--loday", type=_positive, metavar="K")
    p.add_argument("--bar", action="store_true", help="replace each pi by its inverse")
    p.set_defaults(func=cmd_element)

    p = sub.add_parser("idempotents", parents=[common], help="verified idempotent family")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--kind", choices=_KIND_CHOICES, required=True)
    p.set_defaults(func=cmd_idempotents)

    p = sub.add_parser("verify", parents=[common], help="check an identity exhaustively")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--identity", choices=_IDENTITIES, required=True)
    p.add_argument("--bar", action="store_true", help="check the inverted (bar) product identity")
    p.add_argument("--threads", type=_positive, default=1, metavar="T")
    p.add_argument("--timing", action="store_true", help="include elapsed milliseconds")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("qverify", parents=[common], help="check a q-product identity")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--pair", choices=list(Q_PAIRS), required=True)
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--l", type=_positive, required=True)
    p.add_argument("--timing", action="store_true", help="include elapsed milliseconds")
    p.set_defaults(func=cmd_qverify)

    p = sub.add_parser("shuffle", parents=[common], help="riffle shuffle distributions")
    p.add_argument("--n", type=_positive, required=True)
    how = p.add_mutually_exclusive_group(required=True)
    how.add_argument("--a", type=_positive, metavar="A", help="one a-shuffle")
    how.add_argument("--m", type=_positive, metavar="M", help="M ordinary riffle shuffles")
    p.add_argument("--tvd", action="store_true", help="distance to uniform for m = 1..M")
    p.set_defaults(func=cmd_shuffle)
    return parser


_WINDOW = re.compile(r"^-?\d+(,\s*-?\d+)*$")


def _glue_windows(argv):
    # argparse reads "--perm -2,1" as two options; rewrite to "--perm=-2,1"
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok == "--perm" and i + 1 < len(argv) and _WINDOW.match(argv[i + 1]):
            out.append(f"--perm={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def run(argv=None, out=None, err=None) -> int:
    """Parse ``argv``, run the subcommand, write its output; return the exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_glue_windows(argv))
    except UsageError as exc:
        print(exc, file=err)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE

    if args.format == "csv" and args.command in ("stats", "orderpoly", "idempotents", "verify", "qverify"):
        print(f"eulerian {args.command}: csv output is not available, use json", file=err)
        return EXIT_USAGE

    try:
        with lifted_guardrails() if args.force else nullcontext():
            payload, code = args.func(args)
    except CapacityError as exc:
        print(f"eulerian {args.command}: {exc}", file=err)
        return EXIT_CAPACITY
    except InvariantViolation as exc:
        print(f"eulerian {args.command}: verification failed: {exc}", file=err)
        return EXIT_FAIL
    except (UsageError, EulerianError, ValueError) as exc:
        print(f"eulerian {args.command}: {exc}", file=err)
        return EXIT_USAGE

    if isinstance(payload, str):
        out.write(payload)
    else:
        out.write(json.dumps(payload, indent=2) + "\n")
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
