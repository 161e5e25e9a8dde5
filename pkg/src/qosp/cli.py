"""Command-line front end: emit matrices, run suites, solve the series.

Exit codes: 0 all requested checks pass, 1 at least one failed,
2 usage error.  All variable bindings are exact rationals; output is
deterministic for identical invocations.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import scalar as sc
from .coproducts import (
    CLASSICAL,
    JORDANIAN,
    Q_DEFORMED,
    SUPER_JORDANIAN,
    check_cocycle_jordanian,
    check_coassociativity_jordanian,
    check_homomorphism,
    check_l_coproducts,
    check_qcoproduct_xplus,
    check_r_intertwines,
    frt_check,
)
from .gmatrix import to_json_dict
from .matrices import (
    FIXTURE_NAMES,
    contract_r,
    kr_rmatrix,
    matrix_suite,
    named_matrix,
    ybe_suite,
)
from .phi import PhiSeries, check_intertwining_s, solve_phi
from .report import Report
from .reps import check_lt_relations, fundamental_rep, irrep
from .scalar import format_scalar, rational


class UsageError(Exception):
    pass


def _parse_spin(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError("bad spin %r" % text)


def _parse_bindings(pairs):
    bindings = {}
    for item in pairs or []:
        name, _, value = item.partition("=")
        if name not in ("s", "theta", "xi") or not value:
            raise UsageError("bad --set binding %r (expected var=rational)" % item)
        if "." in value:
            raise UsageError("binding %r must be an exact rational like 1/2" % item)
        try:
            bindings[name] = rational(Fraction(value))
        except (ValueError, ZeroDivisionError):
            raise UsageError("binding %r is not an exact rational" % item)
    return bindings


def _matrix_csv(m):
    lines = []
    for row in m.rows:
        lines.append(",".join('"%s"' % format_scalar(v) for v in row))
    return "\n".join(lines) + "\n"


def _latex_scalar(v):
    text = format_scalar(v)
    text = text.replace("theta", r"\theta").replace("xi", r"\xi").replace("*", " ")
    return text


def _matrix_latex(m):
    cols = "c" * m.dim
    lines = [r"\left(\begin{array}{%s}" % cols]
    for row in m.rows:
        lines.append(" & ".join(_latex_scalar(v) for v in row) + r" \\")
    lines.append(r"\end{array}\right)")
    return "\n".join(lines) + "\n"


def cmd_emit(args):
    if (args.matrix is None) == (args.rep is None):
        raise UsageError("emit needs exactly one of --matrix or --rep")
    bindings = _parse_bindings(args.set)
    if args.matrix:
        m = named_matrix(args.matrix)
        if bindings:
            m = m.substitute(bindings)
        if args.format == "json":
            text = json.dumps(to_json_dict(m), indent=1, sort_keys=True) + "\n"
        elif args.format == "csv":
            text = _matrix_csv(m)
        else:
            text = _matrix_latex(m)
    else:
        r = irrep(_parse_spin(args.rep))
        cap_h, e_mat, v_mat, w_mat = r.lt_generators()
        mats = {
            "h": r.h,
            "v_plus": r.v_plus,
            "v_minus": r.v_minus,
            "sigma": r.sigma,
            "E": e_mat,
            "H": cap_h,
            "V": v_mat,
            "W": w_mat,
        }
        if bindings:
            mats = {k: m.substitute(bindings) for k, m in mats.items()}
        if args.format != "json":
            raise UsageError("--rep output is JSON only")
        payload = {
            "spin": str(r.spin),
            "dim": r.dim,
            "matrices": {k: to_json_dict(m) for k, m in sorted(mats.items())},
        }
        text = json.dumps(payload, indent=1, sort_keys=True) + "\n"
    _write_out(args.out, text)
    return 0


SUITES = (
    "all",
    "ybe",
    "triangular",
    "factorization",
    "frt",
    "cocycle",
    "hopf",
    "intertwine",
)


def _suite_triangular():
    from .matrices import check_triangular
    from .report import Check

    rep = Report("triangularity")
    rep.add(check_triangular())
    kr_fail = check_triangular(kr_rmatrix(), name="kr")
    rep.add(
        Check("q-deformed R-matrix is not triangular", not kr_fail.passed, "")
    )
    return rep


def _suite_factorization():
    from .matrices import check_factorization

    return check_factorization()


def _suite_frt(spins):
    rep = Report("FRT relations")
    for spin in spins:
        r = irrep(spin)
        sub = check_lt_relations(r)
        rep.extend(sub.checks)
        rep.add(frt_check(r))
    return rep


def _suite_cocycle():
    f = fundamental_rep()
    r1 = irrep(1)
    rep = Report("cocycle and coassociativity")
    rep.add(check_cocycle_jordanian(f, f, f))
    rep.add(check_cocycle_jordanian(f, f, r1))
    rep.extend(check_coassociativity_jordanian(f, f, f).checks)
    return rep


def _suite_hopf():
    f = fundamental_rep()
    r1 = irrep(1)
    rep = Report("coproduct homomorphisms and intertwining")
    for cp, pairs in (
        (CLASSICAL, [(f, f), (f, r1)]),
        (JORDANIAN, [(f, f), (f, r1)]),
        (Q_DEFORMED, [(f, f)]),
        (SUPER_JORDANIAN, [(f, f)]),
    ):
        for a, b in pairs:
            sub = check_homomorphism(cp, a, b)
            for c in sub.checks:
                c.name = "%s (%s,%s) %s" % (cp.name, a.spin, b.spin, c.name)
            rep.extend(sub.checks)
    sub = check_r_intertwines(kr_rmatrix(), Q_DEFORMED, f)
    for c in sub.checks:
        c.name = "kr " + c.name
    rep.extend(sub.checks)
    sub = check_r_intertwines(contract_r(), SUPER_JORDANIAN, f, gens=["h", "v+"])
    for c in sub.checks:
        c.name = "sjr " + c.name
    rep.extend(sub.checks)
    rep.extend(check_l_coproducts().checks)
    rep.extend(check_qcoproduct_xplus(f, f).checks)
    return rep


def _suite_intertwine(order):
    f = fundamental_rep()
    rep = Report("odd-twist intertwining")
    phi = PhiSeries.f1_only()
    rep.extend(check_intertwining_s(phi, f, f, order).checks)
    from .matrices import f_super_fund
    from .phi import build_f_super
    from .report import Check

    rep.add(
        Check(
            "f1 alone reconstructs the odd twist matrix",
            build_f_super(phi, f, f) == f_super_fund(),
            "",
        )
    )
    return rep


def cmd_verify(args):
    spins = [
        _parse_spin(s) for s in (args.spins.split(",") if args.spins else ["1/2", "1"])
    ]
    order = args.order if args.order is not None else 3
    suites = []
    wanted = args.suite
    if wanted in ("all", "ybe"):
        suites.append(ybe_suite())
    if wanted in ("all", "triangular"):
        suites.append(_suite_triangular())
    if wanted in ("all", "factorization"):
        suites.append(_suite_factorization())
    if wanted == "all":
        suites.append(matrix_suite())
    if wanted in ("all", "frt"):
        suites.append(_suite_frt(spins))
    if wanted in ("all", "cocycle"):
        suites.append(_suite_cocycle())
    if wanted in ("all", "hopf"):
        suites.append(_suite_hopf())
    if wanted in ("all", "intertwine"):
        suites.append(_suite_intertwine(order))
    all_pass = all(s.passed for s in suites)
    lines = []
    payload = []
    for s in suites:
        lines.append(s.summary())
        payload.append(s.to_json())
    text = "\n".join(lines) + "\n"
    if args.json:
        text = json.dumps(payload, indent=1) + "\n"
    _write_out(args.out, text)
    return 0 if all_pass else 1


def cmd_solve_phi(args):
    pair_specs = (args.pairs or "1:1/2,1:1").split(",")
    pairs = []
    for spec_item in pair_specs:
        a, _, b = spec_item.partition(":")
        if not b:
            raise UsageError("bad --pairs entry %r (expected spin:spin)" % spec_item)
        pairs.append((irrep(_parse_spin(a)), irrep(_parse_spin(b))))
    order = args.order or 2
    phi, rep = solve_phi(order, pairs)
    payload = {
        "order": order,
        "pairs": [[str(a.spin), str(b.spin)] for a, b in pairs],
        "bilinear": {
            "%d,%d" % key: str(val) for key, val in sorted(phi.bilinear_dict().items())
        },
        "terms": [
            [
                {str(m): str(c) for m, c in sorted(left.items())},
                {str(m): str(c) for m, c in sorted(right.items())},
            ]
            for left, right in phi.terms
        ],
        "report": rep.to_json(),
    }
    _write_out(args.out, json.dumps(payload, indent=1, sort_keys=True) + "\n")
    sys.stderr.write(rep.summary() + "\n")
    return 0 if rep.passed else 1


def _write_out(path, text):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qosp",
        description="exact reconstruction and verification of the twisted osp(1|2) matrix constructions",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p_emit = sub.add_parser("emit", help="emit a named matrix or module data")
    p_emit.add_argument("--matrix", choices=FIXTURE_NAMES)
    p_emit.add_argument("--rep", help="spin of the module to serialize")
    p_emit.add_argument("--format", choices=("json", "csv", "latex"), default="json")
    p_emit.add_argument("--set", action="append", metavar="VAR=RATIONAL")
    p_emit.add_argument("--out")
    p_emit.set_defaults(func=cmd_emit)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("--suite", choices=SUITES, default="all")
    p_verify.add_argument("--spins", help="comma-separated spins, default 1/2,1")
    p_verify.add_argument("--order", type=int, help="xi truncation order")
    p_verify.add_argument("--json", action="store_true", help="machine-readable output")
    p_verify.add_argument("--out")
    p_verify.set_defaults(func=cmd_verify)

    p_solve = sub.add_parser("solve-phi", help="solve the odd twist series")
    p_solve.add_argument("--order", type=int, default=2, help="max series term index")
    p_solve.add_argument("--pairs", help="spin pairs a:b,c:d (default 1:1/2,1:1)")
    p_solve.add_argument("--out")
    p_solve.set_defaults(func=cmd_solve_phi)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
