"""The explicit 9x9 matrices and the matrix-level identities.

Everything is built over the exact scalar field with q = s**2:

* the q-deformed R-matrix of the 3-dimensional module,
* its similarity transform by the tensor square of M = I + theta X+,
* the contracted R-matrix obtained via theta = xi/omega, q -> 1,
* the block-diagonal even twist matrix exp(h (x) sigma),
* the odd twist matrix with its flip-inverse property,

together with the triangularity and twist-factorization checks.  Each
named matrix is also frozen as a JSON fixture; constructions are
diffed against the fixtures entry by entry.
"""

from __future__ import annotations

import json
import os
from fractions import Fraction

from . import scalar as sc
from .gmatrix import (
    GradedMatrix,
    check_gybe,
    conjugate_flip,
    exp_nilpotent,
    from_json_dict,
    gkron,
    inverse,
    kron_parity,
    to_json_dict,
)
from .report import Check, Report
from .reps import fundamental_rep
from .scalar import ONE, ZERO, divide_exact, limit_at_one, substitute

FIXTURE_NAMES = ("kr", "transformed", "sjr", "fj", "fs")

_FUND_PARITY = (0, 1, 0)
_PAIR_PARITY = kron_parity(_FUND_PARITY, _FUND_PARITY)


def kr_rmatrix():
    """9x9 R-matrix of the q-deformed algebra on the 3-dim module.

    Nonzero entries: diagonal (q,1,1/q,1,1,1,1/q,1,q) plus
    a = d = omega, b = c = -omega/s, e = omega(1 + 1/q).
    """
    q = sc.q_var()
    qi = sc.q_var(-1)
    w = sc.omega()
    b = -w / sc.s_var()
    m = GradedMatrix.zeros(_PAIR_PARITY)
    for i, v in enumerate([q, ONE, qi, ONE, ONE, ONE, qi, ONE, q]):
        m.rows[i][i] = v
    m.rows[1][3] = w           # a
    m.rows[2][4] = b           # b
    m.rows[2][6] = w * (ONE + qi)  # e
    m.rows[4][6] = b           # c
    m.rows[5][7] = w           # d
    return m


def m_matrix():
    """M = I + theta X+ in the fundamental: unipotent with theta at (1,3)."""
    m = GradedMatrix.identity(_FUND_PARITY)
    m.rows[0][2] = sc.theta_var()
    return m


def x_entries():
    """The nine entries switched on by the similarity transform."""
    w = sc.omega()
    th = sc.theta_var()
    q = sc.q_var()
    b = -w / sc.s_var()
    c = b
    return {
        "x1": -(w * th),
        "x2": b * th,
        "x3": w * th / q,
        "x4": (w * th) ** 2 / (ONE + q),
        "x5": -(w * th),
        "x6": -(w * th / q),
        "x7": w * th,
        "x8": -(c * th),
        "x9": w * th,
    }


def transform_r(orientation="standard"):
    """Conjugate the R-matrix by M (x) M.

    The standard orientation G R G^-1 with G = gkron(M, M) reproduces
    the nine x-entries; the reversed orientation is kept available as a
    negative control.
    """
    r = kr_rmatrix()
    g = gkron(m_matrix(), m_matrix())
    g_inv = inverse(g)
    if orientation == "standard":
        return g * r * g_inv
    if orientation == "reversed":
        return g_inv * r * g
    raise ValueError("unknown orientation %r" % orientation)


def contract_r():
    """theta = xi/omega followed by the exact limit s -> 1, entrywise."""
    w = sc.omega()
    binding = {"theta": sc.xi_var() / w}
    contracted = transform_r().map_entries(
        lambda a: limit_at_one(substitute(a, binding))
    )
    return contracted


def f_jordanian(r1=None, r2=None):
    """Even twist matrix exp(h (x) sigma) on a pair of modules."""
    if r1 is None:
        r1 = fundamental_rep()
    if r2 is None:
        r2 = r1
    return exp_nilpotent(gkron(r1.h, r2.sigma))


def f_super_fund():
    """The odd twist matrix on the fundamental pair.

    Equal to exp(-2 xi (v (x) v) (f1 (x) f1)) with f1 = 2/(e^sigma+1);
    satisfies conjugate_flip(F) = inverse(F).
    """
    xi = sc.xi_var()
    half_xi = xi.scale(Fraction(1, 2))
    m = GradedMatrix.identity(_PAIR_PARITY)
    m.rows[0][4] = half_xi
    m.rows[0][8] = -(xi * xi).scale(Fraction(1, 8))
    m.rows[1][5] = half_xi
    m.rows[3][7] = -half_xi
    m.rows[4][8] = -half_xi
    return m


class NamedMatrix:
    """A fixed matrix with its name and the variables it depends on."""

    __slots__ = ("name", "value", "variables")

    _VARIABLES = {
        "kr": frozenset({"s"}),
        "transformed": frozenset({"s", "theta"}),
        "sjr": frozenset({"xi"}),
        "fj": frozenset({"xi"}),
        "fs": frozenset({"xi"}),
    }

    def __init__(self, name):
        self.name = name
        self.value = named_matrix(name)
        self.variables = self._VARIABLES[name]


def named_matrix(name):
    builders = {
        "kr": kr_rmatrix,
        "transformed": transform_r,
        "sjr": contract_r,
        "fj": f_jordanian,
        "fs": f_super_fund,
    }
    if name not in builders:
        raise ValueError("unknown matrix %r (expected one of %s)" % (name, FIXTURE_NAMES))
    return builders[name]()


# ---------------------------------------------------------------------------
# golden fixtures


def fixture_dir():
    override = os.environ.get("QOSP_FIXTURES")
    if override:
        return override
    return os.path.join(os.path.dirname(__file__), "fixtures")


def fixture_path(name):
    return os.path.join(fixture_dir(), "%s.json" % name)


def load_fixture(name):
    with open(fixture_path(name)) as fh:
        return from_json_dict(json.load(fh))


def write_fixture(name, matrix, directory=None):
    path = os.path.join(directory or fixture_dir(), "%s.json" % name)
    with open(path, "w") as fh:
        json.dump(to_json_dict(matrix), fh, indent=1, sort_keys=True)
        fh.write("\n")
    return path


def check_golden(name):
    built = named_matrix(name)
    golden = load_fixture(name)
    same = built == golden
    return Check(
        "golden %s" % name,
        same,
        "matches fixture" if same else "differs from fixture",
    )


# ---------------------------------------------------------------------------
# matrix-level identity checks


def check_triangular(r=None, name="sjr"):
    """R21 R = 1 exactly; the hallmark of a triangular R-matrix."""
    if r is None:
        r = contract_r()
    prod = conjugate_flip(r) * r
    ok = prod.is_identity()
    return Check(
        "triangularity %s" % name,
        ok,
        "R21 R = 1" if ok else "R21 R differs from the identity",
    )


def check_factorization():
    """R(sj) = F21(s) F21(j) (F(j))^-1 (F(s))^-1, plus F21(s) = F(s)^-1."""
    rep = Report("twist factorization")
    f_s = f_super_fund()
    f_j = f_jordanian()
    f_s21 = conjugate_flip(f_s)
    f_j21 = conjugate_flip(f_j)
    f_s_inv = inverse(f_s)
    f_j_inv = inverse(f_j)
    rep.add(
        Check(
            "F21(s) = F(s)^-1",
            f_s21 == f_s_inv,
            "",
        )
    )
    product = f_s21 * f_j21 * f_j_inv * f_s_inv
    r_sj = contract_r()
    rep.add(
        Check(
            "F21(s) F21(j) F(j)^-1 F(s)^-1 = R(sj)",
            product == r_sj,
            "",
        )
    )
    even_part = f_j21 * f_j_inv
    rep.add(
        Check(
            "even sub-twist alone differs from R(sj)",
            even_part != r_sj,
            "",
        )
    )
    rep.add(check_triangular(even_part, name="even sub-twist"))
    rep.add(
        Check(
            "even sub-twist at xi=0 is the identity",
            even_part.substitute({"xi": ZERO}).is_identity(),
            "",
        )
    )
    return rep


def check_new_entries_proportional():
    """Every transform-only entry divides exactly by omega*theta."""
    diff = transform_r() - kr_rmatrix()
    w_th = sc.omega() * sc.theta_var()
    try:
        for _, _, v in diff.entries():
            divide_exact(v, w_th)
    except sc.ScalarError:
        return Check("new entries proportional to omega*theta", False, "inexact division")
    return Check("new entries proportional to omega*theta", True, "")


def check_lplus_slices():
    """Block slices of the contracted R-matrix against the FRT generators."""
    r = contract_r()
    fund = fundamental_rep()
    cap_h, e, v, w = fund.lt_generators()
    e_inv = inverse(e)
    expected = {
        (0, 0): e_inv,
        (0, 1): v,
        (0, 2): cap_h,
        (1, 1): fund.identity,
        (1, 2): w,
        (2, 2): e,
    }
    ok = True
    for bi in range(3):
        for bj in range(3):
            block = GradedMatrix.zeros(_FUND_PARITY)
            for a in range(3):
                for b in range(3):
                    block.rows[a][b] = r.rows[3 * bi + a][3 * bj + b]
            want = expected.get((bi, bj), GradedMatrix.zeros(_FUND_PARITY))
            if block != want:
                ok = False
    return Check(
        "L+ block pattern ((E^-1,V,H),(0,1,W),(0,0,E))",
        ok,
        "",
    )


def matrix_suite():
    rep = Report("matrix identities")
    for name in FIXTURE_NAMES:
        rep.add(check_golden(name))
    rep.add(check_new_entries_proportional())
    rep.add(check_lplus_slices())
    rep.add(check_triangular())
    kr_fail = check_triangular(kr_rmatrix(), name="kr")
    rep.add(
        Check(
            "q-deformed R-matrix is not triangular",
            not kr_fail.passed,
            "",
        )
    )
    fact = check_factorization()
    rep.extend(fact.checks)
    return rep


def ybe_suite():
    rep = Report("graded Yang-Baxter")
    rep.add(check_gybe(kr_rmatrix(), "gybe kr (symbolic in s)"))
    rep.add(check_gybe(transform_r(), "gybe transformed (symbolic in s, theta)"))
    rep.add(check_gybe(contract_r(), "gybe sjr (symbolic in xi)"))
    return rep
