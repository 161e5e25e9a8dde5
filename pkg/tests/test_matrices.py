"""Reconstruction of the fixed matrices and the matrix-level identities."""

import json
from fractions import Fraction

import pytest

from qosp import scalar as sc
from qosp.gmatrix import check_gybe, conjugate_flip, gkron, inverse, to_json_dict
from qosp.matrices import (
    FIXTURE_NAMES,
    check_factorization,
    check_golden,
    check_lplus_slices,
    check_new_entries_proportional,
    check_triangular,
    contract_r,
    f_jordanian,
    f_super_fund,
    kr_rmatrix,
    load_fixture,
    m_matrix,
    named_matrix,
    transform_r,
    x_entries,
)
from qosp.reps import fundamental_rep, irrep
from qosp.scalar import ONE, ZERO, rational


def test_kr_entries():
    r = kr_rmatrix()
    assert r.rows[0][0] == sc.q_var()
    assert r.rows[2][6] == sc.omega() * (ONE + sc.q_var(-1))
    assert r.rows[2][4] == -(sc.omega() / sc.s_var())
    assert r.substitute({"s": ONE}).is_identity()


def test_m_matrix_unipotent():
    m = m_matrix()
    assert m.substitute({"theta": ZERO}).is_identity()
    assert (m * inverse(m)).is_identity()
    n = m - m.substitute({"theta": ZERO})
    assert (n * n).is_zero()


X_POSITIONS = {
    "x1": (0, 2), "x2": (0, 4), "x3": (0, 6), "x4": (0, 8),
    "x5": (1, 5), "x6": (2, 8), "x7": (3, 7), "x8": (4, 8), "x9": (6, 8),
}


def test_transform_entries():
    tr = transform_r()
    xs = x_entries()
    for name, (i, j) in X_POSITIONS.items():
        assert tr.rows[i][j] == xs[name], name
    assert tr.substitute({"theta": ZERO}) == kr_rmatrix()
    assert tr.nonzero_count() == kr_rmatrix().nonzero_count() + 9


def test_transform_orientation_negative_control():
    reversed_tr = transform_r("reversed")
    xs = x_entries()
    assert reversed_tr.rows[0][2] != xs["x1"]
    assert reversed_tr != transform_r()


def test_new_entries_divisible_by_omega_theta():
    assert check_new_entries_proportional().passed


def test_transform_conjugator_sign_indifferent():
    # M is parity-even, so every Koszul rule gives the same M (x) M
    from qosp.gmatrix import gkron

    m = m_matrix()
    images = {
        conv: gkron(m, m, conv)
        for conv in ("first_col", "first_row", "second_row", "second_col")
    }
    assert all(img == images["first_col"] for img in images.values())


def test_contracted_matrix():
    r = contract_r()
    xi = sc.xi_var()
    assert r.rows[0][8] == (xi * xi).scale(Fraction(1, 2))
    assert r.rows[1][5] == -xi
    assert r.rows[0][2] == -xi
    assert r.substitute({"xi": ZERO}).is_identity()
    # already s-free: a second limit pass changes nothing
    again = r.map_entries(sc.limit_at_one)
    assert again == r


def test_even_twist_matrix():
    fj = f_jordanian()
    xi = sc.xi_var()
    assert fj.rows[0][2] == xi
    assert fj.rows[6][8] == -xi
    assert fj.nonzero_count() == 11
    assert fj.substitute({"xi": ZERO}).is_identity()


def test_even_twist_mixed_pair_unipotent():
    f = fundamental_rep()
    r1 = irrep(1)
    fj = f_jordanian(f, r1)
    assert fj.dim == 15
    n = fj - fj.substitute({"xi": ZERO})
    power = n
    for _ in range(16):
        if power.is_zero():
            break
        power = power * n
    assert power.is_zero()


def test_odd_twist_matrix():
    fs = f_super_fund()
    xi = sc.xi_var()
    assert fs.rows[0][4] == xi.scale(Fraction(1, 2))
    assert fs.rows[0][8] == -(xi * xi).scale(Fraction(1, 8))
    assert conjugate_flip(fs) * fs == gkron(
        fundamental_rep().identity, fundamental_rep().identity
    )


def test_golden_fixtures_match():
    for name in FIXTURE_NAMES:
        assert check_golden(name).passed, name


def test_fixture_denominators_univariate():
    for name in FIXTURE_NAMES:
        m = load_fixture(name)
        for _, _, v in m.entries():
            assert v.den.is_s_only()


def test_triangularity():
    assert check_triangular().passed
    assert not check_triangular(kr_rmatrix(), name="kr").passed
    from qosp.gmatrix import GradedMatrix, kron_parity

    ident = GradedMatrix.identity(kron_parity((0, 1, 0), (0, 1, 0)))
    assert check_triangular(ident, name="identity").passed


def test_factorization_report():
    rep = check_factorization()
    assert rep.passed
    names = [c.name for c in rep.checks]
    assert "F21(s) = F(s)^-1" in names


def test_lplus_slices():
    assert check_lplus_slices().passed


def test_gybe_all_three():
    assert check_gybe(kr_rmatrix()).passed
    assert check_gybe(transform_r()).passed
    assert check_gybe(contract_r()).passed


def test_fixture_json_shape():
    d = to_json_dict(contract_r())
    assert d["dim"] == 9
    assert d["parities"] == [0, 1, 0, 1, 0, 1, 0, 1, 0]
    assert all(len(e) == 3 for e in d["entries"])


def test_named_matrix_records():
    from qosp.matrices import NamedMatrix

    for name, variables in (
        ("kr", {"s"}),
        ("transformed", {"s", "theta"}),
        ("sjr", {"xi"}),
        ("fj", {"xi"}),
        ("fs", {"xi"}),
    ):
        nm = NamedMatrix(name)
        assert nm.value == named_matrix(name)
        assert nm.variables == frozenset(variables)
        # declared variables are exactly the ones that occur
        seen = set()
        for _, _, v in nm.value.entries():
            for (es, eth, exi) in v.num.terms:
                if eth:
                    seen.add("theta")
                if exi:
                    seen.add("xi")
            if v.den != sc.Poly.const(1):
                seen.add("s")
            for (es, _, _) in v.num.terms:
                if es:
                    seen.add("s")
        assert seen <= nm.variables


def test_fixture_directory_override(tmp_path, monkeypatch):
    import qosp.matrices as mats

    path = mats.write_fixture("kr", kr_rmatrix(), directory=str(tmp_path))
    monkeypatch.setenv("QOSP_FIXTURES", str(tmp_path))
    assert mats.fixture_dir() == str(tmp_path)
    assert mats.load_fixture("kr") == kr_rmatrix()
    monkeypatch.delenv("QOSP_FIXTURES")
    assert mats.fixture_dir().endswith("fixtures")
