"""Graded tensor algebra: products, flips, embeddings, exp/log, inversion.

Includes the sign-convention enumeration: all four Koszul candidate
rules and all eight parity vectors of the 3-dimensional space are run
against (a) the graded YBE for the q-deformed R-matrix and (b) the
reconstruction of the odd twist matrix, to exhibit that the shipped
combination (column rule, parity (0,1,0), exponent -2 xi (v x v) Phi)
is the one that reproduces the fixed matrices.
"""

import random
from fractions import Fraction

import pytest

from qosp import scalar as sc
from qosp.gmatrix import (
    GradedMatrix,
    MatrixError,
    check_gybe,
    conjugate_flip,
    embed,
    exp_nilpotent,
    from_json_dict,
    gflip,
    gkron,
    inverse,
    kron_parity,
    log_unipotent,
    place_two_leg,
    to_json_dict,
)
from qosp.matrices import f_jordanian, f_super_fund, kr_rmatrix, m_matrix
from qosp.reps import fundamental_rep
from qosp.scalar import ONE, ZERO, rational

FUND = (0, 1, 0)


def _rand_matrix(rng, parity, density=0.5, homogeneous=None):
    m = GradedMatrix.zeros(parity)
    n = len(parity)
    for i in range(n):
        for j in range(n):
            if homogeneous is not None and (parity[i] + parity[j]) % 2 != homogeneous:
                continue
            if rng.random() < density:
                m.rows[i][j] = rational(Fraction(rng.randint(-4, 4)))
    return m


def test_gkron_identities():
    i3 = GradedMatrix.identity(FUND)
    assert gkron(i3, i3) == GradedMatrix.identity(kron_parity(FUND, FUND))


def test_gkron_m_squared_pattern():
    mm = gkron(m_matrix(), m_matrix())
    th = sc.theta_var()
    expected = {
        (0, 6): th, (1, 7): th, (2, 8): th,
        (0, 2): th, (3, 5): th, (6, 8): th,
        (0, 8): th * th,
    }
    for (i, j), v in expected.items():
        assert mm.rows[i][j] == v
    assert mm.nonzero_count() == 9 + 7


def test_gkron_vv_signs():
    # column-rule signs on the odd generator pair; the -2 xi exponent
    # then reproduces the odd twist matrix with these signs flipped
    f = fundamental_rep()
    g = gkron(f.v_plus, f.v_plus)
    quarter = Fraction(1, 4)
    assert g.rows[0][4] == rational(-quarter)
    assert g.rows[1][5] == rational(-quarter)
    assert g.rows[3][7] == rational(quarter)
    assert g.rows[4][8] == rational(quarter)
    assert g.nonzero_count() == 4


def test_gflip_entries_and_involution():
    p = gflip(FUND)
    # odd-odd pair picks up the Koszul minus
    assert p.rows[4][4] == -ONE
    assert p.rows[3][1] == ONE
    assert (p * p).is_identity()


def test_conjugate_flip_involutive_and_identity():
    i9 = GradedMatrix.identity(kron_parity(FUND, FUND))
    assert conjugate_flip(i9) == i9
    r = kr_rmatrix()
    assert conjugate_flip(conjugate_flip(r)) == r


def test_conjugate_flip_of_odd_twist_is_inverse():
    fs = f_super_fund()
    assert conjugate_flip(fs) == inverse(fs)


def test_flip_intertwines_gkron():
    rng = random.Random(11)
    for _ in range(200):
        parity = tuple(rng.randint(0, 1) for _ in range(3))
        pa, pb = rng.randint(0, 1), rng.randint(0, 1)
        a = _rand_matrix(rng, parity, homogeneous=pa)
        b = _rand_matrix(rng, parity, homogeneous=pb)
        p = gflip(parity)
        lhs = p * gkron(a, b) * p
        rhs = gkron(b, a).scale((-1) ** (pa * pb))
        assert (lhs - rhs).is_zero()


def test_gkron_associativity():
    rng = random.Random(12)
    for _ in range(200):
        p1 = tuple(rng.randint(0, 1) for _ in range(2))
        p2 = tuple(rng.randint(0, 1) for _ in range(2))
        p3 = tuple(rng.randint(0, 1) for _ in range(2))
        a = _rand_matrix(rng, p1)
        b = _rand_matrix(rng, p2)
        c = _rand_matrix(rng, p3)
        assert gkron(gkron(a, b), c) == gkron(a, gkron(b, c))


def test_gkron_functoriality():
    rng = random.Random(13)
    for _ in range(200):
        p1 = tuple(rng.randint(0, 1) for _ in range(3))
        p2 = tuple(rng.randint(0, 1) for _ in range(2))
        pb, pc = rng.randint(0, 1), rng.randint(0, 1)
        a = _rand_matrix(rng, p1)
        c = _rand_matrix(rng, p1, homogeneous=pc)
        b = _rand_matrix(rng, p2, homogeneous=pb)
        d = _rand_matrix(rng, p2)
        lhs = gkron(a, b) * gkron(c, d)
        rhs = gkron(a * c, b * d).scale((-1) ** (pb * pc))
        assert (lhs - rhs).is_zero()


def test_embed_identity_and_xi_zero():
    i9 = GradedMatrix.identity(kron_parity(FUND, FUND))
    for legs in ((1, 2), (1, 3), (2, 3)):
        m = embed(i9, legs)
        assert m.is_identity()
    from qosp.matrices import contract_r

    r0 = contract_r().substitute({"xi": ZERO})
    assert embed(r0, (1, 2)).is_identity()


def test_embed_even_factor_placement():
    # even (x) even splits as an ordinary placement on legs 1 and 3
    rng = random.Random(14)
    a = _rand_matrix(rng, FUND, homogeneous=0)
    b = _rand_matrix(rng, FUND, homogeneous=0)
    r13 = embed(gkron(a, b), (1, 3))
    i3 = GradedMatrix.identity(FUND)
    assert r13 == gkron(gkron(a, i3), b)


def test_embed_matches_flip_conjugation():
    # independent construction of the (1,3) embedding through flips,
    # and the full YBE residual computed along both code paths
    rng = random.Random(15)
    for _ in range(5):
        parity = tuple(rng.randint(0, 1) for _ in range(3))
        r = _rand_matrix(rng, kron_parity(parity, parity), density=0.25)
        i3 = GradedMatrix.identity(parity)
        swap23 = gkron(i3, gflip(parity))
        oracle13 = swap23 * gkron(r, i3) * swap23
        assert embed(r, (1, 3), parity, base=parity) == oracle13
        assert embed(r, (2, 3), parity, base=parity) == gkron(i3, r)
        assert embed(r, (1, 2), parity, base=parity) == gkron(r, i3)
        r12, r23 = gkron(r, i3), gkron(i3, r)
        explicit_residual = r12 * oracle13 * r23 - r23 * oracle13 * r12
        via_embed = (
            embed(r, (1, 2), base=parity)
            * embed(r, (1, 3), base=parity)
            * embed(r, (2, 3), base=parity)
            - embed(r, (2, 3), base=parity)
            * embed(r, (1, 3), base=parity)
            * embed(r, (1, 2), base=parity)
        )
        assert via_embed == explicit_residual


def test_check_gybe_detects_failure():
    rng = random.Random(16)
    bad = kr_rmatrix()
    bad.rows[1][3] = ONE  # break the a-entry
    assert not check_gybe(bad).passed


def test_inverse_unipotent_and_diagonal():
    m = m_matrix()
    m_inv = inverse(m)
    th = sc.theta_var()
    assert m_inv.rows[0][2] == -th
    assert (m * m_inv).is_identity()
    i9 = GradedMatrix.identity(kron_parity(FUND, FUND))
    assert inverse(i9) == i9


def test_inverse_jordanian_block_swap():
    fj = f_jordanian()
    fj_inv = inverse(fj)
    xi = sc.xi_var()
    assert fj_inv.rows[0][2] == -xi
    assert fj_inv.rows[6][8] == xi
    assert (fj * fj_inv).is_identity()


def test_inverse_singular_raises():
    z = GradedMatrix.zeros(FUND)
    with pytest.raises(MatrixError):
        inverse(z)


def test_inverse_random_unipotent():
    rng = random.Random(17)
    xi = sc.xi_var()
    for _ in range(25):
        parity = FUND
        n = len(parity)
        u = GradedMatrix.identity(parity)
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < 0.7:
                    u.rows[i][j] = xi.scale(rng.randint(-3, 3))
        u_inv = inverse(u)
        assert (u * u_inv).is_identity()
        assert (u_inv * u).is_identity()


def test_exp_log_round_trip():
    z = GradedMatrix.zeros(FUND)
    assert exp_nilpotent(z).is_identity()
    xi = sc.xi_var()
    n = GradedMatrix.zeros(FUND)
    n.rows[0][2] = xi.scale(2)
    u = GradedMatrix.identity(FUND) + n
    assert log_unipotent(u) == n
    rng = random.Random(18)
    for _ in range(25):
        m = GradedMatrix.zeros(FUND)
        for i in range(3):
            for j in range(i + 1, 3):
                m.rows[i][j] = xi.scale(rng.randint(-3, 3))
        assert log_unipotent(exp_nilpotent(m)) == m


def test_exp_rejects_non_nilpotent():
    with pytest.raises(MatrixError):
        exp_nilpotent(GradedMatrix.identity(FUND))


def test_exp_h_tensor_sigma_is_even_twist():
    f = fundamental_rep()
    assert exp_nilpotent(gkron(f.h, f.sigma)) == f_jordanian()


def test_homogeneity_flag():
    f = fundamental_rep()
    assert f.h.homogeneous_parity() == 0
    assert f.v_plus.homogeneous_parity() == 1
    assert GradedMatrix.zeros(FUND).homogeneous_parity() == 0
    mixed = f.h + f.v_plus
    assert mixed.homogeneous_parity() is None


def test_json_round_trip():
    rng = random.Random(19)
    for _ in range(200):
        parity = tuple(rng.randint(0, 1) for _ in range(3))
        m = _rand_matrix(rng, parity)
        m = m.map_entries(lambda a: a * sc.xi_var() if rng.random() < 0.3 else a)
        assert from_json_dict(to_json_dict(m)) == m


# ---------------------------------------------------------------------------
# the sign-convention enumeration, shipped rather than hidden


def _kr_with_parity(parity):
    base = kr_rmatrix()
    return GradedMatrix(9, kron_parity(parity, parity), [row[:] for row in base.rows])


def _fs_golden(parity):
    base = f_super_fund()
    return GradedMatrix(9, kron_parity(parity, parity), [row[:] for row in base.rows])


ALL_PARITIES = [
    (a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)
]
CONVENTIONS = ("first_row", "first_col", "second_row", "second_col")


def _gybe_numeric(r, base):
    rn = r.substitute({"s": rational(2)})
    return check_gybe(rn, base=base).passed


def test_sign_convention_enumeration():
    """Which (convention, parity, exponent sign) reproduce the fixed data.

    (a) the graded YBE for the q-deformed R-matrix selects the parity
        vector (0,1,0) uniquely among all eight: the check only
        involves even matrices, so it probes the flip alone;
    (b) reconstructing the odd twist matrix from exp(sign * 2 xi
        (v x v)(f1 x f1)) then selects the convention-sign pairs
        (row, +) and (column, -).
    The production choice is the column rule with the -2 xi
    exponent: of the two survivors only the column rule also satisfies
    the twisted coproduct of h, which the coproduct tests pin down.
    """
    gybe_pass = [p for p in ALL_PARITIES if _gybe_numeric(_kr_with_parity(p), p)]
    assert gybe_pass == [(0, 1, 0)]

    xi = sc.xi_var()
    half = rational(Fraction(1, 2))
    winners = []
    for parity in ALL_PARITIES:
        v = GradedMatrix.from_entries(parity, {(0, 1): half, (1, 2): half})
        e13 = GradedMatrix.from_entries(parity, {(0, 2): ONE})
        f1 = GradedMatrix.identity(parity) - e13.map_entries(
            lambda a: a * xi
        ).scale(Fraction(1, 2))
        for conv in CONVENTIONS:
            gv = gkron(v, v, conv)
            phi_im = gkron(f1, f1, conv)
            for sign in (1, -1):
                t = (gv * phi_im).scale(2 * sign).map_entries(lambda a: a * xi)
                if exp_nilpotent(t) == _fs_golden(parity):
                    winners.append((parity, conv, sign))
    survivors = [w for w in winners if w[0] in gybe_pass]
    assert set(survivors) == {
        ((0, 1, 0), "first_row", 1),
        ((0, 1, 0), "first_col", -1),
    }
