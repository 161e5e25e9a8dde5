"""Finite-dimensional irreducible representations of osp(1|2).

Generators h (even) and v+, v- (odd) obey, with the graded bracket
[a, b] = ab - (-1)**(p(a)p(b)) ba,

    [h, v+-] = +- v+-        {v+, v-} = -h/4

and the even elements X+- = +-4 v+-**2 complete the sl(2) triple with
[h, X+] = 2 X+.  The spin-j module has dimension 4j + 1; h acts
diagonally with the integer string 2j, 2j-1, ..., -2j, v+ shifts one
step up the string and v- one step down.  Parities alternate along the
string starting even at the highest weight.

Note the h eigenvalues here are integers (2j down to -2j): the single
superdiagonal v+ must raise the h weight by exactly 1, and q**(h/2)
must stay inside the rational function field in s (q = s**2).

Gauge: every v+ matrix element is 1/2, so that X+ = 4 v+**2 is the
plain two-step upper shift with unit entries; in the fundamental this
forces the image of X+ to be the single matrix unit E13.  The signs
demanded by the anticommutation recursion all sit in v-.
"""

from __future__ import annotations

from fractions import Fraction

from . import scalar as sc
from .gmatrix import GradedMatrix, exp_nilpotent, inverse, log_unipotent
from .report import Check, Report

SUPPORTED_SPINS = (Fraction(1, 2), Fraction(1), Fraction(3, 2), Fraction(2))


class RepresentationError(ValueError):
    pass


def _graded_bracket(a, b, pa, pb):
    if (pa * pb) % 2:
        return a * b + b * a
    return a * b - b * a


class Representation:
    """Spin-j irreducible module with cached derived elements."""

    def __init__(self, spin, h, v_plus, v_minus, parity):
        self.spin = Fraction(spin)
        self.dim = len(parity)
        self.parity = tuple(parity)
        self.h = h
        self.v_plus = v_plus
        self.v_minus = v_minus
        self._cache = {}
        self._verify()

    # -- structural invariants, re-checked on every construction ----------

    def _verify(self):
        h, vp, vm = self.h, self.v_plus, self.v_minus
        if not (_graded_bracket(h, vp, 0, 1) - vp).is_zero():
            raise RepresentationError("[h, v+] != v+")
        if not (_graded_bracket(h, vm, 0, 1) + vm).is_zero():
            raise RepresentationError("[h, v-] != -v-")
        anti = vp * vm + vm * vp
        if not (anti + h.scale(Fraction(1, 4))).is_zero():
            raise RepresentationError("{v+, v-} != -h/4")
        xp = self.x_plus
        if not (_graded_bracket(h, xp, 0, 0) - xp.scale(2)).is_zero():
            raise RepresentationError("[h, X+] != 2 X+")
        for i, j, _ in xp.entries():
            if j != i + 2:
                raise RepresentationError("X+ is not the two-step upper shift")
        for k, p in enumerate(self.parity):
            if p != k % 2:
                raise RepresentationError("parity does not alternate from even")

    # -- derived elements --------------------------------------------------

    @property
    def x_plus(self):
        if "x_plus" not in self._cache:
            self._cache["x_plus"] = (self.v_plus * self.v_plus).scale(4)
        return self._cache["x_plus"]

    @property
    def x_minus(self):
        if "x_minus" not in self._cache:
            self._cache["x_minus"] = (self.v_minus * self.v_minus).scale(-4)
        return self._cache["x_minus"]

    @property
    def identity(self):
        if "identity" not in self._cache:
            self._cache["identity"] = GradedMatrix.identity(self.parity)
        return self._cache["identity"]

    @property
    def sigma(self):
        """sigma = (1/2) log(1 + 2 xi X+), nilpotent in any finite module."""
        if "sigma" not in self._cache:
            xi = sc.xi_var()
            u = self.identity + self.x_plus.scale(2).map_entries(lambda a: a * xi)
            self._cache["sigma"] = log_unipotent(u).scale(Fraction(1, 2))
        return self._cache["sigma"]

    def e_power(self, k):
        """exp(k sigma) for integer k; E = e_power(1) satisfies E**2 = 1 + 2 xi X+."""
        key = ("E", k)
        if key not in self._cache:
            self._cache[key] = exp_nilpotent(self.sigma.scale(k))
        return self._cache[key]

    def h_weights(self):
        return [self.h.rows[i][i].as_fraction() for i in range(self.dim)]

    def s_power_h(self, mult=1):
        """Diagonal matrix s**(mult*h); q**(h/2) is s_power_h(1)."""
        key = ("s^h", mult)
        if key not in self._cache:
            diag = {}
            for i, lam in enumerate(self.h_weights()):
                e = mult * lam
                if e != int(e):
                    raise RepresentationError("s**h needs integer exponents")
                diag[(i, i)] = sc.s_var(int(e))
            self._cache[key] = GradedMatrix.from_entries(self.parity, diag)
        return self._cache[key]

    def lt_generators(self):
        """Images of the FRT generators (H, E, V, W) built from h and v+."""
        if "lt" not in self._cache:
            xi = sc.xi_var()
            v = self.v_plus
            e = self.e_power(1)
            e_inv = self.e_power(-1)
            h_mat = self.h
            cap_h = (h_mat * e).map_entries(lambda a: a * xi) - (
                v * v * e_inv
            ).scale(2).map_entries(lambda a: a * xi * xi)
            cap_v = (v * e_inv).scale(-2).map_entries(lambda a: a * xi)
            cap_w = v.scale(2).map_entries(lambda a: a * xi)
            self._cache["lt"] = (cap_h, e, cap_v, cap_w)
        return self._cache["lt"]

    # -- atom images for coproduct evaluation ------------------------------

    def image(self, atom):
        """Matrix image of a named element or a product list of them."""
        if isinstance(atom, (list, tuple)):
            out = self.identity
            for a in atom:
                out = out * self.image(a)
            return out
        if atom == "1":
            return self.identity
        if atom == "h":
            return self.h
        if atom == "v+":
            return self.v_plus
        if atom == "v-":
            return self.v_minus
        if atom == "X+":
            return self.x_plus
        if atom == "s^h":
            return self.s_power_h(1)
        if atom == "s^-h":
            return self.s_power_h(-1)
        if atom.startswith("E^"):
            return self.e_power(int(atom[2:]))
        raise RepresentationError("unknown atom %r" % (atom,))

    def rescaled(self, lam):
        """Gauge transform v+ -> v+/lam, v- -> lam v-; same module."""
        lam = Fraction(lam)
        return Representation(
            self.spin,
            self.h,
            self.v_plus.scale(1 / lam),
            self.v_minus.scale(lam),
            self.parity,
        )

    def __repr__(self):
        return "Representation(spin=%s, dim=%d)" % (self.spin, self.dim)


def irrep(spin):
    """The spin-j module for j in {1/2, 1, 3/2, 2}."""
    spin = Fraction(spin)
    if spin not in SUPPORTED_SPINS:
        raise RepresentationError("unsupported spin %s" % spin)
    n = int(4 * spin + 1)
    parity = tuple(k % 2 for k in range(n))
    two_j = int(2 * spin)
    h = GradedMatrix.from_entries(
        parity,
        {(k, k): sc.rational(two_j - k) for k in range(n) if two_j != k},
    )
    half = sc.rational(Fraction(1, 2))
    v_plus = GradedMatrix.from_entries(parity, {(k, k + 1): half for k in range(n - 1)})
    # anticommutator recursion: u_k + u_{k-1} = -(2j - k)/4 with u_k = c_k d_k
    u_prev = Fraction(0)
    entries = {}
    for k in range(n - 1):
        u_k = Fraction(-(two_j - k), 4) - u_prev
        entries[(k + 1, k)] = sc.rational(2 * u_k)  # d_k = u_k / c_k with c_k = 1/2
        u_prev = u_k
    if u_prev != Fraction(two_j, 4):
        raise RepresentationError("weight string fails to close at the bottom")
    v_minus = GradedMatrix.from_entries(parity, entries)
    return Representation(spin, h, v_plus, v_minus, parity)


def fundamental_rep():
    """The 3-dimensional module; the image of X+ is the matrix unit E13."""
    return irrep(Fraction(1, 2))


def sigma_in_rep(r):
    return r.sigma


def lt_generators(r):
    return r.lt_generators()


def check_lt_relations(r):
    """All defining relations of the FRT generator algebra, in module r."""
    xi = sc.xi_var()
    cap_h, e, v, w = r.lt_generators()
    ident = r.identity
    e_inv = inverse(e)
    e2 = e * e
    e_inv2 = e_inv * e_inv

    def xs(m):
        return m.map_entries(lambda a: a * xi)

    rel = [
        ("[E, V] = 0", e * v - v * e),
        ("[E, W] = 0", e * w - w * e),
        ("[H, E] = xi (E^2 - 1)", cap_h * e - e * cap_h - xs(e2 - ident)),
        (
            "[H, V] = xi (V (E^-1 - E) - W)",
            cap_h * v - v * cap_h - xs(v * (e_inv - e) - w),
        ),
        ("[V, V] = xi (1 - E^-2)", (v * v).scale(2) - xs(ident - e_inv2)),
        ("[W, W] = xi (E^2 - 1)", (w * w).scale(2) - xs(e2 - ident)),
        ("V W + W V = -xi (E - E^-1)", v * w + w * v + xs(e - e_inv)),
        (
            "V^2 + W^2 = (xi/2) (E^2 - E^-2)",
            v * v + w * w - xs(e2 - e_inv2).scale(Fraction(1, 2)),
        ),
        ("V = -W E^-1", v + w * e_inv),
        ("xi (E^2 - 1) = 2 W^2", xs(e2 - ident) - (w * w).scale(2)),
    ]
    rep = Report("lt-relations spin %s" % r.spin)
    for name, residual in rel:
        rep.add(Check(name, residual.is_zero(), "" if residual.is_zero() else "nonzero residual"))
    return rep
