"""Super-Riemann spheres and their automorphism groups.

For each integer n the sphere is the genus-zero N=2 superconformal
supermanifold glued from two coordinate charts by the transition map

    I_n(z, theta+, theta-) = (1/z, i theta+ z^(n-1), i theta- z^(-n-1)).

An automorphism is determined by its southern-chart map, which belongs to
a parametrized family depending on the regime of n:

* the Moebius part is always f = (a z + b)/(c z + d) with even a, b, c, d
  and a d - b c = 1 exactly;
* for n = 0 both psi+ and psi- are degree-one over (c z + d), with two
  invertible factors eps+- tied by eps+ eps- = 1 - psi1+ psi0- - psi1- psi0+;
* for n = +-1 one psi is constant, the other quadratic over (c z + d)^2,
  with a single invertible eps;
* for |n| >= 2 one psi vanishes, the other has degree |n|+1 over
  (c z + d)^(|n|+1), and g+- = (eps (c z + d)^n)^(+-1) / (c z + d).

Parameters are recovered from a map exactly: the scalar Moebius part is
normalized to determinant one (sign fixed by a deterministic tie-break;
the two-fold ambiguity is precisely the double cover below), the soul
corrections are read off derivatives at z = 0, and the regime shapes are
pinned by rebuilding the map and comparing.

The matrix group SL(2) x GL(1) over the even coefficient algebra acts by

    (z, theta+, theta-) -> ((a z + b)/(c z + d),
                            theta+ eps (c z + d)^(n-1),
                            theta- eps^(-1) (c z + d)^(-n-1)),

a double cover of the even automorphism component with kernel generated by
(-id, -id) for even n and (-id, id) for odd n.  For |n| >= 2 the odd
coefficient vectors act as an abelian group of translations.
"""

from __future__ import annotations

from .scalars import GaussianRational, I as IMAG, NotASquare, ONE, grat
from .grassmann import NotInvertible, Supernumber
from .superfield import (
    RationalSuperfunction,
    ScalarPoly,
    SuperPolynomial,
    SuperfieldError,
    PoleAtPoint,
    SuperPoint,
)
from .superconformal import SuperconformalMap


class SphereError(SuperfieldError):
    pass


class InvalidParams(SphereError):
    """Automorphism parameters violate a regime constraint."""


class NotInFamily(SphereError):
    """A superconformal map does not belong to the automorphism family."""


def transition(n, L):
    """The chart transition map of the sphere with twist n."""
    return SuperconformalMap(
        RationalSuperfunction.z_power(L, -1),
        RationalSuperfunction.z_power(L, n - 1, coeff=IMAG),
        RationalSuperfunction.z_power(L, -n - 1, coeff=IMAG),
    )


def transition_inverse(n, L):
    """Closed form of I_n^(-1): the same map with -i in place of i."""
    return SuperconformalMap(
        RationalSuperfunction.z_power(L, -1),
        RationalSuperfunction.z_power(L, n - 1, coeff=-IMAG),
        RationalSuperfunction.z_power(L, -n - 1, coeff=-IMAG),
    )


class SuperSphere:
    """A two-chart super-Riemann sphere, represented by its transition data."""

    __slots__ = ("n", "L", "transition")

    def __init__(self, n, L):
        self.n = n
        self.L = L
        self.transition = transition(n, L)

    def __repr__(self):
        return f"SuperSphere(n={self.n}, L={self.L})"


# ---------------------------------------------------------------------------
# automorphism parameters
# ---------------------------------------------------------------------------


def invsqrt_one_plus_soul(x):
    """(1 + s)**(-1/2) for an even supernumber with body one, exactly."""
    body, soul = x.body_soul()
    if body != ONE:
        raise InvalidParams("inverse square root needs body exactly one")
    out = Supernumber.one(x.L)
    power = Supernumber.one(x.L)
    coeff = grat(1)
    for k in range(1, x.L // 2 + 2):
        power = power * soul
        if power.is_zero():
            break
        coeff = coeff * grat(-2 * k + 1) / grat(2 * k)
        out = out + power.scale(coeff)
    return out


def normalize_determinant(a, b, c, d):
    """Rescale an even quadruple so that a d - b c = 1.

    Only determinants of the form 1 + soul are accepted: a general complex
    determinant would need a square root that Q(i) usually lacks.
    """
    det = a * d - b * c
    if det.body() != ONE:
        raise InvalidParams(
            "determinant body must be exactly one; rescale the inputs first"
        )
    lam = invsqrt_one_plus_soul(det)
    return a * lam, b * lam, c * lam, d * lam


def _positive_leading(values):
    """True if the first nonzero scalar has Re > 0, or Re = 0 and Im > 0."""
    for v in values:
        if v:
            return v.re > 0 or (v.re == 0 and v.im > 0)
    return True


class AutomorphismParams:
    """The regime-dependent parameter tuple of a sphere automorphism.

    psi_plus and psi_minus are coefficient lists indexed by z-degree; the
    constant psi of the n = +-1 regimes sits in the length-one list.  For
    n = 0 the two invertible factors are eps_plus and eps_minus; otherwise
    a single eps is used.
    """

    __slots__ = ("n", "L", "a", "b", "c", "d",
                 "eps", "eps_plus", "eps_minus", "psi_plus", "psi_minus")

    def __init__(self, n, a, b, c, d, eps=None, eps_plus=None, eps_minus=None,
                 psi_plus=(), psi_minus=()):
        self.n = n
        self.L = a.L
        self.a, self.b, self.c, self.d = a, b, c, d
        self.eps = eps
        self.eps_plus = eps_plus
        self.eps_minus = eps_minus
        self.psi_plus = tuple(psi_plus)
        self.psi_minus = tuple(psi_minus)
        self.validate()

    @classmethod
    def identity(cls, n, L):
        one = Supernumber.one(L)
        zero = Supernumber.zero(L)
        plus_len, minus_len = cls.psi_lengths(n)
        if n == 0:
            return cls(n, one, zero, zero, one, eps_plus=one, eps_minus=one,
                       psi_plus=[zero] * plus_len, psi_minus=[zero] * minus_len)
        return cls(n, one, zero, zero, one, eps=one,
                   psi_plus=[zero] * plus_len, psi_minus=[zero] * minus_len)

    @staticmethod
    def psi_lengths(n):
        """(len psi_plus, len psi_minus) for the regime of n."""
        if n == 0:
            return 2, 2
        if n == 1:
            return 1, 3
        if n == -1:
            return 3, 1
        if n >= 2:
            return 0, n + 2
        return -n + 2, 0

    def validate(self):
        bound = self.L - 2
        for name in ("a", "b", "c", "d"):
            v = getattr(self, name)
            if not (v.is_even() and v.in_subalgebra(bound)):
                raise InvalidParams(f"{name} must be even with generators <= {bound}")
        if self.a * self.d - self.b * self.c != Supernumber.one(self.L):
            raise InvalidParams("determinant a d - b c must be exactly one")
        want_plus, want_minus = self.psi_lengths(self.n)
        if len(self.psi_plus) != want_plus or len(self.psi_minus) != want_minus:
            raise InvalidParams(
                f"regime n={self.n} wants psi lengths ({want_plus}, {want_minus})"
            )
        for side, coeffs in (("psi+", self.psi_plus), ("psi-", self.psi_minus)):
            for j, v in enumerate(coeffs):
                if not (v.is_odd() and v.in_subalgebra(bound)):
                    raise InvalidParams(
                        f"{side}[{j}] must be odd with generators <= {bound}"
                    )
        if self.n == 0:
            if self.eps is not None or self.eps_plus is None or self.eps_minus is None:
                raise InvalidParams("the n=0 regime uses eps_plus and eps_minus")
            for name, v in (("eps+", self.eps_plus), ("eps-", self.eps_minus)):
                if not (v.is_even() and v.body() and v.in_subalgebra(bound)):
                    raise InvalidParams(f"{name} must be even and invertible")
            pp, pm = self.psi_plus, self.psi_minus
            want = Supernumber.one(self.L) - pp[1] * pm[0] - pm[1] * pp[0]
            if self.eps_plus * self.eps_minus != want:
                raise InvalidParams(
                    "eps+ eps- must equal 1 - psi1+ psi0- - psi1- psi0+"
                )
        else:
            if self.eps is None or self.eps_plus is not None or self.eps_minus is not None:
                raise InvalidParams(f"the n={self.n} regime uses a single eps")
            if not (self.eps.is_even() and self.eps.body()
                    and self.eps.in_subalgebra(bound)):
                raise InvalidParams("eps must be even and invertible")

    def __eq__(self, other):
        if not isinstance(other, AutomorphismParams):
            return NotImplemented
        return (
            self.n == other.n
            and (self.a, self.b, self.c, self.d)
            == (other.a, other.b, other.c, other.d)
            and self.eps == other.eps
            and self.eps_plus == other.eps_plus
            and self.eps_minus == other.eps_minus
            and self.psi_plus == other.psi_plus
            and self.psi_minus == other.psi_minus
        )

    def __repr__(self):
        return (f"AutomorphismParams(n={self.n}, a={self.a}, b={self.b}, "
                f"c={self.c}, d={self.d})")


# ---------------------------------------------------------------------------
# building the southern map from parameters
# ---------------------------------------------------------------------------


def _linear(L, lead, const):
    """The polynomial lead*z + const as a rational superfunction."""
    return RationalSuperfunction(
        SuperPolynomial(L, 2, {(1, 0): lead, (0, 0): const})
    )


def _poly(L, coeffs):
    """sum coeffs[j] z^j as a rational superfunction."""
    return RationalSuperfunction(
        SuperPolynomial(L, 2, {(j, 0): c for j, c in enumerate(coeffs)})
    )


def build_map(p):
    """The southern-chart superconformal map of the automorphism with
    parameters p, assembled from the regime formulas."""
    L = p.L
    n = p.n
    czd = _linear(L, p.c, p.d)
    inv = czd.inverse()
    f = _linear(L, p.a, p.b) * inv
    one = Supernumber.one(L)

    if n == 0:
        psi_p = _linear(L, p.psi_plus[1], p.psi_plus[0]) * inv
        psi_m = _linear(L, p.psi_minus[1], p.psi_minus[0]) * inv
        inv2 = inv * inv
        pp1, pp0 = p.psi_plus[1], p.psi_plus[0]
        pm1, pm0 = p.psi_minus[1], p.psi_minus[0]
        g = {}
        for sign, eps in ((+1, p.eps_plus), (-1, p.eps_minus)):
            s = grat(sign)
            f_c = eps * (pp1 * pm1 * p.d).scale(-s)
            h_c = eps * (
                (pp0 * pm0 * p.c).scale(s)
                - ((pp1 * pm0 - pm1 * pp0) * p.d).scale(s)
                - (pp1 * pm1 * pp0 * pm0 * p.d)
            )
            g[sign] = RationalSuperfunction.from_constant(L, eps) * inv \
                + _linear(L, f_c, h_c) * inv2
        return SuperconformalMap(f, g[+1], g[-1], psi_p, psi_m)

    if n == 1:
        eps_inv = p.eps.inverse()
        psi_p = RationalSuperfunction.from_constant(L, p.psi_plus[0])
        inv2 = inv * inv
        psi_m = _poly(L, p.psi_minus) * inv2
        g_p = RationalSuperfunction.from_constant(L, p.eps)
        pm0, pm1, pm2 = p.psi_minus
        corr = _poly(L, [
            p.psi_plus[0] * (pm1 * p.d - pm0 * p.c.scale(2)),
            p.psi_plus[0] * (pm2 * p.d.scale(2) - pm1 * p.c),
        ])
        g_m = (RationalSuperfunction.from_constant(L, eps_inv) * inv2
               + corr.scale_left(eps_inv) * (inv2 * inv))
        return SuperconformalMap(f, g_p, g_m, psi_p, psi_m)

    if n == -1:
        eps_inv = p.eps.inverse()
        psi_m = RationalSuperfunction.from_constant(L, p.psi_minus[0])
        inv2 = inv * inv
        psi_p = _poly(L, p.psi_plus) * inv2
        g_m = RationalSuperfunction.from_constant(L, p.eps)
        pp0, pp1, pp2 = p.psi_plus
        corr = _poly(L, [
            (pp1 * p.d - pp0 * p.c.scale(2)) * p.psi_minus[0],
            (pp2 * p.d.scale(2) - pp1 * p.c) * p.psi_minus[0],
        ])
        g_p = (RationalSuperfunction.from_constant(L, eps_inv) * inv2
               - corr.scale_left(eps_inv) * (inv2 * inv))
        return SuperconformalMap(f, g_p, g_m, psi_p, psi_m)

    if n >= 2:
        zero = RationalSuperfunction.zero(L)
        psi_m = _poly(L, p.psi_minus) * inv ** (n + 1)
        g_p = RationalSuperfunction.from_constant(L, p.eps) * czd ** (n - 1)
        g_m = RationalSuperfunction.from_constant(L, p.eps.inverse()) * inv ** (n + 1)
        return SuperconformalMap(f, g_p, g_m, zero, psi_m)

    # n <= -2: mirror regime, psi- vanishes
    zero = RationalSuperfunction.zero(L)
    psi_p = _poly(L, p.psi_plus) * inv ** (-n + 1)
    g_p = RationalSuperfunction.from_constant(L, p.eps.inverse()) * inv ** (-n + 1)
    g_m = RationalSuperfunction.from_constant(L, p.eps) * czd ** (-n - 1)
    return SuperconformalMap(f, g_p, g_m, psi_p, zero)


class SphereAutomorphism:
    """An automorphism of the sphere with twist n, held by its southern map."""

    __slots__ = ("n", "params", "southern")

    def __init__(self, n, params, southern):
        self.n = n
        self.params = params
        self.southern = southern

    @classmethod
    def build(cls, params):
        southern = build_map(params)
        report = southern.check()
        if not report.ok:
            raise InvalidParams(f"built map fails {list(report.failures)}")
        return cls(params.n, params, southern)

    @classmethod
    def identity(cls, n, L):
        return cls.build(AutomorphismParams.identity(n, L))

    @classmethod
    def from_map(cls, m, n):
        return cls(n, validate_map(m, n), m)

    @property
    def L(self):
        return self.params.L

    def compose(self, other):
        """Group law; the composite is validated back into the family."""
        if self.n != other.n:
            raise SphereError("automorphisms of different spheres")
        composite = self.southern.compose(other.southern)
        return SphereAutomorphism.from_map(composite, self.n)

    def invert(self):
        inverse = self.southern.invert()
        return SphereAutomorphism.from_map(inverse, self.n)

    def northern(self):
        """The map in the northern chart, I_n^(-1) . T . I_n."""
        inv = transition_inverse(self.n, self.L)
        return inv.compose(self.southern.compose(transition(self.n, self.L)))

    def __eq__(self, other):
        if not isinstance(other, SphereAutomorphism):
            return NotImplemented
        return self.n == other.n and self.southern == other.southern

    def __repr__(self):
        return f"SphereAutomorphism(n={self.n}, {self.params!r})"


# ---------------------------------------------------------------------------
# parameter recovery
# ---------------------------------------------------------------------------


def _eval_at_zero(F):
    L = F.L
    point = SuperPoint(Supernumber.zero(L),
                       (Supernumber.zero(L), Supernumber.zero(L)))
    return F.evaluate(point)


def recover_moebius(m):
    """Exact (a, b, c, d) with f = (a z + b)/(c z + d) and det one.

    The scalar part is normalized by an exact Gaussian-rational square
    root and the sign tie-break; the soul correction is read off the first
    two derivatives of f composed with the inverse scalar Moebius map.
    """
    scalars = m.moebius_body()
    if scalars is None:
        raise NotInFamily("body of f is not a Moebius map")
    a0, b0, c0, d0 = scalars
    det = a0 * d0 - b0 * c0
    try:
        lam = det.inverse().sqrt()
    except NotASquare as exc:
        raise NotInFamily(f"Moebius determinant is not a square: {exc}") from exc
    a0, b0, c0, d0 = a0 * lam, b0 * lam, c0 * lam, d0 * lam
    if not _positive_leading((d0, c0, b0, a0)):
        a0, b0, c0, d0 = -a0, -b0, -c0, -d0

    L = m.L
    f0_inv = RationalSuperfunction(
        SuperPolynomial(L, 2, {(1, 0): grat(d0), (0, 0): -grat(b0)}),
        ScalarPoly({1: -c0, 0: a0}),
    )
    try:
        fhat = m.f.substitute(f0_inv)
        deriv = fhat.diff_z()
        e1 = _eval_at_zero(deriv)
        e2 = _eval_at_zero(deriv.diff_z())
        e0 = _eval_at_zero(fhat)
    except (PoleAtPoint, NotInvertible) as exc:
        raise NotInFamily(f"f is singular where a family member is not: {exc}") from exc
    if e1.body() != ONE:
        raise NotInFamily("f does not reduce to a unimodular Moebius map")
    d_hat = invsqrt_one_plus_soul(e1)
    b_hat = e0 * d_hat
    c_hat = (e2 * d_hat ** 3).scale(grat("-1/2"))
    a_hat = (Supernumber.one(L) + b_hat * c_hat) * d_hat.inverse()

    sa = Supernumber.scalar
    a = a_hat * sa(L, a0) + b_hat * sa(L, c0)
    b = a_hat * sa(L, b0) + b_hat * sa(L, d0)
    c = c_hat * sa(L, a0) + d_hat * sa(L, c0)
    d = c_hat * sa(L, b0) + d_hat * sa(L, d0)

    czd = _linear(L, c, d)
    if m.f * czd != _linear(L, a, b):
        raise NotInFamily("f is not of the form (a z + b)/(c z + d)")
    return a, b, c, d


def _as_coeff_list(F, czd, power, length, what):
    """Read F = (polynomial of degree < length) / czd**power, or complain."""
    poly = (F * czd ** power).as_superpolynomial()
    if poly is None:
        raise NotInFamily(f"{what} has a denominator outside (c z + d)^{power}")
    if poly.min_z() < 0 or poly.max_z() >= length:
        raise NotInFamily(f"{what} has degree outside the family bound")
    L = F.L
    coeffs = [Supernumber.zero(L) for _ in range(length)]
    for (k, mask), coeff in poly.terms.items():
        if mask:
            raise NotInFamily(f"{what} carries odd variables")
        coeffs[k] = coeff
    return coeffs


def _constant_or_fail(F, what):
    value = F.as_constant()
    if value is None:
        raise NotInFamily(f"{what} must be constant")
    return value


def validate_map(m, n):
    """Recover AutomorphismParams from a map, or raise NotInFamily.

    The recovered parameters rebuild the map exactly; any residual
    difference rejects membership.
    """
    report = m.check()
    if not report.ok:
        raise NotInFamily(f"map fails superconformality: {list(report.failures)}")
    a, b, c, d = recover_moebius(m)
    L = m.L
    czd = _linear(L, c, d)
    one = Supernumber.one(L)

    if n == 0:
        pp0, pp1 = _as_coeff_list(m.psi_plus, czd, 1, 2, "psi+")
        pm0, pm1 = _as_coeff_list(m.psi_minus, czd, 1, 2, "psi-")
        eps = {}
        for sign, g in ((+1, m.g_plus), (-1, m.g_minus)):
            s = grat(sign)
            y_num = _linear(
                L,
                (pp1 * pm1 * d).scale(-s),
                (pp0 * pm0 * c).scale(s)
                - ((pp1 * pm0 - pm1 * pp0) * d).scale(s)
                - (pp1 * pm1 * pp0 * pm0 * d),
            )
            ratio = (g * czd) * (RationalSuperfunction.one(L) + y_num / czd).inverse()
            eps[sign] = _constant_or_fail(ratio, f"eps{'+' if sign > 0 else '-'}")
        params = AutomorphismParams(
            0, a, b, c, d, eps_plus=eps[+1], eps_minus=eps[-1],
            psi_plus=[pp0, pp1], psi_minus=[pm0, pm1],
        )
    elif n == 1:
        psi_p = _constant_or_fail(m.psi_plus, "psi+")
        psi_m = _as_coeff_list(m.psi_minus, czd, 2, 3, "psi-")
        eps = _constant_or_fail(m.g_plus, "g+")
        params = AutomorphismParams(1, a, b, c, d, eps=eps,
                                    psi_plus=[psi_p], psi_minus=psi_m)
    elif n == -1:
        psi_m = _constant_or_fail(m.psi_minus, "psi-")
        psi_p = _as_coeff_list(m.psi_plus, czd, 2, 3, "psi+")
        eps = _constant_or_fail(m.g_minus, "g-")
        params = AutomorphismParams(-1, a, b, c, d, eps=eps,
                                    psi_plus=psi_p, psi_minus=[psi_m])
    elif n >= 2:
        if not m.psi_plus.is_zero():
            raise NotInFamily("psi+ must vanish for n >= 2")
        psi_m = _as_coeff_list(m.psi_minus, czd, n + 1, n + 2, "psi-")
        eps = _constant_or_fail(m.g_plus * czd.inverse() ** (n - 1), "g+ shape")
        if not eps.body():
            raise NotInFamily("eps must be invertible")
        params = AutomorphismParams(n, a, b, c, d, eps=eps, psi_minus=psi_m)
    else:
        if not m.psi_minus.is_zero():
            raise NotInFamily("psi- must vanish for n <= -2")
        psi_p = _as_coeff_list(m.psi_plus, czd, -n + 1, -n + 2, "psi+")
        eps = _constant_or_fail(m.g_minus * czd.inverse() ** (-n - 1), "g- shape")
        if not eps.body():
            raise NotInFamily("eps must be invertible")
        params = AutomorphismParams(n, a, b, c, d, eps=eps, psi_plus=psi_p)

    if build_map(params) != m:
        raise NotInFamily("map differs from the family member its data suggests")
    return params


# ---------------------------------------------------------------------------
# the northern chart and the pole constraint
# ---------------------------------------------------------------------------


class NorthernChart:
    """Composition-side northern map plus the closed-formula cross-check.

    The composed map is authoritative; `mismatches` lists any component
    where the closed transformation formulas disagree with it.
    """

    __slots__ = ("map", "formula", "mismatches")

    def __init__(self, composed, formula, mismatches):
        self.map = composed
        self.formula = formula
        self.mismatches = tuple(mismatches)

    @property
    def consistent(self):
        return not self.mismatches


def northern_formula(T):
    """The closed transformation formulas for the northern components."""
    m = T.southern
    n = T.n
    L = m.L
    inv_z = RationalSuperfunction.z_power(L, -1)
    f1 = m.f.substitute(inv_z)
    psi_p1 = m.psi_plus.substitute(inv_z)
    psi_m1 = m.psi_minus.substitute(inv_z)
    g_p1 = m.g_plus.substitute(inv_z)
    g_m1 = m.g_minus.substitute(inv_z)
    f1_inv = f1.inverse()

    def fpow(k):
        return f1 ** k if k >= 0 else f1_inv ** (-k)

    f_t = f1_inv
    psi_pt = (psi_p1 * fpow(n - 1)).scale_left(-IMAG)
    psi_mt = (psi_m1 * fpow(-n - 1)).scale_left(-IMAG)
    cross = psi_p1 * psi_m1
    g_pt = (RationalSuperfunction.z_power(L, n - 1) * g_p1 * fpow(n - 2)
            * (f1 - cross.scale_left(grat(n - 1))))
    g_mt = (RationalSuperfunction.z_power(L, -n - 1) * g_m1 * fpow(-n - 2)
            * (f1 - cross.scale_left(grat(n + 1))))
    return SuperconformalMap(f_t, g_pt, g_mt, psi_pt, psi_mt,
                             coefficient_bound=False)


def to_north(T):
    """Northern map by composition, cross-checked against the closed
    formulas; disagreements are reported, never patched."""
    composed = T.northern()
    formula = northern_formula(T)
    mismatches = [
        name for name, comp in composed.components().items()
        if comp != formula.components()[name]
    ]
    return NorthernChart(composed, formula, mismatches)


def allowed_pole_check(T, composed=None):
    """Check the northern components only blow up at z = -a_B/b_B."""
    if composed is None:
        composed = T.northern()
    a_body = T.params.a.body()
    b_body = T.params.b.body()
    failures = []
    for name, comp in composed.components().items():
        pole_at_zero = comp.num.min_z() < 0
        den = comp.den
        if b_body:
            root = -(a_body / b_body)
            expected = ScalarPoly({1: ONE, 0: -root}) ** den.degree()
            if den != expected:
                failures.append(f"{name}: denominator is not a power of (z - {root})")
            if pole_at_zero and root != grat(0):
                failures.append(f"{name}: pole at 0 but only {root} is allowed")
        else:
            if den.degree() > 0:
                failures.append(f"{name}: finite pole but none is allowed")
            if pole_at_zero:
                failures.append(f"{name}: pole at 0 but none is allowed")
    return failures


# ---------------------------------------------------------------------------
# the group action, kernels, odd translations
# ---------------------------------------------------------------------------


class MatrixGroupElement:
    """An element (a, b, c, d; eps) of SL(2) x GL(1) over the even part."""

    __slots__ = ("a", "b", "c", "d", "eps")

    def __init__(self, a, b, c, d, eps):
        for name, v in (("a", a), ("b", b), ("c", c), ("d", d), ("eps", eps)):
            if not isinstance(v, Supernumber) or not v.is_even():
                raise InvalidParams(f"{name} must be an even supernumber")
        if a * d - b * c != Supernumber.one(a.L):
            raise InvalidParams("matrix part must have determinant one")
        if not eps.body():
            raise InvalidParams("eps must be invertible")
        self.a, self.b, self.c, self.d, self.eps = a, b, c, d, eps

    @classmethod
    def from_scalars(cls, L, a, b, c, d, eps):
        sa = Supernumber.scalar
        return cls(sa(L, a), sa(L, b), sa(L, c), sa(L, d), sa(L, eps))

    @classmethod
    def identity(cls, L):
        one = Supernumber.one(L)
        zero = Supernumber.zero(L)
        return cls(one, zero, zero, one, one)

    def compose(self, other):
        return MatrixGroupElement(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
            self.eps * other.eps,
        )

    def invert(self):
        return MatrixGroupElement(self.d, -self.b, -self.c, self.a,
                                  self.eps.inverse())

    def negate_matrix(self, negate_eps):
        return MatrixGroupElement(-self.a, -self.b, -self.c, -self.d,
                                  -self.eps if negate_eps else self.eps)

    def __eq__(self, other):
        if not isinstance(other, MatrixGroupElement):
            return NotImplemented
        return (self.a, self.b, self.c, self.d, self.eps) == \
            (other.a, other.b, other.c, other.d, other.eps)

    def __repr__(self):
        return (f"MatrixGroupElement(a={self.a}, b={self.b}, c={self.c}, "
                f"d={self.d}, eps={self.eps})")


def group_action(n, alpha):
    """The automorphism (z, t+, t-) -> ((az+b)/(cz+d), t+ eps (cz+d)^(n-1),
    t- eps^(-1) (cz+d)^(-n-1)) as a family member."""
    L = alpha.a.L
    zeros_plus, zeros_minus = AutomorphismParams.psi_lengths(n)
    zero = Supernumber.zero(L)
    psi_plus = [zero] * zeros_plus
    psi_minus = [zero] * zeros_minus
    if n == 0:
        params = AutomorphismParams(
            0, alpha.a, alpha.b, alpha.c, alpha.d,
            eps_plus=alpha.eps, eps_minus=alpha.eps.inverse(),
            psi_plus=psi_plus, psi_minus=psi_minus,
        )
    elif n >= 1:
        params = AutomorphismParams(n, alpha.a, alpha.b, alpha.c, alpha.d,
                                    eps=alpha.eps,
                                    psi_plus=psi_plus, psi_minus=psi_minus)
    else:
        params = AutomorphismParams(n, alpha.a, alpha.b, alpha.c, alpha.d,
                                    eps=alpha.eps.inverse(),
                                    psi_plus=psi_plus, psi_minus=psi_minus)
    return SphereAutomorphism.build(params)


def acts_identically(n, alpha, beta):
    """True when both matrix elements act as the same automorphism."""
    return group_action(n, alpha).southern == group_action(n, beta).southern


def in_action_kernel(n, alpha, beta):
    """True when alpha beta^(-1) lies in the order-two kernel K for n mod 2."""
    q = alpha.compose(beta.invert())
    L = q.a.L
    identity = MatrixGroupElement.identity(L)
    if q == identity:
        return True
    generator = identity.negate_matrix(negate_eps=(n % 2 == 0))
    return q == generator


def odd_translation(n, coeffs):
    """The abelian translation automorphism for an odd coefficient vector.

    For n >= 2 the vector feeds psi-; for n <= -2 it feeds psi+.  Entries
    are indexed by z-degree and must be odd with generators <= L - 2.
    """
    if abs(n) < 2:
        raise InvalidParams("odd translations exist for |n| >= 2")
    coeffs = tuple(coeffs)
    if len(coeffs) != abs(n) + 2:
        raise InvalidParams(f"need {abs(n) + 2} coefficients for n={n}")
    L = coeffs[0].L
    one = Supernumber.one(L)
    zero = Supernumber.zero(L)
    if n >= 2:
        params = AutomorphismParams(n, one, zero, zero, one, eps=one,
                                    psi_minus=coeffs)
    else:
        params = AutomorphismParams(n, one, zero, zero, one, eps=one,
                                    psi_plus=coeffs)
    return SphereAutomorphism.build(params)


def conjugated_translation_coeffs(n, alpha, coeffs):
    """Coefficient vector of alpha . T(coeffs) . alpha^(-1).

    Conjugation sends the degree-(|n|+1) coefficient polynomial U to

        eps^(-+1) * (a - c z)^(|n|+1) * U((d z - b)/(a - c z)),

    with the weight eps^(-1) for n >= 2 and eps for n <= -2.
    """
    L = alpha.a.L
    lin_num = SuperPolynomial(L, 2, {(1, 0): alpha.d, (0, 0): -alpha.b})
    lin_den = SuperPolynomial(L, 2, {(1, 0): -alpha.c, (0, 0): alpha.a})
    top = abs(n) + 1
    acc = SuperPolynomial.zero(L, 2)
    num_pow = SuperPolynomial.one(L, 2)
    den_pows = [SuperPolynomial.one(L, 2)]
    for _ in range(top):
        den_pows.append(den_pows[-1] * lin_den)
    for j, u in enumerate(coeffs):
        term = (num_pow * den_pows[top - j]).scale_left(u)
        acc = acc + term
        num_pow = num_pow * lin_num
    weight = alpha.eps.inverse() if n >= 2 else alpha.eps
    out = [Supernumber.zero(L) for _ in range(top + 1)]
    for (k, mask), coeff in acc.terms.items():
        assert mask == 0
        out[k] = weight * coeff
    return out
