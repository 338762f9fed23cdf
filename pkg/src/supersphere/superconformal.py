"""N=2 superconformal maps in component form.

A superanalytic coordinate change (z, theta+, theta-) -> (zt, tt+, tt-) is
superconformal when the odd superderivations D+ and D- transform
homogeneously of degree one, which comes down to the two conditions

    D+- tt-+ = 0,        D+- zt - tt-+ * (D+- tt+-) = 0,

with D+- tt+- not identically zero.  Such a map is determined by five
component functions of z alone: even f, g+, g- and odd psi+, psi-, through

    zt  = f + theta+ g+ psi- + theta- g- psi+ + theta+ theta- (psi+ psi-)'
    tt+- = psi+- + theta+- g+- +- theta+ theta- (psi+-)'

subject to the constraint

    f' = (psi+)' psi- - psi+ (psi-)' + g+ g-.

This module stores maps by their components, expands them to full
coordinate triples, extracts components back, composes, inverts, and
converts to and from N=1 superanalytic maps (coefficients restricted two
generators below the ambient algebra so odd partials stay well defined).

Inversion works on the full coordinate triple: the scalar part (a Moebius
map in z together with the body factors of g+-) is inverted in closed
form, and the remaining nilpotent correction is removed by a fixed-point
iteration that terminates because every correction term raises the soul
degree.
"""

from __future__ import annotations

from .scalars import ONE, grat
from .grassmann import NotInvertible, Supernumber
from .superfield import (
    RationalSuperfunction,
    ScalarPoly,
    SingularComposition,
    SuperPolynomial,
    SuperfieldError,
    THETA_MINUS,
    THETA_PLUS,
    apply_D,
)


class NotSuperconformal(SuperfieldError):
    """A coordinate triple fails the superconformality conditions."""


class NotInvertibleComponent(SuperfieldError):
    """A component function that must be invertible has zero body."""


def _theta_free_component(F, L, name):
    if isinstance(F, (int, Supernumber)):
        F = RationalSuperfunction.from_constant(L, F)
    if not isinstance(F, RationalSuperfunction):
        raise TypeError(f"component {name} must be a rational superfunction")
    if F.n_odd != 2 or F.L != L:
        raise ValueError(f"component {name} has shape {F.shape()}, wanted ({L}, 2)")
    if not F.is_theta_free():
        raise ValueError(f"component {name} must not contain odd variables")
    return F


class CoordinateTriple:
    """A full coordinate map (even, odd+, odd-) in (1,2)-variables."""

    __slots__ = ("even", "plus", "minus")

    def __init__(self, even, plus, minus):
        self.even = even
        self.plus = plus
        self.minus = minus

    @classmethod
    def identity(cls, L):
        return cls(
            RationalSuperfunction.z(L),
            RationalSuperfunction.theta(L, THETA_PLUS),
            RationalSuperfunction.theta(L, THETA_MINUS),
        )

    @property
    def L(self):
        return self.even.L

    def compose(self, inner):
        """self after inner: substitute inner's components into self."""
        images = (inner.plus, inner.minus)
        return CoordinateTriple(
            self.even.substitute(inner.even, images),
            self.plus.substitute(inner.even, images),
            self.minus.substitute(inner.even, images),
        )

    def __add__(self, other):
        return CoordinateTriple(
            self.even + other.even, self.plus + other.plus, self.minus + other.minus
        )

    def __sub__(self, other):
        return CoordinateTriple(
            self.even - other.even, self.plus - other.plus, self.minus - other.minus
        )

    def __eq__(self, other):
        if not isinstance(other, CoordinateTriple):
            return NotImplemented
        return (
            self.even == other.even
            and self.plus == other.plus
            and self.minus == other.minus
        )

    def evaluate(self, point):
        return (
            self.even.evaluate(point),
            self.plus.evaluate(point),
            self.minus.evaluate(point),
        )

    def __repr__(self):
        return f"CoordinateTriple({self.even!r}, {self.plus!r}, {self.minus!r})"


class CheckReport:
    """Outcome of a superconformality check, with the failed clauses."""

    __slots__ = ("failures",)

    CLAUSES = ("constraint", "g_plus_body", "g_minus_body")

    def __init__(self, failures):
        self.failures = tuple(failures)

    @property
    def ok(self):
        return not self.failures

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            return "CheckReport(ok)"
        return f"CheckReport(failed={list(self.failures)})"


class SuperconformalMap:
    """An N=2 superconformal map, stored by its five component functions."""

    __slots__ = ("f", "g_plus", "g_minus", "psi_plus", "psi_minus")

    def __init__(self, f, g_plus, g_minus, psi_plus=None, psi_minus=None,
                 coefficient_bound=True):
        L = f.L if isinstance(f, RationalSuperfunction) else g_plus.L
        zero = RationalSuperfunction.zero(L)
        self.f = _theta_free_component(f, L, "f")
        self.g_plus = _theta_free_component(g_plus, L, "g+")
        self.g_minus = _theta_free_component(g_minus, L, "g-")
        self.psi_plus = _theta_free_component(
            zero if psi_plus is None else psi_plus, L, "psi+"
        )
        self.psi_minus = _theta_free_component(
            zero if psi_minus is None else psi_minus, L, "psi-"
        )
        if coefficient_bound and L >= 2:
            for name, comp in self.components().items():
                if not comp.num.coefficients_within(L - 2):
                    raise ValueError(
                        f"component {name} uses generators above {L - 2}; "
                        "coefficients must leave room for the odd variables"
                    )

    @property
    def L(self):
        return self.f.L

    @classmethod
    def identity(cls, L):
        one = RationalSuperfunction.one(L)
        return cls(RationalSuperfunction.z(L), one, one)

    def components(self):
        return {
            "f": self.f,
            "g+": self.g_plus,
            "g-": self.g_minus,
            "psi+": self.psi_plus,
            "psi-": self.psi_minus,
        }

    def __eq__(self, other):
        if not isinstance(other, SuperconformalMap):
            return NotImplemented
        return (
            self.f == other.f
            and self.g_plus == other.g_plus
            and self.g_minus == other.g_minus
            and self.psi_plus == other.psi_plus
            and self.psi_minus == other.psi_minus
        )

    def __repr__(self):
        comps = ", ".join(f"{k}={v!r}" for k, v in self.components().items())
        return f"SuperconformalMap({comps})"

    # -- the defining constraint ------------------------------------------

    def check(self):
        """Diagnose the superconformality constraint clause by clause."""
        failures = []
        lhs = self.f.diff_z()
        rhs = (
            self.psi_plus.diff_z() * self.psi_minus
            - self.psi_plus * self.psi_minus.diff_z()
            + self.g_plus * self.g_minus
        )
        if lhs != rhs:
            failures.append("constraint")
        if self.g_plus.body_is_zero():
            failures.append("g_plus_body")
        if self.g_minus.body_is_zero():
            failures.append("g_minus_body")
        return CheckReport(failures)

    def is_superconformal(self):
        return self.check().ok

    # -- expansion and extraction -------------------------------------------

    def expand(self, checked=True):
        """The full coordinate triple (zt, tt+, tt-)."""
        if checked:
            report = self.check()
            if not report.ok:
                raise NotSuperconformal(f"components fail {list(report.failures)}")
        L = self.L
        tp = RationalSuperfunction.theta(L, THETA_PLUS)
        tm = RationalSuperfunction.theta(L, THETA_MINUS)
        tptm = tp * tm
        zt = (
            self.f
            + tp * (self.g_plus * self.psi_minus)
            + tm * (self.g_minus * self.psi_plus)
            + tptm * (self.psi_plus * self.psi_minus).diff_z()
        )
        ttp = self.psi_plus + tp * self.g_plus + tptm * self.psi_plus.diff_z()
        ttm = self.psi_minus + tm * self.g_minus - tptm * self.psi_minus.diff_z()
        return CoordinateTriple(zt, ttp, ttm)

    @classmethod
    def extract(cls, triple, coefficient_bound=True, checked=True):
        """Read components off a coordinate triple, checking the two
        defining conditions first.

        checked=False skips the condition checks; composition uses it
        because composites of valid maps satisfy them automatically, and
        the closure suites re-verify that property on the results.
        """
        if checked:
            for sign, image in ((+1, triple.minus), (-1, triple.plus)):
                if not apply_D(image, sign).is_zero():
                    label = "D+ tt-" if sign > 0 else "D- tt+"
                    raise NotSuperconformal(f"{label} is not zero")
            for sign, image in ((+1, triple.plus), (-1, triple.minus)):
                opposite = triple.minus if sign > 0 else triple.plus
                residual = apply_D(triple.even, sign) \
                    - opposite * apply_D(image, sign)
                if not residual.is_zero():
                    label = "D+" if sign > 0 else "D-"
                    raise NotSuperconformal(
                        f"{label} zt - tt * {label} tt does not vanish"
                    )
        f = triple.even.theta_component(0)
        psi_plus = triple.plus.theta_component(0)
        psi_minus = triple.minus.theta_component(0)
        g_plus = triple.plus.theta_component(1 << THETA_PLUS)
        g_minus = triple.minus.theta_component(1 << THETA_MINUS)
        return cls(f, g_plus, g_minus, psi_plus, psi_minus,
                   coefficient_bound=coefficient_bound)

    # -- group operations ----------------------------------------------------

    def compose(self, inner):
        """self after inner, again superconformal (tested, not assumed)."""
        triple = self.expand(checked=False).compose(inner.expand(checked=False))
        return SuperconformalMap.extract(triple, checked=False)

    def __matmul__(self, inner):
        return self.compose(inner)

    def moebius_body(self):
        """(a, b, c, d) scalars with body(f) = (a z + b)/(c z + d), or None.

        The representative is only determined up to scale; callers
        normalize the determinant themselves.
        """
        num_body = self.f.num.body_scalar_poly()
        if not num_body:
            return None
        v = min(min(num_body), 0)
        p = ScalarPoly({k - v: c for k, c in num_body.items()})
        q = self.f.den.shift(-v) if v else self.f.den
        g = p.gcd(q)
        if g.degree() > 0:
            p, _ = p.divmod(g)
            q, _ = q.divmod(g)
        if p.degree() > 1 or q.degree() > 1:
            return None
        zero = grat(0)
        a, b = p.coeffs.get(1, zero), p.coeffs.get(0, zero)
        c, d = q.coeffs.get(1, zero), q.coeffs.get(0, zero)
        if not (a * d - b * c):
            return None
        return a, b, c, d

    def invert(self):
        """The inverse map; exact, via scalar closed form plus fixed point.

        Requires body(f) to be a Moebius map with invertible determinant
        and g+- to have nonvanishing body.
        """
        moebius = self.moebius_body()
        if moebius is None:
            raise NotInvertible("body of f is not an invertible Moebius map")
        if self.g_plus.body_is_zero() or self.g_minus.body_is_zero():
            raise NotInvertible("g+ or g- has vanishing body")
        a, b, c, d = moebius
        L = self.L
        f0_inv = RationalSuperfunction(
            SuperPolynomial(L, 2, {(1, 0): grat(d), (0, 0): -grat(b)}),
            ScalarPoly({1: -c, 0: a}),
        )
        h0_inv = CoordinateTriple(
            f0_inv,
            RationalSuperfunction.theta(L, THETA_PLUS)
            * _scalar_part(self.g_plus).substitute(f0_inv).inverse(),
            RationalSuperfunction.theta(L, THETA_MINUS)
            * _scalar_part(self.g_minus).substitute(f0_inv).inverse(),
        )
        identity = CoordinateTriple.identity(L)
        full = self.expand(checked=False)
        correction = full.compose(h0_inv) - identity
        if _triple_is_zero(correction):
            return SuperconformalMap.extract(h0_inv)
        # right inverse of (id + correction) by fixed point; each round
        # raises the soul degree of the remaining error
        g = identity
        for _ in range(L + 3):
            g_next = identity - correction.compose(g)
            if g_next == g:
                break
            g = g_next
        else:
            raise NotInvertible("nilpotent correction did not stabilize")
        return SuperconformalMap.extract(h0_inv.compose(g))


def _scalar_part(F):
    """The scalar body rational function of a theta-free component."""
    body = F.num.body_scalar_poly()
    num = SuperPolynomial(
        F.L, F.n_odd, {(k, 0): Supernumber.scalar(F.L, c) for k, c in body.items()}
    )
    return RationalSuperfunction(num, F.den)


def _triple_is_zero(t):
    return t.even.is_zero() and t.plus.is_zero() and t.minus.is_zero()


# ---------------------------------------------------------------------------
# the correspondence with N=1 superanalytic maps
# ---------------------------------------------------------------------------


class N1SuperanalyticMap:
    """An invertible N=1 superanalytic map (f1 + theta xi, psi + theta g).

    Component coefficients live two generators below the ambient algebra,
    matching the superconformal side of the correspondence; g must have
    nonvanishing body.
    """

    __slots__ = ("f1", "xi", "psi", "g")

    def __init__(self, f1, xi, psi, g, coefficient_bound=True):
        L = f1.L if isinstance(f1, RationalSuperfunction) else g.L
        self.f1 = _theta_free_component(f1, L, "f1")
        self.xi = _theta_free_component(xi, L, "xi")
        self.psi = _theta_free_component(psi, L, "psi")
        self.g = _theta_free_component(g, L, "g")
        if self.g.body_is_zero():
            raise NotInvertibleComponent("g must have nonvanishing body")
        if coefficient_bound and L >= 2:
            for name in ("f1", "xi", "psi", "g"):
                if not getattr(self, name).num.coefficients_within(L - 2):
                    raise ValueError(f"component {name} uses generators above {L - 2}")

    @property
    def L(self):
        return self.f1.L

    @classmethod
    def identity(cls, L):
        zero = RationalSuperfunction.zero(L)
        return cls(RationalSuperfunction.z(L), zero, zero,
                   RationalSuperfunction.one(L))

    def components(self):
        return {"f1": self.f1, "xi": self.xi, "psi": self.psi, "g": self.g}

    def __eq__(self, other):
        if not isinstance(other, N1SuperanalyticMap):
            return NotImplemented
        return (
            self.f1 == other.f1
            and self.xi == other.xi
            and self.psi == other.psi
            and self.g == other.g
        )

    def __repr__(self):
        comps = ", ".join(f"{k}={v!r}" for k, v in self.components().items())
        return f"N1SuperanalyticMap({comps})"

    def expand(self):
        """The coordinate pair (f1 + theta xi, psi + theta g) in (1,1)-variables."""
        theta = RationalSuperfunction.theta(self.L, 0, n_odd=1)
        f1, xi, psi, g = (
            _reshape_theta_free(comp, 1) for comp in (self.f1, self.xi, self.psi, self.g)
        )
        return (f1 + theta * xi, psi + theta * g)


def _reshape_theta_free(F, n_odd):
    if not F.is_theta_free():
        raise ValueError("only theta-free functions can change odd arity")
    num = SuperPolynomial(F.L, n_odd, {key: c for key, c in F.num.terms.items()})
    return RationalSuperfunction(num, F.den, _normalized=True)


def to_n1(m):
    """The N=1 superanalytic map corresponding to a superconformal one."""
    f1 = m.f + m.psi_plus * m.psi_minus
    xi = grat(2) * (m.g_plus * m.psi_minus)
    return N1SuperanalyticMap(f1, xi, m.psi_plus, m.g_plus,
                              coefficient_bound=False)


def from_n1(h):
    """The superconformal map corresponding to an N=1 superanalytic one.

    The output satisfies the superconformal constraint by construction;
    the caller can confirm with .check().
    """
    if h.g.body_is_zero():
        raise NotInvertibleComponent("g must have nonvanishing body")
    g_inv = h.g.inverse()
    f = h.f1 - (h.psi * h.xi) * g_inv * grat("1/2")
    g_minus = h.f1.diff_z() * g_inv - (h.psi.diff_z() * h.xi) * (g_inv * g_inv)
    psi_minus = h.xi * g_inv * grat("1/2")
    return SuperconformalMap(f, h.g, g_minus, h.psi, psi_minus,
                             coefficient_bound=False)
