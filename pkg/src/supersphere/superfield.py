"""Laurent superpolynomials and rational superfunctions.

Functions of one even variable z and up to two odd variables are
represented exactly.  A superpolynomial is a finite sum of terms

    t^M * c * z^k

where t^M is an ordered monomial in the odd variables (theta+ before
theta-), c is a supernumber coefficient and k is a (possibly negative)
integer.  Odd monomials are kept on the left of their coefficients, and
odd differentiation is the left partial derivative:

    d/dtheta+ (theta+ A) = A,   d/dtheta- (theta+ theta- A) = -theta+ A.

A rational superfunction is a superpolynomial numerator over a monic
denominator polynomial in z with plain Q(i) coefficients.  Denominators
with supernumber coefficients never appear in the canonical form: writing
D = B + S with B the scalar body polynomial and S the nilpotent rest,

    1/D = sum_j (-1)**j S**j / B**(j+1)

terminates, so any such denominator is absorbed into the numerator.  With
scalar denominators, equality is decided by cross-multiplication and no
gcd theory over a non-domain is ever needed.

The odd superderivations

    D+ = d/dtheta+ + theta- d/dz,      D- = d/dtheta- + theta+ d/dz

satisfy (D+)**2 = (D-)**2 = 0 and D+D- + D-D+ = 2 d/dz; the verification
suites check these as operator identities.
"""

from __future__ import annotations

from .scalars import GaussianRational, ONE, ZERO, grat
from .grassmann import NotInvertible, Supernumber, reorder_sign

THETA_PLUS = 0
THETA_MINUS = 1


class SuperfieldError(Exception):
    pass


class PoleAtPoint(SuperfieldError):
    """Denominator body vanishes at the evaluation point."""


class SingularComposition(SuperfieldError):
    """Denominator body vanishes identically after substitution."""


# ---------------------------------------------------------------------------
# scalar polynomials (denominators)
# ---------------------------------------------------------------------------


class ScalarPoly:
    """Polynomial in z with Q(i) coefficients and nonnegative exponents."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        clean = {}
        if coeffs:
            for k, c in coeffs.items():
                if k < 0:
                    raise ValueError("scalar polynomials use nonnegative exponents")
                c = grat(c)
                if c:
                    clean[k] = c
        self.coeffs = clean

    @classmethod
    def one(cls):
        return cls({0: ONE})

    @classmethod
    def z(cls):
        return cls({1: ONE})

    @classmethod
    def const(cls, c):
        return cls({0: grat(c)})

    def is_zero(self):
        return not self.coeffs

    def is_one(self):
        return self.coeffs == {0: ONE}

    def degree(self):
        return max(self.coeffs) if self.coeffs else -1

    def valuation(self):
        return min(self.coeffs) if self.coeffs else 0

    def leading(self):
        return self.coeffs[self.degree()]

    def __eq__(self, other):
        return isinstance(other, ScalarPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            s = out.get(k)
            if s is None:
                out[k] = c
            else:
                s = s + c
                if s:
                    out[k] = s
                else:
                    del out[k]
        return ScalarPoly(out)

    def __neg__(self):
        return ScalarPoly({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        out = {}
        for k1, c1 in self.coeffs.items():
            for k2, c2 in other.coeffs.items():
                k = k1 + k2
                c = c1 * c2
                s = out.get(k)
                if s is None:
                    out[k] = c
                else:
                    s = s + c
                    if s:
                        out[k] = s
                    else:
                        del out[k]
        return ScalarPoly(out)

    def scale(self, c):
        c = grat(c)
        if not c:
            return ScalarPoly()
        return ScalarPoly({k: c * v for k, v in self.coeffs.items()})

    def shift(self, n):
        """Multiply by z**n (n may be negative if valuation allows)."""
        if not self.coeffs:
            return self
        if self.valuation() + n < 0:
            raise ValueError("shift would create negative exponents")
        return ScalarPoly({k + n: c for k, c in self.coeffs.items()})

    def __pow__(self, n):
        out = ScalarPoly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def monic(self):
        """Return (monic polynomial, leading coefficient)."""
        if not self.coeffs:
            raise ZeroDivisionError("zero polynomial has no monic form")
        lc = self.leading()
        if lc == ONE:
            return self, lc
        return self.scale(lc.inverse()), lc

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        n = self.degree()
        d = other.degree()
        if n < d:
            return ScalarPoly(), self
        rem = [ZERO] * (n + 1)
        for k, c in self.coeffs.items():
            rem[k] = c
        lc_inv = other.leading().inverse()
        if d == 0:
            quo = {k: c * lc_inv for k, c in self.coeffs.items()}
            return ScalarPoly(quo), ScalarPoly()
        quo = [ZERO] * (n - d + 1)
        if d == 1:
            # synthetic division by lead*z + const
            shift = -(other.coeffs.get(0, ZERO) * lc_inv)
            acc = rem[n]
            for k in range(n, 0, -1):
                q = acc * lc_inv
                quo[k - 1] = q
                acc = rem[k - 1] + (shift * acc if shift else ZERO)
            rem = [acc]
        else:
            ocoef = [ZERO] * (d + 1)
            for k, c in other.coeffs.items():
                ocoef[k] = c
            for k in range(n, d - 1, -1):
                c = rem[k]
                if not c:
                    continue
                q = c * lc_inv
                quo[k - d] = q
                rem[k] = ZERO
                base = k - d
                for j in range(d):
                    oc = ocoef[j]
                    if oc:
                        rem[base + j] = rem[base + j] - q * oc
            rem = rem[:d]
        return (
            ScalarPoly({k: c for k, c in enumerate(quo) if c}),
            ScalarPoly({k: c for k, c in enumerate(rem) if c}),
        )

    def divides(self, other):
        _, rem = other.divmod(self)
        return rem.is_zero()

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            _, r = a.divmod(b)
            a, b = b, r
        if a.is_zero():
            return a
        return a.monic()[0]

    def derivative(self):
        return ScalarPoly({k - 1: c * k for k, c in self.coeffs.items() if k})

    def eval_scalar(self, x):
        out = ZERO
        for k, c in self.coeffs.items():
            out = out + c * (x ** k)
        return out

    def eval_super(self, s):
        """Evaluate at a supernumber argument."""
        out = Supernumber.zero(s.L)
        for k, c in self.coeffs.items():
            out = out + (s ** k).scale(c)
        return out

    def __repr__(self):
        if not self.coeffs:
            return "ScalarPoly(0)"
        parts = [f"({c})*z^{k}" for k, c in sorted(self.coeffs.items())]
        return "ScalarPoly(" + " + ".join(parts) + ")"


def poly_from_roots(root_pairs):
    """Product of (b*z + a) factors given as (b, a) coefficient pairs."""
    out = ScalarPoly.one()
    for b, a in root_pairs:
        out = out * ScalarPoly({1: grat(b), 0: grat(a)})
    return out


# ---------------------------------------------------------------------------
# superpolynomials
# ---------------------------------------------------------------------------


class SuperPolynomial:
    """Laurent polynomial in z and the odd variables, over a Grassmann algebra.

    terms maps (z exponent, odd monomial bitmask) to a supernumber
    coefficient; bit 0 is theta+ (or the single theta), bit 1 is theta-.
    """

    __slots__ = ("L", "n_odd", "terms")

    def __init__(self, L, n_odd, terms=None):
        if n_odd not in (1, 2):
            raise ValueError("superpolynomials carry one or two odd variables")
        self.L = L
        self.n_odd = n_odd
        limit = 1 << n_odd
        clean = {}
        if terms:
            for (k, mask), coeff in terms.items():
                if not 0 <= mask < limit:
                    raise ValueError(f"odd monomial {mask} out of range")
                if not isinstance(coeff, Supernumber):
                    coeff = Supernumber.scalar(L, coeff)
                if coeff.L != L:
                    raise ValueError("coefficient generator count mismatch")
                if coeff:
                    clean[(k, mask)] = coeff
        self.terms = clean

    @classmethod
    def _make(cls, L, n_odd, terms):
        out = cls.__new__(cls)
        out.L = L
        out.n_odd = n_odd
        out.terms = terms
        return out

    @classmethod
    def zero(cls, L, n_odd=2):
        return cls._make(L, n_odd, {})

    @classmethod
    def constant(cls, L, value, n_odd=2):
        if not isinstance(value, Supernumber):
            value = Supernumber.scalar(L, value)
        return cls._make(L, n_odd, {(0, 0): value} if value else {})

    @classmethod
    def one(cls, L, n_odd=2):
        return cls.constant(L, ONE, n_odd)

    @classmethod
    def z_power(cls, L, k, n_odd=2, coeff=ONE):
        return cls(L, n_odd, {(k, 0): coeff})

    @classmethod
    def theta(cls, L, which=THETA_PLUS, n_odd=2):
        if which >= n_odd:
            raise ValueError("odd variable index out of range")
        return cls._make(L, n_odd, {(0, 1 << which): Supernumber.one(L)})

    def _check(self, other):
        if self.L != other.L or self.n_odd != other.n_odd:
            raise ValueError("superpolynomial shape mismatch")

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, SuperPolynomial):
            return NotImplemented
        return (
            self.L == other.L
            and self.n_odd == other.n_odd
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.L, self.n_odd, frozenset(self.terms.items())))

    def __add__(self, other):
        if not isinstance(other, SuperPolynomial):
            other = SuperPolynomial.constant(self.L, other, self.n_odd)
        self._check(other)
        terms = dict(self.terms)
        for key, coeff in other.terms.items():
            s = terms.get(key)
            if s is None:
                terms[key] = coeff
            else:
                s = s + coeff
                if s:
                    terms[key] = s
                else:
                    del terms[key]
        return SuperPolynomial._make(self.L, self.n_odd, terms)

    def __radd__(self, other):
        return self + other

    def __neg__(self):
        return SuperPolynomial._make(
            self.L, self.n_odd, {key: -c for key, c in self.terms.items()}
        )

    def __sub__(self, other):
        if not isinstance(other, SuperPolynomial):
            other = SuperPolynomial.constant(self.L, other, self.n_odd)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, SuperPolynomial):
            return self.scale_right(other)
        self._check(other)
        terms = {}
        for (k1, m1), c1 in self.terms.items():
            for (k2, m2), c2 in other.terms.items():
                if m1 & m2:
                    continue
                # move c1 through the odd monomial of the second factor
                a = c1.grade_involution() if m2.bit_count() & 1 else c1
                c = a * c2
                if reorder_sign(m1, m2) < 0:
                    c = -c
                if not c:
                    continue
                key = (k1 + k2, m1 | m2)
                s = terms.get(key)
                if s is None:
                    terms[key] = c
                else:
                    s = s + c
                    if not s:
                        del terms[key]
                    else:
                        terms[key] = s
        return SuperPolynomial._make(self.L, self.n_odd, terms)

    def scale_right(self, value):
        """Multiply every coefficient on the right by a supernumber."""
        if not isinstance(value, Supernumber):
            value = Supernumber.scalar(self.L, value)
        terms = {}
        for key, c in self.terms.items():
            s = c * value
            if s:
                terms[key] = s
        return SuperPolynomial._make(self.L, self.n_odd, terms)

    def scale_left(self, value):
        """Multiply by a supernumber on the left (signs from odd monomials)."""
        if not isinstance(value, Supernumber):
            value = Supernumber.scalar(self.L, value)
        terms = {}
        for (k, m), c in self.terms.items():
            a = value.grade_involution() if m.bit_count() & 1 else value
            s = a * c
            if s:
                terms[(k, m)] = s
        return SuperPolynomial._make(self.L, self.n_odd, terms)

    def mul_scalar_poly(self, poly):
        terms = {}
        for (k, m), c in self.terms.items():
            for j, q in poly.coeffs.items():
                key = (k + j, m)
                s = terms.get(key)
                add = c.scale(q)
                if s is None:
                    terms[key] = add
                else:
                    s = s + add
                    if s:
                        terms[key] = s
                    else:
                        del terms[key]
        return SuperPolynomial._make(self.L, self.n_odd, terms)

    def shift_z(self, n):
        return SuperPolynomial._make(
            self.L, self.n_odd, {(k + n, m): c for (k, m), c in self.terms.items()}
        )

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative powers are a rational-function operation")
        out = SuperPolynomial.one(self.L, self.n_odd)
        for _ in range(n):
            out = out * self
            if not out.terms:
                break
        return out

    # -- calculus ------------------------------------------------------------

    def diff_z(self):
        terms = {}
        for (k, m), c in self.terms.items():
            if k == 0:
                continue
            s = c.scale(k)
            if s:
                terms[(k - 1, m)] = s
        return SuperPolynomial._make(self.L, self.n_odd, terms)

    def diff_theta(self, which):
        """Left partial derivative with respect to an odd variable."""
        if which >= self.n_odd:
            raise ValueError("odd variable index out of range")
        bit = 1 << which
        below = bit - 1
        terms = {}
        for (k, m), c in self.terms.items():
            if not m & bit:
                continue
            if (m & below).bit_count() & 1:
                c = -c
            terms[(k, m ^ bit)] = c
        return SuperPolynomial._make(self.L, self.n_odd, terms)

    # -- structure -----------------------------------------------------------

    def min_z(self):
        return min((k for k, _ in self.terms), default=0)

    def max_z(self):
        return max((k for k, _ in self.terms), default=0)

    def theta_free(self):
        return SuperPolynomial._make(
            self.L, self.n_odd, {key: c for key, c in self.terms.items() if not key[1]}
        )

    def theta_part(self):
        return SuperPolynomial._make(
            self.L, self.n_odd, {key: c for key, c in self.terms.items() if key[1]}
        )

    def theta_component(self, mask):
        """The theta-free superpolynomial A_M with self = sum t^M A_M."""
        return SuperPolynomial._make(
            self.L,
            self.n_odd,
            {(k, 0): c for (k, m), c in self.terms.items() if m == mask},
        )

    def theta_components(self):
        out = {}
        for (k, m), c in self.terms.items():
            out.setdefault(m, {})[(k, 0)] = c
        return {
            m: SuperPolynomial._make(self.L, self.n_odd, terms)
            for m, terms in out.items()
        }

    def body_scalar_poly(self):
        """Scalar Laurent part: bodies of the theta-free coefficients.

        Returned as an exponent-to-coefficient dict (may contain negative
        exponents).
        """
        out = {}
        for (k, m), c in self.terms.items():
            if m:
                continue
            b = c.body()
            if b:
                out[k] = b
        return out

    def parity(self):
        """Total parity if homogeneous, else None."""
        seen = set()
        for (k, m), c in self.terms.items():
            p = c.parity()
            if p is None:
                return None
            seen.add((p + m.bit_count()) & 1)
        if not seen:
            return 0
        return seen.pop() if len(seen) == 1 else None

    def is_even(self):
        return self.parity() == 0 or self.is_zero()

    def is_odd(self):
        return self.is_zero() or self.parity() == 1

    def coefficients_within(self, limit):
        """True if all supernumber coefficients use generators 1..limit."""
        return all(c.in_subalgebra(limit) for c in self.terms.values())

    def max_generator(self):
        return max((c.max_label() for c in self.terms.values()), default=0)

    def extend(self, L_new):
        return SuperPolynomial._make(
            L_new,
            self.n_odd,
            {key: c.extend(L_new) for key, c in self.terms.items()},
        )

    def restrict(self, L_new):
        terms = {}
        for key, c in self.terms.items():
            r = c.restrict(L_new)
            if r:
                terms[key] = r
        return SuperPolynomial._make(L_new, self.n_odd, terms)

    def evaluate(self, point):
        """Exact value at a point (z and thetas are supernumbers)."""
        if point.n_odd != self.n_odd:
            raise ValueError("point and superpolynomial have different odd arity")
        s = point.z
        powers = {0: Supernumber.one(s.L)}
        inv = None
        out = Supernumber.zero(s.L)
        for (k, m), c in self.terms.items():
            if k not in powers:
                if k > 0:
                    powers[k] = s ** k
                else:
                    if inv is None:
                        inv = s.inverse()
                    powers[k] = inv ** (-k)
            val = c
            bit = self.n_odd - 1
            # odd monomial on the left, highest bit applied first
            while bit >= 0:
                if m & (1 << bit):
                    val = point.thetas[bit] * val
                bit -= 1
            out = out + val * powers[k]
        return out

    def __repr__(self):
        return f"SuperPolynomial({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        names = ["t+", "t-"] if self.n_odd == 2 else ["t"]
        parts = []
        for (k, m) in sorted(self.terms, key=lambda km: (km[1], km[0])):
            c = self.terms[(k, m)]
            mono = "".join(names[b] for b in range(self.n_odd) if m & (1 << b))
            zpart = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            pieces = [p for p in (mono, f"({c})", zpart) if p]
            parts.append("*".join(pieces))
        return " + ".join(parts)


class SuperPoint:
    """An evaluation point: an even z and odd theta supernumber values."""

    __slots__ = ("z", "thetas", "n_odd")

    def __init__(self, z, thetas=()):
        if not isinstance(z, Supernumber):
            raise TypeError("z must be a supernumber")
        if not z.is_even():
            raise ValueError("z value must be even")
        thetas = tuple(thetas)
        for t in thetas:
            if not isinstance(t, Supernumber) or not t.is_odd():
                raise ValueError("theta values must be odd supernumbers")
            if t.L != z.L:
                raise ValueError("point components over different algebras")
        self.z = z
        self.thetas = thetas
        self.n_odd = len(thetas)


# ---------------------------------------------------------------------------
# rational superfunctions
# ---------------------------------------------------------------------------


class RationalSuperfunction:
    """Superpolynomial numerator over a monic scalar polynomial in z.

    Canonical form: the denominator is monic with nonzero constant term
    (powers of z are moved into the Laurent numerator) and shares no
    scalar polynomial factor with the numerator.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _normalized=False):
        if den is None:
            den = ScalarPoly.one()
        if _normalized:
            self.num = num
            self.den = den
            return
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        v = den.valuation()
        if v:
            den = den.shift(-v)
            num = num.shift_z(-v)
        if not den.is_one():
            den, lc = den.monic()
            if lc != ONE:
                num = num.scale_right(lc.inverse())
            num, den = _cancel_common_factor(num, den)
        self.num = num
        self.den = den

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_constant(cls, L, value, n_odd=2):
        return cls(SuperPolynomial.constant(L, value, n_odd), _normalized=True)

    @classmethod
    def zero(cls, L, n_odd=2):
        return cls(SuperPolynomial.zero(L, n_odd), _normalized=True)

    @classmethod
    def one(cls, L, n_odd=2):
        return cls.from_constant(L, ONE, n_odd)

    @classmethod
    def z(cls, L, n_odd=2):
        return cls(SuperPolynomial.z_power(L, 1, n_odd), _normalized=True)

    @classmethod
    def z_power(cls, L, k, n_odd=2, coeff=ONE):
        return cls(SuperPolynomial.z_power(L, k, n_odd, coeff), _normalized=True)

    @classmethod
    def theta(cls, L, which=THETA_PLUS, n_odd=2):
        return cls(SuperPolynomial.theta(L, which, n_odd), _normalized=True)

    @classmethod
    def from_superpoly(cls, num, den=None):
        return cls(num, den)

    @property
    def L(self):
        return self.num.L

    @property
    def n_odd(self):
        return self.num.n_odd

    def shape(self):
        return (self.num.L, self.num.n_odd)

    def _check(self, other):
        if self.shape() != other.shape():
            raise ValueError("rational superfunction shape mismatch")

    # -- predicates ----------------------------------------------------------

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return bool(self.num)

    def is_theta_free(self):
        return all(not m for (_, m) in self.num.terms)

    def parity(self):
        return self.num.parity()

    def is_even(self):
        return self.num.is_even()

    def is_odd(self):
        return self.num.is_odd()

    def body_is_zero(self):
        """True if the scalar body part vanishes identically."""
        return not self.num.body_scalar_poly()

    def as_superpolynomial(self):
        """Exact superpolynomial form, or None if the denominator survives."""
        if self.den.is_one():
            return self.num
        comps = self.num.theta_components()
        total = {}
        for mask, comp in comps.items():
            grouped = {}
            for (k, _), c in comp.terms.items():
                for gmask, q in c.terms.items():
                    grouped.setdefault(gmask, {})[k] = q
            for gmask, poly in grouped.items():
                v = min(poly)
                shifted = ScalarPoly({k - v: q for k, q in poly.items()})
                quo, rem = shifted.divmod(self.den)
                if not rem.is_zero():
                    return None
                for k, q in quo.coeffs.items():
                    key = (k + v, mask)
                    cur = total.get(key)
                    add = Supernumber(self.L, {gmask: q})
                    total[key] = add if cur is None else cur + add
        return SuperPolynomial(self.L, self.n_odd, total)

    def as_constant(self):
        """The constant supernumber value, or None."""
        poly = self.as_superpolynomial()
        if poly is None:
            return None
        if not poly.terms:
            return Supernumber.zero(self.L)
        if set(poly.terms) == {(0, 0)}:
            return poly.terms[(0, 0)]
        return None

    # -- arithmetic ----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, RationalSuperfunction):
            return NotImplemented
        if self.shape() != other.shape():
            return False
        if self.den == other.den:
            return self.num == other.num
        return self.num.mul_scalar_poly(other.den) == other.num.mul_scalar_poly(self.den)

    def __hash__(self):
        raise TypeError("rational superfunctions are not hashable")

    def __add__(self, other):
        if not isinstance(other, RationalSuperfunction):
            other = RationalSuperfunction.from_constant(self.L, other, self.n_odd)
        self._check(other)
        if self.den == other.den:
            return RationalSuperfunction(self.num + other.num, self.den)
        # cross-multiply over the least common denominator
        shared = self.den.gcd(other.den)
        if shared.degree() > 0:
            left, _ = other.den.divmod(shared)
            right, _ = self.den.divmod(shared)
        else:
            left, right = other.den, self.den
        num = self.num.mul_scalar_poly(left) + other.num.mul_scalar_poly(right)
        return RationalSuperfunction(num, self.den * left)

    def __radd__(self, other):
        return self + other

    def __neg__(self):
        return RationalSuperfunction(-self.num, self.den, _normalized=True)

    def __sub__(self, other):
        if not isinstance(other, RationalSuperfunction):
            other = RationalSuperfunction.from_constant(self.L, other, self.n_odd)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, RationalSuperfunction):
            self._check(other)
            return RationalSuperfunction(self.num * other.num, self.den * other.den)
        if isinstance(other, SuperPolynomial):
            return self * RationalSuperfunction(other)
        return RationalSuperfunction(self.num.scale_right(other), self.den, _normalized=True)

    def __rmul__(self, other):
        if isinstance(other, (int, GaussianRational)):
            return RationalSuperfunction(
                self.num.scale_left(other), self.den, _normalized=True
            )
        if isinstance(other, Supernumber):
            return RationalSuperfunction(self.num.scale_left(other), self.den)
        return NotImplemented

    def scale_left(self, value):
        return RationalSuperfunction(self.num.scale_left(value), self.den)

    def inverse(self):
        """Reciprocal; needs a nonvanishing scalar body part.

        The numerator is split as z**v * (B + S) with B the scalar body
        polynomial and S nilpotent; the finite geometric series clears S.
        """
        v = self.num.min_z()
        shifted = self.num.shift_z(-v) if v else self.num
        body = ScalarPoly(shifted.body_scalar_poly())
        if body.is_zero():
            raise NotInvertible("rational superfunction has zero body part")
        soul = shifted - SuperPolynomial(self.L, self.n_odd, {
            (k, 0): Supernumber.scalar(self.L, c) for k, c in body.coeffs.items()
        })
        # numerator of 1/(B+S): sum_j (-1)^j S^j B^(J-j), denominator B^(J+1)
        powers = [SuperPolynomial.one(self.L, self.n_odd)]
        while True:
            nxt = powers[-1] * soul
            if nxt.is_zero():
                break
            powers.append(nxt)
        J = len(powers) - 1
        acc = SuperPolynomial.zero(self.L, self.n_odd)
        for j, sp in enumerate(powers):
            term = sp.mul_scalar_poly(body ** (J - j))
            acc = acc + (term if j % 2 == 0 else -term)
        num = acc.mul_scalar_poly(self.den).shift_z(-v)
        return RationalSuperfunction(num, body ** (J + 1))

    def __truediv__(self, other):
        if isinstance(other, RationalSuperfunction):
            return self * other.inverse()
        if isinstance(other, Supernumber):
            return self * other.inverse()
        return self * grat(other).inverse()

    def __rtruediv__(self, other):
        inv = self.inverse()
        if isinstance(other, Supernumber):
            return inv.scale_left(other)
        return inv * other

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = RationalSuperfunction.one(self.L, self.n_odd)
        base = self
        for _ in range(n):
            out = out * base
        return out

    # -- calculus ------------------------------------------------------------

    def diff_z(self):
        """Quotient-rule derivative in the even variable."""
        if self.den.is_one():
            return RationalSuperfunction(self.num.diff_z(), self.den, _normalized=True)
        num = self.num.diff_z().mul_scalar_poly(self.den) - self.num.mul_scalar_poly(
            self.den.derivative()
        )
        return RationalSuperfunction(num, self.den * self.den)

    def diff_theta(self, which):
        return RationalSuperfunction(
            self.num.diff_theta(which), self.den, _normalized=True
        )

    def evaluate(self, point):
        den_val = self.den.eval_super(point.z)
        if not den_val.body():
            raise PoleAtPoint("denominator body vanishes at the point")
        try:
            num_val = self.num.evaluate(point)
        except NotInvertible as exc:
            # Laurent numerators put the pole at z = 0
            raise PoleAtPoint(str(exc)) from exc
        return num_val * den_val.inverse()

    def extend(self, L_new):
        return RationalSuperfunction(self.num.extend(L_new), self.den, _normalized=True)

    # -- substitution ---------------------------------------------------------

    def substitute(self, w, odd_images=()):
        """Compose with z -> w and theta_b -> odd_images[b].

        w must be an even rational superfunction; odd images must be given
        for every odd variable actually used.  The even substitution goes
        through the order-two Taylor expansion around the theta-free part
        of w, which is exact because the theta-carrying part cubes to zero
        (asserted, not assumed).
        """
        if not isinstance(w, RationalSuperfunction):
            w = RationalSuperfunction(w)
        out_shape = w.shape()
        odd_images = tuple(odd_images)
        for img in odd_images:
            if img.shape() != out_shape:
                raise ValueError("substitution images have mismatched shapes")

        w_red = w.theta_free_part()
        w_nil = w - w_red
        comps = self.num.theta_components()
        needed_orders = 1
        nil_powers = [RationalSuperfunction.one(*out_shape)]
        if w_nil:
            sq = w_nil * w_nil
            assert (sq * w_nil).is_zero(), "theta-carrying part must cube to zero"
            nil_powers = [nil_powers[0], w_nil, sq]
            needed_orders = 3

        result = RationalSuperfunction.zero(*out_shape)
        for mask, comp in sorted(comps.items()):
            comp_rsf = RationalSuperfunction(comp, _normalized=True)
            series = _compose_theta_free_series(comp_rsf, w_red, needed_orders)
            total = _taylor_sum(series, nil_powers)
            if mask:
                prefix = None
                for b in range(self.n_odd):
                    if mask & (1 << b):
                        if b >= len(odd_images):
                            raise ValueError("missing odd substitution image")
                        img = odd_images[b]
                        prefix = img if prefix is None else prefix * img
                total = prefix * total
            result = result + total
        if not self.den.is_one():
            den_rsf = _scalar_poly_as_rsf(self.den, self.L, self.n_odd)
            den_comp = _compose_theta_free_series(den_rsf, w_red, needed_orders)
            den_total = _taylor_sum(den_comp, nil_powers)
            if den_total.body_is_zero():
                raise SingularComposition(
                    "denominator body vanishes after substitution"
                )
            result = result * den_total.inverse()
        return result

    def theta_free_part(self):
        return RationalSuperfunction(self.num.theta_free(), self.den, _normalized=True)

    def theta_component(self, mask):
        """Theta-free part A_M of the decomposition sum t^M A_M."""
        return RationalSuperfunction(
            self.num.theta_component(mask), self.den, _normalized=True
        )

    def __repr__(self):
        if self.den.is_one():
            return f"RSF({self.num})"
        return f"RSF(({self.num}) / {self.den})"


def _cancel_common_factor(num, den):
    """Divide out the gcd of den with the scalar content of num."""
    if den.degree() < 1 or num.is_zero():
        return num, den
    g = den
    comps = {}
    for (k, m), c in num.terms.items():
        for gmask, q in c.terms.items():
            comps.setdefault((m, gmask), {})[k] = q
    # low-degree components constrain the gcd fastest
    for poly in sorted(comps.values(), key=lambda p: max(p) - min(p)):
        v = min(poly)
        g = g.gcd(ScalarPoly({k - v: q for k, q in poly.items()}))
        if g.degree() < 1:
            return num, den
    den_new, _ = den.divmod(g)
    terms = {}
    for (m, gmask), poly in comps.items():
        v = min(poly)
        quo, rem = ScalarPoly({k - v: q for k, q in poly.items()}).divmod(g)
        assert rem.is_zero()
        for k, q in quo.coeffs.items():
            key = (k + v, m)
            add = Supernumber(num.L, {gmask: q})
            cur = terms.get(key)
            terms[key] = add if cur is None else cur + add
    num_new = SuperPolynomial(num.L, num.n_odd, terms)
    return num_new, den_new


def _scalar_poly_as_rsf(poly, L, n_odd):
    num = SuperPolynomial(
        L, n_odd, {(k, 0): Supernumber.scalar(L, c) for k, c in poly.coeffs.items()}
    )
    return RationalSuperfunction(num, _normalized=True)


def _compose_theta_free_series(F, w_red, orders):
    """[F(w_red), F'(w_red), F''(w_red)/1] truncated to `orders` entries.

    F must be theta-free in its numerator; w_red is theta-free and even.
    """
    series = []
    current = F
    for k in range(orders):
        series.append(_compose_theta_free(current, w_red))
        if k + 1 < orders:
            current = current.diff_z()
    return series


def _taylor_sum(series, nil_powers):
    """series[0] + series[1]*w_nil + series[2]*w_nil^2/2."""
    out = series[0]
    if len(nil_powers) > 1:
        if len(series) > 1 and nil_powers[1]:
            out = out + series[1] * nil_powers[1]
        if len(series) > 2 and nil_powers[2]:
            half = grat(1) / grat(2)
            out = out + (series[2] * nil_powers[2]) * half
    return out


def _compose_theta_free(F, w):
    """F(w) for theta-free F and even theta-free w, exactly."""
    shape = w.shape()
    v = F.num.min_z()
    shifted = F.num.shift_z(-v) if v < 0 else F.num
    num_comp = _poly_at(shifted, w, shape)
    den_comp = _scalar_at(F.den, w, shape)
    if den_comp.body_is_zero():
        raise SingularComposition("denominator body vanishes after substitution")
    out = num_comp * den_comp.inverse()
    if v < 0:
        if w.body_is_zero():
            raise SingularComposition("negative power of a bodyless argument")
        out = out * (w.inverse() ** (-v))
    return out


def _poly_at(poly, w, shape):
    """Horner evaluation of a theta-free superpolynomial at w."""
    coeffs = {}
    for (k, m), c in poly.terms.items():
        assert m == 0
        coeffs[k] = c
    if not coeffs:
        return RationalSuperfunction.zero(*shape)
    top = max(coeffs)
    out = RationalSuperfunction.zero(*shape)
    for k in range(top, -1, -1):
        out = out * w
        c = coeffs.get(k)
        if c is not None:
            out = out + RationalSuperfunction.from_constant(shape[0], c, shape[1])
    return out


def _scalar_at(poly, w, shape):
    out = RationalSuperfunction.zero(*shape)
    for k in range(poly.degree(), -1, -1):
        out = out * w
        c = poly.coeffs.get(k)
        if c is not None:
            out = out + RationalSuperfunction.from_constant(shape[0], c, shape[1])
    return out


# ---------------------------------------------------------------------------
# the odd superderivations
# ---------------------------------------------------------------------------


def apply_D(F, sign):
    """D+ (sign=+1) or D- (sign=-1) applied to a (1,2)-variable function."""
    if F.n_odd != 2:
        raise ValueError("D+ and D- act on (1,2)-variable functions")
    which = THETA_PLUS if sign > 0 else THETA_MINUS
    other = THETA_MINUS if sign > 0 else THETA_PLUS
    theta_other = RationalSuperfunction.theta(F.L, other)
    return F.diff_theta(which) + theta_other * F.diff_z()


def apply_D_plus(F):
    return apply_D(F, +1)


def apply_D_minus(F):
    return apply_D(F, -1)
