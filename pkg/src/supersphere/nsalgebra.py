"""The N=2 Neveu-Schwarz Lie superalgebra and its superderivation picture.

Basis symbols: a central element d, even elements L(m) and J(m) for
integer m, and odd elements G+(r), G-(r) for half-integer r (stored as the
odd integer 2r).  The nonzero brackets are

    [L_m, L_n]   = (m - n) L_{m+n} + (1/12)(m^3 - m) delta_{m+n,0} d
    [J_m, J_n]   = (1/3) m delta_{m+n,0} d
    [L_m, J_n]   = -n J_{m+n}
    [L_m, G+-_r] = (m/2 - r) G+-_{m+r}
    [J_m, G+-_r] = +- G+-_{m+r}
    [G+_r, G-_s] = 2 L_{r+s} + (r - s) J_{r+s}
                    + (1/3)(r - 1/2)(r + 1/2) delta_{r+s,0} d

with same-sign G brackets vanishing and skew supersymmetry fixing the
remaining orders.

The superderivations on Laurent polynomials in an even x and odd phi+,
phi-,

    L_n  -> -(x^{n+1} d/dx + ((n+1)/2) x^n (phi+ d/dphi+ + phi- d/dphi-))
    J_n  -> -x^n (phi+ d/dphi+ - phi- d/dphi-)
    G+-_{n-1/2} -> -(x^n (d/dphi+- - phi-+ d/dx)
                     +- n x^{n-1} phi+ phi- d/dphi+-)

represent the algebra with central charge zero.  For each integer twist n
the infinitesimal automorphisms of the corresponding sphere form a
finite-dimensional subalgebra with even part spanned by L(-1),
L(0) - (n/2) J(0), L(1) - n J(1), J(0) and an odd part of dimension 4 for
|n| <= 2 and |n| + 2 for |n| >= 2.

Exponential flows of subalgebra elements act on the coordinates; they are
computed as truncated series in the flow parameter and compared against
closed forms.  With a soul or odd parameter the series terminates and the
comparison is exact.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import GaussianRational, ONE, ZERO, grat
from .grassmann import Supernumber
from .superfield import SuperPolynomial, THETA_MINUS, THETA_PLUS


def L(m):
    return ("L", m)


def J(m):
    return ("J", m)


def Gp(r2):
    if r2 % 2 == 0:
        raise ValueError("G indices are half-integers: pass an odd 2r")
    return ("G", +1, r2)


def Gm(r2):
    if r2 % 2 == 0:
        raise ValueError("G indices are half-integers: pass an odd 2r")
    return ("G", -1, r2)


CENTRAL = ("d",)


def key_parity(key):
    return 1 if key[0] == "G" else 0


def key_str(key):
    if key == CENTRAL:
        return "d"
    if key[0] == "G":
        sign = "+" if key[1] > 0 else "-"
        return f"G{sign}({key[2]}/2)"
    return f"{key[0]}({key[1]})"


class NSElement:
    """A finite Q(i)-linear combination of basis symbols."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for key, coeff in terms.items():
                c = grat(coeff)
                if c:
                    clean[key] = c
        self.terms = clean

    @classmethod
    def basis(cls, key, coeff=ONE):
        return cls({key: coeff})

    @classmethod
    def zero(cls):
        return cls()

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, NSElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        terms = dict(self.terms)
        for key, c in other.terms.items():
            s = terms.get(key)
            if s is None:
                terms[key] = c
            else:
                s = s + c
                if s:
                    terms[key] = s
                else:
                    del terms[key]
        return NSElement(terms)

    def __neg__(self):
        return NSElement({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, value):
        value = grat(value)
        if not value:
            return NSElement()
        return NSElement({k: value * c for k, c in self.terms.items()})

    def parity(self):
        parities = {key_parity(k) for k in self.terms}
        if not parities:
            return 0
        return parities.pop() if len(parities) == 1 else None

    def drop_central(self):
        return NSElement({k: c for k, c in self.terms.items() if k != CENTRAL})

    def central_coefficient(self):
        return self.terms.get(CENTRAL, ZERO)

    def __repr__(self):
        if not self.terms:
            return "NSElement(0)"
        parts = []
        for key in sorted(self.terms, key=key_str):
            c = self.terms[key]
            parts.append(f"({c})*{key_str(key)}")
        return "NSElement(" + " + ".join(parts) + ")"


def _basis_bracket(k1, k2):
    """Structure constants on basis symbols, as a key -> coefficient dict."""
    if k1 == CENTRAL or k2 == CENTRAL:
        return {}
    t1, t2 = k1[0], k2[0]
    if t1 == "L" and t2 == "L":
        m, n = k1[1], k2[1]
        out = {}
        if m != n:
            out[L(m + n)] = grat(m - n)
        if m + n == 0 and m ** 3 - m:
            out[CENTRAL] = grat(Fraction(m ** 3 - m, 12))
        return out
    if t1 == "L" and t2 == "J":
        m, n = k1[1], k2[1]
        return {J(m + n): grat(-n)} if n else {}
    if t1 == "J" and t2 == "L":
        return _flip(_basis_bracket(k2, k1), 0, 0)
    if t1 == "J" and t2 == "J":
        m, n = k1[1], k2[1]
        if m + n == 0 and m:
            return {CENTRAL: grat(Fraction(m, 3))}
        return {}
    if t1 == "L" and t2 == "G":
        m, (_, s, r2) = k1[1], k2
        coeff = Fraction(m - r2, 2)
        if not coeff:
            return {}
        return {("G", s, r2 + 2 * m): grat(coeff)}
    if t1 == "G" and t2 == "L":
        return _flip(_basis_bracket(k2, k1), 0, 1)
    if t1 == "J" and t2 == "G":
        m, (_, s, r2) = k1[1], k2
        return {("G", s, r2 + 2 * m): grat(s)}
    if t1 == "G" and t2 == "J":
        return _flip(_basis_bracket(k2, k1), 1, 0)
    # G with G
    (_, s1, r2), (_, s2, s2r) = k1, k2
    if s1 == s2:
        return {}
    if s1 < 0:
        # odd-odd skew symmetry carries a plus sign
        return _basis_bracket(k2, k1)
    r, s = r2, s2r
    out = {}
    out[L((r + s) // 2)] = grat(2)
    if r != s:
        out[J((r + s) // 2)] = grat(Fraction(r - s, 2))
    if r + s == 0:
        c = Fraction(r * r - 1, 12)
        if c:
            out[CENTRAL] = grat(c)
    return out


def _flip(table, p1, p2):
    """[v,u] = -(-1)^{p1 p2} [u,v] given the table for [u,v]."""
    sign = 1 if (p1 and p2) else -1
    if sign == 1:
        return dict(table)
    return {k: -c for k, c in table.items()}


def bracket(u, v):
    """The Lie superbracket, extended bilinearly from the basis."""
    terms = {}
    for k1, c1 in u.terms.items():
        for k2, c2 in v.terms.items():
            c12 = c1 * c2
            for key, c in _basis_bracket(k1, k2).items():
                s = terms.get(key, ZERO) + c12 * c
                if s:
                    terms[key] = s
                elif key in terms:
                    del terms[key]
    return NSElement(terms)


def jacobi_defect(u, v, w):
    """The super-Jacobi sum; zero exactly when the identity holds."""
    pu, pv, pw = u.parity(), v.parity(), w.parity()
    if None in (pu, pv, pw):
        raise ValueError("Jacobi check needs parity-homogeneous elements")
    total = bracket(bracket(u, v), w).scale(grat((-1) ** (pu * pw)))
    total = total + bracket(bracket(v, w), u).scale(grat((-1) ** (pv * pu)))
    total = total + bracket(bracket(w, u), v).scale(grat((-1) ** (pw * pv)))
    return total


def band_symbols(band):
    """All basis symbols with indices in [-band, band], plus the center."""
    keys = [CENTRAL]
    for m in range(-band, band + 1):
        keys.append(L(m))
        keys.append(J(m))
    r2 = -2 * band + 1
    while r2 <= 2 * band - 1:
        keys.append(Gp(r2))
        keys.append(Gm(r2))
        r2 += 2
    return keys


def bracket_table(band):
    """All basis brackets on the band as a JSON-ready nested mapping."""
    keys = band_symbols(band)
    table = {}
    for k1 in keys:
        row = {}
        for k2 in keys:
            value = _basis_bracket(k1, k2)
            if value:
                row[key_str(k2)] = {key_str(k): str(c)
                                    for k, c in sorted(value.items(),
                                                       key=lambda kv: key_str(kv[0]))}
        table[key_str(k1)] = row
    return table


def jacobi_check(band):
    """Exhaustively verify super-Jacobi on the band; return violations."""
    keys = band_symbols(band)
    elements = {k: NSElement.basis(k) for k in keys}
    violations = []
    for k1 in keys:
        for k2 in keys:
            for k3 in keys:
                defect = jacobi_defect(elements[k1], elements[k2], elements[k3])
                if defect:
                    violations.append((k1, k2, k3, defect))
    return violations


# ---------------------------------------------------------------------------
# the superderivation representation
# ---------------------------------------------------------------------------

PHI_PLUS = THETA_PLUS
PHI_MINUS = THETA_MINUS


def _coeff_poly(entries):
    return SuperPolynomial(0, 2, {
        key: Supernumber.scalar(0, c) for key, c in entries.items()
    })


class DerivationField:
    """A superderivation c_x d/dx + c_+ d/dphi+ + c_- d/dphi-.

    The coefficients are Laurent superpolynomials in (x, phi+, phi-); the
    action on arbitrary superpolynomials is the super-Leibniz extension of
    the action on the three generators, with coefficients multiplying from
    the left.
    """

    __slots__ = ("parity", "c_x", "c_plus", "c_minus")

    def __init__(self, parity, c_x, c_plus, c_minus):
        self.parity = parity
        self.c_x = c_x
        self.c_plus = c_plus
        self.c_minus = c_minus

    @classmethod
    def zero(cls, parity=0, L=0):
        z = SuperPolynomial.zero(L, 2)
        return cls(parity, z, z, z)

    def coefficients(self):
        return (self.c_x, self.c_plus, self.c_minus)

    def is_zero(self):
        return (self.c_x.is_zero() and self.c_plus.is_zero()
                and self.c_minus.is_zero())

    def __eq__(self, other):
        if not isinstance(other, DerivationField):
            return NotImplemented
        return self.coefficients() == other.coefficients()

    def __add__(self, other):
        return DerivationField(
            self.parity,
            self.c_x + other.c_x,
            self.c_plus + other.c_plus,
            self.c_minus + other.c_minus,
        )

    def scale(self, value):
        return DerivationField(
            self.parity,
            self.c_x.scale_left(value),
            self.c_plus.scale_left(value),
            self.c_minus.scale_left(value),
        )

    def apply(self, F):
        """Apply the derivation to a superpolynomial."""
        out = self.c_x * F.diff_z()
        out = out + self.c_plus * F.diff_theta(PHI_PLUS)
        out = out + self.c_minus * F.diff_theta(PHI_MINUS)
        return out

    def bracket(self, other):
        """[X, Y] = XY - (-1)^{parity product} YX, again a derivation."""
        sign = (-1) ** (self.parity * other.parity)
        L_ = self.c_x.L
        gens = (
            SuperPolynomial.z_power(L_, 1),
            SuperPolynomial.theta(L_, PHI_PLUS),
            SuperPolynomial.theta(L_, PHI_MINUS),
        )
        coeffs = []
        for g in gens:
            term = self.apply(other.apply(g))
            swap = other.apply(self.apply(g))
            coeffs.append(term - swap if sign > 0 else term + swap)
        return DerivationField((self.parity + other.parity) % 2, *coeffs)

    def __repr__(self):
        return (f"DerivationField(d/dx: {self.c_x}, d/dphi+: {self.c_plus}, "
                f"d/dphi-: {self.c_minus})")


def representation(key):
    """The superderivation representing a basis symbol (central -> 0)."""
    zero = SuperPolynomial.zero(0, 2)
    if key == CENTRAL:
        return DerivationField(0, zero, zero, zero)
    kind = key[0]
    if kind == "L":
        n = key[1]
        half = grat(Fraction(n + 1, 2))
        return DerivationField(
            0,
            _coeff_poly({(n + 1, 0): grat(-1)}),
            _coeff_poly({(n, 1 << PHI_PLUS): -half}) if half else zero,
            _coeff_poly({(n, 1 << PHI_MINUS): -half}) if half else zero,
        )
    if kind == "J":
        n = key[1]
        return DerivationField(
            0,
            zero,
            _coeff_poly({(n, 1 << PHI_PLUS): grat(-1)}),
            _coeff_poly({(n, 1 << PHI_MINUS): grat(1)}),
        )
    _, sign, r2 = key
    n = (r2 + 1) // 2
    phi_pair = (1 << PHI_PLUS) | (1 << PHI_MINUS)
    own = {(n, 0): grat(-1)}
    if n:
        own[(n - 1, phi_pair)] = grat(-sign * n)
    if sign > 0:
        return DerivationField(
            1,
            _coeff_poly({(n, 1 << PHI_MINUS): grat(1)}),
            _coeff_poly(own),
            zero,
        )
    return DerivationField(
        1,
        _coeff_poly({(n, 1 << PHI_PLUS): grat(1)}),
        zero,
        _coeff_poly(own),
    )


def represent(element):
    """Linear extension of the representation; the center acts by zero."""
    parities = {key_parity(k) for k in element.terms if k != CENTRAL}
    parity = parities.pop() if len(parities) == 1 else 0
    out = DerivationField.zero(parity)
    for key, coeff in element.terms.items():
        if key == CENTRAL:
            continue
        out = out + representation(key).scale(coeff)
    return out


def representation_defect(u, v):
    """rep([u,v]) with the center dropped, minus [rep u, rep v]."""
    expected = represent(bracket(u, v).drop_central())
    got = represent(u).bracket(represent(v))
    return (
        expected.c_x - got.c_x,
        expected.c_plus - got.c_plus,
        expected.c_minus - got.c_minus,
    )


def representation_check(band):
    """Verify the central-charge-zero representation on all band pairs."""
    keys = band_symbols(band)
    violations = []
    for k1 in keys:
        for k2 in keys:
            defect = representation_defect(NSElement.basis(k1), NSElement.basis(k2))
            if any(not piece.is_zero() for piece in defect):
                violations.append((k1, k2))
    return violations


# ---------------------------------------------------------------------------
# the subalgebras of infinitesimal sphere automorphisms
# ---------------------------------------------------------------------------


def subalgebra_basis(n):
    """Basis of the infinitesimal automorphisms of the twist-n sphere.

    Always four even elements; the odd elements are the four G's nearest
    zero for |n| <= 1 and the single-sign tower G_{-1/2} ... G_{|n|+1/2}
    for |n| >= 2.
    """
    half_n = grat(Fraction(n, 2))
    even = [
        NSElement.basis(L(-1)),
        NSElement.basis(L(0)) - NSElement.basis(J(0)).scale(half_n),
        NSElement.basis(L(1)) - NSElement.basis(J(1)).scale(n),
        NSElement.basis(J(0)),
    ]
    if n == 0:
        odd_keys = [Gp(-1), Gp(1), Gm(-1), Gm(1)]
    elif n == 1:
        odd_keys = [Gp(-1), Gm(-1), Gm(1), Gm(3)]
    elif n == -1:
        odd_keys = [Gp(-1), Gp(1), Gp(3), Gm(-1)]
    elif n >= 2:
        odd_keys = [Gm(2 * k - 1) for k in range(0, n + 2)]
    else:
        odd_keys = [Gp(2 * k - 1) for k in range(0, -n + 2)]
    return even + [NSElement.basis(k) for k in odd_keys]


def subalgebra_dimensions(n):
    """(even, odd) dimensions of the twist-n subalgebra."""
    return 4, (4 if abs(n) <= 2 else abs(n) + 2)


def span_coefficients(target, basis):
    """Exact coordinates of target in the span of basis, or None."""
    keys = sorted(
        {k for e in basis for k in e.terms} | set(target.terms), key=key_str
    )
    if not keys:
        return [ZERO] * len(basis)
    rows = [[e.terms.get(k, ZERO) for e in basis] + [target.terms.get(k, ZERO)]
            for k in keys]
    ncols = len(basis)
    pivot_cols = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                factor = rows[i][c]
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[r])]
        pivot_cols.append(c)
        r += 1
    for i in range(r, len(rows)):
        if rows[i][ncols]:
            return None
    coeffs = [ZERO] * ncols
    for i, c in enumerate(pivot_cols):
        coeffs[c] = rows[i][ncols]
    return coeffs


def closure_violations(n):
    """Bracket pairs of the twist-n basis that leave the span."""
    basis = subalgebra_basis(n)
    bad = []
    for i, u in enumerate(basis):
        for j, v in enumerate(basis):
            product = bracket(u, v)
            if product.central_coefficient():
                bad.append((i, j, "central term"))
            elif span_coefficients(product, basis) is None:
                bad.append((i, j, "outside span"))
    return bad


def sigma_action_violations(n):
    """Check the derivation table of the even part on the odd tower, |n| >= 2.

    For n >= 2 and each G-_{k-1/2} in the tower:
        L(-1)            -> -k G-_{k-3/2}
        L(0) - n/2 J(0)  -> (-k + (n+1)/2) G-_{k-1/2}
        L(1) - n J(1)    -> (-k + n + 1) G-_{k+1/2}
        J(0)             -> -G-_{k-1/2}
    For n <= -2 the mirrored tower uses G+ and the J(0) line flips sign.
    """
    if abs(n) < 2:
        raise ValueError("the odd tower exists for |n| >= 2")
    basis = subalgebra_basis(n)
    acting = basis[:4]
    sign = 1 if n >= 2 else -1
    G = Gm if n >= 2 else Gp
    bad = []
    for k in range(0, abs(n) + 2):
        g = NSElement.basis(G(2 * k - 1))
        expected = [
            NSElement.basis(G(2 * k - 3), grat(-k)) if k else NSElement.zero(),
            NSElement.basis(G(2 * k - 1),
                            grat(Fraction(-2 * k + abs(n) + 1, 2))),
            NSElement.basis(G(2 * k + 1), grat(-k + abs(n) + 1))
            if k != abs(n) + 1 else NSElement.zero(),
            NSElement.basis(G(2 * k - 1), grat(-sign)),
        ]
        for idx, (u, want) in enumerate(zip(acting, expected)):
            got = bracket(u, g)
            if got != want:
                bad.append((idx, k, got, want))
    return bad


# ---------------------------------------------------------------------------
# exponential flows
# ---------------------------------------------------------------------------


class FlowSeries:
    """exp(-t X) applied to (x, phi+, phi-), as Taylor rows in t.

    rows[k] is the coordinate triple multiplying t**k (t written on the
    left).  For an odd generator the series breaks off after the linear
    row; for even generators it is truncated at the requested order.
    """

    __slots__ = ("parity", "rows")

    def __init__(self, parity, rows):
        self.parity = parity
        self.rows = rows

    def order(self):
        return len(self.rows) - 1

    def evaluate(self, value):
        """Substitute a supernumber parameter; exact when it is nilpotent."""
        if value.parity() != self.parity and value:
            raise ValueError("parameter parity must match the generator")
        L_ = value.L
        power = Supernumber.one(L_)
        out = None
        for k, row in enumerate(self.rows):
            if k:
                power = power * value
                if power.is_zero():
                    break
            triple = tuple(comp.extend(L_).scale_left(power) for comp in row)
            out = triple if out is None else tuple(
                a + b for a, b in zip(out, triple)
            )
        return out


def flow(element, order=8):
    """The exponential flow of an infinitesimal transformation."""
    X = represent(element)
    L_ = X.c_x.L
    coords = (
        SuperPolynomial.z_power(L_, 1),
        SuperPolynomial.theta(L_, PHI_PLUS),
        SuperPolynomial.theta(L_, PHI_MINUS),
    )
    rows = [coords]
    if X.parity == 1:
        rows.append(tuple(-X.apply(g) for g in coords))
        return FlowSeries(1, rows)
    current = coords
    factor = ONE
    for k in range(1, order + 1):
        current = tuple(X.apply(g) for g in current)
        factor = factor * grat(Fraction(-1, k))
        rows.append(tuple(g.scale_left(factor) for g in current))
    return FlowSeries(0, rows)


def exp_coefficient_series(rate, order):
    """[rate**k / k!] for comparing flows against exponentials."""
    out = [ONE]
    acc = ONE
    for k in range(1, order + 1):
        acc = acc * grat(rate) * grat(Fraction(1, k))
        out.append(acc)
    return out
