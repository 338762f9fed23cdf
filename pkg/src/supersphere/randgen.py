"""Seeded random generation of algebra elements, maps, and parameters.

Every sampler draws from a caller-supplied random.Random, so a fixed seed
reproduces the exact element stream.  Term counts and degrees are kept
small: identities checked by the suites are polynomial in the
coefficients, so exactness makes small samples conclusive while keeping
cross-multiplication sizes desk-scale.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import GaussianRational, grat
from .grassmann import Supernumber
from .superfield import RationalSuperfunction, ScalarPoly, SuperPolynomial
from .superconformal import N1SuperanalyticMap, from_n1
from .spheres import AutomorphismParams, MatrixGroupElement, normalize_determinant


class Sampler:
    """Random elements over the Grassmann algebra on L generators."""

    def __init__(self, rng, L):
        self.rng = rng
        self.L = L

    def rational(self, span=3, denominators=(1, 1, 2, 3)):
        num = self.rng.randrange(-span, span + 1)
        den = denominators[self.rng.randrange(len(denominators))]
        return Fraction(num, den)

    def gaussian_rational(self, span=3, nonzero=False):
        while True:
            if self.rng.randrange(4) == 0:
                value = GaussianRational(self.rational(span), self.rational(span))
            elif self.rng.randrange(5) == 0:
                value = GaussianRational(0, self.rational(span))
            else:
                value = GaussianRational(self.rational(span), 0)
            if value or not nonzero:
                return value

    def _random_mask(self, parity=None, bound=None):
        bound = self.L if bound is None else bound
        while True:
            mask = self.rng.getrandbits(bound)
            if parity is None or mask.bit_count() % 2 == parity:
                return mask

    def supernumber(self, max_terms=4, parity=None, bound=None, body=None):
        """A sparse supernumber; parity and generator bound are optional."""
        terms = {}
        for _ in range(self.rng.randrange(1, max_terms + 1)):
            mask = self._random_mask(parity, bound)
            if body is False and mask == 0:
                continue
            terms[mask] = self.gaussian_rational(nonzero=True)
        if body is True:
            terms[0] = self.gaussian_rational(nonzero=True)
        return Supernumber(self.L, terms)

    def soul(self, max_terms=3, parity=None, bound=None):
        out = self.supernumber(max_terms, parity, bound, body=False)
        return out.soul()

    def odd(self, max_terms=2, bound=None):
        """A random odd element (possibly zero)."""
        return self.supernumber(max_terms, parity=1, bound=bound, body=False)

    def even_invertible(self, max_terms=3, bound=None):
        return self.supernumber(max_terms, parity=0, bound=bound, body=True)

    def superpoly(self, n_odd=2, max_terms=4, z_span=(0, 4), parity=None,
                  bound=None):
        terms = {}
        for _ in range(self.rng.randrange(1, max_terms + 1)):
            k = self.rng.randrange(z_span[0], z_span[1] + 1)
            mask = self.rng.randrange(1 << n_odd)
            coeff_parity = None
            if parity is not None:
                coeff_parity = (parity + mask.bit_count()) % 2
            terms[(k, mask)] = self.supernumber(2, coeff_parity, bound)
        return SuperPolynomial(self.L, n_odd, terms)

    def rational_superfunction(self, n_odd=2, max_terms=4, z_span=(0, 3),
                               parity=None, bound=None, with_denominator=True):
        num = self.superpoly(n_odd, max_terms, z_span, parity, bound)
        if with_denominator and self.rng.randrange(2):
            den = ScalarPoly({1: grat(1), 0: self.gaussian_rational(2)})
        else:
            den = ScalarPoly.one()
        return RationalSuperfunction(num, den)

    # -- maps -----------------------------------------------------------------

    def n1_map(self, z_deg=2):
        """A random invertible N=1 superanalytic map with small components."""
        bound = self.L - 2
        L = self.L
        f1_terms = {(1, 0): self.supernumber(2, 0, bound, body=True)}
        for k in (0, 2):
            if self.rng.randrange(2):
                f1_terms[(k, 0)] = self.supernumber(2, 0, bound)
        f1 = RationalSuperfunction(SuperPolynomial(L, 2, f1_terms))
        xi = self._odd_poly(z_deg, bound)
        psi = self._odd_poly(z_deg, bound)
        g_terms = {(0, 0): self.even_invertible(2, bound)}
        if self.rng.randrange(2):
            g_terms[(1, 0)] = self.soul(1, 0, bound)
        g = RationalSuperfunction(SuperPolynomial(L, 2, g_terms))
        return N1SuperanalyticMap(f1, xi, psi, g)

    def _odd_poly(self, z_deg, bound):
        terms = {}
        for k in range(z_deg + 1):
            if self.rng.randrange(2):
                value = self.odd(1, bound)
                if value:
                    terms[(k, 0)] = value
        return RationalSuperfunction(SuperPolynomial(self.L, 2, terms))

    def superconformal_map(self):
        """A random valid superconformal map, via the N=1 correspondence."""
        return from_n1(self.n1_map())

    # -- automorphism data ------------------------------------------------------

    def sl2_scalars(self):
        """Random integer (a, b, c, d) with determinant one."""
        a, b, c, d = 1, 0, 0, 1
        for _ in range(self.rng.randrange(1, 4)):
            x = self.rng.randrange(-2, 3)
            if self.rng.randrange(2):
                a, b = a + x * c, b + x * d
            else:
                c, d = c + x * a, d + x * b
        return a, b, c, d

    def moebius_supernumbers(self):
        """Even (a, b, c, d) with soul corrections and determinant one."""
        bound = self.L - 2
        a0, b0, c0, d0 = self.sl2_scalars()
        sa = Supernumber.scalar
        a = sa(self.L, a0)
        b = sa(self.L, b0)
        c = sa(self.L, c0)
        d = sa(self.L, d0)
        for _ in range(self.rng.randrange(0, 3)):
            which = self.rng.randrange(4)
            bump = self.soul(1, 0, bound)
            if which == 0:
                a = a + bump
            elif which == 1:
                b = b + bump
            elif which == 2:
                c = c + bump
            else:
                d = d + bump
        return normalize_determinant(a, b, c, d)

    def automorphism_params(self, n):
        bound = self.L - 2
        a, b, c, d = self.moebius_supernumbers()
        plus_len, minus_len = AutomorphismParams.psi_lengths(n)
        psi_plus = [self.odd(1, bound) for _ in range(plus_len)]
        psi_minus = [self.odd(1, bound) for _ in range(minus_len)]
        if n == 0:
            eps_plus = self.even_invertible(2, bound)
            want = (Supernumber.one(self.L)
                    - psi_plus[1] * psi_minus[0] - psi_minus[1] * psi_plus[0])
            eps_minus = eps_plus.inverse() * want
            return AutomorphismParams(0, a, b, c, d, eps_plus=eps_plus,
                                      eps_minus=eps_minus,
                                      psi_plus=psi_plus, psi_minus=psi_minus)
        return AutomorphismParams(n, a, b, c, d,
                                  eps=self.even_invertible(2, bound),
                                  psi_plus=psi_plus, psi_minus=psi_minus)

    def matrix_group_element(self):
        a, b, c, d = self.moebius_supernumbers()
        return MatrixGroupElement(a, b, c, d,
                                  self.even_invertible(2, self.L - 2))

    def odd_vector(self, length):
        return [self.odd(1, self.L - 2) for _ in range(length)]
