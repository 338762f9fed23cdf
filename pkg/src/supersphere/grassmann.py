"""Exact arithmetic in finite Grassmann algebras.

A Grassmann algebra on L generators z[1], ..., z[L] is the associative
algebra over Q(i) with relations

    z[j] * z[k] = -z[k] * z[j]      (j != k)
    z[j] * z[j] = 0.

A supernumber is a Q(i)-linear combination of the 2**L sorted generator
monomials.  Monomials are stored as integer bitmasks (bit j-1 set means
generator j is present), which makes the reordering sign a popcount
computation.  The semantic definition is the sorted label list; the bitmask
is only a faithful encoding of it.

Supernumbers are immutable and canonical: zero coefficients are never
stored, so structural equality is mathematical equality.  The body of a
supernumber is its empty-monomial coefficient; the soul is the (nilpotent)
rest.  A supernumber is invertible exactly when its body is nonzero, via
the terminating geometric series on the soul.
"""

from __future__ import annotations

from .scalars import ONE, ZERO, GaussianRational, grat


class GrassmannError(Exception):
    pass


class DimensionMismatch(GrassmannError):
    """Operands live over different generator counts."""


class NotInvertible(GrassmannError):
    """Inversion requested for an element with zero body."""


def mask_from_labels(labels, L):
    """Bitmask for a strictly increasing tuple of generator labels."""
    mask = 0
    prev = 0
    for j in labels:
        if not prev < j <= L:
            raise ValueError(f"labels must be strictly increasing in 1..{L}: {labels}")
        mask |= 1 << (j - 1)
        prev = j
    return mask


def labels_from_mask(mask):
    labels = []
    j = 1
    while mask:
        if mask & 1:
            labels.append(j)
        mask >>= 1
        j += 1
    return tuple(labels)


def reorder_sign(a, b):
    """Sign of z^a * z^b -> z^(a|b) for disjoint masks a, b.

    Counts, for each generator in b, the generators of a above it; each
    such pair is one transposition.
    """
    sign = 1
    bb = b
    while bb:
        low = bb & -bb
        if (a >> low.bit_length()).bit_count() & 1:
            sign = -sign
        bb ^= low
    return sign


class Supernumber:
    """An element of the Grassmann algebra on L generators."""

    __slots__ = ("L", "terms")

    def __init__(self, L, terms=None):
        self.L = L
        clean = {}
        if terms:
            limit = 1 << L
            for mask, coeff in terms.items():
                if not 0 <= mask < limit:
                    raise ValueError(f"monomial {mask:b} does not fit in {L} generators")
                c = grat(coeff)
                if c:
                    clean[mask] = c
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @classmethod
    def scalar(cls, L, value):
        out = cls.__new__(cls)
        out.L = L
        c = grat(value)
        out.terms = {0: c} if c else {}
        return out

    @classmethod
    def generator(cls, L, j):
        if not 1 <= j <= L:
            raise ValueError(f"generator index {j} out of range 1..{L}")
        return cls._make(L, {1 << (j - 1): ONE})

    @classmethod
    def monomial(cls, L, labels, coeff=ONE):
        return cls(L, {mask_from_labels(labels, L): grat(coeff)})

    @classmethod
    def zero(cls, L):
        return cls._make(L, {})

    @classmethod
    def one(cls, L):
        return cls._make(L, {0: ONE})

    @classmethod
    def _make(cls, L, terms):
        # internal fast path: terms already canonical
        out = cls.__new__(cls)
        out.L = L
        out.terms = terms
        return out

    # -- structure ---------------------------------------------------------

    def body(self):
        return self.terms.get(0, ZERO)

    def soul(self):
        return Supernumber._make(self.L, {m: c for m, c in self.terms.items() if m})

    def body_soul(self):
        return self.body(), self.soul()

    def is_zero(self):
        return not self.terms

    def parity(self):
        """0 or 1 for homogeneous elements, None for mixed, 0 for zero."""
        if not self.terms:
            return 0
        parities = {mask.bit_count() & 1 for mask in self.terms}
        return parities.pop() if len(parities) == 1 else None

    def is_even(self):
        return all(mask.bit_count() & 1 == 0 for mask in self.terms)

    def is_odd(self):
        return all(mask.bit_count() & 1 for mask in self.terms)

    def even_part(self):
        return Supernumber._make(
            self.L, {m: c for m, c in self.terms.items() if m.bit_count() & 1 == 0}
        )

    def odd_part(self):
        return Supernumber._make(
            self.L, {m: c for m, c in self.terms.items() if m.bit_count() & 1}
        )

    def grade_involution(self):
        """Negate odd-monomial coefficients (the parity automorphism)."""
        return Supernumber._make(
            self.L,
            {m: (-c if m.bit_count() & 1 else c) for m, c in self.terms.items()},
        )

    def soul_degree(self):
        """Smallest generator count among monomials, or None if zero."""
        if not self.terms:
            return None
        return min(mask.bit_count() for mask in self.terms)

    def max_label(self):
        """Largest generator label used, 0 for scalar elements."""
        top = 0
        for mask in self.terms:
            if mask:
                top = max(top, mask.bit_length())
        return top

    def in_subalgebra(self, limit):
        """True if every monomial uses only generators 1..limit."""
        return self.max_label() <= limit

    # -- ring operations ---------------------------------------------------

    def _check(self, other):
        if self.L != other.L:
            raise DimensionMismatch(
                f"operands over {self.L} and {other.L} generators; "
                "extend or restrict explicitly"
            )

    def __add__(self, other):
        if not isinstance(other, Supernumber):
            return self + Supernumber.scalar(self.L, other)
        self._check(other)
        terms = dict(self.terms)
        for mask, coeff in other.terms.items():
            s = terms.get(mask)
            if s is None:
                terms[mask] = coeff
            else:
                s = s + coeff
                if s:
                    terms[mask] = s
                else:
                    del terms[mask]
        return Supernumber._make(self.L, terms)

    def __radd__(self, other):
        return self + other

    def __neg__(self):
        return Supernumber._make(self.L, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Supernumber):
            return self - Supernumber.scalar(self.L, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Supernumber):
            return self.scale(other)
        self._check(other)
        terms = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                if ma & mb:
                    continue
                c = ca * cb
                if reorder_sign(ma, mb) < 0:
                    c = -c
                mask = ma | mb
                s = terms.get(mask)
                if s is None:
                    terms[mask] = c
                else:
                    s = s + c
                    if s:
                        terms[mask] = s
                    else:
                        del terms[mask]
        return Supernumber._make(self.L, terms)

    def __rmul__(self, other):
        if isinstance(other, Supernumber):
            return NotImplemented
        return self.scale(other)

    def scale(self, value):
        c0 = grat(value)
        if not c0:
            return Supernumber._make(self.L, {})
        return Supernumber._make(self.L, {m: c0 * c for m, c in self.terms.items()})

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = Supernumber.one(self.L)
        for _ in range(n):
            out = out * self
            if not out.terms:
                break
        return out

    def inverse(self):
        """Two-sided inverse, defined exactly when the body is nonzero.

        1/(b + s) = sum_n (-1)**n s**n / b**(n+1); the series terminates
        because the soul is nilpotent.
        """
        body, soul = self.body_soul()
        if not body:
            raise NotInvertible("supernumber with zero body has no inverse")
        inv_b = body.inverse()
        out = Supernumber.scalar(self.L, inv_b)
        power = Supernumber.one(self.L)
        coeff = inv_b
        for _ in range(self.L):
            power = power * soul
            if power.is_zero():
                break
            coeff = -coeff * inv_b
            out = out + power.scale(coeff)
        return out

    def __truediv__(self, other):
        if isinstance(other, Supernumber):
            return self * other.inverse()
        return self.scale(grat(other).inverse())

    # -- functorial maps ---------------------------------------------------

    def extend(self, L_new):
        """View this element in the larger algebra on L_new generators."""
        if L_new < self.L:
            raise DimensionMismatch(f"cannot extend from {self.L} to {L_new}")
        return Supernumber._make(L_new, dict(self.terms))

    def restrict(self, L_new):
        """Drop every monomial using a generator above L_new."""
        if L_new > self.L:
            raise DimensionMismatch(f"cannot restrict from {self.L} to {L_new}")
        limit = 1 << L_new
        return Supernumber._make(
            L_new, {m: c for m, c in self.terms.items() if m < limit}
        )

    # -- comparison / display ----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Supernumber):
            return self.L == other.L and self.terms == other.terms
        if isinstance(other, (int, GaussianRational)):
            return self == Supernumber.scalar(self.L, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.L, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"Supernumber(L={self.L}, {self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mask in sorted(self.terms, key=lambda m: (m.bit_count(), m)):
            coeff = self.terms[mask]
            if mask == 0:
                parts.append(str(coeff))
                continue
            mono = "".join(f"z[{j}]" for j in labels_from_mask(mask))
            if coeff == ONE:
                parts.append(mono)
            elif coeff == -ONE:
                parts.append(f"-{mono}")
            else:
                text = str(coeff)
                if "+" in text[1:] or "-" in text[1:]:
                    text = text if text.startswith("(") else f"({text})"
                parts.append(f"{text}*{mono}")
        out = " + ".join(parts)
        return out.replace("+ -", "- ")


def gr_mul(x, y):
    return x * y


def gr_body_soul(x):
    return x.body_soul()


def gr_inv(x):
    return x.inverse()


def gr_extend(x, L_new):
    return x.extend(L_new)


def gr_restrict(x, L_new):
    return x.restrict(L_new)
