"""Block matrix Lie superalgebras and verified isomorphism tables.

gl(2|2) matrices are graded by 2x2 blocks: the diagonal blocks are even,
the off-diagonal blocks odd.  The superbracket of parity-homogeneous
matrices is X Y - (-1)^(parity product) Y X.

The tables in this module map bases of the infinitesimal automorphism
algebras to matrices:

* twist 0 onto osp(2|2), matrices of the shape
      [[a, b, s, q], [c, -a, -r, -p], [p, q, d, 0], [r, s, 0, -d]];
* twist +-1 onto gl(1) acting on p(2|2), matrices of the shape
      [[a, b, p, q], [c, -a, q, r], [0, s, -a, -c], [-s, 0, -b, a]]
  with the gl(1) generator added on the lower diagonal block;
* twist |n| >= 2 onto (sl(2) + gl(1)) acting on an abelian odd tower,
  held as semidirect-product data.

The tables are data; the homomorphism property is the test.  The checker
compares the image of every basis bracket against the bracket of images
and itemizes disagreements instead of adjusting any matrix.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import GaussianRational, ONE, ZERO, grat
from . import nsalgebra as ns
from .nsalgebra import NSElement, bracket, span_coefficients


class ParityError(ValueError):
    """A graded matrix operation received a non-homogeneous operand."""


class Matrix:
    """A square matrix over Q(i), with block grading when the size is 4."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(tuple(grat(x) for x in row) for row in rows)
        size = len(rows)
        if any(len(row) != size for row in rows):
            raise ValueError("matrix must be square")
        self.rows = rows

    @classmethod
    def zero(cls, size):
        return cls([[0] * size for _ in range(size)])

    @property
    def size(self):
        return len(self.rows)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __add__(self, other):
        return Matrix([
            [x + y for x, y in zip(r1, r2)]
            for r1, r2 in zip(self.rows, other.rows)
        ])

    def __neg__(self):
        return Matrix([[-x for x in row] for row in self.rows])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, value):
        value = grat(value)
        return Matrix([[value * x for x in row] for row in self.rows])

    def __mul__(self, other):
        n = self.size
        return Matrix([
            [
                sum((self.rows[i][k] * other.rows[k][j] for k in range(n)),
                    start=ZERO)
                for j in range(n)
            ]
            for i in range(n)
        ])

    def is_zero(self):
        return all(not x for row in self.rows for x in row)

    def flatten(self):
        return tuple(x for row in self.rows for x in row)

    def commutator(self, other):
        return self * other - other * self

    # -- 4x4 block grading --------------------------------------------------

    def block_parity(self):
        """0 for diagonal-block support, 1 for off-diagonal, None if mixed."""
        if self.size != 4:
            raise ValueError("block grading is defined for 4x4 matrices")
        half = 2
        even = odd = False
        for i in range(4):
            for j in range(4):
                if self.rows[i][j]:
                    if (i < half) == (j < half):
                        even = True
                    else:
                        odd = True
        if even and odd:
            return None
        return 1 if odd else 0

    def superbracket(self, other):
        p1 = self.block_parity()
        p2 = other.block_parity()
        if p1 is None or p2 is None:
            raise ParityError("superbracket needs parity-homogeneous matrices")
        xy = self * other
        yx = other * self
        return xy - yx if (p1 * p2) % 2 == 0 else xy + yx

    def supertrace(self):
        if self.size != 4:
            raise ValueError("supertrace is defined for the 4x4 block form")
        r = self.rows
        return r[0][0] + r[1][1] - r[2][2] - r[3][3]

    def __repr__(self):
        body = "; ".join(
            " ".join(str(x) for x in row) for row in self.rows
        )
        return f"Matrix([{body}])"


def osp_pattern_violations(m):
    """Constraints of the osp(2|2) shape that the matrix breaks."""
    r = m.rows
    checks = [
        (r[1][1] == -r[0][0], "lower-right of sl2 block"),
        (r[3][3] == -r[2][2], "even diagonal block trace"),
        (not r[2][3], "entry (2,3)"),
        (not r[3][2], "entry (3,2)"),
        (r[0][2] == r[3][1], "s entries"),
        (r[0][3] == r[2][1], "q entries"),
        (r[1][2] == -r[3][0], "r entries"),
        (r[1][3] == -r[2][0], "p entries"),
    ]
    return [label for ok, label in checks if not ok]


def p_pattern_violations(m):
    """Constraints of the p(2|2) shape that the matrix breaks."""
    r = m.rows
    checks = [
        (r[1][1] == -r[0][0], "upper even block is traceless"),
        (r[2][2] == -r[0][0], "lower block repeats -a"),
        (r[3][3] == r[0][0], "lower block repeats a"),
        (r[2][3] == -r[1][0], "-c entry"),
        (r[3][2] == -r[0][1], "-b entry"),
        (not r[2][0], "entry (2,0)"),
        (not r[3][1], "entry (3,1)"),
        (r[3][0] == -r[2][1], "s antisymmetry"),
        (r[0][3] == r[1][2], "q symmetry"),
    ]
    return [label for ok, label in checks if not ok]


def _sl2_into_osp(a, b, c):
    return Matrix([
        [a, b, 0, 0],
        [c, -a, 0, 0],
        [0, 0, 0, 0],
        [0, 0, 0, 0],
    ])


def _sl2_into_p(a, b, c):
    return Matrix([
        [a, b, 0, 0],
        [c, -a, 0, 0],
        [0, 0, -a, -c],
        [0, 0, -b, a],
    ])


HALF = Fraction(1, 2)


def osp_table():
    """The twist-0 basis mapped into osp(2|2)."""
    e = NSElement.basis
    return [
        (e(ns.L(-1)), _sl2_into_osp(0, 1, 0)),
        (e(ns.L(0)), _sl2_into_osp(HALF, 0, 0)),
        (e(ns.L(1)), _sl2_into_osp(0, 0, -1)),
        (e(ns.J(0)), Matrix([[0, 0, 0, 0], [0, 0, 0, 0],
                             [0, 0, 1, 0], [0, 0, 0, -1]])),
        (e(ns.Gp(-1)), Matrix([[0, 0, 0, 1], [0, 0, 0, 0],
                               [0, 1, 0, 0], [0, 0, 0, 0]])),
        (e(ns.Gp(1)), Matrix([[0, 0, 0, 0], [0, 0, 0, -1],
                              [1, 0, 0, 0], [0, 0, 0, 0]])),
        (e(ns.Gm(-1)), Matrix([[0, 0, 1, 0], [0, 0, 0, 0],
                               [0, 0, 0, 0], [0, 1, 0, 0]])),
        (e(ns.Gm(1)), Matrix([[0, 0, 0, 0], [0, 0, -1, 0],
                              [0, 0, 0, 0], [1, 0, 0, 0]])),
    ]


def p_table(sign):
    """The twist +1 or -1 basis mapped into gl(1) + p(2|2)."""
    if sign not in (1, -1):
        raise ValueError("sign selects the twist +1 or -1 table")
    e = NSElement.basis
    G_same = ns.Gp if sign > 0 else ns.Gm
    G_other = ns.Gm if sign > 0 else ns.Gp
    return [
        (e(ns.L(-1)), _sl2_into_p(0, 1, 0)),
        (e(ns.L(0)) - e(ns.J(0)).scale(grat(Fraction(sign, 2))),
         _sl2_into_p(HALF, 0, 0)),
        (e(ns.L(1)) - e(ns.J(1)).scale(sign), _sl2_into_p(0, 0, -1)),
        (e(ns.J(0)), Matrix([[0, 0, 0, 0], [0, 0, 0, 0],
                             [0, 0, sign, 0], [0, 0, 0, sign]])),
        (e(G_same(-1)), Matrix([[0, 0, 0, 0], [0, 0, 0, 0],
                                [0, 1, 0, 0], [-1, 0, 0, 0]])),
        (e(G_other(-1)), Matrix([[0, 0, 2, 0], [0, 0, 0, 0],
                                 [0, 0, 0, 0], [0, 0, 0, 0]])),
        (e(G_other(1)), Matrix([[0, 0, 0, -1], [0, 0, -1, 0],
                                [0, 0, 0, 0], [0, 0, 0, 0]])),
        (e(G_other(3)), Matrix([[0, 0, 0, 0], [0, 0, 0, 2],
                                [0, 0, 0, 0], [0, 0, 0, 0]])),
    ]


def table_to_json(pairs):
    """A basis-to-matrix table as JSON-ready data (golden-file format)."""
    out = []
    for element, matrix in pairs:
        out.append({
            "source": {ns.key_str(k): str(c) for k, c in sorted(
                element.terms.items(), key=lambda kv: ns.key_str(kv[0]))},
            "matrix": [[str(x) for x in row] for row in matrix.rows],
        })
    return out


def verify_table(pairs):
    """Check a basis-to-matrix table for the homomorphism property.

    Returns a report dict: bracket mismatches are itemized as
    {pair, expected, got}; images must also be linearly independent and
    every basis bracket must stay inside the mapped span with no central
    term.
    """
    sources = [e for e, _ in pairs]
    images = [m for _, m in pairs]
    mismatches = []
    for i, u in enumerate(sources):
        for j, v in enumerate(sources):
            target = bracket(u, v)
            if target.central_coefficient():
                mismatches.append({
                    "pair": (i, j), "expected": "no central term",
                    "got": str(target.central_coefficient()),
                })
                continue
            coords = span_coefficients(target, sources)
            if coords is None:
                mismatches.append({
                    "pair": (i, j), "expected": "bracket inside the span",
                    "got": repr(target),
                })
                continue
            expected = Matrix.zero(4)
            for coeff, image in zip(coords, images):
                if coeff:
                    expected = expected + image.scale(coeff)
            got = images[i].superbracket(images[j])
            if expected != got:
                mismatches.append({
                    "pair": (i, j), "expected": repr(expected),
                    "got": repr(got),
                })
    return {
        "mismatches": mismatches,
        "injective": _independent(images),
        "size": len(pairs),
    }


def _independent(images):
    vectors = [m.flatten() for m in images]
    cols = len(vectors[0])
    rows = [list(v) for v in vectors]
    rank = 0
    for c in range(cols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = rows[rank][c].inverse()
        rows[rank] = [x * inv for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank == len(vectors)


# ---------------------------------------------------------------------------
# the semidirect data for |n| >= 2
# ---------------------------------------------------------------------------


class SemidirectElement:
    """(sl2 part, gl1 part, odd tower coefficient vector)."""

    __slots__ = ("mat", "gl1", "vector")

    def __init__(self, mat, gl1, vector):
        self.mat = mat
        self.gl1 = grat(gl1)
        self.vector = tuple(grat(x) for x in vector)

    def __eq__(self, other):
        if not isinstance(other, SemidirectElement):
            return NotImplemented
        return (self.mat, self.gl1, self.vector) == \
            (other.mat, other.gl1, other.vector)

    def __repr__(self):
        return f"SemidirectElement({self.mat!r}, gl1={self.gl1}, v={self.vector})"


class GnSemidirect:
    """(sl2 + gl1) acting on the abelian odd tower of the twist-n algebra.

    The action table sends the four even generators to linear maps on the
    tower coefficients (indexed by k = 0 .. |n|+1):

        L(-1):            e_k -> -k e_{k-1}
        L(0) - n/2 J(0):  e_k -> (-k + (|n|+1)/2) e_k
        L(1) - n J(1):    e_k -> (-k + |n| + 1) e_{k+1}
        J(0):             e_k -> -+ e_k   (minus for n >= 2)
    """

    __slots__ = ("n", "rank")

    def __init__(self, n):
        if abs(n) < 2:
            raise ValueError("semidirect data exists for |n| >= 2")
        self.n = n
        self.rank = abs(n) + 2

    def acting_basis(self):
        return ns.subalgebra_basis(self.n)[:4]

    def acting_images(self):
        return [
            (Matrix([[0, 1], [0, 0]]), ZERO),
            (Matrix([[HALF, 0], [0, -HALF]]), ZERO),
            (Matrix([[0, 0], [-1, 0]]), ZERO),
            (Matrix.zero(2), ONE),
        ]

    def ideal_keys(self):
        G = ns.Gm if self.n >= 2 else ns.Gp
        return [G(2 * k - 1) for k in range(self.rank)]

    def sigma(self, index, vector):
        """Apply the action of the index-th even generator to a vector."""
        absn = abs(self.n)
        out = [ZERO] * self.rank
        for k, c in enumerate(vector):
            if not c:
                continue
            if index == 0:
                if k:
                    out[k - 1] = out[k - 1] + c * grat(-k)
            elif index == 1:
                out[k] = out[k] + c * grat(Fraction(-2 * k + absn + 1, 2))
            elif index == 2:
                if k + 1 < self.rank:
                    out[k + 1] = out[k + 1] + c * grat(-k + absn + 1)
            elif index == 3:
                out[k] = out[k] + c * grat(-1 if self.n >= 2 else 1)
            else:
                raise IndexError("four even generators")
        return tuple(out)

    def element(self, mat, gl1, vector):
        return SemidirectElement(mat, gl1, vector)

    def basis_images(self):
        """Images of the full twist-n basis as semidirect elements."""
        zero_vec = (ZERO,) * self.rank
        out = [SemidirectElement(m, s, zero_vec)
               for m, s in self.acting_images()]
        for k in range(self.rank):
            vec = [ZERO] * self.rank
            vec[k] = ONE
            out.append(SemidirectElement(Matrix.zero(2), ZERO, vec))
        return out

    def bracket(self, x, y):
        """[u + v, u' + v'] = [u, u'] + sigma_u(v') - sigma_{u'}(v).

        The odd-odd part vanishes: the tower is abelian.  The sign in
        front of sigma_{u'}(v) is plain because the acting part is even.
        """
        mat = x.mat.commutator(y.mat)
        vector = [ZERO] * self.rank
        for idx, (m_img, s_img) in enumerate(self.acting_images()):
            cx = self._acting_coordinate(x, idx)
            cy = self._acting_coordinate(y, idx)
            if cx:
                moved = self.sigma(idx, y.vector)
                vector = [a + cx * b for a, b in zip(vector, moved)]
            if cy:
                moved = self.sigma(idx, x.vector)
                vector = [a - cy * b for a, b in zip(vector, moved)]
        return SemidirectElement(mat, ZERO, vector)

    def _acting_coordinate(self, x, idx):
        """Coordinate of x's even part along the idx-th acting generator."""
        m = x.mat.rows
        coords = (m[0][1], m[0][0] * 2, -m[1][0], x.gl1)
        return coords[idx]

    def verify(self):
        """Homomorphism check of the semidirect data against the algebra."""
        basis = ns.subalgebra_basis(self.n)
        images = self.basis_images()
        mismatches = []
        for i, u in enumerate(basis):
            for j, v in enumerate(basis):
                target = bracket(u, v)
                if target.central_coefficient():
                    mismatches.append({"pair": (i, j),
                                       "expected": "no central term",
                                       "got": repr(target)})
                    continue
                coords = span_coefficients(target, basis)
                if coords is None:
                    mismatches.append({"pair": (i, j),
                                       "expected": "bracket inside the span",
                                       "got": repr(target)})
                    continue
                expected = _combine(images, coords, self.rank)
                got = self.bracket(images[i], images[j])
                if expected != got:
                    mismatches.append({"pair": (i, j),
                                       "expected": repr(expected),
                                       "got": repr(got)})
        return {"mismatches": mismatches, "size": len(basis)}


def _combine(images, coords, rank):
    mat = Matrix.zero(2)
    gl1 = ZERO
    vector = [ZERO] * rank
    for coeff, img in zip(coords, images):
        if not coeff:
            continue
        mat = mat + img.mat.scale(coeff)
        gl1 = gl1 + coeff * img.gl1
        vector = [a + coeff * b for a, b in zip(vector, img.vector)]
    return SemidirectElement(mat, gl1, vector)
