import random

import pytest

from supersphere import matrixalgebra as msa
from supersphere import nsalgebra as ns
from supersphere.scalars import ZERO, grat


def osp_image(key):
    for element, matrix in msa.osp_table():
        if element == ns.NSElement.basis(key):
            return matrix
    raise KeyError(key)


class TestMatrixBasics:
    def test_sl2_commutator(self):
        E = msa.Matrix([[0, 1], [0, 0]])
        F = msa.Matrix([[0, 0], [1, 0]])
        H = msa.Matrix([[1, 0], [0, -1]])
        assert E.commutator(F) == H

    def test_block_parity(self):
        even = msa.Matrix([[1, 0, 0, 0], [0, 2, 0, 0],
                           [0, 0, 3, 0], [0, 0, 0, 4]])
        odd = msa.Matrix([[0, 0, 1, 0], [0, 0, 0, 0],
                          [0, 1, 0, 0], [0, 0, 0, 0]])
        assert even.block_parity() == 0
        assert odd.block_parity() == 1
        assert (even + odd).block_parity() is None

    def test_superbracket_parity_error(self):
        mixed = msa.Matrix([[1, 0, 1, 0], [0, 0, 0, 0],
                            [0, 0, 0, 0], [0, 0, 0, 0]])
        with pytest.raises(msa.ParityError):
            mixed.superbracket(mixed)

    def test_odd_anticommutator(self):
        # same-sign supercharges in the twist-0 table anticommute to zero
        got = osp_image(ns.Gp(-1)).superbracket(osp_image(ns.Gp(1)))
        assert got.is_zero()

    def test_supertrace_of_brackets(self):
        rng = random.Random(5)
        images = [m for _, m in msa.osp_table()]
        for _ in range(30):
            x = images[rng.randrange(len(images))]
            y = images[rng.randrange(len(images))]
            assert x.superbracket(y).supertrace() == ZERO

    def test_matrix_super_jacobi(self):
        rng = random.Random(7)
        images = [m for _, m in msa.osp_table()]
        for _ in range(25):
            x, y, z = (images[rng.randrange(len(images))] for _ in range(3))
            px, py, pz = (m.block_parity() for m in (x, y, z))
            total = x.superbracket(y).superbracket(z).scale(
                grat((-1) ** (px * pz)))
            total = total + y.superbracket(z).superbracket(x).scale(
                grat((-1) ** (py * px)))
            total = total + z.superbracket(x).superbracket(y).scale(
                grat((-1) ** (pz * py)))
            assert total.is_zero()


class TestOspTable:
    def test_charge_rotation_image(self):
        got = osp_image(ns.J(0))
        assert got == msa.Matrix([[0, 0, 0, 0], [0, 0, 0, 0],
                                  [0, 0, 1, 0], [0, 0, 0, -1]])

    def test_dimensions(self):
        table = msa.osp_table()
        evens = [m for _, m in table if m.block_parity() == 0]
        odds = [m for _, m in table if m.block_parity() == 1]
        assert len(evens) == 4 and len(odds) == 4

    def test_shape(self):
        for _, matrix in msa.osp_table():
            assert msa.osp_pattern_violations(matrix) == []

    def test_homomorphism(self):
        report = msa.verify_table(msa.osp_table())
        assert report["mismatches"] == []
        assert report["injective"]

    def test_sample_bracket_pair(self):
        # [G+_{1/2}, G-_{-1/2}] maps to the image of 2 L_0 + J_0
        got = osp_image(ns.Gp(1)).superbracket(osp_image(ns.Gm(-1)))
        expected = osp_image(ns.L(0)).scale(2) + osp_image(ns.J(0))
        assert got == expected


class TestPTables:
    def test_doubled_entry(self):
        table = msa.p_table(+1)
        by_source = {tuple(sorted(e.terms)): m for e, m in table}
        image = by_source[tuple(sorted({ns.Gm(-1): grat(1)}))]
        assert image == msa.Matrix([[0, 0, 2, 0], [0, 0, 0, 0],
                                    [0, 0, 0, 0], [0, 0, 0, 0]])

    def test_homomorphism_both_signs(self):
        for sign in (+1, -1):
            report = msa.verify_table(msa.p_table(sign))
            assert report["mismatches"] == [], sign
            assert report["injective"]

    def test_shape_excluding_external_charge(self):
        for sign in (+1, -1):
            for idx, (_, matrix) in enumerate(msa.p_table(sign)):
                if idx == 3:  # J(0) sits outside the p-shape
                    assert msa.p_pattern_violations(matrix) != []
                else:
                    assert msa.p_pattern_violations(matrix) == []

    def test_dimensions(self):
        table = msa.p_table(+1)
        inner = [m for idx, (_, m) in enumerate(table) if idx != 3]
        evens = [m for m in inner if m.block_parity() == 0]
        odds = [m for m in inner if m.block_parity() == 1]
        assert len(evens) == 3 and len(odds) == 4


class TestSemidirect:
    def test_verify_all(self):
        for n in (2, 3, -2, -3):
            report = msa.GnSemidirect(n).verify()
            assert report["mismatches"] == [], n

    def test_even_part_matches_sl2(self):
        sd = msa.GnSemidirect(3)
        images = sd.acting_images()
        assert images[1][0] == msa.Matrix([["1/2", 0], [0, "-1/2"]])
        assert images[0][0].commutator(images[2][0]) == \
            images[1][0].scale(-2)  # [E, F'] = -H with F' = -F

    def test_pure_acting_bracket(self):
        sd = msa.GnSemidirect(2)
        images = sd.basis_images()
        got = sd.bracket(images[0], images[2])
        assert got.mat == images[0].mat.commutator(images[2].mat)
        assert not any(got.vector)

    def test_charge_acts_by_minus_one(self):
        sd = msa.GnSemidirect(4)
        vec = [ZERO] * sd.rank
        vec[2] = grat(1)
        moved = sd.sigma(3, vec)
        assert moved[2] == grat(-1)

    def test_ideal_is_abelian(self):
        sd = msa.GnSemidirect(3)
        images = sd.basis_images()
        for i in range(4, len(images)):
            for j in range(4, len(images)):
                got = sd.bracket(images[i], images[j])
                assert got.mat.is_zero() and not any(got.vector)

    def test_rejects_small_twists(self):
        with pytest.raises(ValueError):
            msa.GnSemidirect(1)


def test_table_json_export():
    import json
    data = msa.table_to_json(msa.osp_table())
    blob = json.dumps(data)
    assert json.loads(blob) == data
    assert data[3]["source"] == {"J(0)": "1"}
    assert data[3]["matrix"][2][2] == "1"
