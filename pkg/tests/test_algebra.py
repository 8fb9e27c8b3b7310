from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zinbiel import algebra as alg
from zinbiel.algebra import (
    Algebra,
    AlgebraFormatError,
    apply_basis_change,
    center,
    check_leibniz,
    check_zinbiel,
    left_annihilator,
    multiply,
    nilindex,
    power_filtration,
    right_annihilator,
    zinbiel_residual,
)
from zinbiel.generators import FamilyParams, make_family, make_null_filiform, make_split
from zinbiel.invariants import random_invertible
from zinbiel.linalg import NotNilpotent, QMatrix, Singular, unit_vector

from conftest import brute_zinbiel_violations, nf_oracle

NF3 = Algebra(3, {(1, 1): {2: 1}, (1, 2): {3: 1}, (2, 1): {3: 2}})


def e(n, i):
    return unit_vector(n, i - 1)


rationals = st.fractions(min_value=-3, max_value=3, max_denominator=3)


def vectors(n):
    return st.lists(rationals, min_size=n, max_size=n).map(tuple)


class TestMultiply:
    def test_nf4_chain(self):
        assert multiply(make_null_filiform(4), e(4, 1), e(4, 2)) == e(4, 3)

    def test_nf6_binomial(self):
        assert multiply(make_null_filiform(6), e(6, 2), e(6, 2)) == tuple(3 * c for c in e(6, 4))

    def test_zero_left_factor(self):
        A = make_null_filiform(5)
        assert multiply(A, (0,) * 5, e(5, 2)) == (0,) * 5

    @settings(max_examples=40)
    @given(vectors(5), vectors(5), vectors(5), rationals)
    def test_bilinear(self, x, y, z, c):
        A = make_null_filiform(5)
        xz = tuple(a + c * b for a, b in zip(x, z))
        lhs = multiply(A, xz, y)
        rhs = tuple(a + c * b for a, b in zip(multiply(A, x, y), multiply(A, z, y)))
        assert lhs == rhs
        lhs = multiply(A, y, xz)
        rhs = tuple(a + c * b for a, b in zip(multiply(A, y, x), multiply(A, y, z)))
        assert lhs == rhs


class TestZinbiel:
    def test_nf5_agrees_with_brute_force(self):
        A = make_null_filiform(5)
        assert check_zinbiel(A).holds
        assert brute_zinbiel_violations(5, nf_oracle(5)) == []
        assert A == Algebra(5, nf_oracle(5))

    def test_toy_violation(self):
        toy = Algebra(3, {(1, 1): {2: 1}, (2, 1): {3: 1}})
        report = check_zinbiel(toy)
        assert list(report.violations) == [((1, 1, 1), e(3, 3))]
        assert brute_zinbiel_violations(3, {(1, 1): {2: 1}, (2, 1): {3: 1}}) == [(1, 1, 1)]

    def test_zero_algebra(self):
        assert check_zinbiel(Algebra(4)).holds

    def test_split(self):
        assert check_zinbiel(make_split(8, 3)).holds

    @settings(max_examples=30)
    @given(vectors(5), vectors(5), vectors(5))
    def test_residual_vanishes_on_arbitrary_vectors(self, x, y, z):
        assert not any(zinbiel_residual(make_null_filiform(5), x, y, z))


class TestLeibniz:
    def test_zero(self):
        assert check_leibniz(Algebra(3)).holds

    def test_nf3_is_not_leibniz(self):
        report = check_leibniz(NF3)
        assert not report.holds
        assert report.violations[0][0] == (1, 1, 1)

    def test_lie_algebra(self):
        heis = Algebra(3, {(1, 2): {3: 1}, (2, 1): {3: -1}})
        assert check_leibniz(heis).holds


class TestFiltration:
    def test_zero_algebra(self):
        dims = [S.dim for S in power_filtration(Algebra(3))]
        assert dims == [3, 0]
        assert nilindex(Algebra(3)) == 1

    def test_nf4(self):
        assert [S.dim for S in power_filtration(make_null_filiform(4))] == [4, 3, 2, 1, 0]

    @pytest.mark.parametrize("n", [1, 2, 5, 9])
    def test_nf_nilindex(self, n):
        assert nilindex(make_null_filiform(n)) == n

    def test_family(self):
        A = make_family(FamilyParams(8, 4, (2, 1, 1, 0)))
        assert [S.dim for S in power_filtration(A)] == [8, 5, 3, 1, 0]
        assert nilindex(A) == 4

    def test_not_nilpotent(self):
        idem = Algebra(1, {(1, 1): {1: 1}})
        with pytest.raises(NotNilpotent):
            nilindex(idem)


class TestAnnihilators:
    def test_zero_algebra(self):
        assert center(Algebra(3)).dim == 3

    def test_nf4(self):
        A = make_null_filiform(4)
        assert right_annihilator(A).basis == (e(4, 4),)
        assert left_annihilator(A).basis == (e(4, 4),)
        assert center(A).dim == 1

    def test_split_center(self):
        A = make_split(7, 3)
        Z = center(A)
        assert Z.dim == 4
        for k in range(5, 8):
            assert e(7, k) in Z

    def test_one_sided(self):
        # e1 o e2 = e3 only: e2 annihilates when it is the left factor
        A = Algebra(3, {(1, 2): {3: 1}})
        assert e(3, 2) in right_annihilator(A)
        assert e(3, 2) not in left_annihilator(A)
        assert center(A) == left_annihilator(A) & right_annihilator(A)


class TestBasisChange:
    def test_identity(self):
        A = make_null_filiform(5)
        assert apply_basis_change(A, QMatrix.identity(5)) == A

    def test_scaling_is_homogeneous(self):
        P = QMatrix.from_rows([[2 ** (i + 1) if i == j else 0 for j in range(3)] for i in range(3)])
        assert apply_basis_change(NF3, P) == NF3

    def test_round_trip(self):
        rng = random.Random(5)
        A = make_family(FamilyParams(9, 4, (2, 1, 1, 0, 0)))
        P = random_invertible(A.dim, rng)
        B = apply_basis_change(A, P)
        assert check_zinbiel(B).holds
        assert apply_basis_change(B, P.inverse()) == A

    def test_singular(self):
        with pytest.raises(Singular):
            apply_basis_change(NF3, QMatrix.zeros(3, 3))


class TestJson:
    def test_round_trip(self):
        A = make_family(FamilyParams(13, 9, (3, 3, 2, 1), 2, 1))
        text = alg.to_json(A)
        assert alg.from_json(text) == A
        assert alg.to_json(alg.from_json(text)) == text

    def test_rationals_lowest_terms(self):
        A = Algebra(2, {(1, 1): {2: Fraction(4, 6)}})
        assert '"q": "2/3"' in alg.to_json(A)

    def test_truncated(self):
        text = alg.to_json(NF3)[:-10]
        with pytest.raises(AlgebraFormatError, match="line"):
            alg.from_json(text)

    @pytest.mark.parametrize("bad", [
        '{"dim": 0, "products": []}',
        '{"dim": 2, "products": [{"i": 3, "j": 1, "terms": []}]}',
        '{"dim": 2, "products": [{"i": 1, "j": 1, "terms": [{"k": 2, "q": "0"}]}]}',
        '{"products": []}',
    ])
    def test_rejects(self, bad):
        with pytest.raises(AlgebraFormatError):
            alg.from_json(bad)

    def test_format_table(self):
        A = make_family(FamilyParams(8, 4, (2, 1, 1, 0)))
        lines = alg.format_table(A).splitlines()
        assert "e1∘e1 = e2" in lines
        assert "f1∘e2 = 1/2 f4" in lines
