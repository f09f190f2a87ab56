"""Exact sparse linear algebra: ranks, kernels, solving, quotients,
eigenspace splitting."""

import random
from fractions import Fraction

import pytest

from liebialg.linalg import (ContainmentError, LinalgError,
                             NotSemisimpleError, SparseMatrix, SubspaceBasis,
                             char_poly, eigen_split, format_scalar,
                             linear_solve, parse_scalar, quotient_basis,
                             rank_kernel, vec)

F = Fraction


def dense(rows):
    items = []
    for r, row in enumerate(rows):
        for c, v in enumerate(row):
            if v:
                items.append((r, c, F(v)))
    cols = len(rows[0]) if rows else 0
    return SparseMatrix.from_entries(len(rows), cols, items)


class TestScalarFormat:
    def test_round_trip(self):
        for text in ["0", "1", "-1", "3/4", "-22/7", "100000000000/3"]:
            assert format_scalar(parse_scalar(text)) == text

    def test_normalisation(self):
        assert parse_scalar("2/4") == F(1, 2)
        assert format_scalar(F(-2, 4)) == "-1/2"

    def test_rejects_garbage(self):
        for text in ["", "a", "1/ 2"]:
            with pytest.raises(ValueError):
                parse_scalar(text)


class TestVecNormalize:
    def test_merge_sort_drop(self):
        raw = [(3, F(1)), (0, F(2)), (3, F(-1)), (1, F(0))]
        assert vec(raw) == ((0, F(2)),)


class TestRankKernel:
    def test_frozen_small(self):
        rank, ker = rank_kernel(dense([[1, 2], [2, 4]]))
        assert rank == 1
        assert ker.dim == 1
        assert ker.contains(((0, F(-2)), (1, F(1))))

    def test_zero_matrix(self):
        rank, ker = rank_kernel(SparseMatrix.zero(3, 3))
        assert rank == 0
        assert ker.dim == 3

    def test_empty_shapes(self):
        rank, ker = rank_kernel(SparseMatrix.zero(0, 4))
        assert rank == 0
        assert ker.dim == 4
        rank, ker = rank_kernel(SparseMatrix.zero(4, 0))
        assert rank == 0
        assert ker.dim == 0

    def test_rank_plus_nullity(self):
        rng = random.Random(11)
        for _ in range(25):
            rows = rng.randint(1, 12)
            cols = rng.randint(1, 12)
            items = [(rng.randrange(rows), rng.randrange(cols),
                      F(rng.randint(-3, 3)))
                     for _ in range(rng.randint(0, rows * cols))]
            m = SparseMatrix.from_entries(rows, cols, items)
            rank, ker = rank_kernel(m)
            assert rank + ker.dim == cols
            for v in ker:
                assert m.apply(v) == ()

    def test_kernel_basis_canonical(self):
        # same kernel, different presentations
        a = dense([[1, 1, 1]])
        b = dense([[2, 2, 2], [-3, -3, -3]])
        assert rank_kernel(a)[1] == rank_kernel(b)[1]


class TestLinearSolve:
    def test_consistent(self):
        m = dense([[1, 2], [3, 4]])
        rhs = ((0, F(5)), (1, F(11)))
        x = linear_solve(m, rhs)
        assert x is not None
        assert m.apply(x) == rhs

    def test_inconsistent(self):
        m = dense([[1, 2], [2, 4]])
        assert linear_solve(m, ((0, F(1)), (1, F(3)))) is None

    def test_underdetermined_free_vars_zero(self):
        m = dense([[1, 1]])
        x = linear_solve(m, ((0, F(7)),))
        assert x == ((0, F(7)),)

    def test_random_consistent_systems(self):
        rng = random.Random(23)
        for _ in range(20):
            n = rng.randint(1, 8)
            items = [(i, j, F(rng.randint(-4, 4)))
                     for i in range(n) for j in range(n)
                     if rng.random() < 0.6]
            m = SparseMatrix.from_entries(n, n, items)
            target = vec((i, F(rng.randint(-3, 3))) for i in range(n))
            rhs = m.apply(target)
            x = linear_solve(m, rhs)
            assert x is not None
            assert m.apply(x) == rhs


class TestSubspace:
    def test_membership_and_coordinates(self):
        basis = SubspaceBasis.from_vectors(
            4, [((0, F(1)), (1, F(1))), ((2, F(1)),)])
        assert basis.dim == 2
        assert basis.contains(((0, F(2)), (1, F(2)), (2, F(-1))))
        assert not basis.contains(((0, F(1)),))
        coords = basis.coordinates(((0, F(3)), (1, F(3))))
        assert coords == (F(3), F(0))
        assert basis.coordinates(((3, F(1)),)) is None

    def test_reduce_idempotent(self):
        basis = SubspaceBasis.from_vectors(3, [((0, F(1)), (1, F(2)))])
        residue = basis.reduce(((0, F(5)), (2, F(1))))
        assert basis.reduce(residue) == residue
        assert not basis.contains(residue)

    def test_quotient_dims(self):
        total = SubspaceBasis.from_vectors(
            5, [((i, F(1)),) for i in range(4)])
        sub = SubspaceBasis.from_vectors(
            5, [((0, F(1)), (1, F(1))), ((2, F(1)),)])
        reps, count = quotient_basis(total, sub)
        assert count == 2 and len(reps) == 2
        span = list(sub.vectors) + list(reps)
        assert SubspaceBasis.from_vectors(5, span).dim == 4

    def test_quotient_rejects_nonsub(self):
        total = SubspaceBasis.from_vectors(3, [((0, F(1)),)])
        sub = SubspaceBasis.from_vectors(3, [((1, F(1)),)])
        with pytest.raises(ContainmentError):
            quotient_basis(total, sub)


class TestEigen:
    def test_char_poly_frozen(self):
        # det(tI - m) = t^2 - 4t + 3, highest degree first
        assert char_poly(dense([[2, 1], [1, 2]])) == (F(1), F(-4), F(3))

    def test_char_poly_needs_square(self):
        with pytest.raises(LinalgError):
            char_poly(SparseMatrix.zero(2, 3))

    def test_semisimple_split(self):
        m = dense([[F(1, 2), 0], [0, F(-1, 2)]])
        split = eigen_split(m)
        assert [(lam, basis.dim) for lam, basis in split] == \
            [(F(-1, 2), 1), (F(1, 2), 1)]

    def test_split_is_eigendecomposition(self):
        m = dense([[2, 1, 0], [1, 2, 0], [0, 0, 5]])
        split = eigen_split(m)
        assert sum(basis.dim for _, basis in split) == 3
        for lam, basis in split:
            for v in basis:
                assert m.apply(v) == vec((i, lam * c) for i, c in v)

    def test_nilpotent_raises(self):
        with pytest.raises(NotSemisimpleError):
            eigen_split(dense([[0, 1], [0, 0]]))

    def test_irrational_raises(self):
        # eigenvalues are the square roots of 2
        with pytest.raises(NotSemisimpleError):
            eigen_split(dense([[0, 2], [1, 0]]))

    def test_zero_map_and_empty(self):
        split = eigen_split(SparseMatrix.zero(2, 2))
        assert len(split) == 1
        assert split[0][0] == 0 and split[0][1].dim == 2
        assert eigen_split(SparseMatrix.zero(0, 0)) == []


class TestMatrixOps:
    def test_compose_and_subtract(self):
        a = dense([[1, 2], [0, 1]])
        b = dense([[1, 0], [3, 1]])
        ab = a @ b
        assert ab.get(0, 0) == F(7) and ab.get(1, 0) == F(3)
        assert (ab - ab).is_zero()

    def test_apply_matches_columns(self):
        m = dense([[1, 2], [3, 4]])
        assert m.apply(((1, F(1)),)) == m.column_vectors()[1]

    def test_inverse(self):
        m = dense([[1, 2], [3, 4]])
        assert (m @ m.inverse()) == SparseMatrix.identity(2)
        with pytest.raises(LinalgError):
            dense([[1, 2], [2, 4]]).inverse()
