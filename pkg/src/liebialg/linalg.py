"""Exact sparse linear algebra over the rationals.

Everything in this package funnels through here: structure constants,
differentials and pairings become sparse matrices with Fraction entries, and
every rank / kernel / quotient / eigenspace question is answered by exact row
reduction.  No floating point anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional

Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

# A sparse vector is a tuple of (index, coefficient) pairs, sorted by index,
# with no zero coefficients and no repeated indices.
SparseVec = tuple[tuple[int, Scalar], ...]


class LinalgError(Exception):
    """Base class for exact linear algebra failures."""


class ContainmentError(LinalgError):
    """A subspace that should be contained in another is not."""


class NotSemisimpleError(LinalgError):
    """Rational eigenspaces do not fill the space.

    Raised when an operator is defective or has irrational or complex
    spectrum; callers that need an eigenspace decomposition cannot proceed.
    """


def parse_scalar(text: str) -> Scalar:
    """Parse rational literals like "3", "-5/7"."""
    return Fraction(text.strip())


def format_scalar(x: Scalar) -> str:
    return str(Fraction(x))


def vec(items: Iterable[tuple[int, Scalar]]) -> SparseVec:
    """Normalize (index, coefficient) pairs: merge, sort, drop zeros."""
    acc: dict[int, Scalar] = {}
    for i, c in items:
        acc[i] = acc.get(i, ZERO) + c
    return tuple(sorted((i, c) for i, c in acc.items() if c))


def vec_add(u: Iterable[tuple[int, Scalar]],
            v: Iterable[tuple[int, Scalar]],
            scale: Scalar = ONE) -> SparseVec:
    """u + scale * v as sparse vectors."""
    acc: dict[int, Scalar] = dict(u)
    for i, c in v:
        acc[i] = acc.get(i, ZERO) + scale * c
    return tuple(sorted((i, c) for i, c in acc.items() if c))


def vec_scale(u: Iterable[tuple[int, Scalar]], scale: Scalar) -> SparseVec:
    if not scale:
        return ()
    return tuple((i, scale * c) for i, c in u)


def _bits(x: Scalar) -> int:
    return x.numerator.bit_length() + x.denominator.bit_length()


def _eliminate(target: dict[int, Scalar], pivot_row: dict[int, Scalar],
               col: int) -> None:
    """Clear target[col] using a pivot row normalized to 1 at col."""
    c = target.get(col)
    if not c:
        return
    for j, pc in pivot_row.items():
        nc = target.get(j, ZERO) - c * pc
        if nc:
            target[j] = nc
        else:
            target.pop(j, None)


def _rref(rows: list[dict[int, Scalar]], cols: int
          ) -> tuple[list[dict[int, Scalar]], list[int]]:
    """Reduced row echelon form of a list of row dicts.

    Deterministic pivoting: columns are scanned left to right and the
    candidate entry with the fewest bits wins, ties broken by row order.
    Returns (pivot rows sorted by pivot column, pivot columns).
    """
    free = [r for r in rows if r]
    pivot_rows: list[dict[int, Scalar]] = []
    pivots: list[int] = []
    for col in range(cols):
        if not free:
            break
        best: Optional[tuple[tuple[int, int], int]] = None
        for idx, r in enumerate(free):
            c = r.get(col)
            if c:
                score = (_bits(c), idx)
                if best is None or score < best[0]:
                    best = (score, idx)
        if best is None:
            continue
        prow = free.pop(best[1])
        inv = ONE / prow[col]
        prow = {j: inv * c for j, c in prow.items()}
        for r in free:
            _eliminate(r, prow, col)
        for r in pivot_rows:
            _eliminate(r, prow, col)
        free = [r for r in free if r]
        pivot_rows.append(prow)
        pivots.append(col)
    return pivot_rows, pivots


@dataclass(frozen=True)
class SparseMatrix:
    """Immutable sparse matrix with exact rational entries."""

    rows: int
    cols: int
    entries: tuple[tuple[int, int, Scalar], ...]

    @classmethod
    def from_entries(cls, rows: int, cols: int,
                     items: Iterable[tuple[int, int, Scalar]]
                     ) -> "SparseMatrix":
        acc: dict[tuple[int, int], Scalar] = {}
        for i, j, c in items:
            if not (0 <= i < rows and 0 <= j < cols):
                raise LinalgError(f"entry ({i}, {j}) outside {rows}x{cols}")
            acc[(i, j)] = acc.get((i, j), ZERO) + c
        ents = tuple(sorted((i, j, c) for (i, j), c in acc.items() if c))
        return cls(rows, cols, ents)

    @classmethod
    def identity(cls, n: int) -> "SparseMatrix":
        return cls(n, n, tuple((i, i, ONE) for i in range(n)))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "SparseMatrix":
        return cls(rows, cols, ())

    @classmethod
    def from_columns(cls, ambient: int,
                     columns: Iterable[SparseVec]) -> "SparseMatrix":
        """Matrix whose j-th column is the j-th given sparse vector."""
        items = []
        ncols = 0
        for j, column in enumerate(columns):
            ncols = j + 1
            for i, c in column:
                items.append((i, j, c))
        return cls.from_entries(ambient, ncols, items)

    def is_zero(self) -> bool:
        return not self.entries

    def row_dicts(self) -> list[dict[int, Scalar]]:
        out: list[dict[int, Scalar]] = [dict() for _ in range(self.rows)]
        for i, j, c in self.entries:
            out[i][j] = c
        return out

    def row_vectors(self) -> list[SparseVec]:
        return [tuple(sorted(r.items())) for r in self.row_dicts()]

    def column_vectors(self) -> list[SparseVec]:
        cols: list[list[tuple[int, Scalar]]] = [[] for _ in range(self.cols)]
        for i, j, c in self.entries:
            cols[j].append((i, c))
        return [tuple(sorted(col)) for col in cols]

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.cols, self.rows,
                            tuple(sorted((j, i, c)
                                         for i, j, c in self.entries)))

    def trace(self) -> Scalar:
        return sum((c for i, j, c in self.entries if i == j), ZERO)

    def get(self, i: int, j: int) -> Scalar:
        for a, b, c in self.entries:
            if (a, b) == (i, j):
                return c
        return ZERO

    def scale(self, factor: Scalar) -> "SparseMatrix":
        if not factor:
            return SparseMatrix(self.rows, self.cols, ())
        return SparseMatrix(self.rows, self.cols,
                            tuple((i, j, factor * c)
                                  for i, j, c in self.entries))

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise LinalgError("shape mismatch in matrix sum")
        return SparseMatrix.from_entries(
            self.rows, self.cols,
            list(self.entries) + list(other.entries))

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self + other.scale(-ONE)

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise LinalgError("shape mismatch in matrix product")
        rows_of_other: dict[int, list[tuple[int, Scalar]]] = {}
        for k, j, c in other.entries:
            rows_of_other.setdefault(k, []).append((j, c))
        acc: dict[tuple[int, int], Scalar] = {}
        for i, k, a in self.entries:
            for j, b in rows_of_other.get(k, ()):
                key = (i, j)
                acc[key] = acc.get(key, ZERO) + a * b
        ents = tuple(sorted((i, j, c) for (i, j), c in acc.items() if c))
        return SparseMatrix(self.rows, other.cols, ents)

    def apply(self, v: Iterable[tuple[int, Scalar]]) -> SparseVec:
        """Matrix times sparse column vector."""
        cols: dict[int, list[tuple[int, Scalar]]] = {}
        for i, j, c in self.entries:
            cols.setdefault(j, []).append((i, c))
        acc: dict[int, Scalar] = {}
        for j, x in v:
            for i, m in cols.get(j, ()):
                acc[i] = acc.get(i, ZERO) + m * x
        return tuple(sorted((i, c) for i, c in acc.items() if c))

    def inverse(self) -> "SparseMatrix":
        """Exact inverse; raises LinalgError when singular."""
        if self.rows != self.cols:
            raise LinalgError("only square matrices can be inverted")
        n = self.rows
        rows = self.row_dicts()
        for i in range(n):
            rows[i][n + i] = ONE
        pivot_rows, pivots = _rref(rows, 2 * n)
        if pivots != list(range(n)):
            raise LinalgError("matrix is singular")
        items = []
        for i, r in enumerate(pivot_rows):
            for j, c in r.items():
                if j >= n:
                    items.append((i, j - n, c))
        return SparseMatrix.from_entries(n, n, items)


@dataclass(frozen=True)
class SubspaceBasis:
    """Canonical basis of a subspace: RREF rows with ascending pivots."""

    ambient: int
    vectors: tuple[SparseVec, ...]

    @classmethod
    def from_vectors(cls, ambient: int,
                     vectors: Iterable[Iterable[tuple[int, Scalar]]]
                     ) -> "SubspaceBasis":
        rows = [dict(vec(v)) for v in vectors]
        pivot_rows, _ = _rref(rows, ambient)
        return cls(ambient,
                   tuple(tuple(sorted(r.items())) for r in pivot_rows))

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def __iter__(self) -> Iterator[SparseVec]:
        return iter(self.vectors)

    def reduce(self, v: Iterable[tuple[int, Scalar]]) -> SparseVec:
        """Residual of v after clearing every pivot coordinate."""
        acc = dict(vec(v))
        for row in self.vectors:
            pivot = row[0][0]
            c = acc.get(pivot)
            if c:
                for j, rc in row:
                    nc = acc.get(j, ZERO) - c * rc
                    if nc:
                        acc[j] = nc
                    else:
                        acc.pop(j, None)
        return tuple(sorted(acc.items()))

    def contains(self, v: Iterable[tuple[int, Scalar]]) -> bool:
        return not self.reduce(v)

    def coordinates(self, v: Iterable[tuple[int, Scalar]]
                    ) -> Optional[tuple[Scalar, ...]]:
        """Coefficients of v on the stored rows, or None if outside."""
        acc = dict(vec(v))
        coords = []
        for row in self.vectors:
            pivot = row[0][0]
            c = acc.get(pivot, ZERO)
            coords.append(c)
            if c:
                for j, rc in row:
                    nc = acc.get(j, ZERO) - c * rc
                    if nc:
                        acc[j] = nc
                    else:
                        acc.pop(j, None)
        if acc:
            return None
        return tuple(coords)


def rank_kernel(m: SparseMatrix) -> tuple[int, SubspaceBasis]:
    """Rank and right kernel of a matrix.

    The kernel basis is returned in canonical RREF form, so two matrices
    with the same kernel produce identical bases.
    """
    pivot_rows, pivots = _rref(m.row_dicts(), m.cols)
    pivot_set = set(pivots)
    kernel = []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        v = [(f, ONE)]
        for p, row in zip(pivots, pivot_rows):
            c = row.get(f)
            if c:
                v.append((p, -c))
        kernel.append(v)
    return len(pivots), SubspaceBasis.from_vectors(m.cols, kernel)


def quotient_basis(total: SubspaceBasis, sub: SubspaceBasis
                   ) -> tuple[tuple[SparseVec, ...], int]:
    """Representatives of total / sub.

    Raises ContainmentError when sub is not inside total.  The returned
    vectors are rows of the total basis whose classes form a basis of the
    quotient; the count is the quotient dimension.
    """
    if total.ambient != sub.ambient:
        raise LinalgError("quotient of subspaces of different ambients")
    for v in sub.vectors:
        if not total.contains(v):
            raise ContainmentError(
                "subspace is not contained in the total space")
    work: list[dict[int, Scalar]] = [dict(v) for v in sub.vectors]
    reps: list[SparseVec] = []
    for v in total.vectors:
        acc = dict(v)
        for row in work:
            pivot = min(row)
            _eliminate(acc, row, pivot)
        if not acc:
            continue
        reps.append(v)
        pivot = min(acc)
        inv = ONE / acc[pivot]
        new_row = {j: inv * c for j, c in acc.items()}
        for row in work:
            _eliminate(row, new_row, pivot)
        work.append(new_row)
        work.sort(key=min)
    return tuple(reps), len(reps)


def linear_solve(m: SparseMatrix, b: Iterable[tuple[int, Scalar]]
                 ) -> Optional[SparseVec]:
    """One solution of m @ x = b, or None when inconsistent.

    Free variables are set to zero, which makes the answer deterministic.
    """
    rows = m.row_dicts()
    for i, c in vec(b):
        if i >= m.rows:
            raise LinalgError("right hand side exceeds row count")
        rows[i][m.cols] = c
    pivot_rows, pivots = _rref(rows, m.cols + 1)
    solution = []
    for p, row in zip(pivots, pivot_rows):
        if p == m.cols:
            return None
        c = row.get(m.cols)
        if c:
            solution.append((p, c))
    return vec(solution)


def char_poly(m: SparseMatrix) -> tuple[Scalar, ...]:
    """Coefficients (1, c1, ..., cn) of det(tI - m), highest degree first.

    Faddeev-LeVerrier recursion, exact at every step.
    """
    if m.rows != m.cols:
        raise LinalgError("characteristic polynomial needs a square matrix")
    n = m.rows
    coeffs: list[Scalar] = [ONE]
    work = SparseMatrix.identity(n)
    for k in range(1, n + 1):
        work = m @ work
        ck = -work.trace() / k
        coeffs.append(ck)
        work = work + SparseMatrix.identity(n).scale(ck)
    return tuple(coeffs)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            out.append(n // d)
        d += 1
    return sorted(set(out))


def _rational_roots(coeffs: tuple[Scalar, ...]) -> list[Scalar]:
    """All rational roots of a monic rational polynomial, no multiplicity."""
    den = math.lcm(*(c.denominator for c in coeffs))
    ints = [int(c * den) for c in coeffs]
    roots: list[Scalar] = []
    while len(ints) > 1 and ints[-1] == 0:
        ints.pop()
        if ZERO not in roots:
            roots.append(ZERO)
    if len(ints) <= 1:
        return sorted(roots)
    lead, const = ints[0], ints[-1]
    candidates = set()
    for p in _divisors(const):
        for q in _divisors(lead):
            candidates.add(Fraction(p, q))
            candidates.add(Fraction(-p, q))
    for cand in sorted(candidates):
        value = ZERO
        for c in ints:
            value = value * cand + c
        if value == 0:
            roots.append(cand)
    return sorted(set(roots))


def eigen_split(m: SparseMatrix) -> list[tuple[Scalar, SubspaceBasis]]:
    """Decompose the ambient space into rational eigenspaces of m.

    Returns (eigenvalue, eigenspace) pairs sorted by eigenvalue.  Raises
    NotSemisimpleError when the rational eigenspaces do not add up to the
    full dimension, i.e. the operator is defective over the rationals.
    """
    n = m.rows
    if n == 0:
        return []
    roots = _rational_roots(char_poly(m))
    split = []
    total = 0
    for lam in roots:
        _, ker = rank_kernel(m - SparseMatrix.identity(n).scale(lam))
        if ker.dim:
            split.append((lam, ker))
            total += ker.dim
    if total != n:
        raise NotSemisimpleError(
            f"rational eigenspaces span {total} of {n} dimensions")
    return split
