"""Polynomial cochains of a graded Lie (bi)algebra and the operators on
them: the differential, the shifted bracket, the BV operator and their
composites.

The cochain ring is generated by one dual generator xi^i per basis element
e_i, with cochain degree 1 - deg(e_i), parity (1 + deg(e_i)) mod 2 and
weight -weight(e_i).  Monomials are normal ordered tuples of generator
indices (ascending); odd generators square to zero.  Every operator is
computed blockwise: the block (degree, s) consists of the monomials of that
cochain degree whose length is degree + s, which is always a finite set.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .algebra import Bialgebra, GradedLie
from .linalg import (ONE, ZERO, Scalar, SparseMatrix, SparseVec,
                     SubspaceBasis, eigen_split, linear_solve,
                     quotient_basis, rank_kernel, vec)

Monomial = tuple[int, ...]


class CochainError(Exception):
    """Base class for cochain-level failures."""


class NonPointedConeError(CochainError):
    """Weight enumeration needs every even generator to carry a nonzero
    weight of uniform lexicographic sign; this structure does not."""


class NotACocycleError(CochainError):
    """An operation on cohomology classes received a non-closed input."""


class NotAModuleError(CochainError):
    """The given action does not satisfy the bracket compatibility."""


@dataclass(frozen=True)
class Cochain:
    """Linear combination of normal ordered monomials."""

    terms: tuple[tuple[Monomial, Scalar], ...]

    @classmethod
    def from_terms(cls, items: Iterable[tuple[Monomial, Scalar]]
                   ) -> "Cochain":
        acc: dict[Monomial, Scalar] = {}
        for mono, c in items:
            acc[mono] = acc.get(mono, ZERO) + c
        return cls(tuple(sorted((m, c) for m, c in acc.items() if c)))

    @classmethod
    def zero(cls) -> "Cochain":
        return cls(())

    @classmethod
    def unit(cls) -> "Cochain":
        return cls((((), ONE),))

    @classmethod
    def generator(cls, index: int, coeff: Scalar = ONE) -> "Cochain":
        return cls((((index,), coeff),))

    def __add__(self, other: "Cochain") -> "Cochain":
        return Cochain.from_terms(self.terms + other.terms)

    def scale(self, factor: Scalar) -> "Cochain":
        if not factor:
            return Cochain.zero()
        return Cochain(tuple((m, factor * c) for m, c in self.terms))

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + other.scale(-ONE)

    def is_zero(self) -> bool:
        return not self.terms


class CochainContext:
    """Generator data and block caches for one structure.

    Built from a bialgebra (all operators available) or from a bare graded
    Lie algebra (differential and cohomology only).
    """

    def __init__(self, algebra: GradedLie, shift: int,
                 cobracket: Optional[tuple[tuple[int, int, int, Scalar], ...]]
                 = None,
                 bialgebra: Optional[Bialgebra] = None):
        self.algebra = algebra
        self.shift = shift
        self.bialgebra = bialgebra
        self.gen_degree = tuple(1 - e.degree for e in algebra.basis)
        self.gen_parity = tuple(d % 2 for d in self.gen_degree)
        self.gen_weight = tuple(
            None if e.weight is None else tuple(-x for x in e.weight)
            for e in algebra.basis)
        self._gamma: Optional[dict[tuple[int, int], SparseVec]] = None
        if cobracket is not None:
            acc: dict[tuple[int, int], list[tuple[int, Scalar]]] = {}
            for k, i, j, c in cobracket:
                acc.setdefault((i, j), []).append((k, c))
            self._gamma = {key: vec(val) for key, val in acc.items()}
        self._dgen: dict[int, Cochain] = {}
        self._blocks: dict[tuple[int, int], tuple[Monomial, ...]] = {}
        self._poisson_memo: dict[tuple[Monomial, Monomial], Cochain] = {}
        self._bv_memo: dict[Monomial, Cochain] = {}
        self._operators: dict[tuple, SparseMatrix] = {}

    @classmethod
    def from_bialgebra(cls, b: Bialgebra) -> "CochainContext":
        return cls(b.algebra, b.shift, b.cobracket, bialgebra=b)

    @classmethod
    def from_algebra(cls, g: GradedLie, shift: int = 0) -> "CochainContext":
        return cls(g, shift)

    @property
    def has_bracket(self) -> bool:
        return self._gamma is not None

    def gen_name(self, i: int) -> str:
        return self.algebra.basis[i].name

    def gamma(self, i: int, j: int) -> SparseVec:
        if self._gamma is None:
            raise CochainError("structure has no cobracket")
        return self._gamma.get((i, j), ())

    # -- monomial bookkeeping ---------------------------------------------

    def normalize(self, raw: Sequence[int], coeff: Scalar
                  ) -> tuple[Monomial, Scalar]:
        """Sort generator indices, tracking Koszul signs; odd squares die."""
        seq = list(raw)
        sign = 1
        for a in range(1, len(seq)):
            b = a
            while b > 0 and seq[b - 1] > seq[b]:
                if self.gen_parity[seq[b - 1]] and self.gen_parity[seq[b]]:
                    sign = -sign
                seq[b - 1], seq[b] = seq[b], seq[b - 1]
                b -= 1
        for a in range(1, len(seq)):
            if seq[a] == seq[a - 1] and self.gen_parity[seq[a]]:
                return (), ZERO
        return tuple(seq), coeff if sign > 0 else -coeff

    def monomial_degree(self, mono: Monomial) -> int:
        return sum(self.gen_degree[i] for i in mono)

    def monomial_parity(self, mono: Monomial) -> int:
        return sum(self.gen_parity[i] for i in mono) % 2

    def monomial_weight(self, mono: Monomial) -> Optional[tuple[int, ...]]:
        total = None
        for i in mono:
            w = self.gen_weight[i]
            if w is None:
                return None
            total = w if total is None else tuple(
                x + y for x, y in zip(total, w))
        if total is None:
            rank = next((len(w) for w in self.gen_weight if w is not None),
                        0)
            total = (0,) * rank
        return total

    def multiply(self, a: Cochain, b: Cochain) -> Cochain:
        items = []
        for mu, cu in a.terms:
            for mv, cv in b.terms:
                mono, c = self.normalize(mu + mv, cu * cv)
                if c:
                    items.append((mono, c))
        return Cochain.from_terms(items)

    # -- block enumeration -------------------------------------------------

    def block_basis(self, degree: int, s: int) -> tuple[Monomial, ...]:
        """All monomials of the given cochain degree whose length is
        degree + s, in lexicographic order."""
        key = (degree, s)
        cached = self._blocks.get(key)
        if cached is not None:
            return cached
        length = degree + s
        out: list[Monomial] = []
        if length >= 0:
            n = self.algebra.dim
            for combo in itertools.combinations_with_replacement(
                    range(n), length):
                ok = True
                for a in range(1, len(combo)):
                    if combo[a] == combo[a - 1] and \
                            self.gen_parity[combo[a]]:
                        ok = False
                        break
                if ok and self.monomial_degree(combo) == degree:
                    out.append(combo)
        result = tuple(sorted(out))
        self._blocks[key] = result
        return result

    def weight_basis(self, degree: int, weight: tuple[int, ...]
                     ) -> tuple[Monomial, ...]:
        """All monomials of one degree and weight, across every length.

        Finite only when the even generators span a pointed cone: each one
        must carry a nonzero weight and the nonzero weights must share
        their lexicographic sign (odd generators cannot repeat, so they
        are exempt).  Raises NonPointedConeError otherwise.
        """
        evens = [i for i in range(self.algebra.dim)
                 if not self.gen_parity[i]]
        odds = [i for i in range(self.algebra.dim) if self.gen_parity[i]]
        signs = set()
        for i in evens:
            w = self.gen_weight[i]
            if w is None or not any(w):
                raise NonPointedConeError(
                    f"even generator {self.gen_name(i)} has no usable "
                    "weight")
            signs.add(1 if [x for x in w if x][0] > 0 else -1)
        if len(signs) > 1:
            raise NonPointedConeError(
                "even generator weights mix lexicographic signs")
        flip = -1 if signs == {-1} else 1

        def lead(i: int) -> int:
            w = self.gen_weight[i]
            return next(p for p, x in enumerate(w) if x)

        # visit even generators by leading coordinate: once a coordinate
        # is out of reach of every remaining generator its budget must be
        # exhausted, and each count is capped by the budget at the
        # generator's own leading coordinate, where all later
        # contributions are nonnegative
        ordered = sorted(evens, key=lambda i: (lead(i), i))
        out: list[Monomial] = []
        rank = len(weight)

        def recurse(idx: int, remaining: tuple[int, ...],
                    chosen: list[int]) -> None:
            if idx == len(ordered):
                if any(remaining):
                    return
                out.append(tuple(sorted(chosen)))
                return
            gen = ordered[idx]
            w = self.gen_weight[gen]
            p = lead(gen)
            rem = tuple(x * flip for x in remaining)
            if any(rem[:p]) or rem[p] < 0:
                return
            step = w[p] * flip
            for count in range(rem[p] // step + 1):
                recurse(idx + 1,
                        tuple(r - count * x for r, x in zip(remaining, w)),
                        chosen + [gen] * count)

        for subset_size in range(len(odds) + 1):
            for subset in itertools.combinations(odds, subset_size):
                base = [0] * rank
                ok = True
                for i in subset:
                    w = self.gen_weight[i]
                    if w is None:
                        ok = False
                        break
                    base = [x + y for x, y in zip(base, w)]
                if not ok:
                    continue
                target = tuple(t - b for t, b in zip(weight, base))
                recurse(0, target, list(subset))
        return tuple(sorted(m for m in set(out)
                            if self.monomial_degree(m) == degree))


# -- differential ----------------------------------------------------------


def _d_generator(ctx: CochainContext, k: int) -> Cochain:
    cached = ctx._dgen.get(k)
    if cached is not None:
        return cached
    g = ctx.algebra
    half = Scalar(1, 2)
    items = []
    for i in range(g.dim):
        for j in range(g.dim):
            for tgt, c in g.bracket_basis(i, j):
                if tgt != k:
                    continue
                sign = -ONE if (g.parity(i) * g.parity(j)
                                + g.parity(i)) % 2 else ONE
                mono, cc = ctx.normalize((i, j), half * sign * c)
                if cc:
                    items.append((mono, cc))
    out = Cochain.from_terms(items)
    ctx._dgen[k] = out
    return out


def ce_differential(ctx: CochainContext, u: Cochain) -> Cochain:
    """Degree +1 derivation with d(xi^k) = half the signed sum of
    c[p, q -> k] xi^p xi^q over ordered pairs."""
    items = []
    for mono, coeff in u.terms:
        prefix = 0
        for t, gen in enumerate(mono):
            dg = _d_generator(ctx, gen)
            sign = -ONE if prefix % 2 else ONE
            for m2, c2 in dg.terms:
                mono2, c = ctx.normalize(
                    mono[:t] + m2 + mono[t + 1:], sign * coeff * c2)
                if c:
                    items.append((mono2, c))
            prefix += ctx.gen_parity[gen]
    return Cochain.from_terms(items)


# -- shifted bracket -------------------------------------------------------


def _poisson_mono(ctx: CochainContext, mu: Monomial, mv: Monomial
                  ) -> Cochain:
    key = (mu, mv)
    cached = ctx._poisson_memo.get(key)
    if cached is not None:
        return cached
    n = ctx.shift
    if not mu or not mv:
        out = Cochain.zero()
    elif len(mu) == 1 and len(mv) == 1:
        out = Cochain.from_terms(
            ((k,), c) for k, c in ctx.gamma(mu[0], mv[0]))
    elif len(mv) > 1:
        # <x, y z> = <x, y> z + (-1)^((|x|+n+1)|y|) y <x, z>
        y = mv[:1]
        z = mv[1:]
        px = ctx.monomial_parity(mu)
        py = ctx.gen_parity[y[0]]
        first = ctx.multiply(_poisson_mono(ctx, mu, y),
                             Cochain(((z, ONE),)))
        sign = -ONE if ((px + n + 1) * py) % 2 else ONE
        second = ctx.multiply(Cochain(((y, ONE),)),
                              _poisson_mono(ctx, mu, z)).scale(sign)
        out = first + second
    else:
        # flip: <u, v> = -(-1)^((|u|+n+1)(|v|+n+1)) <v, u>
        pu = (ctx.monomial_parity(mu) + n + 1) % 2
        pv = (ctx.monomial_parity(mv) + n + 1) % 2
        out = _poisson_mono(ctx, mv, mu).scale(
            ONE if pu * pv else -ONE)
    ctx._poisson_memo[key] = out
    return out


def poisson_bracket(ctx: CochainContext, u: Cochain, v: Cochain) -> Cochain:
    """The shift-degree bracket on cochains induced by the cobracket.

    On generators it is the dual bracket; it extends by the right Leibniz
    rule and shifted antisymmetry.  Output degree is |u| + |v| - shift - 1.
    """
    acc = Cochain.zero()
    for mu, cu in u.terms:
        for mv, cv in v.terms:
            acc = acc + _poisson_mono(ctx, mu, mv).scale(cu * cv)
    return acc


# -- BV operator and its square root of the bracket ------------------------


def _bv_mono(ctx: CochainContext, mono: Monomial) -> Cochain:
    if len(mono) <= 1:
        return Cochain.zero()
    cached = ctx._bv_memo.get(mono)
    if cached is not None:
        return cached
    head = mono[:1]
    rest = mono[1:]
    sign = -ONE if ctx.gen_parity[head[0]] else ONE
    out = _poisson_mono(ctx, head, rest).scale(sign)
    out = out + ctx.multiply(Cochain(((head, ONE),)),
                             _bv_mono(ctx, rest)).scale(sign)
    ctx._bv_memo[mono] = out
    return out


def bv_operator(ctx: CochainContext, u: Cochain) -> Cochain:
    """Second order operator generating the bracket; kills 1 and all
    generators, and B(x y) = (-1)^(|x|) (<x, y> + x B(y)) on a leading
    generator x."""
    acc = Cochain.zero()
    for mono, c in u.terms:
        acc = acc + _bv_mono(ctx, mono).scale(c)
    return acc


def laplacian(ctx: CochainContext, u: Cochain) -> Cochain:
    """delta = B d + d B, a degree -shift operator."""
    return bv_operator(ctx, ce_differential(ctx, u)) + \
        ce_differential(ctx, bv_operator(ctx, u))


def poisson_compat_defect(ctx: CochainContext, u: Cochain, v: Cochain
                          ) -> Cochain:
    """d<u, v> - <du, v> - (-1)^(|u|+n+1) <u, dv>, zero when the
    differential is a derivation of the bracket.  The sign reads the
    bracket as an operation of degree -(n+1)."""
    n = ctx.shift
    dv = ce_differential(ctx, v)
    out = ce_differential(ctx, poisson_bracket(ctx, u, v)) - \
        poisson_bracket(ctx, ce_differential(ctx, u), v)
    for mono, c in u.terms:
        sign = -ONE if (ctx.monomial_degree(mono) + n + 1) % 2 else ONE
        out = out - poisson_bracket(
            ctx, Cochain(((mono, c),)), dv).scale(sign)
    return out


def bv_generation_defect(ctx: CochainContext, u: Cochain, v: Cochain
                         ) -> Cochain:
    """B(uv) - B(u)v - (-1)^(|u|(n+1)) u B(v) - (-1)^|u| <u, v>, zero when
    B is a second order generator of the bracket.  (-1)^(n+1) is the
    operator parity of B."""
    n = ctx.shift
    bv = bv_operator(ctx, v)
    out = bv_operator(ctx, ctx.multiply(u, v)) - \
        ctx.multiply(bv_operator(ctx, u), v)
    for mono, c in u.terms:
        pu = ctx.monomial_degree(mono) % 2
        term = Cochain(((mono, c),))
        s2 = -ONE if (pu * (n + 1)) % 2 else ONE
        out = out - ctx.multiply(term, bv).scale(s2)
        s3 = -ONE if pu else ONE
        out = out - poisson_bracket(ctx, term, v).scale(s3)
    return out


# -- block operators -------------------------------------------------------


@dataclass(frozen=True)
class BlockOperator:
    source: tuple[int, int]
    target: tuple[int, int]
    matrix: SparseMatrix


def _operator_block(ctx: CochainContext, kind: str, degree: int, s: int
                    ) -> BlockOperator:
    targets = {
        "d": (degree + 1, s),
        "bv": (degree - ctx.shift - 1, s + ctx.shift),
        "delta": (degree - ctx.shift, s + ctx.shift),
    }
    target = targets[kind]
    key = (kind, degree, s)
    matrix = ctx._operators.get(key)
    if matrix is None:
        source_basis = ctx.block_basis(degree, s)
        target_basis = ctx.block_basis(*target)
        index = {m: i for i, m in enumerate(target_basis)}
        apply = {"d": ce_differential, "bv": bv_operator,
                 "delta": laplacian}[kind]
        items = []
        for j, mono in enumerate(source_basis):
            image = apply(ctx, Cochain(((mono, ONE),)))
            for m, c in image.terms:
                if m not in index:
                    raise CochainError(
                        f"{kind} leaves the expected block at {m}")
                items.append((index[m], j, c))
        matrix = SparseMatrix.from_entries(
            len(target_basis), len(source_basis), items)
        ctx._operators[key] = matrix
    return BlockOperator((degree, s), target, matrix)


def differential_block(ctx: CochainContext, degree: int, s: int
                       ) -> BlockOperator:
    return _operator_block(ctx, "d", degree, s)


def bv_block(ctx: CochainContext, degree: int, s: int) -> BlockOperator:
    return _operator_block(ctx, "bv", degree, s)


def laplacian_block(ctx: CochainContext, degree: int, s: int
                    ) -> BlockOperator:
    return _operator_block(ctx, "delta", degree, s)


def laplacian_on_generators(ctx: CochainContext) -> SparseMatrix:
    """Matrix of delta restricted to the generator span.

    delta maps each generator into the generator span of the same degree;
    anything else is reported as a failure.
    """
    dim = ctx.algebra.dim
    items = []
    for k in range(dim):
        image = laplacian(ctx, Cochain.generator(k))
        for mono, c in image.terms:
            if len(mono) != 1:
                raise CochainError(
                    "delta does not preserve the generator span")
            items.append((mono[0], k, c))
    return SparseMatrix.from_entries(dim, dim, items)


# -- cohomology ------------------------------------------------------------


@dataclass(frozen=True)
class CohomologyBlock:
    degree: int
    s: int
    dim: int
    cycles: int
    boundaries: int
    representatives: tuple[Cochain, ...]


def _vec_to_cochain(basis: Sequence[Monomial], v: SparseVec) -> Cochain:
    return Cochain.from_terms((basis[i], c) for i, c in v)


def cohomology(ctx: CochainContext, degree: int, s: int) -> CohomologyBlock:
    """Kernel of the outgoing differential modulo the incoming image."""
    basis = ctx.block_basis(degree, s)
    outgoing = differential_block(ctx, degree, s)
    _, kernel = rank_kernel(outgoing.matrix)
    incoming = differential_block(ctx, degree - 1, s)
    image = SubspaceBasis.from_vectors(
        len(basis), incoming.matrix.column_vectors())
    reps, dim = quotient_basis(kernel, image)
    return CohomologyBlock(
        degree=degree, s=s, dim=dim,
        cycles=kernel.dim, boundaries=image.dim,
        representatives=tuple(_vec_to_cochain(basis, r) for r in reps))


def betti_table(ctx: CochainContext, degrees: Sequence[int],
                s_values: Sequence[int]) -> dict[tuple[int, int], int]:
    return {(d, s): cohomology(ctx, d, s).dim
            for d in degrees for s in s_values}


def cohomology_class_reduce(ctx: CochainContext, u: Cochain,
                            degree: int, s: int) -> Cochain:
    """Canonical representative of a class modulo the boundary space."""
    basis = ctx.block_basis(degree, s)
    index = {m: i for i, m in enumerate(basis)}
    v = vec(((index[m], c) for m, c in u.terms))
    incoming = differential_block(ctx, degree - 1, s)
    image = SubspaceBasis.from_vectors(
        len(basis), incoming.matrix.column_vectors())
    return _vec_to_cochain(basis, image.reduce(v))


def cohomology_bracket(ctx: CochainContext, u: Cochain, v: Cochain
                       ) -> Cochain:
    """Bracket of two cohomology classes, as a reduced representative.

    Inputs must be cocycles (NotACocycleError otherwise); the result is
    reduced modulo boundaries in its own block.
    """
    for w in (u, v):
        if not ce_differential(ctx, w).is_zero():
            raise NotACocycleError("bracket input is not closed")
    w = poisson_bracket(ctx, u, v)
    if w.is_zero():
        return w
    degrees = {ctx.monomial_degree(m) for m, c in w.terms}
    lengths = {len(m) for m, c in w.terms}
    if len(degrees) != 1:
        raise CochainError("bracket output is not homogeneous")
    degree = degrees.pop()
    s = max(lengths) - degree
    if {length - degree for length in lengths} != {s}:
        raise CochainError("bracket output mixes blocks")
    return cohomology_class_reduce(ctx, w, degree, s)


# -- eigenvalue decomposition of the Laplacian -----------------------------


@dataclass(frozen=True)
class EigenBlock:
    degree: int
    s: int
    pieces: tuple[tuple[Scalar, int], ...]   # (eigenvalue, multiplicity)


def laplacian_eigen(ctx: CochainContext, degree: int, s: int) -> EigenBlock:
    """Rational eigenspace decomposition of delta on one block.

    Only meaningful for shift 0, where delta preserves each block; for any
    other shift the block operator is not an endomorphism and a
    CochainError is raised.
    """
    if ctx.shift != 0:
        raise CochainError("eigen decomposition needs shift 0")
    block = laplacian_block(ctx, degree, s)
    split = eigen_split(block.matrix)
    return EigenBlock(degree, s,
                      tuple((lam, space.dim) for lam, space in split))


def kernel_complex_check(ctx: CochainContext, degrees: Sequence[int],
                         s: int) -> list[tuple[int, int, int]]:
    """Betti numbers of the subcomplex ker(delta) against the full ones.

    Returns (degree, full Betti, kernel Betti) rows; shift must be 0 so
    that delta is blockwise square and d restricts to its kernel.
    """
    if ctx.shift != 0:
        raise CochainError("kernel complex needs shift 0")
    kernels: dict[int, SubspaceBasis] = {}
    for d in list(degrees) + [max(degrees) + 1, min(degrees) - 1]:
        block = laplacian_block(ctx, d, s)
        _, ker = rank_kernel(block.matrix)
        kernels[d] = ker
    rows = []
    for d in degrees:
        full = cohomology(ctx, d, s).dim
        source = kernels[d]
        matrix = differential_block(ctx, d, s).matrix
        images = [matrix.apply(v) for v in source.vectors]
        for img in images:
            if not kernels[d + 1].contains(img):
                raise CochainError(
                    "differential does not preserve ker(delta)")
        # d restricted to the kernel: solve in kernel coordinates
        target = kernels[d + 1]
        target_matrix = SparseMatrix.from_columns(
            len(ctx.block_basis(d + 1, s)), list(target.vectors))
        items = []
        for j, img in enumerate(images):
            sol = linear_solve(target_matrix, img)
            if sol is None:
                raise CochainError("kernel restriction failed")
            for i, c in sol:
                items.append((i, j, c))
        restricted = SparseMatrix.from_entries(
            target.dim, source.dim, items)
        _, ker_r = rank_kernel(restricted)

        prev = kernels[d - 1]
        prev_matrix = differential_block(ctx, d - 1, s).matrix
        source_matrix = SparseMatrix.from_columns(
            len(ctx.block_basis(d, s)), list(source.vectors))
        prev_coords = []
        for v in prev.vectors:
            sol = linear_solve(source_matrix, prev_matrix.apply(v))
            if sol is None:
                raise CochainError(
                    "differential does not preserve ker(delta)")
            prev_coords.append(sol)
        prev_rank = SubspaceBasis.from_vectors(source.dim, prev_coords).dim
        rows.append((d, full, ker_r.dim - prev_rank))
    return rows


@dataclass(frozen=True)
class WeightCohomologyBlock:
    degree: int
    weight: tuple[int, ...]
    dim: int
    cycles: int
    boundaries: int
    representatives: tuple[Cochain, ...]


def weight_cohomology(ctx: CochainContext, degree: int,
                      weight: tuple[int, ...]) -> WeightCohomologyBlock:
    """Cohomology of one (degree, weight) block, all lengths together;
    well defined because the differential preserves weights."""
    bases = {d: ctx.weight_basis(d, weight)
             for d in (degree - 1, degree, degree + 1)}

    def block(src: int) -> SparseMatrix:
        index = {m: i for i, m in enumerate(bases[src + 1])}
        items = []
        for j, mono in enumerate(bases[src]):
            image = ce_differential(ctx, Cochain(((mono, ONE),)))
            for m, c in image.terms:
                if m not in index:
                    raise CochainError(
                        "differential leaves the weight block")
                items.append((index[m], j, c))
        return SparseMatrix.from_entries(
            len(bases[src + 1]), len(bases[src]), items)

    _, kernel = rank_kernel(block(degree))
    image = SubspaceBasis.from_vectors(
        len(bases[degree]), block(degree - 1).column_vectors())
    reps, dim = quotient_basis(kernel, image)
    return WeightCohomologyBlock(
        degree=degree, weight=tuple(weight), dim=dim,
        cycles=kernel.dim, boundaries=image.dim,
        representatives=tuple(_vec_to_cochain(bases[degree], r)
                              for r in reps))


# -- module valued cochains -------------------------------------------------


@dataclass(frozen=True)
class ModuleAction:
    """Representation of the algebra on a finite graded module.

    actions[i] is the matrix of e_i acting; degrees grade the module
    basis.  Module cochains are stored as (module index, monomial) pairs
    and are graded by monomial length.
    """

    algebra: GradedLie
    degrees: tuple[int, ...]
    actions: tuple[SparseMatrix, ...]

    @property
    def dim(self) -> int:
        return len(self.degrees)

    def act(self, i: int, v: SparseVec) -> SparseVec:
        return self.actions[i].apply(v)


def module_defects(mod: ModuleAction) -> list[tuple[int, int]]:
    """Pairs where rho([x, y]) differs from the bracket of actions."""
    g = mod.algebra
    bad = []
    for i in range(g.dim):
        for j in range(g.dim):
            lhs = SparseMatrix.zero(mod.dim, mod.dim)
            for k, c in g.bracket_basis(i, j):
                lhs = lhs + mod.actions[k].scale(c)
            sign = -ONE if g.parity(i) and g.parity(j) else ONE
            rhs = mod.actions[i] @ mod.actions[j] - \
                (mod.actions[j] @ mod.actions[i]).scale(sign)
            if not (lhs - rhs).is_zero():
                bad.append((i, j))
    return bad


def validate_module(mod: ModuleAction) -> None:
    bad = module_defects(mod)
    if bad:
        raise NotAModuleError(f"action fails on pairs {bad[:3]}")


ModuleCochain = tuple[tuple[tuple[int, Monomial], Scalar], ...]


def module_cochain(items: Iterable[tuple[int, Monomial, Scalar]]
                   ) -> ModuleCochain:
    acc: dict[tuple[int, Monomial], Scalar] = {}
    for a, mono, c in items:
        key = (a, mono)
        acc[key] = acc.get(key, ZERO) + c
    return tuple(sorted((k, c) for k, c in acc.items() if c))


def ce_differential_module(ctx: CochainContext, mod: ModuleAction,
                           u: ModuleCochain) -> ModuleCochain:
    """Differential on module valued cochains.

    d(v (x) w) = -sum_k (-1)^(par e_k * par w) rho(e_k) v (x) xi^k w
                 + v (x) d(w)

    with par w the cochain-degree parity of the monomial.  The sign is
    the unique parity-local choice (up to regrading) that squares to
    zero on the adjoint and tensor-square modules and keeps the trivial
    module differential equal to ce_differential on the nose.
    """
    g = ctx.algebra
    items: list[tuple[int, Monomial, Scalar]] = []
    for (a, mono), coeff in u:
        pw = ctx.monomial_degree(mono) % 2
        for k in range(g.dim):
            image = mod.act(k, ((a, ONE),))
            if not image:
                continue
            sign = -ONE if (1 + g.parity(k) * pw) % 2 else ONE
            mono2, c2 = ctx.normalize((k,) + mono, sign * coeff)
            if c2:
                for b, cb in image:
                    items.append((b, mono2, c2 * cb))
        dpart = ce_differential(ctx, Cochain(((mono, ONE),)))
        for mono2, c2 in dpart.terms:
            items.append((a, mono2, coeff * c2))
    return module_cochain(items)


def adjoint_module(b: Bialgebra) -> ModuleAction:
    g = b.algebra
    return ModuleAction(
        algebra=g,
        degrees=tuple(e.degree for e in g.basis),
        actions=tuple(g.ad_matrix(((i, ONE),)) for i in range(g.dim)))


def adjoint_squared_module(b: Bialgebra) -> ModuleAction:
    """The tensor square of the adjoint action, flattened."""
    g = b.algebra
    d = g.dim
    degrees = tuple(g.degree(u) + g.degree(v)
                    for u in range(d) for v in range(d))
    actions = []
    for i in range(d):
        items = []
        pi = g.parity(i)
        for u in range(d):
            for v in range(d):
                col = u * d + v
                for k, c in g.bracket_basis(i, u):
                    items.append((k * d + v, col, c))
                sign = -ONE if pi and g.parity(u) else ONE
                for k, c in g.bracket_basis(i, v):
                    items.append((u * d + k, col, sign * c))
        actions.append(SparseMatrix.from_entries(d * d, d * d, items))
    return ModuleAction(algebra=g, degrees=degrees, actions=tuple(actions))


def cobracket_as_module_cochain(b: Bialgebra) -> ModuleCochain:
    """The cobracket tensor, packaged as a 1-cochain valued in the
    flattened tensor square of the adjoint module."""
    d = b.algebra.dim
    items = []
    for k in range(d):
        for (i, j), c in b.phi(k).items():
            items.append((i * d + j, (k,), c))
    return module_cochain(items)


# -- quadratic bracket from an invariant form -------------------------------


def pairing_bracket_table(b: Bialgebra) -> dict[tuple[int, int], Scalar]:
    """Generator table of the bracket induced by an invariant form.

    The form identifies generators with algebra elements; the table is
    fixed by <p(x), p(y)> = (-1)^(deg x) (x, y) where p sends an algebra
    element to its generator image under the form.
    """
    if b.form is None:
        raise CochainError("structure has no invariant form")
    g = b.algebra
    d = g.dim
    gram = b.form.gram()
    inv = gram.inverse()
    table: dict[tuple[int, int], Scalar] = {}
    # p(e_a) = sum_i (e_a, e_i) xi^i, so the table T with
    # T[i, j] = <xi^i, xi^j> solves sum G[a,i] G[b,j] T[i,j] =
    # (-1)^(deg a) G[a,b]; invert both legs.
    for i in range(d):
        for j in range(d):
            total = ZERO
            for a in range(d):
                ga = inv.get(i, a)
                if not ga:
                    continue
                sign = -ONE if g.degree(a) % 2 else ONE
                for bidx in range(d):
                    gb = inv.get(j, bidx)
                    if not gb:
                        continue
                    val = b.form.evaluate(((a, ONE),), ((bidx, ONE),))
                    if val:
                        total += ga * gb * sign * val
            if total:
                table[(i, j)] = total
    return table


def pairing_bracket(ctx: CochainContext, table: dict[tuple[int, int],
                                                     Scalar],
                    u: Cochain, v: Cochain) -> Cochain:
    """Extension of a scalar generator table by the shifted Leibniz rules.

    The table sends a pair of generators to a scalar, so the bracket drops
    degree |u| + |v| - (shift + 2) relative to a product; the extension
    uses the same recursion as the structural bracket with that shift.
    """
    n = ctx.shift + 1
    memo: dict[tuple[Monomial, Monomial], Cochain] = {}

    def mono_bracket(mu: Monomial, mv: Monomial) -> Cochain:
        key = (mu, mv)
        if key in memo:
            return memo[key]
        if not mu or not mv:
            out = Cochain.zero()
        elif len(mu) == 1 and len(mv) == 1:
            c = table.get((mu[0], mv[0]), ZERO)
            out = Cochain((((), c),)) if c else Cochain.zero()
        elif len(mv) > 1:
            y = mv[:1]
            z = mv[1:]
            px = ctx.monomial_parity(mu)
            py = ctx.gen_parity[y[0]]
            first = ctx.multiply(mono_bracket(mu, y), Cochain(((z, ONE),)))
            sign = -ONE if ((px + n + 1) * py) % 2 else ONE
            second = ctx.multiply(Cochain(((y, ONE),)),
                                  mono_bracket(mu, z)).scale(sign)
            out = first + second
        else:
            pu = ctx.monomial_parity(mu) + n + 1
            pv = ctx.monomial_parity(mv) + n + 1
            out = mono_bracket(mv, mu).scale(
                ONE if (pu * pv) % 2 else -ONE)
        memo[key] = out
        return out

    acc = Cochain.zero()
    for mu, cu in u.terms:
        for mv, cv in v.terms:
            acc = acc + mono_bracket(mu, mv).scale(cu * cv)
    return acc


# -- plain text rendering ----------------------------------------------------


def format_monomial(ctx: CochainContext, mono: Monomial,
                    names: Optional[dict[int, str]] = None) -> str:
    """"1" for the empty word, otherwise names with power grouping;
    names overrides the display name per generator index."""
    if not mono:
        return "1"
    parts = []
    for index, group in itertools.groupby(mono):
        count = len(list(group))
        name = names.get(index) if names else None
        if name is None:
            name = ctx.gen_name(index)
        parts.append(name if count == 1 else f"{name}^{count}")
    return "*".join(parts)


def format_cochain(ctx: CochainContext, u: Cochain,
                   names: Optional[dict[int, str]] = None) -> str:
    if u.is_zero():
        return "0"
    parts = []
    for mono, c in u.terms:
        body = format_monomial(ctx, mono, names)
        if c == ONE and mono:
            item = body
        elif c == -ONE and mono:
            item = f"-{body}"
        elif not mono:
            item = str(c)
        else:
            item = f"{c}*{body}"
        parts.append(item)
    out = parts[0]
    for item in parts[1:]:
        out += f" - {item[1:]}" if item.startswith("-") else f" + {item}"
    return out


def parse_generator_word(ctx: CochainContext, text: str) -> Cochain:
    """Inverse of format_monomial on a single word, with a scalar allowed
    up front: "2*t*x^2", "-x", "1"."""
    from .linalg import parse_scalar
    text = text.strip()
    coeff = ONE
    if text.startswith("-") and not text[1:2].isdigit():
        coeff = -ONE
        text = text[1:]
    indices: list[int] = []
    for piece in text.split("*"):
        piece = piece.strip()
        if not piece:
            raise CochainError("empty factor in generator word")
        if piece == "1" and not indices:
            continue
        name, _, power = piece.partition("^")
        try:
            index = ctx.algebra.index(name)
        except KeyError:
            try:
                coeff *= parse_scalar(piece)
                continue
            except ValueError:
                raise CochainError(f"unknown generator {name!r}")
        count = int(power) if power else 1
        indices.extend([index] * count)
    mono, c = ctx.normalize(tuple(indices), coeff)
    if not c:
        return Cochain.zero()
    return Cochain(((mono, c),))
