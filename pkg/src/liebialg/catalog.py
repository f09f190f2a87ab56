"""Concrete families: endomorphism algebras with their standard structures,
involution-split triples, and truncated loop algebras of Frobenius algebras.

Lines of a graded space are numbered from 1; e{p}{q} is the elementary
map sending line q to line p and carries degree alpha_q - alpha_p, so the
positive-degree part is the "upper triangular" half when the line degrees
are weakly increasing.  Diagonal units are named a{p}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .algebra import (AlgebraError, BasisElement, Bialgebra, BilinearForm,
                      GradedLie, ManinTriple, RMatrix, coboundary_cobracket,
                      dual_bialgebra, manin_to_bialgebra, rebase_lie,
                      restrict_bialgebra)
from .linalg import (ONE, ZERO, LinalgError, Scalar, SparseMatrix, SparseVec,
                     vec, vec_add)


class FrobeniusError(AlgebraError):
    """The input data is not a Frobenius algebra."""


@dataclass(frozen=True)
class EndAlgebra:
    """All endomorphisms of a graded space, as a graded Lie algebra."""

    alpha: tuple[int, ...]
    algebra: GradedLie

    @property
    def lines(self) -> int:
        return len(self.alpha)

    def index(self, p: int, q: int) -> int:
        return self.algebra.index(_unit_name(p, q))

    def unit(self, p: int, q: int) -> SparseVec:
        return ((self.index(p, q), ONE),)

    def upper_pairs(self) -> list[tuple[int, int]]:
        return [(p, q) for p in range(1, self.lines + 1)
                for q in range(1, self.lines + 1)
                if self.alpha[p - 1] < self.alpha[q - 1]]

    def levi_pairs(self) -> list[tuple[int, int]]:
        return [(p, q) for p in range(1, self.lines + 1)
                for q in range(1, self.lines + 1)
                if p != q and self.alpha[p - 1] == self.alpha[q - 1]]

    def triangular_pairs(self) -> list[tuple[int, int]]:
        """Positional upper pairs p < q; the Borel half together with
        the torus (degrees are weakly increasing along the lines)."""
        return [(p, q) for p in range(1, self.lines + 1)
                for q in range(p + 1, self.lines + 1)]


def _unit_name(p: int, q: int) -> str:
    return f"a{p}" if p == q else f"e{p}{q}"


def end_algebra(alpha: Sequence[int], label: Optional[str] = None
                ) -> EndAlgebra:
    alpha = tuple(alpha)
    lines = len(alpha)
    names = []
    for p in range(1, lines + 1):
        names.append((p, p))
    for p in range(1, lines + 1):
        for q in range(1, lines + 1):
            if p != q:
                names.append((p, q))
    index = {pq: i for i, pq in enumerate(names)}
    basis = []
    for p, q in names:
        weight = [0] * lines
        weight[p - 1] += 1
        weight[q - 1] -= 1
        basis.append(BasisElement(_unit_name(p, q),
                                  alpha[q - 1] - alpha[p - 1],
                                  tuple(weight)))

    def parity(pq: tuple[int, int]) -> int:
        p, q = pq
        return (alpha[q - 1] - alpha[p - 1]) % 2

    bracket = []
    for x in names:
        for y in names:
            sign = -ONE if parity(x) and parity(y) else ONE
            acc: dict[int, Scalar] = {}
            if x[1] == y[0]:
                k = index[(x[0], y[1])]
                acc[k] = acc.get(k, ZERO) + ONE
            if y[1] == x[0]:
                k = index[(y[0], x[1])]
                acc[k] = acc.get(k, ZERO) - sign
            for k, c in acc.items():
                if c:
                    bracket.append((index[x], index[y], k, c))
    g = GradedLie(label or "end" + "".join(str(a) for a in alpha),
                  tuple(basis), tuple(bracket))
    return EndAlgebra(alpha, g)


def supertrace_form(endv: EndAlgebra) -> BilinearForm:
    """(x, y) = supertrace of xy: pairs e{p}{q} with e{q}{p}."""
    entries = []
    for p in range(1, endv.lines + 1):
        for q in range(1, endv.lines + 1):
            sign = -ONE if endv.alpha[p - 1] % 2 else ONE
            entries.append((endv.index(p, q), endv.index(q, p), sign))
    return BilinearForm(endv.algebra.dim, tuple(entries))


def supertrace_vector(endv: EndAlgebra) -> SparseVec:
    """The supertrace as a functional on the diagonal coordinates."""
    return vec(((endv.index(p, p), -ONE if endv.alpha[p - 1] % 2 else ONE)
                for p in range(1, endv.lines + 1)))


def standard_rmatrix(endv: EndAlgebra, scale: Scalar = ONE) -> RMatrix:
    """Classical r-matrix whose coboundary is the standard cobracket.

    Sum over positional pairs p < q of +-scale * e{p}{q} ^ e{q}{p}, the
    sign being negative exactly when line q sits in even degree.  With
    that signing the coboundary agrees with the double of the triangular
    Manin triple on every grading; the unsigned sum only matches when
    the grading has at most two blocks.
    """
    entries = []
    for p, q in endv.triangular_pairs():
        sign = -ONE if endv.alpha[q - 1] % 2 == 0 else ONE
        entries.append((endv.index(p, q), endv.index(q, p), sign * scale))
    return RMatrix(tuple(entries))


def end_graded(dims: Sequence[tuple[int, int]],
               label: Optional[str] = None) -> EndAlgebra:
    """Endomorphisms of a graded space given as (degree, dimension) rows."""
    alpha: list[int] = []
    for degree, count in sorted(dims):
        if count < 0:
            raise ValueError("negative dimension")
        alpha.extend([degree] * count)
    return end_algebra(alpha, label)


def levi_l(endv: EndAlgebra) -> list[tuple[str, SparseVec]]:
    """Degree-0 block part: the torus plus the equal-degree units."""
    out = [(f"a{p}", endv.unit(p, p)) for p in range(1, endv.lines + 1)]
    for p, q in sorted(endv.levi_pairs()):
        out.append((_unit_name(p, q), endv.unit(p, q)))
    return out


def nilradical_n(endv: EndAlgebra) -> list[tuple[str, SparseVec]]:
    """Strictly positive degree part."""
    return [(_unit_name(p, q), endv.unit(p, q))
            for p, q in sorted(endv.upper_pairs())]


def parabolic_q(endv: EndAlgebra) -> list[tuple[str, SparseVec]]:
    """Nonnegative degree part."""
    return parabolic_vectors(endv, traceless=False)


def trace_zero(endv: EndAlgebra) -> list[tuple[str, SparseVec]]:
    """Kernel of the supertrace: consecutive torus combinations plus all
    off-diagonal units."""
    out: list[tuple[str, SparseVec]] = []
    for i in range(1, endv.lines):
        s = -ONE if (endv.alpha[i - 1] + endv.alpha[i]) % 2 == 0 else ONE
        out.append((f"h{i}",
                    vec_add(endv.unit(i, i), endv.unit(i + 1, i + 1), s)))
    for p in range(1, endv.lines + 1):
        for q in range(1, endv.lines + 1):
            if p != q:
                out.append((_unit_name(p, q), endv.unit(p, q)))
    return out


def parabolic_vectors(endv: EndAlgebra, traceless: bool
                      ) -> list[tuple[str, SparseVec]]:
    """Basis of the nonnegative-degree parabolic, optionally cut to the
    kernel of the supertrace.

    The torus part of the traceless cut is spanned by consecutive combos
    h{i} = a{i} + s a{i+1} with s chosen so the supertrace vanishes.
    """
    out: list[tuple[str, SparseVec]] = []
    lines = endv.lines
    if traceless:
        for i in range(1, lines):
            s = -ONE if (endv.alpha[i - 1] + endv.alpha[i]) % 2 == 0 else ONE
            out.append((f"h{i}",
                        vec_add(endv.unit(i, i), endv.unit(i + 1, i + 1), s)))
    else:
        for p in range(1, lines + 1):
            out.append((f"a{p}", endv.unit(p, p)))
    for p, q in sorted(endv.levi_pairs()):
        out.append((_unit_name(p, q), endv.unit(p, q)))
    for p, q in sorted(endv.upper_pairs()):
        out.append((_unit_name(p, q), endv.unit(p, q)))
    return out


@dataclass(frozen=True)
class StandardStructure:
    """A standard coboundary structure, possibly cut to a parabolic.

    bialgebra is the structure itself; ambient/full/embedding keep enough
    data to relate it back to the endomorphism algebra it came from
    (embedding lists the sub-basis as vectors over the ambient basis).
    """

    ambient: EndAlgebra
    full: Bialgebra
    bialgebra: Bialgebra
    embedding: tuple[tuple[str, SparseVec], ...]
    restrict: str


def standard_structure(alpha: Sequence[int], restrict: str = "full",
                       rename: Optional[dict[str, str]] = None,
                       label: Optional[str] = None) -> StandardStructure:
    """Standard bialgebra on end(alpha), cut down on request.

    The cobracket comes from the two-copy triple (diagonal against the
    mixed Borel half) and is normalized so that its dual structure
    constants are integral on the root part; when it agrees with the
    coboundary of the triangular r-matrix that r is attached.  For a
    two-block grading the two constructions coincide; for longer
    gradings only the triple produces a cobracket that stays inside the
    parabolic.

    restrict picks the carrier: "full", the parabolic "q", or its
    supertrace-free part "q1".
    """
    endv = end_algebra(alpha)
    form = supertrace_form(endv)
    plus = manin_to_bialgebra(standard_manin_triple(alpha), side="plus")
    name_to_index = {e.name: i for i, e in enumerate(endv.algebra.basis)}
    remap = [name_to_index[e.name[:-2]] for e in plus.algebra.basis]
    cobracket = tuple(sorted(
        (remap[k], remap[i], remap[j], 2 * c)
        for k, i, j, c in plus.cobracket))
    rmat = standard_rmatrix(endv)
    candidate = coboundary_cobracket(endv.algebra, rmat, shift=0,
                                     check_cojacobi=False)
    if {(k, i, j): c for k, i, j, c in candidate.cobracket} != \
            {(k, i, j): c for k, i, j, c in cobracket}:
        raise AlgebraError("standard cobracket is not the coboundary "
                           "of the standard r-matrix")
    full = Bialgebra(endv.algebra, 0, cobracket, form=form, rmatrix=rmat)
    if restrict == "full":
        embedding = tuple((e.name, ((i, ONE),))
                          for i, e in enumerate(endv.algebra.basis))
        chosen = full
    elif restrict in ("q", "q1"):
        vectors = parabolic_vectors(endv, traceless=(restrict == "q1"))
        if rename:
            vectors = [(rename.get(name, name), v) for name, v in vectors]
        embedding = tuple(vectors)
        chosen = restrict_bialgebra(full, vectors,
                                    label=label or
                                    f"{endv.algebra.label}/{restrict}")
    else:
        raise ValueError("restrict must be 'full', 'q' or 'q1'")
    return StandardStructure(ambient=endv, full=full, bialgebra=chosen,
                             embedding=embedding, restrict=restrict)


def standard_bialgebra(m: int, n: int = 0,
                       restrict: str = "full") -> Bialgebra:
    """Standard structure of gl(m, n): m even lines, n odd lines."""
    return standard_structure((0,) * m + (1,) * n, restrict).bialgebra


def standard_manin_triple(alpha: Sequence[int]) -> ManinTriple:
    """The two-copy triple on end(alpha): diagonal against the mixed half.

    The total is g (+) g with pairing (x1, x2) - (y1, y2); the first half
    is the diagonal, the second is
    {(x, y) in b+ (+) b- : torus(x) + torus(y) = 0}
    with b+ and b- the positional triangular halves plus the torus.
    """
    endv = end_algebra(alpha)
    g = endv.algebra
    d = g.dim

    def left(v: SparseVec) -> SparseVec:
        return v

    def right(v: SparseVec) -> SparseVec:
        return tuple((i + d, c) for i, c in v)

    total_basis: list[tuple[str, SparseVec]] = []
    for i, e in enumerate(g.basis):
        total_basis.append((e.name + "#d",
                            vec_add(((i, ONE),), ((i + d, ONE),))))
    minus_start = d
    for p, q in endv.triangular_pairs():
        total_basis.append((_unit_name(p, q) + "#u",
                            left(endv.unit(p, q))))
    for p, q in endv.triangular_pairs():
        total_basis.append((_unit_name(q, p) + "#l",
                            right(endv.unit(q, p))))
    for p in range(1, endv.lines + 1):
        total_basis.append((f"a{p}#t",
                            vec_add(left(endv.unit(p, p)),
                                    right(endv.unit(p, p)), -ONE)))

    two = GradedLie(
        f"{g.label}x2",
        tuple(BasisElement(e.name + ("'" if copy else ""), e.degree, None)
              for copy in (0, 1) for e in g.basis),
        tuple(g.bracket)
        + tuple((i + d, j + d, k + d, c) for i, j, k, c in g.bracket))
    adapted = rebase_lie(two, total_basis, label=f"{g.label}x2")

    base_form = supertrace_form(endv)
    entries = []
    columns = [vec(v) for _, v in total_basis]
    for a in range(2 * d):
        for b in range(2 * d):
            value = ZERO
            for i, ci in columns[a]:
                for j, cj in columns[b]:
                    if i < d and j < d:
                        value += ci * cj * base_form.evaluate(
                            ((i, ONE),), ((j, ONE),))
                    elif i >= d and j >= d:
                        value -= ci * cj * base_form.evaluate(
                            ((i - d, ONE),), ((j - d, ONE),))
            if value:
                entries.append((a, b, value))
    form = BilinearForm(2 * d, tuple(entries))
    return ManinTriple(total=adapted,
                       plus=tuple(range(d)),
                       minus=tuple(range(minus_start, 2 * d)),
                       form=form)


def theta_triple(n: int, theta: Sequence[int]) -> ManinTriple:
    """Involution-split triple on the endomorphisms of 2n lines.

    Lines carry degrees 0 .. 2n-1.  theta is a permutation of 1..n; the
    plus torus is spanned by a{2i-1} + a{2 theta(i)} and the minus torus
    by a{2i-1} - a{2 theta(i)}, on top of the strict upper and lower
    halves respectively.
    """
    theta = tuple(theta)
    if sorted(theta) != list(range(1, n + 1)):
        raise ValueError("theta must be a permutation of 1..n")
    endv = end_algebra(tuple(range(2 * n)))
    g = endv.algebra
    new_basis: list[tuple[str, SparseVec]] = []
    for p, q in sorted(endv.upper_pairs()):
        new_basis.append((_unit_name(p, q), endv.unit(p, q)))
    plus_count = len(new_basis)
    for i in range(1, n + 1):
        new_basis.append((f"h{i}+", vec_add(endv.unit(2 * i - 1, 2 * i - 1),
                                            endv.unit(2 * theta[i - 1],
                                                      2 * theta[i - 1]))))
    for i in range(1, n + 1):
        new_basis.append((f"h{i}-", vec_add(endv.unit(2 * i - 1, 2 * i - 1),
                                            endv.unit(2 * theta[i - 1],
                                                      2 * theta[i - 1]),
                                            -ONE)))
    for p, q in sorted(endv.upper_pairs()):
        new_basis.append((_unit_name(q, p), endv.unit(q, p)))
    adapted = rebase_lie(g, new_basis, label=f"theta{n}" +
                         "".join(str(t) for t in theta))

    base_form = supertrace_form(endv)
    columns = [vec(v) for _, v in new_basis]
    entries = []
    for a in range(len(columns)):
        for b in range(len(columns)):
            value = ZERO
            for i, ci in columns[a]:
                for j, cj in columns[b]:
                    value += ci * cj * base_form.evaluate(((i, ONE),),
                                                          ((j, ONE),))
            if value:
                entries.append((a, b, value))
    form = BilinearForm(len(columns), tuple(entries))
    half = plus_count + n
    return ManinTriple(total=adapted,
                       plus=tuple(range(half)),
                       minus=tuple(range(half, 2 * half)),
                       form=form)


def theta_bialgebra(n: int, theta: Sequence[int]) -> Bialgebra:
    return manin_to_bialgebra(theta_triple(n, theta), side="plus")


@dataclass(frozen=True)
class AssocAlgebra:
    """Associative algebra with unit and a trace functional."""

    label: str
    names: tuple[str, ...]
    unit: SparseVec
    table: tuple[tuple[int, int, int, Scalar], ...]
    trace: tuple[tuple[int, Scalar], ...]

    @property
    def dim(self) -> int:
        return len(self.names)

    def _mult_map(self) -> dict[tuple[int, int], SparseVec]:
        cached = self.__dict__.get("_mmap")
        if cached is None:
            acc: dict[tuple[int, int], list[tuple[int, Scalar]]] = {}
            for i, j, k, c in self.table:
                acc.setdefault((i, j), []).append((k, c))
            cached = {key: vec(val) for key, val in acc.items()}
            object.__setattr__(self, "_mmap", cached)
        return cached

    def multiply(self, u: SparseVec, v: SparseVec) -> SparseVec:
        acc: dict[int, Scalar] = {}
        mm = self._mult_map()
        for i, a in u:
            for j, b in v:
                for k, c in mm.get((i, j), ()):
                    acc[k] = acc.get(k, ZERO) + a * b * c
        return tuple(sorted((k, c) for k, c in acc.items() if c))

    def tau(self, u: SparseVec) -> Scalar:
        tr = dict(self.trace)
        return sum((c * tr.get(i, ZERO) for i, c in u), ZERO)


def scalar_algebra() -> AssocAlgebra:
    return AssocAlgebra(label="k", names=("1",), unit=((0, ONE),),
                        table=((0, 0, 0, ONE),), trace=((0, ONE),))


def matrix_algebra(d: int) -> AssocAlgebra:
    names = []
    index = {}
    for p in range(1, d + 1):
        for q in range(1, d + 1):
            index[(p, q)] = len(names)
            names.append(f"E{p}{q}")
    table = []
    for (p, q), i in index.items():
        for (r, s), j in index.items():
            if q == r:
                table.append((i, j, index[(p, s)], ONE))
    unit = vec(((index[(p, p)], ONE) for p in range(1, d + 1)))
    trace = tuple((index[(p, p)], ONE) for p in range(1, d + 1))
    return AssocAlgebra(label=f"mat{d}", names=tuple(names), unit=unit,
                        table=tuple(table), trace=trace)


def _frobenius_duals(a: AssocAlgebra) -> list[SparseVec]:
    """Dual basis for the trace form g(x, y) = tau(xy)."""
    gram = SparseMatrix.from_entries(
        a.dim, a.dim,
        [(i, j, a.tau(a.multiply(((i, ONE),), ((j, ONE),))))
         for i in range(a.dim) for j in range(a.dim)
         if a.tau(a.multiply(((i, ONE),), ((j, ONE),)))])
    try:
        inv = gram.inverse()
    except LinalgError as exc:
        raise FrobeniusError("trace form is degenerate") from exc
    return [vec(((m, inv.get(idx, m)) for m in range(a.dim)))
            for idx in range(a.dim)]


def _check_frobenius(a: AssocAlgebra) -> None:
    for i in range(a.dim):
        u = ((i, ONE),)
        if a.multiply(a.unit, u) != vec(u) or a.multiply(u, a.unit) != vec(u):
            raise FrobeniusError("unit axiom fails")
        for j in range(a.dim):
            v = ((j, ONE),)
            if a.tau(a.multiply(u, v)) != a.tau(a.multiply(v, u)):
                raise FrobeniusError("trace form is not symmetric")
            for k in range(a.dim):
                w = ((k, ONE),)
                if a.multiply(a.multiply(u, v), w) != \
                        a.multiply(u, a.multiply(v, w)):
                    raise FrobeniusError("multiplication is not associative")


def frobenius_loop(a: AssocAlgebra, window: int) -> Bialgebra:
    """Loop generators a t^m for 1 <= m <= window, with the odd bracket
    [x t^p, y t^q] = (xy - (-1)^(pq) yx) t^(p+q), products past the window
    dropped.

    The cobracket is the bracket of the dual generators, which live at
    nonpositive loop degrees t^(1-m) and multiply through the same rule,
    again keeping only targets inside the window.  The shift is -1.
    """
    if window < 1:
        raise ValueError("window must be at least 1")
    _check_frobenius(a)
    duals = _frobenius_duals(a)

    def gen_name(alpha: int, m: int) -> str:
        if a.dim == 1:
            return f"t{m}"
        return f"{a.names[alpha]}t{m}"

    def gen_index(alpha: int, m: int) -> int:
        return (m - 1) * a.dim + alpha

    basis = []
    for m in range(1, window + 1):
        for alpha in range(a.dim):
            basis.append(BasisElement(gen_name(alpha, m), m, None))

    bracket = []
    for m in range(1, window + 1):
        for mp in range(1, window + 1):
            if m + mp > window:
                continue
            sign = -ONE if (m * mp) % 2 else ONE
            for alpha in range(a.dim):
                for beta in range(a.dim):
                    u = ((alpha, ONE),)
                    v = ((beta, ONE),)
                    value = vec_add(a.multiply(u, v),
                                    a.multiply(v, u), -sign)
                    for kappa, c in value:
                        bracket.append((gen_index(alpha, m),
                                        gen_index(beta, mp),
                                        gen_index(kappa, m + mp), c))

    cobracket = []
    for m in range(1, window + 1):
        for mp in range(1, window + 1):
            target = m + mp - 1
            if target > window:
                continue
            sign = -ONE if ((1 - m) * (1 - mp)) % 2 else ONE
            for alpha in range(a.dim):
                for beta in range(a.dim):
                    value = vec_add(a.multiply(duals[alpha], duals[beta]),
                                    a.multiply(duals[beta], duals[alpha]),
                                    -sign)
                    if not value:
                        continue
                    for kappa in range(a.dim):
                        c = a.tau(a.multiply(value, ((kappa, ONE),)))
                        if c:
                            cobracket.append((gen_index(kappa, target),
                                              gen_index(alpha, m),
                                              gen_index(beta, mp), c))

    g = GradedLie(f"loop({a.label},{window})", tuple(basis), tuple(bracket))
    return Bialgebra(algebra=g, shift=-1, cobracket=tuple(cobracket))


@dataclass(frozen=True)
class CatalogEntry:
    key: str
    summary: str
    factory: Callable[[], Bialgebra]
    valid: bool = True


def catalog() -> dict[str, CatalogEntry]:
    """The fixed example set exercised by the command line and the tests."""

    def trivial() -> Bialgebra:
        g = GradedLie("trivial", (BasisElement("z", 0, (0,)),), ())
        return Bialgebra(algebra=g, shift=0, cobracket=())

    entries = [
        CatalogEntry("trivial", "one even generator, zero structure",
                     trivial),
        CatalogEntry("borel11",
                     "supertrace-free parabolic of gl(1,1), standard",
                     lambda: standard_structure(
                         (0, 1), "q1",
                         rename={"h1": "t", "e12": "x"}).bialgebra),
        CatalogEntry("dual-borel11",
                     "shifted dual of borel11",
                     lambda: dual_bialgebra(standard_structure(
                         (0, 1), "q1",
                         rename={"h1": "t", "e12": "x"}).bialgebra)),
        CatalogEntry("gl11", "standard structure on all of gl(1,1)",
                     lambda: standard_structure((0, 1)).bialgebra),
        CatalogEntry("gl2", "standard structure on all of gl(2)",
                     lambda: standard_structure((0, 0)).bialgebra),
        CatalogEntry("gl12", "standard structure on all of gl(1,2)",
                     lambda: standard_structure((0, 1, 1)).bialgebra),
        CatalogEntry("q1-001",
                     "supertrace-free parabolic of end(0,0,1), standard",
                     lambda: standard_structure((0, 0, 1), "q1").bialgebra),
        CatalogEntry("q1-012",
                     "supertrace-free parabolic of end(0,1,2), standard",
                     lambda: standard_structure((0, 1, 2), "q1").bialgebra),
        CatalogEntry("theta1", "involution-split structure, one pair",
                     lambda: theta_bialgebra(1, (1,))),
        CatalogEntry("theta2-id", "involution-split, two pairs, identity",
                     lambda: theta_bialgebra(2, (1, 2))),
        CatalogEntry("theta2-swap", "involution-split, two pairs, swapped",
                     lambda: theta_bialgebra(2, (2, 1))),
        CatalogEntry("frobenius-k-2", "loop of the ground field, window 2",
                     lambda: frobenius_loop(scalar_algebra(), 2)),
        CatalogEntry("frobenius-k-3", "loop of the ground field, window 3",
                     lambda: frobenius_loop(scalar_algebra(), 3)),
        CatalogEntry("frobenius-mat2-2",
                     "loop of 2x2 matrices, window 2 (cocycle fails)",
                     lambda: frobenius_loop(matrix_algebra(2), 2),
                     valid=False),
    ]
    return {e.key: e for e in entries}
