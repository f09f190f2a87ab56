"""Graded Lie algebras with a degree-shifted cobracket.

Conventions used consistently across the package:

* the parity of a basis element is its integer degree mod 2;
* bracket constants: [e_i, e_j] = sum_k c[i, j -> k] e_k;
* cobracket constants gamma[k; i, j] are the structure constants of the
  bracket on the shifted dual: [f^i, f^j] = sum_k gamma[k; i, j] f^k, where
  f^i is dual to e_i and sits in degree -n - deg(e_i) for shift n;
* the cobracket tensor of e_k is recovered from gamma through
      phi(e_k) = sum_{i,j} (-1)^(p_i p_j + n p_i) gamma[k; i, j] e_i (x) e_j
  with p_i the parity of e_i;
* a nonzero gamma[k; i, j] forces deg(e_i) + deg(e_j) = deg(e_k) - n.

All coefficient data is exact (Fraction).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .linalg import (ONE, ZERO, LinalgError, Scalar, SparseMatrix, SparseVec,
                     SubspaceBasis, linear_solve, vec, vec_add, vec_scale)


class AlgebraError(Exception):
    """Base class for structural failures at the algebra level."""


class PairingDegenerateError(AlgebraError):
    """A pairing that must be perfect has a kernel."""


class NotClosedError(AlgebraError):
    """A subspace fails to close under a bracket or cobracket."""


class CoJacobiError(AlgebraError):
    """A candidate cobracket violates the dual Jacobi identity."""


def _sgn(exponent: int) -> Scalar:
    return -ONE if exponent % 2 else ONE


def _wsum(a: Optional[tuple[int, ...]], b: Optional[tuple[int, ...]]
          ) -> Optional[tuple[int, ...]]:
    if a is None or b is None:
        return None
    return tuple(x + y for x, y in zip(a, b))


@dataclass(frozen=True)
class BasisElement:
    name: str
    degree: int
    weight: Optional[tuple[int, ...]] = None

    @property
    def parity(self) -> int:
        return self.degree % 2


@dataclass(frozen=True)
class GradedLie:
    """Finite dimensional graded Lie algebra given by structure constants.

    bracket holds (i, j, k, c) tuples meaning [e_i, e_j] contains c * e_k.
    """

    label: str
    basis: tuple[BasisElement, ...]
    bracket: tuple[tuple[int, int, int, Scalar], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def degree(self, i: int) -> int:
        return self.basis[i].degree

    def parity(self, i: int) -> int:
        return self.basis[i].degree % 2

    def weight(self, i: int) -> Optional[tuple[int, ...]]:
        return self.basis[i].weight

    @property
    def has_weights(self) -> bool:
        return all(e.weight is not None for e in self.basis)

    def index(self, name: str) -> int:
        table = self.__dict__.get("_name_table")
        if table is None:
            table = {e.name: i for i, e in enumerate(self.basis)}
            object.__setattr__(self, "_name_table", table)
        return table[name]

    def element(self, name: str) -> SparseVec:
        return ((self.index(name), ONE),)

    def _bracket_map(self) -> dict[tuple[int, int], SparseVec]:
        cached = self.__dict__.get("_bmap")
        if cached is None:
            acc: dict[tuple[int, int], list[tuple[int, Scalar]]] = {}
            for i, j, k, c in self.bracket:
                acc.setdefault((i, j), []).append((k, c))
            cached = {key: vec(val) for key, val in acc.items()}
            object.__setattr__(self, "_bmap", cached)
        return cached

    def bracket_basis(self, i: int, j: int) -> SparseVec:
        return self._bracket_map().get((i, j), ())

    def bracket_vec(self, u: Iterable[tuple[int, Scalar]],
                    v: Iterable[tuple[int, Scalar]]) -> SparseVec:
        acc: dict[int, Scalar] = {}
        for i, a in u:
            for j, b in v:
                for k, c in self.bracket_basis(i, j):
                    acc[k] = acc.get(k, ZERO) + a * b * c
        return tuple(sorted((k, c) for k, c in acc.items() if c))

    def ad_matrix(self, x: Iterable[tuple[int, Scalar]]) -> SparseMatrix:
        """Matrix of [x, -] in the given basis (columns index the argument)."""
        x = vec(x)
        items = []
        for j in range(self.dim):
            for k, c in self.bracket_vec(x, ((j, ONE),)):
                items.append((k, j, c))
        return SparseMatrix.from_entries(self.dim, self.dim, items)


@dataclass(frozen=True)
class BilinearForm:
    """Bilinear form on a fixed basis, stored as (i, j, value) entries."""

    dim: int
    entries: tuple[tuple[int, int, Scalar], ...]

    def gram(self) -> SparseMatrix:
        return SparseMatrix.from_entries(self.dim, self.dim, self.entries)

    def evaluate(self, u: Iterable[tuple[int, Scalar]],
                 v: Iterable[tuple[int, Scalar]]) -> Scalar:
        gram = self.__dict__.get("_gram_map")
        if gram is None:
            gram = {}
            for i, j, c in self.entries:
                gram[(i, j)] = gram.get((i, j), ZERO) + c
            object.__setattr__(self, "_gram_map", gram)
        total = ZERO
        for i, a in u:
            for j, b in v:
                c = gram.get((i, j))
                if c:
                    total += a * b * c
        return total


@dataclass(frozen=True)
class RMatrix:
    """Element of the exterior square, entries (i, j, c) with i <= j.

    A diagonal entry (i, i, c) is only meaningful for odd e_i, where the
    wedge square does not vanish.  The associated tensor expands each
    off-diagonal wedge as e_i (x) e_j - (-1)^(p_i p_j) e_j (x) e_i and a
    diagonal one as e_i (x) e_i.
    """

    entries: tuple[tuple[int, int, Scalar], ...]

    def tensor(self, algebra: GradedLie) -> dict[tuple[int, int], Scalar]:
        out: dict[tuple[int, int], Scalar] = {}

        def put(i: int, j: int, c: Scalar) -> None:
            nc = out.get((i, j), ZERO) + c
            if nc:
                out[(i, j)] = nc
            else:
                out.pop((i, j), None)

        for i, j, c in self.entries:
            if i > j:
                raise AlgebraError("wedge entries must have i <= j")
            if i == j:
                if algebra.parity(i) == 0:
                    raise AlgebraError(
                        "diagonal wedge entry on an even generator")
                put(i, i, c)
            else:
                put(i, j, c)
                put(j, i, -_sgn(algebra.parity(i) * algebra.parity(j)) * c)
        return out


@dataclass(frozen=True)
class Bialgebra:
    """Graded Lie algebra with an n-shifted cobracket.

    cobracket holds (k, i, j, gamma) tuples: gamma[k; i, j] as in the module
    docstring.  form and rmatrix are optional decorations carried by
    structures that come with an invariant pairing or a coboundary origin.
    """

    algebra: GradedLie
    shift: int
    cobracket: tuple[tuple[int, int, int, Scalar], ...]
    form: Optional[BilinearForm] = None
    rmatrix: Optional[RMatrix] = None

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def dual_degree(self, i: int) -> int:
        return -self.shift - self.algebra.degree(i)

    def _dual_map(self) -> dict[tuple[int, int], SparseVec]:
        cached = self.__dict__.get("_dmap")
        if cached is None:
            acc: dict[tuple[int, int], list[tuple[int, Scalar]]] = {}
            for k, i, j, c in self.cobracket:
                acc.setdefault((i, j), []).append((k, c))
            cached = {key: vec(val) for key, val in acc.items()}
            object.__setattr__(self, "_dmap", cached)
        return cached

    def dual_bracket(self, i: int, j: int) -> SparseVec:
        """[f^i, f^j] as a sparse vector over the dual generators."""
        return self._dual_map().get((i, j), ())

    def phi(self, k: int) -> dict[tuple[int, int], Scalar]:
        """Cobracket tensor of e_k: {(i, j): coefficient of e_i (x) e_j}."""
        cached = self.__dict__.get("_phimap")
        if cached is None:
            cached = {}
            g = self.algebra
            n = self.shift
            for tgt, i, j, c in self.cobracket:
                sign = _sgn(g.parity(i) * g.parity(j) + n * g.parity(i))
                slot = cached.setdefault(tgt, {})
                nc = slot.get((i, j), ZERO) + sign * c
                if nc:
                    slot[(i, j)] = nc
                else:
                    slot.pop((i, j), None)
            object.__setattr__(self, "_phimap", cached)
        return dict(cached.get(k, {}))

    def dual_algebra(self) -> GradedLie:
        """The shifted dual with its gamma bracket (no cobracket)."""
        g = self.algebra
        basis = tuple(
            BasisElement(e.name + "*", -self.shift - e.degree,
                         None if e.weight is None
                         else tuple(-x for x in e.weight))
            for e in g.basis)
        bracket = tuple((i, j, k, c) for k, i, j, c in self.cobracket)
        return GradedLie(g.label + "*", basis, bracket)


def gamma_from_phi(algebra: GradedLie, shift: int,
                   tensors: dict[int, dict[tuple[int, int], Scalar]]
                   ) -> tuple[tuple[int, int, int, Scalar], ...]:
    """Invert the phi dictionary: tensors[k][(i, j)] -> gamma entries."""
    out = []
    for k in sorted(tensors):
        for (i, j), c in sorted(tensors[k].items()):
            if not c:
                continue
            sign = _sgn(algebra.parity(i) * algebra.parity(j)
                        + shift * algebra.parity(i))
            out.append((k, i, j, sign * c))
    return tuple(out)


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    subject: str
    results: tuple[CheckResult, ...]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def failures(self) -> tuple[CheckResult, ...]:
        return tuple(r for r in self.results if not r.ok)

    def named(self, name: str) -> CheckResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)


def _tensor_add(acc: dict[tuple[int, int], Scalar],
                other: dict[tuple[int, int], Scalar],
                scale: Scalar = ONE) -> None:
    for key, c in other.items():
        nc = acc.get(key, ZERO) + scale * c
        if nc:
            acc[key] = nc
        else:
            acc.pop(key, None)


def _ad_tensor(g: GradedLie, a: int,
               tensor: dict[tuple[int, int], Scalar]
               ) -> dict[tuple[int, int], Scalar]:
    """Adjoint action of e_a on an element of g (x) g.

    ad_a(u (x) v) = [e_a, u] (x) v + (-1)^(p_a p_u) u (x) [e_a, v).
    """
    out: dict[tuple[int, int], Scalar] = {}
    pa = g.parity(a)
    for (u, v), c in tensor.items():
        for k, bc in g.bracket_basis(a, u):
            key = (k, v)
            nc = out.get(key, ZERO) + c * bc
            if nc:
                out[key] = nc
            else:
                out.pop(key, None)
        sign = _sgn(pa * g.parity(u))
        for k, bc in g.bracket_basis(a, v):
            key = (u, k)
            nc = out.get(key, ZERO) + sign * c * bc
            if nc:
                out[key] = nc
            else:
                out.pop(key, None)
    return out


def _lie_checks(g: GradedLie) -> list[CheckResult]:
    """Degree, weight, antisymmetry and Jacobi for a structure constant set."""
    bad_deg = [(i, j, k) for i, j, k, c in g.bracket
               if g.degree(k) != g.degree(i) + g.degree(j)]
    out = [CheckResult("bracket-degree", not bad_deg,
                       f"violations: {bad_deg[:3]}" if bad_deg else "")]
    if g.has_weights:
        bad_w = [(i, j, k) for i, j, k, c in g.bracket
                 if g.weight(k) != _wsum(g.weight(i), g.weight(j))]
        out.append(CheckResult("bracket-weight", not bad_w,
                               f"violations: {bad_w[:3]}" if bad_w else ""))
    bad_anti = []
    for i in range(g.dim):
        for j in range(i, g.dim):
            lhs = g.bracket_basis(j, i)
            rhs = vec_scale(g.bracket_basis(i, j),
                            -_sgn(g.parity(i) * g.parity(j)))
            if lhs != rhs:
                bad_anti.append((i, j))
    out.append(CheckResult("bracket-antisymmetry", not bad_anti,
                           f"violations: {bad_anti[:3]}" if bad_anti else ""))
    bad_jac = []
    for i in range(g.dim):
        for j in range(g.dim):
            for k in range(g.dim):
                defect = g.bracket_vec(((i, ONE),), g.bracket_basis(j, k))
                defect = vec_add(defect,
                                 g.bracket_vec(g.bracket_basis(i, j),
                                               ((k, ONE),)), -ONE)
                defect = vec_add(defect,
                                 g.bracket_vec(((j, ONE),),
                                               g.bracket_basis(i, k)),
                                 -_sgn(g.parity(i) * g.parity(j)))
                if defect:
                    bad_jac.append((i, j, k))
    out.append(CheckResult("bracket-jacobi", not bad_jac,
                           f"violations: {bad_jac[:3]}" if bad_jac else ""))
    return out


def cocycle_defect(b: Bialgebra) -> list[tuple[tuple[int, int],
                                               dict[tuple[int, int], Scalar]]]:
    """Failure of the cobracket to be a 1-cocycle for the adjoint action.

    For each ordered pair (a, b) the defect is
    phi([e_a, e_b]) - ad_a phi(e_b) + (-1)^(p_a p_b) ad_b phi(e_a); an empty
    list means the cocycle condition holds.
    """
    g = b.algebra
    out = []
    for a in range(g.dim):
        for bb in range(g.dim):
            acc: dict[tuple[int, int], Scalar] = {}
            for m, c in g.bracket_basis(a, bb):
                _tensor_add(acc, b.phi(m), c)
            _tensor_add(acc, _ad_tensor(g, a, b.phi(bb)), -ONE)
            _tensor_add(acc, _ad_tensor(g, bb, b.phi(a)),
                        _sgn(g.parity(a) * g.parity(bb)))
            if acc:
                out.append(((a, bb), acc))
    return out


def cocycle_defect_indexwise(b: Bialgebra
                             ) -> list[tuple[tuple[int, int, int, int],
                                             Scalar]]:
    """Same condition as cocycle_defect, written per structure constant.

    Independent evaluation path used to cross-check the tensor computation:
    for all (i, j, k, q) the alternating sum below must vanish.
    """
    g = b.algebra
    n = b.shift
    d = g.dim
    p = [g.parity(i) for i in range(d)]

    c_by_first_target: dict[tuple[int, int], list[tuple[int, Scalar]]] = {}
    c_by_pair: dict[tuple[int, int], list[tuple[int, Scalar]]] = {}
    for i, m, k, c in b.algebra.bracket:
        c_by_first_target.setdefault((i, k), []).append((m, c))
        c_by_pair.setdefault((i, m), []).append((k, c))
    gamma_coeff: dict[tuple[int, int, int], Scalar] = {}
    for k, i, j, c in b.cobracket:
        key = (k, i, j)
        gamma_coeff[key] = gamma_coeff.get(key, ZERO) + c

    def gam(target: int, i: int, j: int) -> Scalar:
        return gamma_coeff.get((target, i, j), ZERO)

    out = []
    for i in range(d):
        for j in range(d):
            for k in range(d):
                for q in range(d):
                    lhs = ZERO
                    for m, c in c_by_pair.get((i, j), ()):
                        lhs += gam(m, k, q) * c
                    lhs *= _sgn(p[k] * p[q] + n * p[k])
                    rhs = ZERO
                    for m, c in c_by_first_target.get((i, k), ()):
                        rhs += _sgn(p[m] * p[q] + n * p[m]) \
                            * gam(j, m, q) * c
                    for m, c in c_by_first_target.get((i, q), ()):
                        rhs += _sgn(p[k] * p[m] + n * p[k]
                                    + p[i] * p[k]) * gam(j, k, m) * c
                    for m, c in c_by_first_target.get((j, k), ()):
                        rhs += _sgn(1 + p[i] * p[j] + p[m] * p[q]
                                    + n * p[m]) * gam(i, m, q) * c
                    for m, c in c_by_first_target.get((j, q), ()):
                        rhs += _sgn(1 + p[i] * p[j] + p[k] * p[m]
                                    + n * p[k] + p[j] * p[k]) \
                            * gam(i, k, m) * c
                    if lhs != rhs:
                        out.append(((i, j, k, q), lhs - rhs))
    return out


def validate_structures(b: Bialgebra) -> ValidationReport:
    """Run every structural check on a bialgebra and report per check."""
    g = b.algebra
    n = b.shift
    results = _lie_checks(g)

    bad = [(k, i, j) for k, i, j, c in b.cobracket
           if g.degree(i) + g.degree(j) != g.degree(k) - n]
    results.append(CheckResult("cobracket-degree", not bad,
                               f"violations: {bad[:3]}" if bad else ""))
    if g.has_weights:
        bad = [(k, i, j) for k, i, j, c in b.cobracket
               if _wsum(g.weight(i), g.weight(j)) != g.weight(k)]
        results.append(CheckResult("cobracket-weight", not bad,
                                   f"violations: {bad[:3]}" if bad else ""))
    bad = []
    for i in range(g.dim):
        for j in range(i, g.dim):
            lhs = b.dual_bracket(j, i)
            sign = -_sgn((g.parity(i) + n) * (g.parity(j) + n))
            if lhs != vec_scale(b.dual_bracket(i, j), sign):
                bad.append((i, j))
    results.append(CheckResult("cobracket-antisymmetry", not bad,
                               f"violations: {bad[:3]}" if bad else ""))

    dual_checks = _lie_checks(b.dual_algebra())
    for r in dual_checks:
        if r.name == "bracket-jacobi":
            results.append(CheckResult("cobracket-jacobi", r.ok, r.detail))

    defects = cocycle_defect(b)
    results.append(CheckResult(
        "cocycle", not defects,
        f"first failing pair: {defects[0][0]}" if defects else ""))

    if b.form is not None:
        results.extend(_form_checks(g, b.form, expected_degree=-n))
    if b.rmatrix is not None:
        results.extend(_rmatrix_checks(b))
    return ValidationReport(g.label, tuple(results))


def _form_checks(g: GradedLie, form: BilinearForm,
                 expected_degree: Optional[int] = None) -> list[CheckResult]:
    out = []
    gram = form.gram()
    bad = []
    for i, j, c in form.entries:
        mirror = form.evaluate(((j, ONE),), ((i, ONE),))
        if mirror != _sgn(g.parity(i) * g.parity(j)) * c:
            bad.append((i, j))
    out.append(CheckResult("form-symmetric", not bad,
                           f"violations: {bad[:3]}" if bad else ""))
    degs = {g.degree(i) + g.degree(j) for i, j, c in form.entries if c}
    if expected_degree is not None:
        degs.add(expected_degree)
    out.append(CheckResult(
        "form-degree", len(degs) <= 1,
        f"mixed degrees {sorted(degs)}" if len(degs) > 1 else ""))
    bad = []
    for x in range(g.dim):
        for y in range(g.dim):
            for z in range(g.dim):
                lhs = form.evaluate(g.bracket_basis(x, y), ((z, ONE),))
                rhs = form.evaluate(((x, ONE),), g.bracket_basis(y, z))
                if lhs != rhs:
                    bad.append((x, y, z))
    out.append(CheckResult("form-invariant", not bad,
                           f"violations: {bad[:3]}" if bad else ""))
    try:
        gram.inverse()
        out.append(CheckResult("form-nondegenerate", True))
    except LinalgError:
        out.append(CheckResult("form-nondegenerate", False,
                               "gram matrix is singular"))
    return out


def _rmatrix_checks(b: Bialgebra) -> list[CheckResult]:
    g = b.algebra
    out = []
    bad = [(i, j) for i, j, c in b.rmatrix.entries
           if g.degree(i) + g.degree(j) != -b.shift]
    out.append(CheckResult("rmatrix-degree", not bad,
                           f"violations: {bad[:3]}" if bad else ""))
    try:
        derived = coboundary_cobracket(g, b.rmatrix, b.shift,
                                       check_cojacobi=False)
        match = _cobracket_equal(b, derived)
        out.append(CheckResult(
            "rmatrix-coboundary", match,
            "" if match else "cobracket differs from the r-matrix one"))
    except AlgebraError as exc:
        out.append(CheckResult("rmatrix-coboundary", False, str(exc)))
    return out


def _cobracket_equal(a: Bialgebra, b: Bialgebra) -> bool:
    keys = set()
    for k, i, j, c in a.cobracket:
        keys.add((k, i, j))
    for k, i, j, c in b.cobracket:
        keys.add((k, i, j))
    ga = {(k, i, j): ZERO for (k, i, j) in keys}
    gb = dict(ga)
    for k, i, j, c in a.cobracket:
        ga[(k, i, j)] += c
    for k, i, j, c in b.cobracket:
        gb[(k, i, j)] += c
    return ga == gb


def delta_r(g: GradedLie, r: RMatrix) -> SparseVec:
    """Image of a wedge element under delta(a ^ b) = [a, b]."""
    acc: SparseVec = ()
    for i, j, c in r.entries:
        acc = vec_add(acc, g.bracket_basis(i, j), c)
    return acc


def coboundary_cobracket(g: GradedLie, r: RMatrix, shift: int,
                         form: Optional[BilinearForm] = None,
                         check_cojacobi: bool = True) -> Bialgebra:
    """Bialgebra with cobracket x -> ad_x(r).

    The adjoint action is taken factorwise with Koszul signs; the result is
    automatically a cocycle.  Raises CoJacobiError when the induced dual
    bracket fails the Jacobi identity (r does not satisfy the needed
    classical Yang-Baxter condition), and AlgebraError when ad_x(r) is not
    homogeneous of the declared shift.
    """
    tensor = r.tensor(g)
    tensors: dict[int, dict[tuple[int, int], Scalar]] = {}
    for x in range(g.dim):
        image = _ad_tensor(g, x, tensor)
        for (i, j), c in image.items():
            if g.degree(i) + g.degree(j) != g.degree(x) - shift:
                raise AlgebraError(
                    f"ad_{g.basis[x].name}(r) is not homogeneous for "
                    f"shift {shift}")
        if image:
            tensors[x] = image
    out = Bialgebra(algebra=g, shift=shift,
                    cobracket=gamma_from_phi(g, shift, tensors),
                    form=form, rmatrix=r)
    if check_cojacobi:
        for check in _lie_checks(out.dual_algebra()):
            if check.name == "bracket-jacobi" and not check.ok:
                raise CoJacobiError(
                    f"dual bracket fails Jacobi: {check.detail}")
    return out


def involutivity_defect(b: Bialgebra) -> list[tuple[int, SparseVec]]:
    """Bracket composed with cobracket, per generator.

    Returns the nonzero values of sum_{i,j} phi(e_k)[i, j] [e_i, e_j]; an
    empty list means bracket and cobracket compose to zero.
    """
    g = b.algebra
    out = []
    for k in range(g.dim):
        acc: SparseVec = ()
        for (i, j), c in b.phi(k).items():
            acc = vec_add(acc, g.bracket_basis(i, j), c)
        if acc:
            out.append((k, acc))
    return out


@dataclass(frozen=True)
class ManinTriple:
    """Total algebra with two halves pairing perfectly under an
    invariant form; each half must be an isotropic subalgebra."""

    total: GradedLie
    plus: tuple[int, ...]
    minus: tuple[int, ...]
    form: BilinearForm


def validate_triple(t: ManinTriple) -> ValidationReport:
    g = t.total
    results = _lie_checks(g)

    cover = sorted(t.plus + t.minus)
    results.append(CheckResult(
        "halves-partition", cover == list(range(g.dim)),
        "" if cover == list(range(g.dim)) else f"indices {cover}"))

    for name, half in (("plus", t.plus), ("minus", t.minus)):
        half_set = set(half)
        leak = []
        for i in half:
            for j in half:
                for k, c in g.bracket_basis(i, j):
                    if k not in half_set:
                        leak.append((i, j, k))
        results.append(CheckResult(
            f"{name}-closed", not leak,
            f"violations: {leak[:3]}" if leak else ""))
        iso = [(i, j) for i in half for j in half
               if t.form.evaluate(((i, ONE),), ((j, ONE),))]
        results.append(CheckResult(
            f"{name}-isotropic", not iso,
            f"violations: {iso[:3]}" if iso else ""))

    results.extend(_form_checks(g, t.form))

    if len(t.plus) != len(t.minus):
        results.append(CheckResult("halves-paired", False,
                                   "halves have different dimensions"))
    else:
        pairing = SparseMatrix.from_entries(
            len(t.minus), len(t.plus),
            [(a, b, t.form.evaluate(((m, ONE),), ((p, ONE),)))
             for a, m in enumerate(t.minus)
             for b, p in enumerate(t.plus)
             if t.form.evaluate(((m, ONE),), ((p, ONE),))])
        try:
            pairing.inverse()
            results.append(CheckResult("halves-paired", True))
        except LinalgError:
            results.append(CheckResult("halves-paired", False,
                                       "cross pairing is singular"))
    return ValidationReport(g.label, tuple(results))


def double_of_bialgebra(b: Bialgebra) -> ManinTriple:
    """Hyperbolic double: the algebra plus its shifted dual.

    Basis order is e_1 .. e_d then the duals F_1 .. F_d with
    (F_i, e_j) = delta_ij.  The mixed bracket is the one forced by
    invariance of that pairing:
        [e_j, F_i] = (-1)^(p_i (n+1)) sum_k gamma[j; i, k] e_k
                     - (-1)^((p_i + n) p_j) sum_k c[j, k -> i] F_k.
    The Koszul sign on the coadjoint term uses the parity of F_i, which
    is p_i + n, not the primal parity; the two only agree at even shift.
    """
    g = b.algebra
    n = b.shift
    d = g.dim
    keep_weights = g.has_weights
    basis = list(g.basis)
    if not keep_weights:
        basis = [BasisElement(e.name, e.degree) for e in g.basis]
    for e in g.basis:
        basis.append(BasisElement(
            e.name + "*", -n - e.degree,
            tuple(-x for x in e.weight)
            if keep_weights and e.weight is not None else None))

    entries: list[tuple[int, int, int, Scalar]] = list(g.bracket)
    for k, i, j, c in b.cobracket:
        entries.append((d + i, d + j, d + k, c))

    mixed: dict[tuple[int, int], SparseVec] = {}
    for j in range(d):
        pj = g.parity(j)
        for i in range(d):
            pi = g.parity(i)
            acc: SparseVec = ()
            sign1 = _sgn(pi * (n + 1))
            for tgt, a, bgen, c in b.cobracket:
                if tgt == j and a == i:
                    acc = vec_add(acc, ((bgen, ONE),), sign1 * c)
            sign2 = -_sgn((pi + n) * pj)
            for a, k, tgt, c in g.bracket:
                if a == j and tgt == i:
                    acc = vec_add(acc, ((d + k, ONE),), sign2 * c)
            if acc:
                mixed[(j, d + i)] = acc
    for (j, fi), value in mixed.items():
        for k, c in value:
            entries.append((j, fi, k, c))
        i = fi - d
        flip = -_sgn((n + g.parity(i)) * g.parity(j))
        for k, c in value:
            entries.append((fi, j, k, flip * c))

    form_entries: list[tuple[int, int, Scalar]] = []
    for i in range(d):
        form_entries.append((d + i, i, ONE))
        form_entries.append((i, d + i, _sgn(g.parity(i) * (n + 1))))

    total = GradedLie(f"double({g.label})", tuple(basis), tuple(entries))
    return ManinTriple(total=total,
                       plus=tuple(range(d)),
                       minus=tuple(range(d, 2 * d)),
                       form=BilinearForm(2 * d, tuple(form_entries)))


def _infer_shift(t: ManinTriple) -> int:
    g = t.total
    degs = {g.degree(i) + g.degree(j) for i, j, c in t.form.entries if c}
    if len(degs) != 1:
        raise AlgebraError(f"pairing is not homogeneous: degrees {sorted(degs)}")
    return -degs.pop()


def manin_to_bialgebra(t: ManinTriple, side: str = "plus") -> Bialgebra:
    """Read one half of a triple as a bialgebra.

    The chosen half keeps its bracket; its cobracket is the bracket of the
    opposite half written in the basis dual to the chosen one, normalized by
    (dual_i, primal_j) = delta_ij with the dual element first.  Raises
    NotClosedError if either half fails to close and
    PairingDegenerateError if the cross pairing cannot be inverted.
    """
    if side not in ("plus", "minus"):
        raise ValueError("side must be 'plus' or 'minus'")
    g = t.total
    primal = t.plus if side == "plus" else t.minus
    opposite = t.minus if side == "plus" else t.plus
    if len(primal) != len(opposite):
        raise PairingDegenerateError("halves have different dimensions")
    d = len(primal)
    shift = _infer_shift(t)

    primal_set = set(primal)
    sub_basis = tuple(g.basis[i] for i in primal)
    reindex = {orig: new for new, orig in enumerate(primal)}
    sub_bracket = []
    for i, j, k, c in g.bracket:
        if i in primal_set and j in primal_set:
            if k not in primal_set:
                raise NotClosedError(
                    f"half does not close: [{g.basis[i].name}, "
                    f"{g.basis[j].name}] leaves it")
            sub_bracket.append((reindex[i], reindex[j], reindex[k], c))
    sub = GradedLie(f"{g.label}/{side}", sub_basis, tuple(sub_bracket))

    pairing = SparseMatrix.from_entries(
        d, d,
        [(a, b, t.form.evaluate(((m, ONE),), ((p, ONE),)))
         for a, m in enumerate(opposite)
         for b, p in enumerate(primal)
         if t.form.evaluate(((m, ONE),), ((p, ONE),))])
    try:
        inv = pairing.inverse()
    except LinalgError as exc:
        raise PairingDegenerateError(str(exc)) from exc
    # duals[i] = representation of the dual of primal_i inside the
    # opposite half, as a sparse vector over total indices
    duals: list[SparseVec] = []
    for i in range(d):
        combo: SparseVec = ()
        for a in range(d):
            c = inv.get(i, a)
            if c:
                combo = vec_add(combo, ((opposite[a], ONE),), c)
        duals.append(combo)
    for i, combo in enumerate(duals):
        degs = {g.degree(idx) for idx, c in combo}
        if len(degs) != 1 or degs.pop() != -shift - sub.degree(i):
            raise AlgebraError(
                f"dual of {sub.basis[i].name} is not homogeneous of the "
                "expected degree")

    dual_matrix = SparseMatrix.from_columns(g.dim, duals)
    cobracket = []
    for i in range(d):
        for j in range(d):
            value = g.bracket_vec(duals[i], duals[j])
            if not value:
                continue
            coords = linear_solve(dual_matrix, value)
            if coords is None:
                raise NotClosedError(
                    "opposite half does not close on dual elements")
            for k, c in coords:
                cobracket.append((k, i, j, c))
    return Bialgebra(algebra=sub, shift=shift, cobracket=tuple(cobracket))


def dual_bialgebra(b: Bialgebra) -> Bialgebra:
    """The shifted dual, with bracket gamma and cobracket c."""
    return manin_to_bialgebra(double_of_bialgebra(b), side="minus")


def direct_sum(a: GradedLie, b: GradedLie) -> GradedLie:
    offset = a.dim
    basis = list(a.basis) + list(b.basis)
    bracket = list(a.bracket) + [
        (i + offset, j + offset, k + offset, c) for i, j, k, c in b.bracket]
    return GradedLie(f"{a.label}(+){b.label}", tuple(basis), tuple(bracket))


def _homogeneous_elements(g: GradedLie,
                          names: Sequence[str],
                          columns: Sequence[SparseVec]
                          ) -> tuple[BasisElement, ...]:
    elements = []
    for name, column in zip(names, columns):
        degs = {g.degree(i) for i, c in column}
        if len(degs) != 1:
            raise AlgebraError(f"basis vector {name} is not homogeneous")
        weights = {g.weight(i) for i, c in column}
        elements.append(BasisElement(
            name, degs.pop(),
            weights.pop() if len(weights) == 1 else None))
    return tuple(elements)


def rebase_lie(g: GradedLie, new_basis: Sequence[tuple[str, SparseVec]],
               label: Optional[str] = None) -> GradedLie:
    """The same Lie algebra written on a new homogeneous basis."""
    if len(new_basis) != g.dim:
        raise AlgebraError("new basis has the wrong size")
    columns = [vec(v) for _, v in new_basis]
    matrix = SparseMatrix.from_columns(g.dim, columns)
    try:
        inv = matrix.inverse()
    except LinalgError as exc:
        raise AlgebraError("new basis is not invertible") from exc
    elements = _homogeneous_elements(g, [n for n, _ in new_basis], columns)
    bracket = []
    for a in range(g.dim):
        for bb in range(g.dim):
            value = g.bracket_vec(columns[a], columns[bb])
            for k, c in inv.apply(value):
                bracket.append((a, bb, k, c))
    return GradedLie(label or g.label, elements, tuple(bracket))


def change_basis(b: Bialgebra,
                 new_basis: Sequence[tuple[str, SparseVec]]) -> Bialgebra:
    """Rewrite a bialgebra on a new homogeneous basis of the same space."""
    g = b.algebra
    columns = [vec(v) for _, v in new_basis]
    matrix = SparseMatrix.from_columns(g.dim, columns)
    try:
        inv = matrix.inverse()
    except LinalgError as exc:
        raise AlgebraError("new basis is not invertible") from exc
    new_g = rebase_lie(g, new_basis)

    tensors: dict[int, dict[tuple[int, int], Scalar]] = {}
    for a in range(g.dim):
        acc: dict[tuple[int, int], Scalar] = {}
        for i, ci in columns[a]:
            _tensor_add(acc, b.phi(i), ci)
        moved: dict[tuple[int, int], Scalar] = {}
        for (u, v), c in acc.items():
            for p, cp in inv.apply(((u, ONE),)):
                for q, cq in inv.apply(((v, ONE),)):
                    key = (p, q)
                    nc = moved.get(key, ZERO) + c * cp * cq
                    if nc:
                        moved[key] = nc
                    else:
                        moved.pop(key, None)
        if moved:
            tensors[a] = moved

    form = None
    if b.form is not None:
        ents = []
        for x in range(g.dim):
            for y in range(g.dim):
                c = b.form.evaluate(columns[x], columns[y])
                if c:
                    ents.append((x, y, c))
        form = BilinearForm(g.dim, tuple(ents))
    return Bialgebra(algebra=new_g, shift=b.shift,
                     cobracket=gamma_from_phi(new_g, b.shift, tensors),
                     form=form, rmatrix=None)


def restrict_bialgebra(b: Bialgebra,
                       sub_basis: Sequence[tuple[str, SparseVec]],
                       label: Optional[str] = None) -> Bialgebra:
    """Sub-bialgebra spanned by the given homogeneous vectors.

    Both the bracket and the cobracket must close on the span; a leak in
    either raises NotClosedError.
    """
    g = b.algebra
    columns = [vec(v) for _, v in sub_basis]
    names = [n for n, _ in sub_basis]
    k = len(columns)
    matrix = SparseMatrix.from_columns(g.dim, columns)
    span = SubspaceBasis.from_vectors(g.dim, columns)
    if span.dim != k:
        raise AlgebraError("sub-basis vectors are dependent")

    elements = []
    for name, column in zip(names, columns):
        degs = {g.degree(i) for i, c in column}
        if len(degs) != 1:
            raise AlgebraError(f"basis vector {name} is not homogeneous")
        weights = {g.weight(i) for i, c in column}
        elements.append(BasisElement(
            name, degs.pop(),
            weights.pop() if len(weights) == 1 else None))

    bracket = []
    for a in range(k):
        for bb in range(k):
            value = g.bracket_vec(columns[a], columns[bb])
            if not value:
                continue
            coords = linear_solve(matrix, value)
            if coords is None:
                raise NotClosedError(
                    f"bracket [{names[a]}, {names[bb]}] leaves the span")
            for idx, c in coords:
                bracket.append((a, bb, idx, c))
    new_g = GradedLie(label or f"{g.label}|sub", tuple(elements),
                      tuple(bracket))

    # pair columns give the flattened tensor matrix for the cobracket solve
    pair_columns = []
    for p in range(k):
        for q in range(k):
            col = []
            for u, cu in columns[p]:
                for v, cv in columns[q]:
                    col.append((u * g.dim + v, cu * cv))
            pair_columns.append(vec(col))
    pair_matrix = SparseMatrix.from_columns(g.dim * g.dim, pair_columns)

    tensors: dict[int, dict[tuple[int, int], Scalar]] = {}
    for a in range(k):
        acc: dict[tuple[int, int], Scalar] = {}
        for i, ci in columns[a]:
            _tensor_add(acc, b.phi(i), ci)
        if not acc:
            continue
        flat = vec(((u * g.dim + v, c) for (u, v), c in acc.items()))
        coords = linear_solve(pair_matrix, flat)
        if coords is None:
            raise NotClosedError(
                f"cobracket of {names[a]} leaves the span")
        moved = {}
        for idx, c in coords:
            moved[(idx // k, idx % k)] = c
        tensors[a] = moved
    return Bialgebra(algebra=new_g, shift=b.shift,
                     cobracket=gamma_from_phi(new_g, b.shift, tensors))
