"""Named desk-scale builds with their expected checks bundled in.

Each builder wires a catalog construction to the list of assertions the
family is supposed to satisfy: derived complexes of graded lines (rcom),
their parabolic quotient carrying the standard shifted structure (rcom_l1),
involution quotients with a cohomology factorization (rcom_theta), and
truncated periodic complexes whose degree zero ring has a classical
presentation (rpcom).  run_scenario executes the checks and returns the
same report shape the structural validators use, so the command line can
render either uniformly.

A check is a (name, params) pair; the name is always a function defined in
this module, and params stay JSON friendly so reports can quote them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Any, Callable, Sequence

from .algebra import (Bialgebra, CheckResult, GradedLie, ValidationReport,
                      involutivity_defect, restrict_bialgebra,
                      validate_structures as _validate_structures)
from .catalog import (end_graded, frobenius_loop, levi_l, matrix_algebra,
                      nilradical_n, parabolic_q, scalar_algebra,
                      standard_structure)
from .catalog import theta_bialgebra as _theta_bialgebra
from .cochain import (Cochain, CochainContext, Monomial, ce_differential,
                      cohomology, cohomology_bracket, format_cochain,
                      format_monomial, kernel_complex_check, laplacian,
                      parse_generator_word, poisson_bracket,
                      poisson_compat_defect, weight_cohomology)
from .linalg import ONE, ZERO, Scalar, SparseMatrix, rank_kernel


class ScenarioError(Exception):
    """Scenario construction or execution failed structurally."""


class TruncationError(ScenarioError):
    """The truncation window is too small for the requested reading."""


Dims = tuple[tuple[int, int], ...]


def normalize_dims(dims: Sequence[tuple[int, int]]) -> Dims:
    out = tuple(sorted((int(d), int(c)) for d, c in dims))
    if not out or any(c < 1 for _, c in out):
        raise ValueError("dims must list (degree, dimension) with dim >= 1")
    if len({d for d, _ in out}) != len(out):
        raise ValueError("dims repeats a degree")
    return out


def dims_label(dims: Sequence[tuple[int, int]]) -> str:
    return ",".join(f"{d}:{c}" for d, c in normalize_dims(dims))


def _alpha(dims: Dims) -> tuple[int, ...]:
    alpha: list[int] = []
    for d, c in dims:
        alpha.extend([d] * c)
    return tuple(alpha)


@dataclass(frozen=True)
class Scenario:
    label: str
    bialgebra: Bialgebra
    expected_checks: tuple[tuple[str, dict[str, Any]], ...]


# -- scenario builders -------------------------------------------------------


def rcom(dims: Sequence[tuple[int, int]]) -> Scenario:
    """Derived complex on graded lines: the positive part with no
    cobracket.  Degree zero cohomology is the coordinate ring of the
    ordinary variety of complexes; the catalog sizes carry hand computed
    Hilbert rows."""
    dims = normalize_dims(dims)
    endv = end_graded(dims)
    label = f"rcom({dims_label(dims)})"
    sub = nilradical_n(endv)
    ambient = Bialgebra(endv.algebra, 0, ())
    if sub:
        b = restrict_bialgebra(ambient, sub, label=label)
    else:
        b = Bialgebra(GradedLie(label, (), ()), 0, ())
    checks: list[tuple[str, dict[str, Any]]] = [("structure_valid", {})]
    oracle = _RCOM_H0.get(dims)
    if oracle is not None:
        checks.append(("h0_hilbert", {"s_max": len(oracle) - 1,
                                      "expect": list(oracle)}))
        checks.append(("degree_vanishes", {"degree": -1, "s_max": 6}))
    return Scenario(label, b, tuple(checks))


# H0 Hilbert rows by total polynomial degree, from the classical rings:
# one map of lines -> k[x]; two incomposable maps -> k[x1, x2]; a length
# two complex of lines -> k[x, y]/(xy).
_RCOM_H0: dict[Dims, tuple[int, ...]] = {
    ((0, 1), (1, 1)): (1, 1, 1, 1, 1, 1, 1),
    ((0, 2), (1, 1)): (1, 2, 3, 4, 5, 6, 7),
    ((0, 1), (1, 1), (2, 1)): (1, 2, 2, 2, 2, 2, 2),
}


def rcom_quotient_l1(dims: Sequence[tuple[int, int]]) -> Scenario:
    """Standard structure on the supertrace free parabolic of the graded
    endomorphisms; the smallest size is the Borel of sl(1,1) with its flat
    cohomology ring and nonzero cohomology bracket."""
    dims = normalize_dims(dims)
    alpha = _alpha(dims)
    label = f"rcom-l1({dims_label(dims)})"
    rename = {"h1": "t", "e12": "x"} if alpha == (0, 1) else None
    b = standard_structure(alpha, "q1", rename=rename, label=label).bialgebra
    checks: list[tuple[str, dict[str, Any]]] = [
        ("structure_valid", {}),
        ("compatibility", {"degrees": [-1, 0, 1, 2], "s_max": 3,
                           "max_len": 2, "max_pairs": 120}),
    ]
    if alpha == (0, 1):
        checks += [
            ("lambda_betti", {"degrees": [0, 1], "s_max": 6,
                              "block_betti": 1, "max_lambda": 6,
                              "reps": ["1", "t", "x", "t*x", "x^2",
                                       "t*x^2", "x^3"]}),
            ("bracket_values", {"pairs": [["t", "x", "x"],
                                          ["x", "x", "0"],
                                          ["t", "t", "0"]]}),
            ("involutive", {"degrees": [-2, -1, 0, 1, 2, 3, 4],
                            "s_max": 4}),
        ]
    elif alpha == (0, 1, 2):
        checks += [
            ("dimension_is", {"expect": 5}),
            ("delta_nonzero", {}),
            ("ker_delta", {"degrees": [0, 1, 2, 3],
                           "s_values": [0, 1, 2, 3, 4]}),
        ]
    else:
        checks.append(("ker_delta", {"degrees": [0, 1, 2],
                                     "s_values": [0, 1, 2]}))
    return Scenario(label, b, tuple(checks))


def rcom_quotient_theta(n: int, theta: Sequence[int]) -> Scenario:
    """Involution quotient: 2n lines in consecutive degrees, torus halved
    by the pairing theta.  The cohomology factors as the exterior algebra
    on the kept torus times the torus invariants of the positive part; the
    check computes both sides through unrelated pipelines."""
    theta = tuple(int(t) for t in theta)
    b = _theta_bialgebra(n, theta)
    label = f"rcom-theta({n};{','.join(str(t) for t in theta)})"
    checks: list[tuple[str, dict[str, Any]]] = [
        ("structure_valid", {}),
        ("compatibility", {"degrees": [-1, 0, 1, 2], "s_max": 3,
                           "max_len": 2, "max_pairs": 120}),
        ("factorization", {"max_degree": 3, "s_max": 4}),
        ("ker_delta", {"degrees": [0, 1, 2, 3],
                       "s_values": [0, 1, 2, 3, 4]}),
    ]
    return Scenario(label, b, tuple(checks))


def rpcom(dim_w: int, trunc: int) -> Scenario:
    """Periodic complexes of a free module, loop directions truncated past
    trunc.  The shift is -1, so the induced bracket on cochains is
    unshifted and closes on the degree zero classes."""
    if dim_w < 1:
        raise ValueError("dim_w must be at least 1")
    if trunc < 2:
        raise ValueError("trunc must be at least 2; below that the "
                         "degree 0 relations are not visible")
    assoc = scalar_algebra() if dim_w == 1 else matrix_algebra(dim_w)
    b = frobenius_loop(assoc, trunc)
    label = f"rpcom({dim_w};{trunc})"
    checks: list[tuple[str, dict[str, Any]]] = []
    if dim_w == 1:
        checks.append(("h0_hilbert",
                       {"s_max": 4, "expect": [1, 1, 0, 0, 0]}))
        checks.append(("h0_relations", {"expect": ["x^2"]}))
    if (dim_w, trunc) == (2, 2):
        checks.append(("h0_relation_count", {"expect": 4}))
        checks.append(("h0_relations", {
            "expect": ["x11^2 + x12*x21",
                       "x11*x12 + x12*x22",
                       "x11*x21 + x21*x22",
                       "x12*x21 + x22^2"]}))
    checks.append(("kirillov_kostant", {"dim": dim_w}))
    if b.cobracket == ():
        checks.append(("poisson_trivial", {}))
    return Scenario(label, b, tuple(checks))


SCENARIO_CATALOG_VERSION = 1


def scenario_catalog() -> dict[str, Callable[[], Scenario]]:
    """The fixed tuples acceptance runs use; keys are stable names."""
    return {
        "rcom-0:1,1:1": lambda: rcom([(0, 1), (1, 1)]),
        "rcom-0:1,1:1,2:1": lambda: rcom([(0, 1), (1, 1), (2, 1)]),
        "rcom-0:2,1:1": lambda: rcom([(0, 2), (1, 1)]),
        "rcom-l1-0:1,1:1": lambda: rcom_quotient_l1([(0, 1), (1, 1)]),
        "rcom-l1-0:1,1:1,2:1":
            lambda: rcom_quotient_l1([(0, 1), (1, 1), (2, 1)]),
        "rcom-theta-1": lambda: rcom_quotient_theta(1, (1,)),
        "rcom-theta-2-id": lambda: rcom_quotient_theta(2, (1, 2)),
        "rcom-theta-2-swap": lambda: rcom_quotient_theta(2, (2, 1)),
        "rpcom-1-2": lambda: rpcom(1, 2),
        "rpcom-1-3": lambda: rpcom(1, 3),
        "rpcom-2-2": lambda: rpcom(2, 2),
    }


# -- degree zero presentation ------------------------------------------------


@dataclass(frozen=True)
class H0Presentation:
    """Generators, monic quadratic relations and the generator bracket
    table of the degree zero cohomology ring."""

    generators: tuple[str, ...]
    relations: tuple[str, ...]
    bracket_table: dict[tuple[str, str], tuple[tuple[str, Scalar], ...]]


def _h0_generator_name(name: str) -> str:
    if not name.endswith("t1"):
        return name
    stem = name[:-2]
    if not stem:
        return "x"
    if stem.startswith("E"):
        return "x" + stem[1:]
    return "x_" + stem


def h0_presentation(scn: Scenario) -> H0Presentation:
    """Read off the classical presentation of H^0 from the cochain level.

    Generators are the degree 0 dual generators; relations are the monic
    normalized differentials of the degree -1 generators (they are forced
    to be quadratic in the generators); the table holds the induced
    bracket of generator pairs.  Raises TruncationError when no degree -1
    generators exist, since then the relations sit past the window.
    """
    b = scn.bialgebra
    ctx = CochainContext.from_bialgebra(b)
    gens = [i for i in range(b.dim) if ctx.gen_degree[i] == 0]
    if not gens:
        raise ScenarioError(f"{scn.label}: no degree 0 generators")
    rel_sources = [i for i in range(b.dim) if ctx.gen_degree[i] == -1]
    if not rel_sources:
        raise TruncationError(
            f"{scn.label}: no degree -1 generators, relations are past "
            "the truncation window")
    names = {i: _h0_generator_name(ctx.gen_name(i)) for i in gens}

    relations = []
    for r in rel_sources:
        image = ce_differential(ctx, Cochain.generator(r))
        for mono, _ in image.terms:
            if len(mono) != 2 or any(i not in names for i in mono):
                raise ScenarioError(
                    f"{scn.label}: relation from {ctx.gen_name(r)} is not "
                    "quadratic in the degree 0 generators")
        if image.is_zero():
            continue
        lead = image.terms[0][1]
        relations.append(format_cochain(ctx, image.scale(ONE / lead),
                                        names))

    table: dict[tuple[str, str], tuple[tuple[str, Scalar], ...]] = {}
    for a in gens:
        for c in gens:
            w = poisson_bracket(ctx, Cochain.generator(a),
                                Cochain.generator(c))
            for mono, _ in w.terms:
                if len(mono) != 1 or mono[0] not in names:
                    raise ScenarioError(
                        f"{scn.label}: bracket of degree 0 generators "
                        "leaves their span")
            table[(names[a], names[c])] = tuple(
                (names[mono[0]], coeff) for mono, coeff in w.terms)
    return H0Presentation(
        generators=tuple(names[i] for i in gens),
        relations=tuple(sorted(relations)),
        bracket_table=table)


def kirillov_kostant_table(dim_w: int
                           ) -> dict[tuple[str, str],
                                     tuple[tuple[str, Scalar], ...]]:
    """Linear Poisson table on matrix coordinates, computed straight from
    commutators of elementary matrices: {x_pq, x_kl} maps to the
    coordinates of [E_pq, E_kl]."""
    assoc = scalar_algebra() if dim_w == 1 else matrix_algebra(dim_w)

    def coord(i: int) -> str:
        stem = assoc.names[i] if dim_w > 1 else ""
        return _h0_generator_name(stem + "t1")

    out: dict[tuple[str, str], tuple[tuple[str, Scalar], ...]] = {}
    for a in range(assoc.dim):
        for c in range(assoc.dim):
            u, v = ((a, ONE),), ((c, ONE),)
            value: dict[int, Scalar] = dict(assoc.multiply(u, v))
            for k, coeff in assoc.multiply(v, u):
                value[k] = value.get(k, ZERO) - coeff
            out[(coord(a), coord(c))] = tuple(
                (coord(k), coeff) for k, coeff in sorted(value.items())
                if coeff)
    return out


# -- Hochschild-Serre degeneration -------------------------------------------


def hochschild_serre_check(dims: Sequence[tuple[int, int]],
                           degrees: Sequence[int],
                           s_max: int = 4) -> bool:
    """Degeneration against the Levi: on each listed degree the weight
    zero cohomology of the parabolic matches the Levi cohomology, and
    every nonzero weight sector visible with s <= s_max is exact."""
    dims = normalize_dims(dims)
    endv = end_graded(dims)
    ambient = Bialgebra(endv.algebra, 0, ())
    q = restrict_bialgebra(ambient, parabolic_q(endv), label="q").algebra
    lev = restrict_bialgebra(ambient, levi_l(endv), label="l").algebra
    ctx_q = CochainContext.from_algebra(q)
    ctx_l = CochainContext.from_algebra(lev)
    rank = len(_alpha(dims))
    zero = (0,) * rank

    for d in degrees:
        # the Levi is all in degree 0, so its cochains live at s = 0
        if cohomology(ctx_l, d, 0).dim != weight_cohomology(ctx_q, d,
                                                            zero).dim:
            return False

    seen: set[tuple[int, tuple[int, ...]]] = set()
    for d in degrees:
        for s in range(s_max + 1):
            for mono in ctx_q.block_basis(d, s):
                w = ctx_q.monomial_weight(mono)
                if w is None:
                    raise ScenarioError("parabolic basis lost its weights")
                if w != zero and (d, w) not in seen:
                    seen.add((d, w))
    for d, w in sorted(seen):
        if weight_cohomology(ctx_q, d, w).dim != 0:
            return False
    return True


# -- named checks ------------------------------------------------------------


def structure_valid(scn: Scenario, ctx: CochainContext,
                    params: dict[str, Any]) -> CheckResult:
    rep = _validate_structures(scn.bialgebra)
    detail = "; ".join(f"{r.name}: {r.detail}" for r in rep.failures()) \
        or "all structural identities hold"
    return CheckResult("structure_valid", rep.ok, detail)


def dimension_is(scn: Scenario, ctx: CochainContext,
                 params: dict[str, Any]) -> CheckResult:
    expect = params["expect"]
    got = scn.bialgebra.dim
    return CheckResult("dimension_is", got == expect,
                       f"dim = {got}, expected {expect}")


def betti_blocks(scn: Scenario, ctx: CochainContext,
                 params: dict[str, Any]) -> CheckResult:
    bad = []
    for d, s, expect in params["rows"]:
        got = cohomology(ctx, d, s).dim
        if got != expect:
            bad.append(f"({d},{s}): {got} != {expect}")
    return CheckResult("betti_blocks", not bad,
                       "; ".join(bad) or
                       f"{len(params['rows'])} blocks as expected")


def h0_hilbert(scn: Scenario, ctx: CochainContext,
               params: dict[str, Any]) -> CheckResult:
    expect = params["expect"]
    got = [cohomology(ctx, 0, s).dim for s in range(params["s_max"] + 1)]
    ok = got == list(expect)
    return CheckResult("h0_hilbert", ok,
                       f"H^0 Hilbert row {got}" +
                       ("" if ok else f", expected {list(expect)}"))


def degree_vanishes(scn: Scenario, ctx: CochainContext,
                    params: dict[str, Any]) -> CheckResult:
    d = params["degree"]
    bad = [s for s in range(params["s_max"] + 1)
           if cohomology(ctx, d, s).dim]
    return CheckResult("degree_vanishes", not bad,
                       f"H^{d} = 0 for s <= {params['s_max']}" if not bad
                       else f"H^{d} nonzero at s in {bad}")


def lambda_betti(scn: Scenario, ctx: CochainContext,
                 params: dict[str, Any]) -> CheckResult:
    flat = params["block_betti"]
    bad: list[str] = []
    reps: dict[int, str] = {}
    for d in params["degrees"]:
        for s in range(params["s_max"] + 1):
            block = cohomology(ctx, d, s)
            if block.dim != flat:
                bad.append(f"({d},{s}): betti {block.dim} != {flat}")
                continue
            lam = d + 2 * s
            if lam <= params["max_lambda"] and block.dim == 1:
                rep = block.representatives[0]
                lead = rep.terms[0][1]
                reps[lam] = format_cochain(ctx, rep.scale(ONE / lead))
    want = {lam: text for lam, text in enumerate(params["reps"])}
    for lam, text in want.items():
        if reps.get(lam) != text:
            bad.append(f"lambda {lam}: rep {reps.get(lam)!r} != {text!r}")
    return CheckResult("lambda_betti", not bad,
                       "; ".join(bad) or
                       f"flat betti {flat}, representatives "
                       + ", ".join(want[k] for k in sorted(want)))


def bracket_values(scn: Scenario, ctx: CochainContext,
                   params: dict[str, Any]) -> CheckResult:
    bad = []
    for utext, vtext, expect_text in params["pairs"]:
        u = parse_generator_word(ctx, utext)
        v = parse_generator_word(ctx, vtext)
        expect = Cochain.zero() if expect_text == "0" else \
            parse_generator_word(ctx, expect_text)
        got = cohomology_bracket(ctx, u, v)
        if got != expect:
            bad.append(f"<[{utext}],[{vtext}]> = "
                       f"{format_cochain(ctx, got)} != {expect_text}")
    return CheckResult("bracket_values", not bad,
                       "; ".join(bad) or
                       f"{len(params['pairs'])} bracket values as expected")


def involutive(scn: Scenario, ctx: CochainContext,
               params: dict[str, Any]) -> CheckResult:
    defects = involutivity_defect(scn.bialgebra)
    if defects:
        k = defects[0][0]
        return CheckResult("involutive", False,
                           "bracket o cobracket nonzero on "
                           + ctx.gen_name(k))
    for d in params["degrees"]:
        for s in range(params["s_max"] + 1):
            for mono in ctx.block_basis(d, s):
                if not laplacian(ctx, Cochain(((mono, ONE),))).is_zero():
                    return CheckResult(
                        "involutive", False,
                        f"delta nonzero on {format_monomial(ctx, mono)}")
    return CheckResult("involutive", True,
                       "involutive and delta = 0 on the window")


def delta_nonzero(scn: Scenario, ctx: CochainContext,
                  params: dict[str, Any]) -> CheckResult:
    degrees = params.get("degrees", range(-2, 5))
    s_max = params.get("s_max", 4)
    for d in degrees:
        for s in range(s_max + 1):
            for mono in ctx.block_basis(d, s):
                value = laplacian(ctx, Cochain(((mono, ONE),)))
                if not value.is_zero():
                    return CheckResult(
                        "delta_nonzero", True,
                        "delta nonzero on "
                        + format_monomial(ctx, mono))
    return CheckResult("delta_nonzero", False,
                       "delta vanishes on the whole window")


def ker_delta(scn: Scenario, ctx: CochainContext,
              params: dict[str, Any]) -> CheckResult:
    bad = []
    for s in params["s_values"]:
        for d, full, kernel in kernel_complex_check(ctx, params["degrees"],
                                                    s):
            if full != kernel:
                bad.append(f"({d},{s}): full {full} != ker {kernel}")
    return CheckResult("ker_delta", not bad,
                       "; ".join(bad) or
                       "ker(delta) complex matches the full cohomology")


def compatibility(scn: Scenario, ctx: CochainContext,
                  params: dict[str, Any]) -> CheckResult:
    monos: list[Monomial] = []
    for d in params["degrees"]:
        for s in range(params["s_max"] + 1):
            monos.extend(m for m in ctx.block_basis(d, s)
                         if 0 < len(m) <= params["max_len"])
    count = 0
    for mu, mv in itertools.islice(itertools.product(monos, monos),
                                   params["max_pairs"]):
        u, v = Cochain(((mu, ONE),)), Cochain(((mv, ONE),))
        if not poisson_compat_defect(ctx, u, v).is_zero():
            return CheckResult(
                "compatibility", False,
                f"defect on ({format_monomial(ctx, mu)}, "
                f"{format_monomial(ctx, mv)})")
        count += 1
    return CheckResult("compatibility", True,
                       f"derivation identity on {count} monomial pairs")


def factorization(scn: Scenario, ctx: CochainContext,
                  params: dict[str, Any]) -> CheckResult:
    b = scn.bialgebra
    g = b.algebra
    torus = [i for i in range(g.dim) if g.degree(i) == 0]
    positive = [i for i in range(g.dim) if g.degree(i) > 0]
    if len(torus) + len(positive) != g.dim:
        raise ScenarioError("factorization needs a nonnegative grading")
    for h, hp in itertools.product(torus, torus):
        if g.bracket_basis(h, hp):
            raise ScenarioError("degree 0 part is not abelian")

    # eigenvalue of each torus direction on each positive generator
    hweight: dict[int, tuple[int, ...]] = {}
    for u in positive:
        row = []
        for h in torus:
            value = g.bracket_basis(h, u)
            if value and (len(value) != 1 or value[0][0] != u):
                raise ScenarioError("torus action is not diagonal")
            row.append(int(value[0][1]) if value else 0)
        hweight[u] = tuple(row)

    sub = restrict_bialgebra(Bialgebra(g, 0, ()),
                             [(g.basis[i].name, ((i, ONE),))
                              for i in positive], label=f"{g.label}|n+")
    ctx_n = CochainContext.from_algebra(sub.algebra)
    local = {i: rank for rank, i in enumerate(positive)}
    zero = (0,) * len(torus)

    def mono_weight(mono: Monomial) -> tuple[int, ...]:
        total = list(zero)
        for letter in mono:
            w = hweight[positive[letter]]
            total = [a + x for a, x in zip(total, w)]
        return tuple(total)

    def invariant_basis(d: int, s: int) -> list[Monomial]:
        return [m for m in ctx_n.block_basis(d, s)
                if mono_weight(m) == zero]

    def invariant_betti(d: int, s: int) -> int:
        bases = {dd: invariant_basis(dd, s) for dd in (d - 1, d, d + 1)}

        def matrix(src: int) -> SparseMatrix:
            index = {m: i for i, m in enumerate(bases[src + 1])}
            items = []
            for j, mono in enumerate(bases[src]):
                image = ce_differential(ctx_n, Cochain(((mono, ONE),)))
                for m, c in image.terms:
                    if m not in index:
                        raise ScenarioError(
                            "differential leaves the invariant block")
                    items.append((index[m], j, c))
            return SparseMatrix.from_entries(
                len(bases[src + 1]), len(bases[src]), items)

        rank_in, _ = rank_kernel(matrix(d - 1))
        _, kernel = rank_kernel(matrix(d))
        return kernel.dim - rank_in

    nh = len(torus)
    bad = []
    for d in range(params["max_degree"] + 1):
        for s in range(params["s_max"] + 1):
            actual = cohomology(ctx, d, s).dim
            predicted = sum(comb(nh, k) * invariant_betti(d - k, s)
                            for k in range(nh + 1))
            if actual != predicted:
                bad.append(f"({d},{s}): full {actual} != "
                           f"exterior x invariants {predicted}")
    return CheckResult("factorization", not bad,
                       "; ".join(bad) or
                       "cohomology factors through the torus invariants "
                       f"on deg <= {params['max_degree']}")


def _table_equal(a: dict[tuple[str, str], tuple[tuple[str, Scalar], ...]],
                 b: dict[tuple[str, str], tuple[tuple[str, Scalar], ...]],
                 flip: bool) -> bool:
    keys = set(a) | set(b)
    for key in keys:
        left = dict(a.get(key, ()))
        right = {name: (-c if flip else c) for name, c in b.get(key, ())}
        left = {k: v for k, v in left.items() if v}
        right = {k: v for k, v in right.items() if v}
        if left != right:
            return False
    return True


def kirillov_kostant(scn: Scenario, ctx: CochainContext,
                     params: dict[str, Any]) -> CheckResult:
    pres = h0_presentation(scn)
    oracle = kirillov_kostant_table(params["dim"])
    if _table_equal(pres.bracket_table, oracle, flip=False):
        return CheckResult("kirillov_kostant", True,
                           f"{len(oracle)} entries match the classical "
                           "table")
    if _table_equal(pres.bracket_table, oracle, flip=True):
        return CheckResult("kirillov_kostant", True,
                           f"{len(oracle)} entries match the classical "
                           "table after one global sign")
    return CheckResult("kirillov_kostant", False,
                       "bracket table differs from the classical one "
                       "beyond a single global sign")


def h0_relation_count(scn: Scenario, ctx: CochainContext,
                      params: dict[str, Any]) -> CheckResult:
    pres = h0_presentation(scn)
    got = len(pres.relations)
    return CheckResult("h0_relation_count", got == params["expect"],
                       f"{got} relations, expected {params['expect']}")


def h0_relations(scn: Scenario, ctx: CochainContext,
                 params: dict[str, Any]) -> CheckResult:
    pres = h0_presentation(scn)
    expect = tuple(sorted(params["expect"]))
    ok = pres.relations == expect
    return CheckResult("h0_relations", ok,
                       "relations " + "; ".join(pres.relations) +
                       ("" if ok else " != expected "
                        + "; ".join(expect)))


def poisson_trivial(scn: Scenario, ctx: CochainContext,
                    params: dict[str, Any]) -> CheckResult:
    dim = scn.bialgebra.dim
    for i in range(dim):
        for j in range(dim):
            w = poisson_bracket(ctx, Cochain.generator(i),
                                Cochain.generator(j))
            if not w.is_zero():
                return CheckResult(
                    "poisson_trivial", False,
                    f"<{ctx.gen_name(i)}, {ctx.gen_name(j)}> != 0")
    return CheckResult("poisson_trivial", True,
                       "bracket vanishes on all generator pairs")


CHECKS: dict[str, Callable[[Scenario, CochainContext, dict[str, Any]],
                           CheckResult]] = {
    fn.__name__: fn for fn in (
        structure_valid, dimension_is, betti_blocks, h0_hilbert,
        degree_vanishes, lambda_betti, bracket_values, involutive,
        delta_nonzero, ker_delta, compatibility, factorization,
        kirillov_kostant, h0_relation_count, h0_relations,
        poisson_trivial)
}


def run_scenario(scn: Scenario) -> ValidationReport:
    ctx = CochainContext.from_bialgebra(scn.bialgebra)
    results = []
    for name, params in scn.expected_checks:
        fn = CHECKS.get(name)
        if fn is None:
            raise ScenarioError(f"unknown check {name!r}")
        results.append(fn(scn, ctx, params))
    return ValidationReport(scn.label, tuple(results))
