"""Shared utilities for the test suite: window enumeration, random
monomials, and single-entry cobracket mutations with their detector."""

from __future__ import annotations

import random
from typing import Iterable, Sequence

from liebialg.algebra import Bialgebra, validate_structures
from liebialg.cochain import (Cochain, CochainContext, Monomial,
                              poisson_compat_defect)
from liebialg.linalg import ONE, Scalar

WINDOW_DEGREES = range(-2, 5)
WINDOW_S_MAX = 4


def window_monomials(ctx: CochainContext,
                     degrees: Iterable[int] = WINDOW_DEGREES,
                     s_max: int = WINDOW_S_MAX,
                     max_len: int | None = None) -> list[Monomial]:
    out = []
    for d in degrees:
        for s in range(s_max + 1):
            for mono in ctx.block_basis(d, s):
                if max_len is None or len(mono) <= max_len:
                    out.append(mono)
    return out


def random_monomial(rng: random.Random, ctx: CochainContext,
                    max_len: int) -> Monomial:
    dim = ctx.algebra.dim
    if dim == 0:
        return ()
    for _ in range(60):
        k = rng.randint(0, max_len)
        mono, c = ctx.normalize(tuple(sorted(
            rng.choices(range(dim), k=k))), ONE)
        if c:
            return mono
    return ()


def mono_cochain(mono: Monomial, coeff: Scalar = ONE) -> Cochain:
    return Cochain(((mono, coeff),))


def legal_gamma_slots(b: Bialgebra) -> list[tuple[int, int, int]]:
    """Slots (k, i, j) that respect the degree and weight rules, so a
    mutation there is invisible to the bookkeeping checks."""
    g = b.algebra
    out = []
    for k in range(g.dim):
        for i in range(g.dim):
            for j in range(g.dim):
                if g.degree(i) + g.degree(j) != g.degree(k) - b.shift:
                    continue
                if g.has_weights:
                    wi, wj, wk = g.weight(i), g.weight(j), g.weight(k)
                    if tuple(a + c for a, c in zip(wi, wj)) != wk:
                        continue
                out.append((k, i, j))
    return out


def mutate_cobracket(b: Bialgebra, slot: tuple[int, int, int],
                     delta: Scalar = ONE) -> Bialgebra:
    """Copy of b with one gamma entry shifted by delta."""
    entries = list(b.cobracket)
    for pos, (k, i, j, c) in enumerate(entries):
        if (k, i, j) == slot:
            nc = c + delta
            if nc:
                entries[pos] = (k, i, j, nc)
            else:
                del entries[pos]
            break
    else:
        entries.append((*slot, delta))
    return Bialgebra(algebra=b.algebra, shift=b.shift,
                     cobracket=tuple(entries), form=b.form,
                     rmatrix=b.rmatrix)


def mutation_detected(b: Bialgebra) -> bool:
    """A mutation counts as detected when structure validation fails or
    the differential stops being a derivation of the bracket on some
    generator pair."""
    if not validate_structures(b).ok:
        return True
    ctx = CochainContext.from_bialgebra(b)
    for i in range(b.dim):
        for j in range(i, b.dim):
            defect = poisson_compat_defect(
                ctx, Cochain.generator(i), Cochain.generator(j))
            if not defect.is_zero():
                return True
    return False
