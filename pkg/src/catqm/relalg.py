"""Convolution monoid, relation order, the support quotient, relational
composition, cartesian-bicategory checks and exhaustive enumeration of
the Boolean structures on small carriers.

The convolution f * g conjugates its left argument, so the monoid laws
are exact matrix identities on the nonnegative cone where the relation
calculus lives; complex arguments pick up a conjugation.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations_with_replacement, product

import numpy as np

from .core import (
    BOOLEAN,
    DEFAULT_TOL,
    Mor,
    Obj,
    Semiring,
    UNIT,
    approx_eq,
    compose,
    dagger,
    identity,
    max_deviation,
    tensor,
)
from .errors import BudgetExceeded, DimMismatch, NotARelation, NotClassical
from .structures import (
    AxiomCheck,
    AxiomReport,
    ClassicalStructure,
    GroupBlock,
    cached_bell,
    cached_product,
    cached_trivial,
    conjugate_of,
    frel_structure_from_groups,
    verify_classical,
)


@dataclass(frozen=True, eq=False)
class ConvolutionContext:
    """A hom-set C(X, Y) together with the structures defining * and the order."""

    csX: ClassicalStructure
    csY: ClassicalStructure

    @cached_property
    def bellX(self):
        return cached_bell(self.csX)

    @cached_property
    def bellY(self):
        return cached_bell(self.csY)


def convolve(f: Mor, g: Mor, ctx: ConvolutionContext) -> Mor:
    """f * g = nabla_Y o (conj(f) (x) g) o delta_X."""
    if f.dom != ctx.csX.X or f.cod != ctx.csY.X:
        raise DimMismatch("f must be typed X -> Y")
    if g.dom != ctx.csX.X or g.cod != ctx.csY.X:
        raise DimMismatch("g must be typed X -> Y")
    f_star = conjugate_of(f, ctx.bellX, ctx.bellY)
    return compose(ctx.csY.nabla, compose(tensor(f_star, g), ctx.csX.delta))


def convolution_unit(ctx: ConvolutionContext) -> Mor:
    """bot_Y o top_X, the two-sided unit on the nonnegative cone."""
    return compose(ctx.csY.bot, ctx.csX.top)


def _require_relation(r: Mor, ctx: ConvolutionContext, tol: float):
    from .classify import relation_flags

    if not relation_flags(r, ctx.csX, ctx.csY, tol).is_relation:
        raise NotARelation("operand is not idempotent for the convolution")


def meet(r: Mor, s: Mor, ctx: ConvolutionContext, tol: float = DEFAULT_TOL) -> Mor:
    """Intersection of relations: their convolution."""
    _require_relation(r, ctx, tol)
    _require_relation(s, ctx, tol)
    return convolve(r, s, ctx)


def leq(r: Mor, s: Mor, ctx: ConvolutionContext, tol: float = DEFAULT_TOL) -> bool:
    """r <= s iff r equals r meet s (relative to the context's structures)."""
    return approx_eq(r, meet(r, s, ctx, tol), tol)


def support_quotient(f: Mor, ctx: ConvolutionContext, tol: float = DEFAULT_TOL) -> Mor:
    """Entry support of a classical morphism: 0 stays 0, positive goes to 1."""
    from .classify import is_classical_map

    if not is_classical_map(f, ctx.csX, ctx.csY, tol):
        raise NotClassical("support quotient is defined on classical morphisms")
    if f.semiring is BOOLEAN:
        return f
    support = (np.abs(f.array) > tol).astype(float)
    return Mor(f.dom, f.cod, f.semiring.asarray(support), f.semiring)


def rel_compose(
    r: Mor,
    s: Mor,
    csX: ClassicalStructure,
    csY: ClassicalStructure,
    csZ: ClassicalStructure,
    tol: float = DEFAULT_TOL,
) -> Mor:
    """Relational composition: plain composition followed by the support quotient."""
    _require_relation(s, ConvolutionContext(csX, csY), tol)
    _require_relation(r, ConvolutionContext(csY, csZ), tol)
    return support_quotient(compose(r, s), ConvolutionContext(csX, csZ), tol)


def inner_product_conv(x: Mor, y: Mor, cs: ClassicalStructure) -> Mor:
    """<x|y> recovered from the convolution: top o (x * y)."""
    if x.dom != UNIT or y.dom != UNIT:
        raise DimMismatch("states must have domain I")
    ctx = ConvolutionContext(cached_trivial(cs.semiring), cs)
    return compose(cs.top, convolve(x, y, ctx))


def check_cartesian_bicategory(
    cs: ClassicalStructure, sample_relations=(), tol: float = DEFAULT_TOL
) -> AxiomReport:
    """Unfolded adjunction equalities for copy/delete plus lax laws on samples.

    Verifies, as matrix identities, that delta and top are left adjoint
    to their daggers for the convolution order, and that every sampled
    relation is a lax comonoid homomorphism.
    """
    from .classify import relation_flags

    sr = cs.semiring
    X = cs.X
    id_x = identity(X, sr)
    prod = cached_product(cs, cs)
    triv = cached_trivial(sr)
    ctx_xx = ConvolutionContext(cs, cs)
    ctx_pair = ConvolutionContext(prod, prod)
    ctx_unit = ConvolutionContext(triv, triv)

    def eq_check(a: Mor, b: Mor, ctx: ConvolutionContext) -> AxiomCheck:
        dev = max_deviation(a, convolve(a, b, ctx))
        ok = dev == 0.0 if sr is BOOLEAN else dev <= tol
        return AxiomCheck(ok, dev)

    checks = {
        # id_X <= nabla o delta
        "copy_adjunction_unit": eq_check(id_x, compose(cs.nabla, cs.delta), ctx_xx),
        # delta o nabla <= id_XX
        "copy_adjunction_counit": eq_check(
            compose(cs.delta, cs.nabla), identity(X @ X, sr), ctx_pair
        ),
        # id_X <= bot o top
        "delete_adjunction_unit": eq_check(id_x, compose(cs.bot, cs.top), ctx_xx),
        # top o bot <= id_I
        "delete_adjunction_counit": eq_check(
            compose(cs.top, cs.bot), identity(UNIT, sr), ctx_unit
        ),
    }
    lax_ok = True
    for i, r in enumerate(sample_relations):
        flags = relation_flags(r, cs, cs, tol)
        lax_ok = lax_ok and flags.is_lax_comonoid_hom
    checks["lax_samples"] = AxiomCheck(lax_ok, 0.0 if lax_ok else 1.0)
    return AxiomReport(checks)


# ---------------------------------------------------------------------------
# Exhaustive enumeration of Boolean structures
# ---------------------------------------------------------------------------


def _subsets(universe):
    out = [()]
    for x in universe:
        out += [s + (x,) for s in out]
    return out


def enumerate_frel_structures(n: int, tol: float = DEFAULT_TOL) -> list[ClassicalStructure]:
    """All Boolean (delta, top) pairs on n points passing every axiom.

    Search is by unit set, then by the multiplication relation, pruned by
    the unit law and commutativity before the full axiom check.  Results
    are deduplicated exactly and returned in a deterministic order.
    """
    if n < 1:
        raise BudgetExceeded("carrier must have at least one point")
    if n > 3:
        raise BudgetExceeded("exhaustive search is budgeted for n <= 3")
    X = Obj((n,))
    elements = list(range(n))
    all_sets = _subsets(elements)
    found = {}
    for units in _subsets(elements):
        if not units:
            continue
        unit_set = set(units)
        rest = [x for x in elements if x not in unit_set]
        # unordered pairs of non-units get a free product set each
        free_pairs = list(combinations_with_replacement(rest, 2))
        # for y outside the units, the products e*y (e a unit) are subsets
        # of {y} whose union must be {y}
        cross_options = [s for s in _subsets(units)if s]
        for cross_choice in product(cross_options, repeat=len(rest)):
            for free_choice in product(all_sets, repeat=len(free_pairs)):
                nabla = np.zeros((n, n * n), dtype=np.int64)
                for e in units:
                    nabla[e, e * n + e] = 1
                for y, hits in zip(rest, cross_choice):
                    for e in hits:
                        nabla[y, e * n + y] = 1
                        nabla[y, y * n + e] = 1
                for (x, y), prods in zip(free_pairs, free_choice):
                    for z in prods:
                        nabla[z, x * n + y] = 1
                        nabla[z, y * n + x] = 1
                bot = np.zeros((1, n), dtype=np.int64)
                bot[0, list(units)] = 1
                cs = ClassicalStructure(
                    X,
                    Mor(X, X @ X, nabla.T, BOOLEAN),
                    Mor(X, UNIT, bot, BOOLEAN),
                )
                if verify_classical(cs, tol).all_pass:
                    key = (cs.top.array.tobytes(), cs.delta.array.tobytes())
                    found.setdefault(key, cs)
    return [found[k] for k in sorted(found)]


def _set_partitions(items: tuple[int, ...]):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [(first,) + part[i]] + part[i + 1 :]
        yield [(first,)] + part


def _abelian_tables(k: int) -> list[tuple[tuple[tuple[int, ...], ...], int]]:
    """All abelian group tables on k elements, with their unit index."""
    tables = []
    for flat in product(range(k), repeat=k * k):
        t = tuple(tuple(flat[i * k : (i + 1) * k]) for i in range(k))
        units = [e for e in range(k) if all(t[e][j] == j and t[j][e] == j for j in range(k))]
        if len(units) != 1:
            continue
        e = units[0]
        ok = all(
            t[t[i][j]][l] == t[i][t[j][l]]
            for i in range(k)
            for j in range(k)
            for l in range(k)
        )
        if not ok:
            continue
        if any(all(t[i][j] != e for j in range(k)) for i in range(k)):
            continue
        if any(t[i][j] != t[j][i] for i in range(k) for j in range(k)):
            continue
        tables.append((t, e))
    return tables


def frel_structures_from_all_groups(n: int) -> list[ClassicalStructure]:
    """Independent generator: every partition of n points with abelian groups."""
    out = {}
    for part in _set_partitions(tuple(range(n))):
        per_block = []
        for block in part:
            per_block.append(
                [GroupBlock(block, t, e) for (t, e) in _abelian_tables(len(block))]
            )
        for choice in product(*per_block):
            cs = frel_structure_from_groups(list(choice))
            key = (cs.top.array.tobytes(), cs.delta.array.tobytes())
            out.setdefault(key, cs)
    return [out[k] for k in sorted(out)]
