"""Morphism-class predicates: positive, completely positive, classical,
decoherent, real, relation/function/permutation flags, stochastic flags,
majorization witnesses and purity.

All predicates are basis-relative: they take the classical or compact
structures against which the morphism is typed.  Over the complex
semiring positivity is decided by a Hermitian eigensolver; over the
Booleans by a closed-form criterion validated against exhaustive
factor search in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    BOOLEAN,
    COMPLEX,
    DEFAULT_TOL,
    Mor,
    approx_eq,
    compose,
    dagger,
    identity,
    max_deviation,
    tensor,
)
from .errors import (
    BooleanUnsupported,
    ClassificationFailure,
    DimMismatch,
    NotEndo,
)
from .structures import (
    ClassicalStructure,
    CompactStructure,
    cached_bell,
    cached_product,
    cached_trivial,
    conjugate_of,
)


def is_positive(e: Mor, tol: float = DEFAULT_TOL) -> bool:
    """Does e factor as g o g-dagger?

    Complex: Hermitian within tol with spectrum >= -tol.  Boolean:
    symmetric with diagonal support (e_ij = 1 forces e_ii = e_jj = 1),
    which characterises OR/AND products g o g-dagger.
    """
    if e.dom != e.cod:
        raise NotEndo(f"positivity needs an endomorphism, got {e}")
    a = e.array
    if e.semiring is BOOLEAN:
        if not np.array_equal(a, a.T):
            return False
        d = np.diag(a)
        return bool(np.all(a <= np.outer(d, d)))
    if float(np.max(np.abs(a - np.conj(a).T))) > tol:
        return False
    herm = (a + np.conj(a).T) / 2
    eigs = np.linalg.eigvalsh(herm)
    return bool(np.min(eigs) >= -tol)


def bent_endomorphism(f: Mor, cA: CompactStructure, cB: CompactStructure) -> Mor:
    """The transpose-bent endomorphism of A (x) B* whose positivity defines CP."""
    if f.dom != cA.Astar @ cA.A or f.cod != cB.Astar @ cB.A:
        raise DimMismatch("f must be typed A* (x) A -> B* (x) B")
    sr = f.semiring
    id_a = identity(cA.A, sr)
    id_bstar = identity(cB.Astar, sr)
    step1 = tensor(tensor(cA.eta_star(), id_a), id_bstar)
    step2 = tensor(tensor(id_a, f), id_bstar)
    step3 = tensor(tensor(id_a, id_bstar), cB.eps)
    return compose(step3, compose(step2, step1))


def is_completely_positive(
    f: Mor, cA: CompactStructure, cB: CompactStructure, tol: float = DEFAULT_TOL
) -> bool:
    """CP test: the bent transpose of f is a positive endomorphism."""
    return is_positive(bent_endomorphism(f, cA, cB), tol)


def is_classical_map(
    f: Mor, csX: ClassicalStructure, csY: ClassicalStructure, tol: float = DEFAULT_TOL
) -> bool:
    """Is f: X -> Y classical relative to the two structures?

    Builds the delta/nabla-dressed endomorphism of X (x) Y and tests its
    positivity; with basis-copying structures this holds exactly for
    matrices with nonnegative real entries.
    """
    if f.dom != csX.X or f.cod != csY.X:
        raise DimMismatch("f must be typed X -> Y against the given structures")
    sr = f.semiring
    id_x = identity(csX.X, sr)
    id_y = identity(csY.X, sr)
    step1 = tensor(csX.delta, id_y)
    step2 = tensor(tensor(id_x, f), id_y)
    step3 = tensor(id_x, csY.nabla)
    return is_positive(compose(step3, compose(step2, step1)), tol)


def decoherence(cs: ClassicalStructure) -> Mor:
    """delta o nabla: the idempotent erasing off-diagonal data."""
    return compose(cs.delta, cs.nabla)


def is_decoherent(
    g: Mor, csX: ClassicalStructure, csY: ClassicalStructure, tol: float = DEFAULT_TOL
) -> bool:
    """Completely positive and absorbing both decoherences."""
    if g.dom != csX.X @ csX.X or g.cod != csY.X @ csY.X:
        raise DimMismatch("g must be typed XX -> YY")
    xi_x = decoherence(csX)
    xi_y = decoherence(csY)
    if max_deviation(compose(g, xi_x), g) > tol:
        return False
    if max_deviation(compose(xi_y, g), g) > tol:
        return False
    return is_completely_positive(g, cached_bell(csX), cached_bell(csY), tol)


def to_decoherent(
    f: Mor, csX: ClassicalStructure, csY: ClassicalStructure, tol: float = DEFAULT_TOL
) -> Mor:
    """delta_Y o f o nabla_X, defined on classical morphisms."""
    if not is_classical_map(f, csX, csY, tol):
        raise ClassificationFailure("morphism is not classical")
    return compose(csY.delta, compose(f, csX.nabla))


def to_classical(
    g: Mor, csX: ClassicalStructure, csY: ClassicalStructure, tol: float = DEFAULT_TOL
) -> Mor:
    """nabla_Y o g o delta_X, defined on decoherent morphisms."""
    if not is_decoherent(g, csX, csY, tol):
        raise ClassificationFailure("morphism is not decoherent")
    return compose(csY.nabla, compose(g, csX.delta))


def is_real(
    f: Mor, cA: CompactStructure, cB: CompactStructure, tol: float = DEFAULT_TOL
) -> bool:
    """f equals its own conjugate (requires self-dual structures to compare)."""
    return approx_eq(conjugate_of(f, cA, cB), f, tol)


@dataclass(frozen=True)
class RelationFlags:
    is_relation: bool
    is_single_valued: bool
    is_total: bool
    is_function: bool
    is_lax_comonoid_hom: bool

    def to_json(self) -> dict:
        return {
            "is_relation": self.is_relation,
            "is_single_valued": self.is_single_valued,
            "is_total": self.is_total,
            "is_function": self.is_function,
            "is_lax_comonoid_hom": self.is_lax_comonoid_hom,
        }


def relation_flags(
    r: Mor, csX: ClassicalStructure, csY: ClassicalStructure, tol: float = DEFAULT_TOL
) -> RelationFlags:
    """Idempotence, single-valuedness, totality and the lax comonoid laws."""
    from .relalg import ConvolutionContext, convolve

    if r.dom != csX.X or r.cod != csY.X:
        raise DimMismatch("r must be typed X -> Y against the given structures")
    sr = r.semiring
    ctx = ConvolutionContext(csX, csY)
    is_rel = approx_eq(convolve(r, r, ctx), r, tol)

    delta_r = compose(csY.delta, r)
    rr_delta = compose(tensor(r, r), csX.delta)
    single_valued = approx_eq(delta_r, rr_delta, tol)
    total = approx_eq(compose(csY.top, r), csX.top, tol)

    # lax comonoid laws, with <= unfolded as "a equals a convolved with b"
    ctx_pair = ConvolutionContext(csX, cached_product(csY, csY))
    lax_delta = approx_eq(convolve(delta_r, rr_delta, ctx_pair), delta_r, tol)
    ctx_unit = ConvolutionContext(csX, cached_trivial(sr))
    top_r = compose(csY.top, r)
    lax_top = approx_eq(convolve(top_r, csX.top, ctx_unit), top_r, tol)

    return RelationFlags(
        is_relation=is_rel,
        is_single_valued=single_valued,
        is_total=total,
        is_function=single_valued and total,
        is_lax_comonoid_hom=lax_delta and lax_top,
    )


def is_permutation(
    r: Mor, csX: ClassicalStructure, csY: ClassicalStructure, tol: float = DEFAULT_TOL
) -> bool:
    """Function in both directions; asserted to agree with unitarity on relations."""
    flags = relation_flags(r, csX, csY, tol)
    flags_dag = relation_flags(dagger(r), csY, csX, tol)
    both_functions = flags.is_function and flags_dag.is_function
    sr = r.semiring
    unitary = approx_eq(
        compose(dagger(r), r), identity(csX.X, sr), tol
    ) and approx_eq(compose(r, dagger(r)), identity(csY.X, sr), tol)
    if both_functions:
        assert unitary, "function pair must be unitary"
    if flags.is_relation and unitary:
        assert both_functions, "unitary relation must be a function pair"
    return both_functions


@dataclass(frozen=True)
class StochasticFlags:
    is_stochastic: bool
    is_doubly_stochastic: bool

    def to_json(self) -> dict:
        return {
            "is_stochastic": self.is_stochastic,
            "is_doubly_stochastic": self.is_doubly_stochastic,
        }


def stochastic_flags(
    s: Mor, csX: ClassicalStructure, csY: ClassicalStructure, tol: float = DEFAULT_TOL
) -> StochasticFlags:
    """Stochastic = classical and total; doubly stochastic = both directions."""
    total = approx_eq(compose(csY.top, s), csX.top, tol)
    stoch = total and is_classical_map(s, csX, csY, tol)
    if not stoch:
        return StochasticFlags(False, False)
    s_dag = dagger(s)
    total_dag = approx_eq(compose(csX.top, s_dag), csY.top, tol)
    stoch_dag = total_dag and is_classical_map(s_dag, csY, csX, tol)
    return StochasticFlags(True, stoch_dag)


def majorizes_witness(
    f: Mor,
    g: Mor,
    h1: Mor,
    h2: Mor,
    csX1: ClassicalStructure,
    csX2: ClassicalStructure,
    csY1: ClassicalStructure,
    csY2: ClassicalStructure,
    tol: float = DEFAULT_TOL,
) -> bool:
    """Check the witness pair: h1, h2 doubly stochastic and g = h2 o f o h1-dagger."""
    if f.dom != csX1.X or f.cod != csX2.X:
        raise DimMismatch("f must be typed X1 -> X2")
    if g.dom != csY1.X or g.cod != csY2.X:
        raise DimMismatch("g must be typed Y1 -> Y2")
    if not stochastic_flags(h1, csX1, csY1, tol).is_doubly_stochastic:
        return False
    if not stochastic_flags(h2, csX2, csY2, tol).is_doubly_stochastic:
        return False
    return approx_eq(g, compose(h2, compose(f, dagger(h1))), tol)


def choi_rank(f: Mor, cA: CompactStructure, cB: CompactStructure, tol: float = DEFAULT_TOL) -> int:
    """Number of eigenvalues of the bent endomorphism above tol."""
    if f.semiring is not COMPLEX:
        raise BooleanUnsupported("purity is defined only over the complex semiring")
    e = bent_endomorphism(f, cA, cB)
    herm = (e.array + np.conj(e.array).T) / 2
    eigs = np.linalg.eigvalsh(herm)
    return int(np.sum(eigs > tol))


def is_pure(
    f: Mor, cA: CompactStructure, cB: CompactStructure, tol: float = DEFAULT_TOL
) -> bool:
    """Positive bent endomorphism of rank at most one (rank 0 counts as pure)."""
    if f.semiring is not COMPLEX:
        raise BooleanUnsupported("purity is defined only over the complex semiring")
    e = bent_endomorphism(f, cA, cB)
    if not is_positive(e, tol):
        return False
    return choi_rank(f, cA, cB, tol) <= 1
