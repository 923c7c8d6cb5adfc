"""Compact and classical structures: constructors, axiom verifiers, derived maps.

A compact structure is (A, A*, eta, eps) with eta: I -> A* (x) A and
eps: A (x) A* -> I satisfying the two triangle identities.  A classical
structure is (X, delta, top) where delta: X -> X (x) X and top: X -> I
form a cocommutative special dagger Frobenius comonoid; nabla and bot
are the daggers.  Over the complex semiring every orthonormal basis
gives one (the basis-copying structure); over the Booleans the valid
structures are blockwise abelian-group convolutions.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence

import numpy as np

from .core import (
    BOOLEAN,
    COMPLEX,
    DEFAULT_TOL,
    Mor,
    Obj,
    Semiring,
    UNIT,
    compose,
    dagger,
    identity,
    max_deviation,
    mor_from_json,
    mor_to_json,
    symmetry,
    tensor,
)
from .errors import AxiomFailure, DimMismatch, InvalidArity, NotAbelian, NotGroup, NotUnitary


@dataclass(frozen=True)
class AxiomCheck:
    passed: bool
    deviation: float


@dataclass(frozen=True, eq=False)
class AxiomReport:
    """Named per-axiom outcomes with the worst deviation seen for each."""

    checks: Mapping[str, AxiomCheck]

    @property
    def all_pass(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def __getitem__(self, name: str) -> AxiomCheck:
        return self.checks[name]

    def to_json(self) -> dict:
        return {
            name: {"passed": c.passed, "deviation": c.deviation}
            for name, c in self.checks.items()
        }


def _check(lhs: Mor, rhs: Mor, tol: float) -> AxiomCheck:
    dev = max_deviation(lhs, rhs)
    if lhs.semiring is BOOLEAN:
        return AxiomCheck(dev == 0.0, dev)
    return AxiomCheck(dev <= tol, dev)


@dataclass(frozen=True, eq=False)
class CompactStructure:
    """An object, its dual, and the (co)pairing witnessing the duality."""

    A: Obj
    Astar: Obj
    eta: Mor  # I -> Astar (x) A
    eps: Mor  # A (x) Astar -> I

    def __post_init__(self):
        if self.eta.dom != UNIT or self.eta.cod != self.Astar @ self.A:
            raise DimMismatch("eta must have type I -> Astar (x) A")
        if self.eps.dom != self.A @ self.Astar or self.eps.cod != UNIT:
            raise DimMismatch("eps must have type A (x) Astar -> I")

    @property
    def semiring(self) -> Semiring:
        return self.eta.semiring

    def eta_star(self) -> Mor:
        """Copairing of the dual object: I -> A (x) Astar."""
        return compose(symmetry(self.Astar, self.A, self.semiring), self.eta)


def verify_compact(c: CompactStructure, tol: float = DEFAULT_TOL) -> AxiomReport:
    """Check both triangle identities."""
    sr = c.semiring
    id_a = identity(c.A, sr)
    id_astar = identity(c.Astar, sr)
    # (eps (x) A) o (A (x) eta) = id_A
    left = compose(tensor(c.eps, id_a), tensor(id_a, c.eta))
    # (Astar (x) eps) o (eta (x) Astar) = id_Astar
    right = compose(tensor(id_astar, c.eps), tensor(c.eta, id_astar))
    return AxiomReport(
        {
            "triangle1": _check(left, id_a, tol),
            "triangle2": _check(right, id_astar, tol),
        }
    )


@dataclass(frozen=True, eq=False)
class ClassicalStructure:
    """Copying comonoid (delta, top) of a special commutative dagger Frobenius algebra."""

    X: Obj
    delta: Mor  # X -> X (x) X
    top: Mor  # X -> I

    def __post_init__(self):
        if self.delta.dom != self.X or self.delta.cod != self.X @ self.X:
            raise DimMismatch("delta must have type X -> X (x) X")
        if self.top.dom != self.X or self.top.cod != UNIT:
            raise DimMismatch("top must have type X -> I")

    @property
    def nabla(self) -> Mor:
        return dagger(self.delta)

    @property
    def bot(self) -> Mor:
        return dagger(self.top)

    @property
    def semiring(self) -> Semiring:
        return self.delta.semiring

    @property
    def dim(self) -> int:
        return self.X.dim

    def pairing(self) -> Mor:
        """Self-dual pairing eps = top o nabla : X (x) X -> I."""
        return compose(self.top, self.nabla)


CLASSICAL_AXIOMS = (
    "assoc",
    "unit",
    "coassoc",
    "counit",
    "frobenius",
    "special",
    "commutative",
    "dagger_compat",
)


def verify_classical(cs: ClassicalStructure, tol: float = DEFAULT_TOL) -> AxiomReport:
    """Evaluate all eight defining axioms as matrix identities."""
    sr = cs.semiring
    X = cs.X
    id_x = identity(X, sr)
    delta, top, nabla, bot = cs.delta, cs.top, cs.nabla, cs.bot
    sigma = symmetry(X, X, sr)

    assoc_l = compose(nabla, tensor(nabla, id_x))
    assoc_r = compose(nabla, tensor(id_x, nabla))
    unit_l = compose(nabla, tensor(bot, id_x))
    unit_r = compose(nabla, tensor(id_x, bot))
    coassoc_l = compose(tensor(delta, id_x), delta)
    coassoc_r = compose(tensor(id_x, delta), delta)
    counit_l = compose(tensor(top, id_x), delta)
    counit_r = compose(tensor(id_x, top), delta)
    frob_mid = compose(delta, nabla)
    frob_l = compose(tensor(nabla, id_x), tensor(id_x, delta))
    frob_r = compose(tensor(id_x, nabla), tensor(delta, id_x))
    special = compose(nabla, delta)
    commutative = compose(sigma, delta)

    def worst(*checks: AxiomCheck) -> AxiomCheck:
        dev = max(c.deviation for c in checks)
        return AxiomCheck(all(c.passed for c in checks), dev)

    return AxiomReport(
        {
            "assoc": _check(assoc_l, assoc_r, tol),
            "unit": worst(_check(unit_l, id_x, tol), _check(unit_r, id_x, tol)),
            "coassoc": _check(coassoc_l, coassoc_r, tol),
            "counit": worst(_check(counit_l, id_x, tol), _check(counit_r, id_x, tol)),
            "frobenius": worst(
                _check(frob_l, frob_mid, tol), _check(frob_r, frob_mid, tol)
            ),
            "special": _check(special, id_x, tol),
            "commutative": _check(commutative, delta, tol),
            "dagger_compat": worst(
                _check(dagger(nabla), delta, tol), _check(dagger(bot), top, tol)
            ),
        }
    )


def classical_from_basis(U: Mor, tol: float = DEFAULT_TOL) -> ClassicalStructure:
    """Basis-copying structure of an orthonormal basis given as a unitary's columns."""
    if U.semiring is not COMPLEX:
        raise NotUnitary("basis structures are defined over the complex semiring")
    if U.dom.dim != U.cod.dim:
        raise NotUnitary("basis matrix must be square")
    d = U.dom.dim
    gram = np.conj(U.array).T @ U.array
    if float(np.max(np.abs(gram - np.eye(d)))) > tol:
        raise NotUnitary("columns are not an orthonormal basis")
    X = U.cod
    basis = [U.array[:, i] for i in range(d)]
    delta = np.zeros((d * d, d), dtype=np.complex128)
    top = np.zeros((1, d), dtype=np.complex128)
    for b in basis:
        delta += np.outer(np.kron(b, b), np.conj(b))
        top += np.conj(b)[None, :]
    return ClassicalStructure(X, Mor(X, X @ X, delta), Mor(X, UNIT, top))


def standard_structure(d: int, semiring: Semiring = COMPLEX) -> ClassicalStructure:
    """Copying structure of the standard basis on a single factor of dimension d."""
    return standard_structure_on(Obj((d,)), semiring)


def standard_structure_on(X: Obj, semiring: Semiring = COMPLEX) -> ClassicalStructure:
    d = X.dim
    delta = np.zeros((d * d, d))
    for i in range(d):
        delta[i * d + i, i] = 1
    top = np.ones((1, d))
    return ClassicalStructure(
        X, Mor(X, X @ X, semiring.asarray(delta), semiring),
        Mor(X, UNIT, semiring.asarray(top), semiring),
    )


def trivial_structure(semiring: Semiring = COMPLEX) -> ClassicalStructure:
    """The canonical structure on the monoidal unit."""
    return standard_structure_on(UNIT, semiring)


def product_structure(cs1: ClassicalStructure, cs2: ClassicalStructure) -> ClassicalStructure:
    """Structure on X (x) Y with pairwise copying (middle-swap arrangement)."""
    sr = cs1.semiring
    X, Y = cs1.X, cs2.X
    rearrange = tensor(
        tensor(identity(X, sr), symmetry(X, Y, sr)), identity(Y, sr)
    )
    delta = compose(rearrange, tensor(cs1.delta, cs2.delta))
    top = tensor(cs1.top, cs2.top)
    return ClassicalStructure(X @ Y, delta, top)


def bell_from_classical(cs: ClassicalStructure, tol: float = DEFAULT_TOL) -> CompactStructure:
    """Self-dual compact structure with eta = delta o bot; requires valid cs."""
    report = verify_classical(cs, tol)
    if not report.all_pass:
        bad = [k for k, c in report.checks.items() if not c.passed]
        raise AxiomFailure(f"classical axioms fail: {bad}")
    eta = compose(cs.delta, cs.bot)
    sigma = symmetry(cs.X, cs.X, cs.semiring)
    if max_deviation(compose(sigma, eta), eta) > tol:
        raise AxiomFailure("copairing is not symmetric")
    eps = compose(dagger(eta), sigma)
    c = CompactStructure(cs.X, cs.X, eta, eps)
    if not verify_compact(c, tol).all_pass:
        raise AxiomFailure("triangle identities fail for the induced copairing")
    return c


def standard_compact(A: Obj, semiring: Semiring = COMPLEX) -> CompactStructure:
    """Self-dual compact structure of the standard basis, keeping A's factors."""
    d = A.dim
    eta = np.eye(d).reshape(-1, 1)
    eps = np.eye(d).reshape(1, -1)
    return CompactStructure(
        A, A,
        Mor(UNIT, A @ A, semiring.asarray(eta), semiring),
        Mor(A @ A, UNIT, semiring.asarray(eps), semiring),
    )


def compact_tensor(c1: CompactStructure, c2: CompactStructure) -> CompactStructure:
    """Compact structure on A1 (x) A2 with dual A2* (x) A1* and nested pairings."""
    sr = c1.semiring
    A = c1.A @ c2.A
    Astar = c2.Astar @ c1.Astar
    eta = compose(
        tensor(tensor(identity(c2.Astar, sr), c1.eta), identity(c2.A, sr)),
        c2.eta,
    )
    eps = compose(
        c1.eps,
        tensor(tensor(identity(c1.A, sr), c2.eps), identity(c1.Astar, sr)),
    )
    return CompactStructure(A, Astar, eta, eps)


def transpose_of(f: Mor, cA: CompactStructure, cB: CompactStructure) -> Mor:
    """Transpose B* -> A* computed by bending wires through eta_A and eps_B."""
    if f.dom != cA.A or f.cod != cB.A:
        raise DimMismatch("f must be typed A -> B against the given structures")
    sr = f.semiring
    id_astar = identity(cA.Astar, sr)
    id_bstar = identity(cB.Astar, sr)
    step1 = tensor(cA.eta, id_bstar)  # B* -> A* A B*
    step2 = tensor(tensor(id_astar, f), id_bstar)  # -> A* B B*
    step3 = tensor(id_astar, cB.eps)  # -> A*
    return compose(step3, compose(step2, step1))


def conjugate_of(f: Mor, cA: CompactStructure, cB: CompactStructure) -> Mor:
    """Conjugate A* -> B*: the transpose of the adjoint."""
    return transpose_of(dagger(f), cB, cA)


def dimension(c: CompactStructure) -> Mor:
    """The scalar closing eta with eps through the symmetry."""
    sigma = symmetry(c.Astar, c.A, c.semiring)
    return compose(c.eps, compose(sigma, c.eta))


def _delta_power(cs: ClassicalStructure, m: int) -> Mor:
    """Left-nested m-output comultiplication; m = 0 is the counit."""
    if m == 0:
        return cs.top
    if m == 1:
        return identity(cs.X, cs.semiring)
    inner = _delta_power(cs, m - 1)
    return compose(tensor(inner, identity(cs.X, cs.semiring)), cs.delta)


def spider_matrix(cs: ClassicalStructure, n: int, m: int, allow_scalar: bool = True) -> Mor:
    """The canonical morphism X^n -> X^m built as delta^(m) o nabla^(n)."""
    if n < 0 or m < 0:
        raise InvalidArity("arities must be nonnegative")
    if n == 0 and m == 0 and not allow_scalar:
        raise InvalidArity("n = m = 0 requires the scalar convention")
    return compose(_delta_power(cs, m), dagger(_delta_power(cs, n)))


# Structures are immutable, so derived data can be cached per instance.
cached_bell = lru_cache(maxsize=None)(bell_from_classical)
cached_product = lru_cache(maxsize=None)(product_structure)
cached_trivial = lru_cache(maxsize=None)(trivial_structure)


# ---------------------------------------------------------------------------
# Boolean structures from blockwise abelian groups
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GroupBlock:
    """One partition block with an abelian group table on its elements."""

    elements: tuple[int, ...]
    table: tuple[tuple[int, ...], ...]  # table[i][j] = elements' index of e_i * e_j
    unit: int  # index into elements

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(int(e) for e in self.elements))
        object.__setattr__(
            self, "table", tuple(tuple(int(v) for v in row) for row in self.table)
        )


def _validate_block(block: GroupBlock):
    k = len(block.elements)
    t = block.table
    if len(t) != k or any(len(row) != k for row in t):
        raise NotGroup("table shape does not match the block")
    if any(v < 0 or v >= k for row in t for v in row):
        raise NotGroup("table entries must index block elements")
    e = block.unit
    if not (0 <= e < k):
        raise NotGroup("unit must index a block element")
    if any(t[e][j] != j or t[j][e] != j for j in range(k)):
        raise NotGroup("unit law fails")
    for i in range(k):
        for j in range(k):
            for l in range(k):
                if t[t[i][j]][l] != t[i][t[j][l]]:
                    raise NotGroup("associativity fails")
    for i in range(k):
        if all(t[i][j] != e for j in range(k)):
            raise NotGroup(f"element {block.elements[i]} has no inverse")
    for i in range(k):
        for j in range(k):
            if t[i][j] != t[j][i]:
                raise NotAbelian("group table is not commutative")


def frel_structure_from_groups(blocks: Sequence[GroupBlock]) -> ClassicalStructure:
    """Boolean structure whose multiplication is blockwise group multiplication."""
    elements = [e for b in blocks for e in b.elements]
    n = len(elements)
    if sorted(elements) != list(range(n)):
        raise NotGroup("blocks must partition 0..n-1")
    for b in blocks:
        _validate_block(b)
    X = Obj((n,))
    nabla = np.zeros((n, n * n), dtype=np.int64)
    bot = np.zeros((n, 1), dtype=np.int64)
    for b in blocks:
        bot[b.elements[b.unit], 0] = 1
        for i, x in enumerate(b.elements):
            for j, y in enumerate(b.elements):
                z = b.elements[b.table[i][j]]
                nabla[z, x * n + y] = 1
    return ClassicalStructure(
        X,
        Mor(X, X @ X, nabla.T, BOOLEAN),
        Mor(X, UNIT, bot.T, BOOLEAN),
    )


def group_block_from_json(data: dict) -> GroupBlock:
    return GroupBlock(
        elements=tuple(data["elements"]),
        table=tuple(tuple(row) for row in data["table"]),
        unit=int(data["unit"]),
    )


# ---------------------------------------------------------------------------
# JSON wire format
# ---------------------------------------------------------------------------


def classical_to_json(cs: ClassicalStructure) -> dict:
    return {
        "object": list(cs.X.factors),
        "delta": mor_to_json(cs.delta),
        "top": mor_to_json(cs.top),
    }


def classical_from_json(data: dict) -> ClassicalStructure:
    X = Obj(tuple(data["object"]))
    return ClassicalStructure(X, mor_from_json(data["delta"]), mor_from_json(data["top"]))
