"""Typed matrices over a dagger semiring.

Everything in this package is a `Mor`: a matrix together with a typed
domain and codomain.  Objects are ordered lists of atomic dimensions;
tensoring concatenates them and the monoidal unit is the empty list.
Basis indices of a composite object are enumerated lexicographically
with the *left* factor most significant, which fixes the convention for
every Kronecker product, swap and partial contraction below.

Two semirings are provided: the complex numbers with entrywise
conjugation, and the Booleans (0/1 with OR/AND and trivial conjugation).
All values are immutable after construction and all operations are pure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import DimMismatch, SemiringMismatch

DEFAULT_TOL = 1e-9


class Semiring:
    """Scalar algebra shared by all matrices of one model."""

    name: str = ""

    # scalar level ----------------------------------------------------
    zero = 0
    one = 1

    def add(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def conj(self, a):
        raise NotImplementedError

    # array level -----------------------------------------------------
    def asarray(self, values) -> np.ndarray:
        raise NotImplementedError

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def kron(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return np.kron(a, b)

    def conj_array(self, a: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def max_dev(self, a: np.ndarray, b: np.ndarray) -> float:
        return float(np.max(np.abs(a - b))) if a.size else 0.0

    def equal(self, a: np.ndarray, b: np.ndarray, tol: float) -> bool:
        raise NotImplementedError

    def __repr__(self):
        return f"Semiring({self.name!r})"


class _ComplexSemiring(Semiring):
    name = "complex"
    zero = 0.0 + 0.0j
    one = 1.0 + 0.0j

    def add(self, a, b):
        return complex(a) + complex(b)

    def mul(self, a, b):
        return complex(a) * complex(b)

    def conj(self, a):
        return complex(a).conjugate()

    def asarray(self, values):
        return np.asarray(values, dtype=np.complex128)

    def matmul(self, a, b):
        return a @ b

    def conj_array(self, a):
        return np.conj(a)

    def equal(self, a, b, tol):
        return self.max_dev(a, b) <= tol


class _BooleanSemiring(Semiring):
    name = "boolean"
    zero = 0
    one = 1

    def add(self, a, b):
        return int(bool(a) or bool(b))

    def mul(self, a, b):
        return int(bool(a) and bool(b))

    def conj(self, a):
        return int(a)

    def asarray(self, values):
        arr = np.asarray(values)
        out = np.asarray(arr, dtype=np.int64)
        if arr.size and not np.array_equal(np.asarray(arr, dtype=np.complex128), out):
            raise ValueError("boolean entries must be 0 or 1")
        if out.size and not np.isin(out, (0, 1)).all():
            raise ValueError("boolean entries must be 0 or 1")
        return out

    def matmul(self, a, b):
        return ((a @ b) != 0).astype(np.int64)

    def conj_array(self, a):
        return a

    def equal(self, a, b, tol):
        return bool(np.array_equal(a, b))  # exact, tol is ignored


COMPLEX: Semiring = _ComplexSemiring()
BOOLEAN: Semiring = _BooleanSemiring()

_SEMIRINGS = {s.name: s for s in (COMPLEX, BOOLEAN)}


def semiring_by_name(name: str) -> Semiring:
    try:
        return _SEMIRINGS[name]
    except KeyError:
        raise SemiringMismatch(f"unknown semiring {name!r}") from None


@dataclass(frozen=True)
class Obj:
    """A typed object: an ordered tuple of atomic dimensions."""

    factors: tuple[int, ...]

    def __post_init__(self):
        factors = tuple(int(d) for d in self.factors)
        if any(d < 1 for d in factors):
            raise DimMismatch(f"factors must be positive, got {factors}")
        object.__setattr__(self, "factors", factors)

    @property
    def dim(self) -> int:
        d = 1
        for f in self.factors:
            d *= f
        return d

    def __matmul__(self, other: "Obj") -> "Obj":
        return Obj(self.factors + other.factors)

    def __repr__(self):
        return f"Obj{self.factors}"


UNIT = Obj(())


@dataclass(frozen=True, eq=False)
class Mor:
    """A morphism: a cod.dim x dom.dim matrix over a dagger semiring."""

    dom: Obj
    cod: Obj
    array: np.ndarray
    semiring: Semiring = COMPLEX

    def __post_init__(self):
        arr = self.semiring.asarray(self.array)
        if arr.shape != (self.cod.dim, self.dom.dim):
            raise DimMismatch(
                f"entry grid {arr.shape} does not match cod {self.cod} x dom {self.dom}"
            )
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "array", arr)

    # composition in diagrammatic order: f >> g is "f then g"
    def __rshift__(self, other: "Mor") -> "Mor":
        return compose(other, self)

    def __matmul__(self, other: "Mor") -> "Mor":
        return tensor(self, other)

    def dagger(self) -> "Mor":
        return dagger(self)

    def is_scalar(self) -> bool:
        return self.dom.dim == 1 and self.cod.dim == 1

    def scalar_value(self):
        if not self.is_scalar():
            raise DimMismatch("not a scalar morphism")
        return self.array[0, 0]

    def __repr__(self):
        return f"Mor({self.dom} -> {self.cod}, {self.semiring.name})"


def mor(dom: Obj, cod: Obj, entries, semiring: Semiring = COMPLEX) -> Mor:
    return Mor(dom, cod, entries, semiring)


def scalar(value, semiring: Semiring = COMPLEX) -> Mor:
    return Mor(UNIT, UNIT, [[value]], semiring)


def _check_semiring(f: Mor, g: Mor):
    if f.semiring is not g.semiring:
        raise SemiringMismatch(f"{f.semiring.name} vs {g.semiring.name}")


def compose(g: Mor, f: Mor) -> Mor:
    """g after f.  Requires f.cod == g.dom as typed objects."""
    _check_semiring(f, g)
    if f.cod != g.dom:
        raise DimMismatch(f"cannot compose: {f.cod} -> {g.dom}")
    return Mor(f.dom, g.cod, g.semiring.matmul(g.array, f.array), g.semiring)


def tensor(f: Mor, g: Mor) -> Mor:
    """Kronecker product; factor lists concatenate."""
    _check_semiring(f, g)
    return Mor(
        f.dom @ g.dom, f.cod @ g.cod, f.semiring.kron(f.array, g.array), f.semiring
    )


def dagger(f: Mor) -> Mor:
    """Conjugate transpose; domain and codomain swap."""
    return Mor(f.cod, f.dom, f.semiring.conj_array(f.array).T, f.semiring)


def identity(A: Obj, semiring: Semiring = COMPLEX) -> Mor:
    return Mor(A, A, semiring.asarray(np.eye(A.dim)), semiring)


def symmetry(A: Obj, B: Obj, semiring: Semiring = COMPLEX) -> Mor:
    """The swap A (x) B -> B (x) A as a permutation matrix."""
    m, n = A.dim, B.dim
    arr = np.zeros((m * n, m * n))
    for a in range(m):
        for b in range(n):
            arr[b * m + a, a * n + b] = 1
    return Mor(A @ B, B @ A, semiring.asarray(arr), semiring)


def permute_factors(A: Obj, perm: Sequence[int], semiring: Semiring = COMPLEX) -> Mor:
    """Wire permutation: output position j carries input factor perm[j]."""
    perm = tuple(perm)
    if sorted(perm) != list(range(len(A.factors))):
        raise DimMismatch(f"{perm} is not a permutation of {len(A.factors)} factors")
    cod = Obj(tuple(A.factors[p] for p in perm))
    if not A.factors:
        return identity(UNIT, semiring)
    src = np.arange(A.dim).reshape(A.factors)
    moved = np.transpose(src, perm).reshape(-1)
    arr = np.zeros((A.dim, A.dim))
    arr[np.arange(A.dim), moved] = 1
    return Mor(A, cod, semiring.asarray(arr), semiring)


def block_perm(objs: Sequence[Obj], order: Sequence[int], semiring: Semiring = COMPLEX) -> Mor:
    """Permutation of whole tensor blocks: output block j is objs[order[j]]."""
    offsets = []
    pos = 0
    for o in objs:
        offsets.append(pos)
        pos += len(o.factors)
    atomic = []
    for b in order:
        atomic.extend(range(offsets[b], offsets[b] + len(objs[b].factors)))
    src = UNIT
    for o in objs:
        src = src @ o
    return permute_factors(src, atomic, semiring)


def retype(f: Mor, dom: Obj | None = None, cod: Obj | None = None) -> Mor:
    """Regroup factor lists without touching entries (dims must agree)."""
    dom = f.dom if dom is None else dom
    cod = f.cod if cod is None else cod
    if dom.dim != f.dom.dim or cod.dim != f.cod.dim:
        raise DimMismatch("retype must preserve total dimensions")
    return Mor(dom, cod, f.array, f.semiring)


def max_deviation(f: Mor, g: Mor) -> float:
    _check_semiring(f, g)
    if f.dom != g.dom or f.cod != g.cod:
        raise DimMismatch(f"cannot compare {f} with {g}")
    return f.semiring.max_dev(f.array, g.array)


def approx_eq(f: Mor, g: Mor, tol: float = DEFAULT_TOL) -> bool:
    """Entrywise comparison: within tol over complex, exact over boolean."""
    _check_semiring(f, g)
    if f.dom != g.dom or f.cod != g.cod:
        raise DimMismatch(f"cannot compare {f} with {g}")
    return f.semiring.equal(f.array, g.array, tol)


# ---------------------------------------------------------------------------
# JSON wire format
# ---------------------------------------------------------------------------


def mor_to_json(f: Mor) -> dict:
    """{"semiring", "dom", "cod", "entries"}; complex entries as [re, im]."""
    if f.semiring is COMPLEX:
        entries = [
            [[float(z.real), float(z.imag)] for z in row] for row in f.array
        ]
    else:
        entries = [[int(v) for v in row] for row in f.array]
    return {
        "semiring": f.semiring.name,
        "dom": list(f.dom.factors),
        "cod": list(f.cod.factors),
        "entries": entries,
    }


def mor_from_json(data: dict) -> Mor:
    semiring = semiring_by_name(data["semiring"])
    dom = Obj(tuple(data["dom"]))
    cod = Obj(tuple(data["cod"]))
    rows = data["entries"]
    if semiring is COMPLEX:
        arr = np.array(
            [[complex(e[0], e[1]) for e in row] for row in rows],
            dtype=np.complex128,
        ).reshape(cod.dim, dom.dim)
    else:
        arr = np.array(rows, dtype=np.int64).reshape(cod.dim, dom.dim)
    return Mor(dom, cod, arr, semiring)
