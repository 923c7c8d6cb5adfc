"""Exception hierarchy shared by all modules."""


class EngineError(Exception):
    """Base class for all errors raised by this package."""


class DimMismatch(EngineError):
    """Objects or matrix shapes do not line up."""


class SemiringMismatch(EngineError):
    """Operands live over different scalar semirings."""


class NotEndo(EngineError):
    """Operation requires an endomorphism (equal domain and codomain)."""


class NotUnitary(EngineError):
    """A matrix expected to be unitary is not."""


class AxiomFailure(EngineError):
    """A structure fails its defining axioms."""


class InvalidArity(EngineError):
    """Spider arity outside the supported range."""


class NotGroup(EngineError):
    """A multiplication table is not a group."""


class NotAbelian(EngineError):
    """A group table is not commutative."""


class ClassificationFailure(EngineError):
    """A morphism does not belong to the required class."""


class NotARelation(EngineError):
    """Operand is not an idempotent of the convolution monoid."""


class NotClassical(EngineError):
    """Operand is not a classical morphism."""


class NotStochastic(EngineError):
    """Operand is not a stochastic morphism."""


class BooleanUnsupported(EngineError):
    """Operation is defined only over the complex semiring."""


class BudgetExceeded(EngineError):
    """Exhaustive search requested beyond the supported size."""


class IndexMismatch(EngineError):
    """Kleisli morphisms are indexed by different classical structures."""


class TypeMismatch(EngineError):
    """Composite endpoints do not match."""


class ParseError(EngineError):
    """Syntax error in the spider term language, with position info."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class TermTypeError(EngineError):
    """Wire-count mismatch in a spider term, with position info."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at offset {pos})")
        self.pos = pos
