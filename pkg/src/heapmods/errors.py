"""Exception types shared by every module of the package."""

from __future__ import annotations


class HeapmodsError(Exception):
    """Base class for all library errors."""


class AxiomViolation(HeapmodsError):
    """An exhaustive check found a tuple on which an axiom fails."""

    def __init__(self, axiom: str, witness: tuple, detail: str = ""):
        self.axiom = axiom
        self.witness = tuple(witness)
        self.detail = detail
        msg = f"axiom {axiom} fails at {self.witness}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class NotClosed(AxiomViolation):
    """A subset is not closed under an operation of the ambient structure."""


class EmptyHeap(HeapmodsError):
    pass


class ElementNotInCarrier(HeapmodsError):
    pass


class NotASubheap(HeapmodsError):
    def __init__(self, witness: tuple):
        self.witness = tuple(witness)
        super().__init__(f"subset is not a sub-heap: bracket{self.witness} escapes it")


class NotAMorphism(HeapmodsError):
    def __init__(self, witness: tuple, kind: str = "heap", detail: str = ""):
        self.witness = tuple(witness)
        self.kind = kind
        super().__init__(f"not a {kind} morphism at {self.witness}" + (f": {detail}" if detail else ""))


class NotATrussMorphism(NotAMorphism):
    def __init__(self, witness: tuple, detail: str = ""):
        super().__init__(witness, "truss", detail)


class NotInduced(HeapmodsError):
    def __init__(self, witness: tuple):
        self.witness = tuple(witness)
        super().__init__(f"not an induced submodule: t |>_e n escapes at (t, n, e) = {self.witness}")


class NotASubHeapOfModules(HeapmodsError):
    def __init__(self, witness: tuple, detail: str = ""):
        self.witness = tuple(witness)
        super().__init__(f"not a sub-heap of modules at {self.witness}" + (f": {detail}" if detail else ""))


class ConditionViolation(HeapmodsError):
    def __init__(self, condition: str, witness: tuple):
        self.condition = condition
        self.witness = tuple(witness)
        super().__init__(f"condition ({condition}) fails at {self.witness}")


class VerificationFailure(HeapmodsError):
    def __init__(self, what: str, witness=None):
        self.what = what
        self.witness = witness
        super().__init__(f"{what}" + (f" (witness {witness})" if witness is not None else ""))


class NotIsotropic(HeapmodsError):
    def __init__(self, witness: tuple):
        self.witness = tuple(witness)
        super().__init__(f"unit does not act as the identity: (m, n) = {self.witness}")


class NotSurjectiveProjection(HeapmodsError):
    pass


class InconsistentDecomposition(HeapmodsError):
    pass


class SizeMismatch(HeapmodsError):
    pass


class NotIsomorphic(HeapmodsError):
    pass


class DslSyntaxError(HeapmodsError):
    def __init__(self, message: str, line: int, col: int):
        self.line = line
        self.col = col
        super().__init__(f"line {line}, col {col}: {message}")


class UnresolvedReference(HeapmodsError):
    def __init__(self, name: str, line: int = 0, col: int = 0):
        self.name = name
        self.line = line
        self.col = col
        super().__init__(f"line {line}, col {col}: unresolved reference {name!r}")


class TableNotTotal(HeapmodsError):
    def __init__(self, declaration: str, missing):
        self.declaration = declaration
        self.missing = missing
        super().__init__(f"{declaration}: table not total: {missing}")


class DeclarationError(HeapmodsError):
    """Validation of a parsed declaration failed; wraps the underlying error."""

    def __init__(self, name: str, cause: Exception):
        self.name = name
        self.cause = cause
        super().__init__(f"declaration {name!r}: {cause}")
