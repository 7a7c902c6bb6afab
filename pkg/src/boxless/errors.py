"""Exception hierarchy shared by every pipeline stage."""


class BoxlessError(Exception):
    """Base class; ``stage`` tags which part of the pipeline raised."""

    stage = "internal"


# -- kernel -------------------------------------------------------------------

class KernelError(BoxlessError):
    stage = "kernel"


class IllTyped(KernelError):
    pass


class UnknownName(KernelError):
    def __init__(self, name: str):
        super().__init__(f"unknown global name {name!r}")
        self.name = name


class Stuck(KernelError):
    pass


class FuelExhausted(KernelError):
    def __init__(self, limit: int):
        super().__init__(f"evaluation exceeded fuel limit {limit}")
        self.limit = limit


# -- erasure ------------------------------------------------------------------

class ErasureError(BoxlessError):
    stage = "erasure"

    def __init__(self, message: str, decl: str | None = None):
        if decl is not None:
            message = f"{decl}: {message}"
        super().__init__(message)
        self.decl = decl


class NotPrenex(ErasureError):
    pass


class TypeEraseError(ErasureError):
    """Type head that has no box_type counterpart."""


class AxiomReached(ErasureError):
    def __init__(self, name: str):
        super().__init__(f"axiom {name!r} is reachable from the extracted definitions")
        self.name = name


# -- dearging -----------------------------------------------------------------

class DeargError(BoxlessError):
    stage = "dearg"


class NotExpanded(DeargError):
    pass


class ArityMismatch(DeargError):
    pass


# -- backends -----------------------------------------------------------------

class BackendError(BoxlessError):
    stage = "backend"


class NonPrenex(BackendError):
    def __init__(self, name: str, detail: str = ""):
        super().__init__(f"{name}: signature is not prenex {detail}".rstrip())
        self.name = name


class ContainsTAny(BackendError):
    def __init__(self, name: str, path: str):
        super().__init__(f"{name}: unrepresentable type (Any) at {path}")
        self.name = name
        self.path = path


class UnsupportedRecursion(BackendError):
    pass


class RecursiveDatatype(BackendError):
    pass


class SingleCtorVariant(BackendError):
    pass


class BoxInOutput(BackendError):
    pass


# -- frontend -----------------------------------------------------------------

class FrontendError(BoxlessError):
    stage = "parse"


class ParseError(FrontendError):
    def __init__(self, line: int, col: int, expected: str, found: str = ""):
        msg = f"{line}:{col}: expected {expected}"
        if found:
            msg += f", found {found!r}"
        super().__init__(msg)
        self.line = line
        self.col = col
        self.expected = expected


class DuplicateKey(FrontendError):
    def __init__(self, key: str, line: int):
        super().__init__(f"line {line}: duplicate remap key {key!r}")
        self.key = key
        self.line = line


class ElabError(FrontendError):
    """Name resolution or typing failure while elaborating surface syntax."""
