"""Exception types shared across the package."""


class ReluOptError(Exception):
    """Base class for all package errors."""


class ParseError(ReluOptError):
    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class DimensionMismatch(ReluOptError):
    pass


class InconsistentState(ReluOptError):
    pass


class NumericalFailure(ReluOptError):
    pass


class NoUndetermined(ReluOptError):
    pass


class Timeout(ReluOptError):
    pass


class TooLarge(ReluOptError):
    pass


class UnboundedNode(ReluOptError):
    def __init__(self, layer: int, node: int):
        self.layer = layer
        self.node = node
        super().__init__(f"node ({layer}, {node}) has unbounded pre-activation range")


class SchemaError(ReluOptError):
    def __init__(self, field: str, reason: str):
        self.field = field
        self.reason = reason
        super().__init__(f"{field}: {reason}")


class EmptyDomain(ReluOptError):
    pass
