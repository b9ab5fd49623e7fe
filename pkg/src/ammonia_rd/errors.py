"""Exception hierarchy shared by every module of the toolkit."""


class AmmoniaRDError(Exception):
    """Base class for all toolkit errors."""


class ModelError(AmmoniaRDError, ValueError):
    """A parameter set violates a structural constraint."""


class ConsistencyViolation(ModelError):
    pass


class ExponentSingular(ModelError):
    pass


class NonPositiveCoefficient(ModelError):
    pass


class DegenerateDiffusion(ModelError):
    pass


class InvalidModel(ModelError):
    """Raised by validation; ``violations`` lists every failed constraint."""

    def __init__(self, violations):
        self.violations = list(violations)
        msg = "; ".join(f"{type(v).__name__}: {v}" for v in self.violations)
        super().__init__(msg)

    @property
    def kinds(self):
        return [type(v).__name__ for v in self.violations]


class Inapplicable(AmmoniaRDError):
    """A formula has no positive real value for the given parameters."""

    def __init__(self, reason):
        self.reason = reason
        super().__init__(reason)


class ExponentZero(AmmoniaRDError, ZeroDivisionError):
    pass


class NonPropagating(AmmoniaRDError, ValueError):
    pass


class DomainError(AmmoniaRDError, ValueError):
    pass


class DegenerateState(AmmoniaRDError, FloatingPointError):
    pass


class StepUnderflow(AmmoniaRDError, RuntimeError):
    pass


class NonFiniteState(AmmoniaRDError, FloatingPointError):
    pass


class InsufficientPoints(AmmoniaRDError, ValueError):
    pass


class ZeroPivot(AmmoniaRDError, ZeroDivisionError):
    pass


class NonFiniteField(AmmoniaRDError, FloatingPointError):
    pass


class DimensionMismatch(AmmoniaRDError, ValueError):
    pass


class ZeroInitialMass(AmmoniaRDError, ZeroDivisionError):
    pass


class TooFewPoints(AmmoniaRDError, ValueError):
    pass


class NoCenterRow(AmmoniaRDError, ValueError):
    pass


class ConfigError(AmmoniaRDError, ValueError):
    pass


class ParseError(ConfigError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)


class SchemaError(ConfigError):
    def __init__(self, key, message):
        self.key = key
        super().__init__(f"{key}: {message}")
