"""Exception types raised across the package."""


class PolyaccError(Exception):
    """Base class for all package errors."""


class DomainError(PolyaccError, ValueError):
    """A point lies outside the domain where an operation is defined."""


class ParameterError(PolyaccError, ValueError):
    """A named example was built with out-of-range parameters.

    ``constraint`` holds the violated inequality in readable form.
    """

    def __init__(self, example, constraint, got):
        self.example = example
        self.constraint = constraint
        self.got = got
        super().__init__(f"{example}: requires {constraint} (got {got})")


class SingularInputError(PolyaccError, ValueError):
    pass


class NormalizationError(PolyaccError, ValueError):
    pass


class WrongOrderError(PolyaccError, ValueError):
    pass


class DegenerateCurveError(PolyaccError, ValueError):
    pass


class DegenerateRatioError(PolyaccError, ValueError):
    pass


class HypothesisError(PolyaccError, ValueError):
    pass


class GridTooSmallError(PolyaccError, ValueError):
    pass


class SchemaError(PolyaccError, ValueError):
    """JSON input does not match the documented schema.

    ``path`` is the JSON path of the first offending field.
    """

    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}")
