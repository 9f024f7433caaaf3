"""Exception types shared across the library."""


class InvalidParameterError(ValueError):
    """A configuration value or function argument is outside its valid range."""


class DegenerateGeometryError(ValueError):
    """Scene positions coincide or otherwise make a path undefined."""
