"""Exception types shared across the package."""


class KmultError(Exception):
    """Base class for all package errors."""


class ZeroInput(KmultError):
    """An operation that requires a nonzero argument received zero."""


class DegreeOverflow(KmultError):
    """A Groebner computation exceeded the configured degree cap."""


class NotCofinite(KmultError):
    """dim M/IM is infinite where a finite colength was required."""


class NotFredholm(KmultError):
    """Some Koszul homology group is infinite dimensional."""


class NoStabilization(KmultError):
    """A windowed or sampled quantity failed to stabilize within its cap."""


class NotEventuallyPolynomial(KmultError):
    """Samples do not agree with any numerical polynomial on their tail."""


class NonCommutingTuple(KmultError):
    """Matrix actions fail to commute exactly."""


class NotOrthogonal(KmultError):
    """A rotation matrix is not exactly orthogonal over the rationals."""


class NotUnimodular(KmultError):
    """A presentation transform came with an inverse that fails to verify."""


class NotContained(KmultError):
    """A claimed submodule inclusion fails a membership check."""


class CrossCheckMismatch(KmultError):
    """Two independent routes to the same invariant disagree (bug signal)."""


class IllConditioned(KmultError):
    """A floating-point Gram system exceeded the condition cap."""


class ParseError(KmultError):
    """Malformed model file or polynomial text."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", col {column}" if column is not None else "") + ")"
        super().__init__(message + loc)


class ValidationError(KmultError):
    """A parsed model violates a type invariant."""


class UnknownModel(KmultError):
    """No catalog entry with the requested name."""


class InvalidParams(KmultError):
    """Catalog constructor parameters out of range."""
