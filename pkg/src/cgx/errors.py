"""Exception hierarchy shared across the package."""


class CgxError(Exception):
    """Base class for all library errors."""


class ValidationError(CgxError):
    """A closed-set family fails the closure-operator axioms."""


class MissingTop(ValidationError):
    pass


class NotLoopless(ValidationError):
    pass


class NotIntersectionClosed(ValidationError):
    def __init__(self, a, b, missing):
        self.pair = (a, b)
        self.missing = missing
        super().__init__(f"intersection of {a} and {b} (= {missing}) is not in the family")


class NotConvexGeometry(CgxError):
    """Anti-exchange fails for the given closure operator."""


class InternalInconsistency(CgxError):
    """Two supposedly equivalent criteria disagreed; indicates a bug."""


class NotClosed(CgxError):
    pass


class NotNested(CgxError):
    pass


class OverlappingGrounds(CgxError):
    pass


class NotAFlag(CgxError):
    pass


class GuardError(CgxError):
    """A resource guard tripped; rerun with force to override."""


class GroundTooLarge(GuardError):
    pass


class CodomainTooLarge(GuardError):
    pass


class LatticeTooLarge(GuardError):
    pass


class InterpolationMismatch(CgxError):
    """Transfer-matrix values are not polynomial of the expected degree."""


class DegreeMismatch(CgxError):
    pass


class NotInCdSpan(CgxError):
    """The ab-polynomial is not a polynomial in c = a+b, d = ab+ba."""

    def __init__(self, residual):
        self.residual = residual
        super().__init__(f"residual ab-polynomial is nonzero: {residual}")


class NotGraded(CgxError):
    pass


class NotASublattice(CgxError):
    pass


class NotMaximalChain(CgxError):
    pass


class NotSupersolvable(CgxError):
    pass


class CyclicRelations(CgxError):
    pass


class DuplicatePoints(CgxError):
    pass


class ParseError(CgxError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
