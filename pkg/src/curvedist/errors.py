"""Exception types shared across the package."""


class CurvedistError(Exception):
    """Base class for all package errors."""


class ExceptionalSurface(CurvedistError):
    """The surface has an empty or disconnected curve graph.

    Carries the name of the exceptional family that matched.
    """

    def __init__(self, genus, punctures, family):
        self.genus = genus
        self.punctures = punctures
        self.family = family
        super().__init__(
            f"surface (genus={genus}, punctures={punctures}) is exceptional: {family}"
        )


class InvalidTriangulation(CurvedistError):
    """A triangulation failed a structural check at construction time."""


class InvalidNormalCoordinates(CurvedistError):
    """A weight vector violates a matching, parity or triangle constraint."""


class TriangulationMismatch(CurvedistError):
    """Two curves live on different triangulations."""


class RankMismatch(CurvedistError):
    """Word operations received incompatible ranks or an out-of-range index."""


class NotFilling(CurvedistError):
    """An operation requiring a filling pair was given a non-filling one."""


class RealizationFailure(CurvedistError):
    """A simultaneous realization could not be certified."""


class OracleInexact(CurvedistError):
    """A distance oracle returned a non-exact status for a required pair."""


class CandidateOverflow(CurvedistError):
    """A candidate search box exceeded the configured cap.

    ``box_size`` is the estimated number of candidates in the box.
    """

    def __init__(self, box_size, cap, detail=""):
        self.box_size = box_size
        self.cap = cap
        super().__init__(
            f"candidate box of size ~{box_size} exceeds cap {cap}" + (f" ({detail})" if detail else "")
        )


class InfeasibleCertifiedBound(CurvedistError):
    """Certified search requires a bound too large to materialize.

    ``bound`` carries the offending value (usually symbolic).
    """

    def __init__(self, bound, detail=""):
        self.bound = bound
        super().__init__(
            f"certified candidate bound is not materializable: {bound}" + (f" ({detail})" if detail else "")
        )


class RangeError(CurvedistError, ValueError):
    """An index argument was outside its documented range."""


class ParseError(CurvedistError):
    """An input file could not be parsed; carries line/column."""

    def __init__(self, message, line=None, column=None, path=None):
        self.line = line
        self.column = column
        self.path = path
        loc = ""
        if path is not None:
            loc += str(path)
        if line is not None:
            loc += f":{line}"
            if column is not None:
                loc += f":{column}"
        super().__init__(f"{loc}: {message}" if loc else message)


class SemanticError(CurvedistError):
    """Parsed input violates a semantic rule (e.g. exceptional surface)."""


class NotPseudoAnosovSuspected(UserWarning):
    """Non-fatal warning: an orbit looks bounded over the tested horizon."""
