"""Exception hierarchy shared across the package.

Everything raised on purpose derives from HyperlocError so callers (and the
CLI) can separate expected geometric/input failures from genuine bugs.
"""


class HyperlocError(Exception):
    pass


class SurfaceSyntaxError(HyperlocError):
    """Malformed surface-definition source; carries 1-based line/column."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class UnknownIdentifier(SurfaceSyntaxError):
    """Identifier outside the surface grammar (e.g. u4, or a typo'd function)."""


class DomainError(HyperlocError):
    """A component function was evaluated outside its real domain,
    or produced a non-finite value."""


class OutsideDomain(HyperlocError):
    """Parameter point lies outside the declared domain box."""


class RegularityError(HyperlocError):
    """rank{R_1, R_2, R_3} < 3 at the queried point."""


class SingularMatrix(HyperlocError):
    """Pivot below threshold in the dense solver."""


class ComplexRoots(HyperlocError):
    """Cubic discriminant positive beyond tolerance (inconsistent inputs)."""


class DegenerateDirection(HyperlocError):
    """All cofactor triples of A vanish: the branch was not actually simple."""


class SeedAtUmbilic(HyperlocError):
    """Trace seeded at an umbilic point (rank A = 0)."""


class DegenerateBranch(HyperlocError):
    """Followed branch is not simple at the seed (root collision)."""


class TooFewSamples(HyperlocError):
    """Not enough samples for the requested stencil or interpolation."""


class SingularSystem(HyperlocError):
    """One of the frame linear systems is numerically singular."""


class GeodesicDegenerate(HyperlocError):
    """T' is (numerically) normal: E undefined, frame of first kind breaks."""


class PlanarDegenerate(HyperlocError):
    """alpha' x alpha'' x alpha''' vanishes: b2 undefined, k2 ~ 0."""


class RepeatedRoot(HyperlocError):
    """dP/dk ~ 0 at the followed root: umbilic collision mid-pipeline."""
