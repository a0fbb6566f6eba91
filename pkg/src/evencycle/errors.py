"""Exception hierarchy shared by every module."""


class EvenCycleError(Exception):
    pass


class PreconditionError(EvenCycleError, ValueError):
    """Caller supplied inputs outside an operation's contract."""


class DefectError(EvenCycleError, AssertionError):
    """A construction that is guaranteed to succeed produced invalid output.

    Raised only when an internal invariant breaks; tests treat it as a bug.
    """


class Inconclusive(EvenCycleError):
    """A constructive step could not be completed at this graph size.

    The quantitative hypotheses behind the builders only bite for large
    graphs, so small inputs can legitimately end up here.
    """


class GraphFormatError(EvenCycleError, ValueError):
    pass
