"""Exception hierarchy shared across the package.

Every error raised deliberately by this package derives from
:class:`AteBenchError`, so callers (and the CLI) can distinguish contract
violations from genuine bugs.
"""


class AteBenchError(Exception):
    """Base class for all errors raised by atebench."""


class DomainViolation(AteBenchError, ValueError):
    """An input value lies outside its documented domain."""


class PositivityViolation(DomainViolation):
    """A propensity score falls outside [delta, 1 - delta]."""


class LengthMismatch(AteBenchError, ValueError):
    """Parallel collections have inconsistent lengths."""


class MissingPropensity(AteBenchError, ValueError):
    """An operation requiring true propensity scores got a sample without them."""


class EmptyArm(AteBenchError, ValueError):
    """A treated or control group needed for fitting is empty."""


class EmptyCandidates(AteBenchError, ValueError):
    """Nearest-neighbor lookup got an empty candidate set."""


class FoldMismatch(AteBenchError, ValueError):
    """Nuisance predictions were fitted under a different cross-fit plan."""


class EmptyCell(AteBenchError, ValueError):
    """Aggregation was asked to summarize zero replication rows."""


class ConfigParseError(AteBenchError, ValueError):
    """A run-configuration file is malformed or violates an invariant."""


class MalformedCsv(AteBenchError, ValueError):
    """A results CSV does not match the documented schema."""


class UnknownEstimator(AteBenchError, ValueError):
    """An estimator name is not in the canonical roster."""
