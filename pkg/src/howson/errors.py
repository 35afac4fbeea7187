"""Exception hierarchy shared by all modules.

Every domain failure raises a subclass of HowsonError so the CLI can map
any of them to a structured message and exit code 1.
"""


class HowsonError(Exception):
    """Base class for all domain errors raised by this package."""


class RankMismatchError(HowsonError):
    """Operands live over free groups of different ranks."""


class LetterRangeError(HowsonError):
    """A letter refers to a generator index outside the ambient rank."""


class WordFormatError(HowsonError):
    """Text could not be parsed as a word, raw HNN word, or file format."""


class PreconditionError(HowsonError):
    """A documented precondition was violated (empty word, bad level, ...)."""


class NotAMemberError(HowsonError):
    """The word does not belong to the subgroup."""


class FiniteIndexError(HowsonError):
    """The subgroup has finite index, so no free-factor complement exists."""


class NotInjectiveError(HowsonError):
    """The endomorphism is not injective."""


class NotAnAutomorphismError(HowsonError):
    """The endomorphism is not invertible."""


class NotInImageError(HowsonError):
    """The word is not in the image of the endomorphism."""


class EmptyImageError(HowsonError):
    """A generator is mapped to the empty word where that is not allowed."""


class NotProperError(HowsonError):
    """The endomorphism is surjective (or non-injective); the extension is
    not a proper ascending one."""


class RankTooSmallError(HowsonError):
    """The construction needs ambient rank at least 2."""


class CyclicPairError(HowsonError):
    """The two seed words generate a cyclic subgroup."""


class MixedContextError(HowsonError):
    """HNN elements from different extensions were combined."""


class GraphMapError(HowsonError):
    """Base class for graph self-map failures."""


class FiltrationError(GraphMapError):
    """The filtration does not satisfy the invariance / single-edge rules."""


class NoNegativeChiError(GraphMapError):
    """No filtration level has a component of negative Euler characteristic."""


class ExponentialStratumError(GraphMapError):
    """The map has an exponentially growing stratum."""


class WitnessStructureError(GraphMapError):
    """The witness construction could not complete on this input."""


class LengthCapError(HowsonError):
    """A computed word exceeded the configured letter cap.

    Attributes:
        limit: the cap that was exceeded.
        level: experiment level reached when it happened, if applicable.
    """

    def __init__(self, limit, level=None):
        self.limit = limit
        self.level = level
        suffix = "" if level is None else f" (at level {level})"
        super().__init__(f"word length exceeded the cap of {limit} letters{suffix}")
