"""Exception types raised across the package."""


class WhirlError(Exception):
    pass


class ParseError(WhirlError, ValueError):
    pass


class OutOfRange(WhirlError, ValueError):
    pass


class LengthMismatch(WhirlError, ValueError):
    pass


class ShapeMismatch(WhirlError, ValueError):
    pass


class NotMember(WhirlError, ValueError):
    pass


class IndexOutOfRange(WhirlError, IndexError):
    pass


class InvalidFamily(WhirlError, ValueError):
    pass


class InvalidOrder(WhirlError, ValueError):
    pass


class SizeLimit(WhirlError):
    pass


class UnsupportedFamily(WhirlError):
    pass


class WrongFamily(WhirlError):
    pass


class TheoremViolation(WhirlError):
    """A construction the theory guarantees has failed; never swallow these."""


class NoPartition(TheoremViolation):
    pass


class BrokenChain(TheoremViolation):
    pass


class NonUniqueStep(TheoremViolation):
    pass


class NoConsistentFactorization(TheoremViolation):
    pass


class BadComposition(WhirlError, ValueError):
    pass


class BadProduct(WhirlError, ValueError):
    pass


class NotTree(TheoremViolation):
    pass


class Crossing(TheoremViolation):
    pass


class LabelOrder(TheoremViolation):
    pass
