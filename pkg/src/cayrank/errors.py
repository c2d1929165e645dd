"""Exception types shared across the package."""


class CayrankError(Exception):
    """Base class for all domain errors raised by this package."""

    code = "error"


class GroupMismatchError(CayrankError):
    """Operands built over different generator sets."""

    code = "group_mismatch"


class WordSyntaxError(CayrankError):
    """Malformed word or expression text; carries the offending position."""

    code = "syntax_error"

    def __init__(self, message, position=None):
        super().__init__(message if position is None else f"{message} (at position {position})")
        self.position = position


class UnknownGeneratorError(WordSyntaxError):
    code = "unknown_generator"


class IdentityViolation(CayrankError):
    """a*t != s*b; carries the nonzero residual a*t - s*b."""

    code = "identity_violation"

    def __init__(self, residual):
        super().__init__(f"defining identity fails, residual a*t - s*b = {residual}")
        self.residual = residual


class ZeroDenominator(CayrankError):
    code = "zero_denominator"


class DenominatorMismatch(CayrankError):
    code = "denominator_mismatch"


class SupportBoundViolation(CayrankError):
    """A boundary column expected to vanish did not (inputs are not a valid quadruple)."""

    code = "support_bound_violation"

    def __init__(self, label, message="nonzero column outside the certified support bound"):
        super().__init__(f"{message}: {label}")
        self.label = label


class StreamTruncated(CayrankError):
    """The coefficient oracle cannot serve a required word."""

    code = "stream_truncated"

    def __init__(self, word_text):
        super().__init__(f"stream cannot serve coefficient of {word_text}")
        self.word_text = word_text


class NotExpandable(CayrankError):
    """Exact expansion is not available for this expression (mode, not mathematics)."""

    code = "not_expandable"

    def __init__(self, message, node=None):
        super().__init__(message)
        self.node = node


class SingularConstantTerm(NotExpandable):
    code = "singular_constant_term"


class DominanceFailure(CayrankError):
    """Numeric mode: an inverse fails the l1 dominance condition."""

    code = "dominance_failure"

    def __init__(self, node, ratio):
        super().__init__(f"l1 ratio {ratio} >= 1 for inverse of {node}")
        self.node = node
        self.ratio = ratio


class RankUnsupported(CayrankError):
    """Operation only available over the infinite cyclic group (rank 1)."""

    code = "rank_unsupported"


class DivisionByZeroPolynomial(CayrankError):
    code = "division_by_zero_polynomial"


class ConfigError(CayrankError):
    code = "config_error"
