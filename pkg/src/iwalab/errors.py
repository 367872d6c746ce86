"""Exception types shared across the toolkit."""


class IwalabError(Exception):
    """Base class for every error raised by this package."""


class PrecisionMismatchError(IwalabError):
    """Operands live at different (p, N, M) precisions."""


class NotAUnitError(IwalabError):
    """The residue (or constant term) is divisible by p, so it has no inverse."""


class NoPreparationError(IwalabError):
    """Every stored coefficient is divisible by p; the Weierstrass degree is undefined."""


class InsufficientTruncationError(IwalabError):
    """The requested object needs more T-adic coefficients than are stored."""


class PrecisionExhaustedError(IwalabError):
    """The requested quantity is not determined by coefficients known modulo p^N."""


class OracleInconclusiveError(IwalabError):
    """The direct linear-algebra path cannot certify its answer at this precision."""


class UnsupportedGroupError(IwalabError):
    """The group order does not divide p - 1."""


class GroupMismatchError(IwalabError):
    """A character and a module belong to groups of different orders."""


class NotPerfectError(IwalabError):
    """The Gram matrix is singular mod p, so the pairing is not perfect."""


class IncompleteDatumError(IwalabError):
    """A datum lacks fields required by the requested computation."""


class DatumFormatError(IwalabError):
    """A datum or module file could not be parsed."""


class DatumValidationError(IwalabError):
    """A parsed datum violates standing assumptions.

    ``violations`` lists every violated field, one message each.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))
