"""Exception hierarchy.

Math violations (``FindingError`` subclasses) are kept separate from budget
exhaustion so callers can tell "the computation is wrong or the claim fails"
apart from "we ran out of room".
"""


class HurwitzLabError(Exception):
    """Base class for every error raised by this package."""


class InvalidElement(HurwitzLabError, IndexError):
    pass


class InvalidGroupTable(HurwitzLabError, ValueError):
    pass


class NotConjInvariant(HurwitzLabError, ValueError):
    pass


class InvalidStrand(HurwitzLabError, IndexError):
    pass


class StrandMismatch(HurwitzLabError, ValueError):
    pass


class InvalidFace(HurwitzLabError, IndexError):
    pass


class DegreeMismatch(HurwitzLabError, ValueError):
    pass


class PaddingUndefined(HurwitzLabError, ValueError):
    pass


class NotComposable(HurwitzLabError, ValueError):
    pass


class BudgetExceeded(HurwitzLabError):
    """A computation would exceed a configured size or time budget."""


class EnumerationBudgetExceeded(BudgetExceeded):
    pass


class StabilizerNotFound(HurwitzLabError, LookupError):
    """No central stabilizer candidate verified within the search budget."""


class MissingStabilizer(HurwitzLabError, ValueError):
    pass


class FindingError(HurwitzLabError):
    """An exact invariant failed: either a bug or a counterexample."""


class VanishingViolated(FindingError):
    def __init__(self, n, degree, dim):
        super().__init__(f"H_{degree} of the ordered Koszul complex at n={n} has dimension {dim}")
        self.n = n
        self.degree = degree
        self.dim = dim


class ChainMapBroken(FindingError):
    pass


class FormulaViolation(FindingError):
    pass


class DecompositionViolation(FindingError):
    pass
