"""Exception hierarchy for the opgb package.

Every error raised by the library subclasses OpgbError so callers can catch
one type. NotQuasiDefinite carries the index of the first vanishing leading
principal minor, which is the only structured payload any of these need.
"""


class OpgbError(Exception):
    pass


class SingularBlock(OpgbError):
    """A leading principal block that must be invertible is singular."""


class NotQuasiDefinite(OpgbError):
    """A leading principal minor of the Gram matrix vanishes.

    Attributes
    ----------
    index : int
        First index k with H_k = 0, i.e. the (k+1) x (k+1) leading block
        G[:k+1, :k+1] is the first singular one.
    """

    def __init__(self, index):
        self.index = index
        super().__init__(
            f"quasi-definiteness fails at index {index}: "
            f"leading principal minor of order {index + 1} vanishes"
        )


class NotHankel(OpgbError):
    """Operation requires a Hankel (moment) Gram matrix."""


class PoleAtAtom(OpgbError):
    """A transform parameter coincides with the support of a discrete measure."""


class DegenerateRecurrence(OpgbError):
    """Classical moment recurrence hit a vanishing leading coefficient."""


class InsufficientTruncation(OpgbError):
    """Requested index exceeds what the truncation size can certify."""


class ZeroAtRoot(OpgbError):
    """P_{1,n}(a) = 0, so a degree-one Christoffel step is not defined."""


class SingularJetMatrix(OpgbError):
    """The jet matrix of a general Christoffel transform is singular."""


class ZeroDenominator(OpgbError):
    """Synthetic division or evaluation divides by zero."""


class NotCoprime(OpgbError):
    """Numerator and denominator of a spectral perturbation share a root."""


class NonPositive(OpgbError):
    """Quadrature via symmetrization needs positive H_k ratios."""


class DegenerateDenominator(OpgbError):
    """A Geronimus denominator D_k vanishes, so the transform breaks down."""


class SingularTruncation(OpgbError):
    """A truncated matrix that must be invertible is singular."""


class UnsupportedMeasure(OpgbError):
    """Measure specification has an unknown type or missing fields."""
