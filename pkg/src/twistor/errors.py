"""Exception hierarchy shared by all twistor modules."""


class TwistorError(Exception):
    """Base class for all errors raised by this package."""


class RingMismatch(TwistorError):
    """Operands live over different coefficient rings."""


class InexactDivision(TwistorError):
    """Polynomial division left a nonzero remainder (or a non-integral quotient)."""


class NonUnitConstantTerm(TwistorError):
    """Series inversion requires a unit constant term."""


class NotASquare(TwistorError):
    """The element has no square root in the ambient ring."""


class CompositeModulus(TwistorError):
    """A prime modulus was expected."""


class EvenCharacteristic(TwistorError):
    """Characteristic 2 is not supported."""


class NotAKnRoot(TwistorError):
    """The value is not a root of k_n over the given field."""


class NotOnVariety(TwistorError):
    """The point does not satisfy f_n(x, y) = 0."""


class MissingSquareRoot(TwistorError):
    """A required square root does not exist in the working field."""


class NotAResidueRoot(TwistorError):
    """The residue is not a root of the target polynomial mod p."""


class MixedSlopeUnsupported(TwistorError):
    """Multiple-root lifting only handles a pure Newton-polygon slope 1/m."""


class PrecisionExhausted(TwistorError):
    """An iteration failed to reach the requested precision."""


class NonUnitDerivative(TwistorError):
    """Hensel's lemma needs a unit partial derivative at the center."""


class MismatchBeyondTolerance(TwistorError):
    """Two quantities that must agree differ beyond the allowed precision."""


class NotParabolicResidue(TwistorError):
    """No residual point with trace-of-a = 2 exists for the requested data."""


class ZeroSeries(TwistorError):
    """The series is zero to working precision."""


class NotALocusPoint(TwistorError):
    """The value is not (close enough to) a point of the locus under study."""


class SingularDenominator(TwistorError):
    """A denominator in a torsion formula vanishes (x too close to 2)."""
