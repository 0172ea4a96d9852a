"""Exception hierarchy.

Every error raised on bad input derives from :class:`SpinorkitError`, so the
CLI can map it to exit code 2 with a one-line reason.
"""


class SpinorkitError(ValueError):
    """Base class for precondition and validation failures."""

    code = "error"

    def __str__(self):
        msg = super().__str__()
        return f"{self.code}: {msg}" if msg else self.code


def _make(name, code):
    return type(name, (SpinorkitError,), {"code": code, "__doc__": f"{code} failure."})


# exact arithmetic
FieldMismatch = _make("FieldMismatch", "FieldMismatch")
DimensionMismatch = _make("DimensionMismatch", "DimensionMismatch")
NotSkew = _make("NotSkew", "NotSkew")
BadShape = _make("BadShape", "BadShape")
NonResidue = _make("NonResidue", "NonResidue")
Char2Unsupported = _make("Char2Unsupported", "Char2Unsupported")
NotPrime = _make("NotPrime", "NotPrime")
ParseError = _make("ParseError", "ParseError")

# spinors and the tenfold
ParityMismatch = _make("ParityMismatch", "ParityMismatch")
NotMaximalIsotropic = _make("NotMaximalIsotropic", "NotMaximalIsotropic")
ZeroSpinor = _make("ZeroSpinor", "ZeroSpinor")
NotOnSigma = _make("NotOnSigma", "NotOnSigma")
WrongComponent = _make("WrongComponent", "WrongComponent")
NotPure = _make("NotPure", "NotPure")
NotSplitOverField = _make("NotSplitOverField", "NotSplitOverField")
BadProbe = _make("BadProbe", "BadProbe")

# G(2,5) and projections
CenterOfProjection = _make("CenterOfProjection", "CenterOfProjection")
NotInSection = _make("NotInSection", "NotInSection")
DegeneratePlane = _make("DegeneratePlane", "DegeneratePlane")
NotOnGrassmannian = _make("NotOnGrassmannian", "NotOnGrassmannian")
ZeroForm = _make("ZeroForm", "ZeroForm")

# linear sections
BadK = _make("BadK", "BadK")
BadSample = _make("BadSample", "BadSample")
Inconclusive = _make("Inconclusive", "Inconclusive")
UnexpectedRelationSpace = _make("UnexpectedRelationSpace", "UnexpectedRelationSpace")
UnexpectedFiber = _make("UnexpectedFiber", "UnexpectedFiber")
IsotropyViolation = _make("IsotropyViolation", "IsotropyViolation")

# enumeration
TooExpensive = _make("TooExpensive", "TooExpensive")
