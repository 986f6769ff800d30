"""Exception hierarchy shared by all modules."""


class QuivInvError(ValueError):
    """Base class for every error raised by the package."""


class MissingVertex(QuivInvError):
    pass


class OddSymplecticDim(QuivInvError):
    pass


class UnbalancedPair(QuivInvError):
    pass


class MalformedQuiver(QuivInvError):
    pass


class ShapeMismatch(QuivInvError):
    pass


class NotInGroup(QuivInvError):
    pass


class NotAntisymmetric(QuivInvError):
    pass


class OddSize(QuivInvError):
    pass


class DegenerateCayley(QuivInvError):
    pass


class NotComposable(QuivInvError):
    pass


class TooLarge(QuivInvError):
    """A computation would exceed the configured guard rail."""


class BadWeights(QuivInvError):
    pass


class InvalidSpec(QuivInvError):
    pass


class UnsupportedConfiguration(QuivInvError):
    """The configuration lies outside the cases with a known closed form."""
