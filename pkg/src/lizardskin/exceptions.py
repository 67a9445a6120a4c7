"""Exception types raised across the package."""


class LizardSkinError(ValueError):
    """Base class for all contract violations raised by this package."""


class InvalidLatticeError(LizardSkinError):
    """Lattice dimensions or options are inconsistent."""


class CellOutOfBoundsError(LizardSkinError, IndexError):
    pass


class InvalidProbabilitiesError(LizardSkinError):
    pass


class ShapeMismatchError(LizardSkinError):
    """Two fields (or a field and a lattice) do not share dimensions and alphabet."""


class NotAPermutationError(LizardSkinError):
    pass


class StateOutOfRangeError(LizardSkinError):
    pass


class EmptyNeighborhoodError(LizardSkinError):
    pass


class WrongLatticeKindError(LizardSkinError):
    pass
