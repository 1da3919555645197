"""Exception types shared across the package."""


class HolostarkError(ValueError):
    """Base class for all holostark errors."""


class UnknownMaterial(HolostarkError):
    """The (material, dopant) pair is absent from the material table."""


class DegeneratePoint(HolostarkError):
    """Band gap closed at a field point: no band decomposition exists."""


class NotClosed(HolostarkError):
    """Field path does not return to its starting point."""


class InvalidAngle(HolostarkError):
    """Angle outside the valid range of a loop construction."""


class NonPositiveMagnitude(HolostarkError):
    """Field magnitude must be positive and finite."""


class NotConstantMagnitude(HolostarkError):
    """Path samples do not keep |E| constant within tolerance."""


class NotUnitary(HolostarkError):
    """Matrix fails the unitarity tolerance of the receiving operation."""


class NoIntertwiner(HolostarkError):
    """No unitary relates the two matrix bases (construction bug upstream)."""


class InvalidInput(HolostarkError):
    """Argument outside the domain of the requested operation."""
