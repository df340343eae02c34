"""Exception types shared across the package."""


class MismatchError(ValueError):
    """Objects from different fields or ambient dimensions were combined."""


class DegenerateInputError(ValueError):
    """Input violates a nondegeneracy precondition (repeated points,
    singular frame, general-position failure)."""


class CharacteristicError(ValueError):
    """The field characteristic is too small for the requested degree."""
