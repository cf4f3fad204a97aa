"""Exception hierarchy shared by all khkit modules."""


class KhkitError(Exception):
    """Base class for every error raised by khkit."""


class InputError(KhkitError, ValueError):
    """Malformed user input (braid words, PD codes, paths)."""


class BraidError(InputError):
    pass


class PDParseError(InputError):
    pass


class CapExceededError(KhkitError):
    """A computation would exceed its declared desk-scale resource cap."""


class ChainComplexError(KhkitError, ValueError):
    """Matrices that do not form a chain complex or a chain map."""


class NotDivisibleError(KhkitError, ArithmeticError):
    pass


class SkeinRecursionError(KhkitError, RecursionError):
    """The skein descent did not terminate within its depth budget."""


class SliceError(KhkitError, ValueError):
    pass


class CriticalPointError(KhkitError, ValueError):
    """A point is too close to the critical locus of a fibration."""


class TransportError(KhkitError, RuntimeError):
    pass
