"""Exception hierarchy.

Every error raised by the library derives from :class:`Nach1Error`.  The CLI
maps :class:`SizeLimitExceeded` to exit code 3, :class:`TheoremCheckFailed`
to exit code 2 and everything else to exit code 1.
"""


class Nach1Error(Exception):
    """Base class for all library errors."""


class InvalidTable(Nach1Error):
    pass


class NotAPermutation(Nach1Error):
    pass


class SizeLimitExceeded(Nach1Error):
    pass


class NotNormal(Nach1Error):
    pass


class NotAHomomorphism(Nach1Error):
    pass


class InvalidSubgroup(Nach1Error):
    pass


class NotAnAction(Nach1Error):
    pass


class IllDefinedAction(Nach1Error):
    pass


class NotEquivariant(Nach1Error):
    pass


class NotAbelian(Nach1Error):
    pass


class ModuleMismatch(Nach1Error):
    pass


class NotADerivation(Nach1Error):
    pass


class ValueNotInA(Nach1Error):
    pass


class NotCentral(Nach1Error):
    pass


class NotCocycle(Nach1Error):
    pass


class NotExact(Nach1Error):
    pass


class NotNormalInB(Nach1Error):
    pass


class NotASection(Nach1Error):
    pass


class NotCocompatible(Nach1Error):
    pass


class NotAComplement(Nach1Error):
    pass


class InputError(Nach1Error):
    """Malformed definition file."""


class TheoremCheckFailed(Nach1Error):
    """A check that holds for every valid input did not hold.

    Raised by well-definedness re-verifications; seeing one means a bug in
    this library, not bad input.
    """
