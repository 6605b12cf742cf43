"""Exception hierarchy.

Two families matter to callers: ``InputError`` for malformed or invalid
input (bad tables, bad files, out-of-range parameters) and ``MathRefusal``
for requests whose answer provably does not exist in exact rational
arithmetic (a functor that is not a covering, a characteristic that is
undefined, a spectrum that does not split over the rationals). The CLI
maps them to exit codes 2 and 1 respectively.
"""


class CatcoverError(Exception):
    """Base class for all errors raised by this package."""


class InputError(CatcoverError):
    """The input is malformed or violates a precondition."""


class MathRefusal(CatcoverError):
    """The requested value does not exist; refusing is the correct answer."""


class BadParameterError(InputError):
    """A builder parameter is out of range."""
