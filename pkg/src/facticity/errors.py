"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the function."""


class TruncatedFrame(ValueError):
    """A self-delimiting frame ends before its payload is complete."""


class CapacityError(ValueError):
    """A requested enumeration exceeds the hard size cap."""


class Uncertified(LookupError):
    """The queried string's table entry is only an upper bound."""


class TooShort(ValueError):
    """A time series has too few points to fit a trend."""
