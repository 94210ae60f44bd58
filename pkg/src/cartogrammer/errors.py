"""Exception types shared across the package."""


class CartogrammerError(Exception):
    """Base class for all cartogrammer errors."""


class InputError(CartogrammerError):
    """Malformed or contract-violating input (GeoJSON, CSV, parameters)."""


class DataError(CartogrammerError):
    """A dataset violates a numeric contract (negative, zero, all missing)."""


class UnknownRegionError(CartogrammerError, KeyError):
    """A region id does not exist in the map it was used against."""

    def __str__(self) -> str:  # KeyError quotes its repr; keep the message readable
        return CartogrammerError.__str__(self)


class TopologyFailureError(CartogrammerError):
    """The solver could not complete a step without breaking map topology."""
