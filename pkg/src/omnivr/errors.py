"""Exception types shared across the package."""


class DimensionError(ValueError):
    """Raster or grid dimensions violate a contract (e.g. W != 2H)."""


class InvalidCommandError(ValueError):
    """A navigation/zoom command is out of range (e.g. zoom level s <= 0)."""


class ConfigurationError(ValueError):
    """A configuration value is unsupported (interpolator name, camera, factor)."""


class DegenerateGeodesicError(ValueError):
    """The geodesic between two sphere points is not unique (antipodal endpoints)."""
