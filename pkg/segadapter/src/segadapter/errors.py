class SegAdapterError(Exception):
    """Base for everything this package raises on purpose."""


class MalformedLabel(SegAdapterError):
    """A label record that cannot be turned into a mask."""


class ModelLoadError(SegAdapterError):
    """The model file could not be loaded (missing file, missing torch,
    or a deserialization failure)."""


class PnmIoError(SegAdapterError):
    """Unreadable or structurally invalid PNM data."""


class InvalidUsage(SegAdapterError):
    """Arguments that make no sense together or out-of-range dimensions."""
