"""Exception types shared across the package."""


class PermagraphError(Exception):
    """Base class for all package-specific errors."""


class GraphFormatError(PermagraphError):
    """Raised for malformed or inconsistent graph input."""


class PartitionError(PermagraphError):
    """Raised for malformed, incomplete, or mismatched partitions."""
