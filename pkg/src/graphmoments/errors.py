"""Exception types shared across the package."""


class GraphmomentsError(ValueError):
    """Base class for package-specific input and guard errors."""


class GuardError(GraphmomentsError):
    """A size/budget guard rejected the requested computation."""


class LabelMismatchError(GraphmomentsError):
    """Two labeled graphs with incompatible label counts were combined."""


class InputError(GraphmomentsError):
    """Malformed external input (JSON payloads, CLI arguments)."""
