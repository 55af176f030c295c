"""Exception hierarchy shared by all khlab modules."""


class KhlabError(Exception):
    """Base class for every error raised by khlab."""


class PDSyntaxError(KhlabError):
    """Malformed diagram text.  ``position`` is a 0-based offset into the input."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class DiagramError(KhlabError):
    """Structurally invalid diagram (bad edge multiplicities, orientation clash, ...)."""


class ReidemeisterError(DiagramError):
    """The requested move cannot be performed at the given site."""


class CapExceededError(KhlabError):
    """The diagram has more crossings than the configured enumeration cap."""

    def __init__(self, crossings: int, cap: int):
        super().__init__(f"diagram has {crossings} crossings, cap is {cap}")
        self.crossings = crossings
        self.cap = cap


class ChainComplexError(KhlabError):
    """A chain complex failed a structural check, most often d∘d != 0."""


class NotAKnotError(KhlabError):
    """An operation that is only defined for one-component links got a link."""
