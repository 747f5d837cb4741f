"""Exception hierarchy shared by all pipeline stages."""


class StoryboardError(Exception):
    """Base class for all errors raised by this package."""


class BundleError(StoryboardError):
    """The bundle directory is missing required pieces (manifest, layout dir, code model)."""


class ParseError(StoryboardError):
    """A bundle file is malformed.  Carries the offending file and, when known, the line."""

    def __init__(self, message, file=None, line=None):
        self.file = file
        self.line = line
        loc = ""
        if file is not None:
            loc = f" [{file}" + (f":{line}" if line is not None else "") + "]"
        super().__init__(message + loc)


class LinkError(StoryboardError):
    """Cross-references in the code model do not resolve.  Lists every unresolved name."""

    def __init__(self, message, unresolved=()):
        self.unresolved = sorted(unresolved)
        if self.unresolved:
            message = f"{message}: {', '.join(self.unresolved)}"
        super().__init__(message)


class MissingLayout(StoryboardError):
    """A class with a static layout kind has no usable layout file."""


class UnresolvedTransition(StoryboardError):
    """A start statement whose intent target cannot be resolved to a class.

    Extraction records these as warnings on the transition graph rather
    than aborting.
    """


class UnresolvedAttribute(StoryboardError):
    """An attribute value could not be resolved statically.

    Callers substitute an empty placeholder value and record a warning
    instead of failing the page.
    """


class MetricError(StoryboardError):
    """Image similarity was asked to compare grids of different dimensions."""
