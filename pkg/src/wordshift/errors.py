"""Exception types shared across the package.

The split matters for the CLI exit-code contract: malformed inputs and
configuration problems map to exit 2, mathematical domain violations
(undefined divergences, empty sub-vocabularies) map to exit 3.
"""


class ParseError(ValueError):
    """A file or configuration value could not be parsed.

    Carries enough context (path, line number) to point at the offending
    input directly.
    """

    def __init__(self, message: str, path: str | None = None, line: int | None = None):
        location = ""
        if path is not None:
            location = f"{path}: "
        if line is not None:
            location += f"line {line}: "
        super().__init__(f"{location}{message}")
        self.path = path
        self.line = line


class DomainError(ValueError):
    """A measure is mathematically undefined for the given inputs."""
